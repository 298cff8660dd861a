"""Independent reference computations used to check the solver modules.

Nothing here shares code paths with the package: capacities come from
closed forms, eigenvalue problems go through scipy's generalized solver,
and elementwise identities are spelled out as scalar loops.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import eigh as generalized_eigh


def water_filling_capacity(h: np.ndarray, power: float) -> float:
    """Capacity of a single-receiver MIMO channel in bits, exact active set."""
    gains = np.clip(np.linalg.eigvalsh(h.conj().T @ h).real, 0.0, None)[::-1]
    gains = gains[gains > 1e-15]
    if gains.size == 0:
        return 0.0
    for k in range(1, gains.size + 1):
        level = (power + np.sum(1.0 / gains[:k])) / k
        alloc = level - 1.0 / gains[:k]
        if alloc[-1] >= 0.0 and (k == gains.size or level <= 1.0 / gains[k]):
            return float(np.sum(np.log2(1.0 + alloc * gains[:k])))
    raise AssertionError("water filling failed to terminate")


def miso_pencil_value(h_b: np.ndarray, h_e: np.ndarray, power: float) -> float:
    """Secrecy capacity in bits for single-antenna Bob and Eve (1 x m rows)."""
    m = h_b.shape[1]
    a = np.eye(m) + power * h_b.conj().T @ h_b
    b = np.eye(m) + power * h_e.conj().T @ h_e
    lam = generalized_eigh(a, b, eigvals_only=True)[-1]
    return float(max(0.0, np.log2(lam)))


def hadamard_loop(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty_like(np.asarray(a))
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i, j] = np.multiply(a[i, j], b[i, j])
    return out


def phase_grid_max(l_gram, ch, steps: int = 360) -> float:
    """Brute-force maximum of the fixed-R rate over a phase grid (n = 2 only).

    Exploits global-phase invariance: only the relative angle is swept.
    """
    from irs_secrecy.objective import f_of_q

    assert ch.n == 2
    best = -np.inf
    for theta in np.linspace(0.0, 2.0 * np.pi, steps, endpoint=False):
        q = np.array([1.0, np.exp(1j * theta)])
        best = max(best, f_of_q(l_gram, ch, q))
    return best

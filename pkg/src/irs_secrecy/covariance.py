"""Transmit-covariance step: maximize the log-det rate difference over R.

For fixed effective channels H_b (d x m) and H_e (e x m) this solves

    max  log2 det(I + H_b R H_b^H) - log2 det(I + H_e R H_e^H)
    s.t. R Hermitian PSD, tr(R) <= P

The objective is a difference of concave log-det terms.  Each outer pass
replaces the eavesdropper term by its tangent plane at the current iterate
(an upper bound on that term, so the surrogate model is a global lower bound
of the objective, tight at the iterate) and maximizes the resulting concave
model with a log-barrier interior-point method: damped Newton steps with
backtracking line search over the real parameterization of Hermitian
matrices.  The barrier parameter grows geometrically until the gap bound
(m + 1) / t drops below ``target_accuracy``; later passes re-center at the
final barrier parameter directly since their warm start is already near the
central point, falling back to the full path if that stalls.

Every outer pass can only raise the true objective, and the best iterate
seen (including the warm start itself) is returned, so the result is never
worse than the warm start.  Stationary points of the outer loop are KKT
points of the original problem; on the two analytically solvable families
(single-antenna receivers, absent eavesdropper) every KKT point is global,
which the test suite checks against closed-form oracles.  The whole solve is
deterministic: no randomness anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import LOG2E, hermitize, is_psd, require_hermitian

# Newton decrement^2 at which a point counts as centered (quadratic zone);
# the residual it leaves behind is O(decrement^2) / t, negligible against
# the (m + 1) / t gap bound.
_CENTER_DECREMENT_SQ = 1e-2


@dataclass(frozen=True)
class CovSolverConfig:
    target_accuracy: float = 1e-8
    max_newton_iters: int = 200
    barrier_mu: float = 30.0
    backtrack_alpha: float = 0.1
    backtrack_beta: float = 0.5
    # Outer linearization loop: stop once the per-pass gain stalls.
    outer_rel_tol: float = 1e-9
    outer_abs_tol: float = 1e-12
    max_outer_iters: int = 200

    def __post_init__(self):
        if not (0.0 < self.backtrack_alpha < 0.5):
            raise ValueError("backtrack_alpha must lie in (0, 0.5)")
        if not (0.0 < self.backtrack_beta < 1.0):
            raise ValueError("backtrack_beta must lie in (0, 1)")
        if self.barrier_mu <= 1.0:
            raise ValueError("barrier_mu must exceed 1")
        if self.target_accuracy <= 0:
            raise ValueError("target_accuracy must be positive")


@dataclass(frozen=True)
class CovSolverReport:
    r_opt: np.ndarray
    c_s_achieved: float
    iterations: int
    converged: bool


@lru_cache(maxsize=None)
def _herm_basis(m: int) -> np.ndarray:
    """Stacked basis of m x m Hermitian matrices over the reals, shape (m^2, m, m).

    Order: diagonal units, then real off-diagonal pairs, then imaginary
    off-diagonal pairs, both in row-major (i < j) order.
    """
    mats = []
    for i in range(m):
        b = np.zeros((m, m), dtype=complex)
        b[i, i] = 1.0
        mats.append(b)
    for i in range(m):
        for j in range(i + 1, m):
            b = np.zeros((m, m), dtype=complex)
            b[i, j] = 1.0
            b[j, i] = 1.0
            mats.append(b)
    for i in range(m):
        for j in range(i + 1, m):
            b = np.zeros((m, m), dtype=complex)
            b[i, j] = 1.0j
            b[j, i] = -1.0j
            mats.append(b)
    return np.stack(mats)


@lru_cache(maxsize=None)
def _triu(m: int):
    iu = np.triu_indices(m, 1)
    return iu, (iu[1], iu[0])


def _to_matrix(theta: np.ndarray, m: int) -> np.ndarray:
    iu, il = _triu(m)
    k = iu[0].size
    r = np.zeros((m, m), dtype=complex)
    r[np.diag_indices(m)] = theta[:m]
    off = theta[m:m + k] + 1j * theta[m + k:]
    r[iu] = off
    r[il] = off.conj()
    return r


def _to_theta(r: np.ndarray) -> np.ndarray:
    iu, _ = _triu(r.shape[0])
    return np.concatenate([np.real(np.diag(r)), np.real(r[iu]), np.imag(r[iu])])


def _grad_vector(g: np.ndarray) -> np.ndarray:
    """Directional derivatives Re tr(G E_k) of a Hermitian gradient matrix."""
    iu, _ = _triu(g.shape[0])
    return np.concatenate([np.real(np.diag(g)), 2.0 * np.real(g[iu]), 2.0 * np.imag(g[iu])])


def _quad_form(mat: np.ndarray, basis: np.ndarray, basis_swapped: np.ndarray) -> np.ndarray:
    """Matrix of the bilinear form (E_k, E_l) -> Re tr(M E_k M E_l)."""
    v = (mat[None, :, :] @ basis) @ mat
    return np.real(np.tensordot(v, basis_swapped, axes=([1, 2], [1, 2])))


@lru_cache(maxsize=None)
def _basis_swapped(m: int) -> np.ndarray:
    """Transposed copy of the basis so the trace pairing is a plain tensordot."""
    return np.ascontiguousarray(np.swapaxes(_herm_basis(m), 1, 2))


def _chol_logdet(a: np.ndarray) -> float | None:
    """Natural log-det of a Hermitian matrix, or None if not PD."""
    try:
        c = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        return None
    return 2.0 * float(np.sum(np.log(np.real(np.diag(c)))))


def _rate_nats(h_b: np.ndarray, h_e: np.ndarray, r: np.ndarray) -> float:
    d, e = h_b.shape[0], h_e.shape[0]
    lb = _chol_logdet(np.eye(d) + h_b @ r @ h_b.conj().T)
    le = _chol_logdet(np.eye(e) + h_e @ r @ h_e.conj().T)
    if lb is None or le is None:
        raise ValueError("rate evaluation hit a non-PD gram matrix")
    return lb - le


def _barrier_value(theta, m, t, h_b, d_mat, p):
    """Barrier objective t * model + log-barriers, or None outside the domain.

    Points whose smallest eigenvalue underflows far below the central path's
    scale are rejected as well, so downstream solves stay non-singular.
    """
    r = _to_matrix(theta, m)
    gap = p - float(np.real(np.trace(r)))
    if gap <= 0.0:
        return None
    try:
        chol = np.linalg.cholesky(r)
    except np.linalg.LinAlgError:
        return None
    diag = np.real(np.diag(chol))
    if float(np.min(diag)) ** 2 <= (p / m) * 1e-30:
        return None
    ld_r = 2.0 * float(np.sum(np.log(diag)))
    ld_b = _chol_logdet(np.eye(h_b.shape[0]) + h_b @ r @ h_b.conj().T)
    if ld_b is None:
        return None
    lin = float(np.real(np.trace(d_mat @ r)))
    return t * (ld_b - lin) + ld_r + float(np.log(gap))


def _newton_center(theta, t, h_b, d_mat, p, cfg: CovSolverConfig):
    """Damped Newton maximization of the barrier objective at fixed t.

    Returns (theta, newton_steps, centered).  Gives up gracefully (keeping
    the best point reached) when line search or the linear solve hits the
    floating-point floor.
    """
    m = int(round(np.sqrt(theta.size)))
    basis = _herm_basis(m)
    swapped = _basis_swapped(m)
    val = _barrier_value(theta, m, t, h_b, d_mat, p)
    if val is None:
        raise ValueError("internal error: infeasible centering start")
    tau = np.concatenate([np.ones(m), np.zeros(m * m - m)])
    tau_outer = np.outer(tau, tau)
    eye_m = np.eye(m)
    eye_d = np.eye(h_b.shape[0])
    for step in range(cfg.max_newton_iters):
        r = _to_matrix(theta, m)
        gap = p - float(np.real(np.trace(r)))
        try:
            rb = eye_d + h_b @ r @ h_b.conj().T
            g_b = h_b.conj().T @ np.linalg.solve(rb, h_b)
            r_inv = np.linalg.solve(r, eye_m)
        except np.linalg.LinAlgError:
            return theta, step, False
        grad_mat = hermitize(t * (g_b - d_mat) + r_inv - eye_m / gap)
        grad = _grad_vector(grad_mat)

        hneg = t * _quad_form(g_b, basis, swapped) + _quad_form(r_inv, basis, swapped)
        hneg += tau_outer / gap**2
        if not (np.all(np.isfinite(hneg)) and np.all(np.isfinite(grad))):
            return theta, step, False
        try:
            direction = np.linalg.solve(hneg, grad)
        except np.linalg.LinAlgError:
            # Hessian at the numerical floor; nudge the diagonal once.
            hneg[np.diag_indices_from(hneg)] *= 1.0 + 1e-12
            try:
                direction = np.linalg.solve(hneg, grad)
            except np.linalg.LinAlgError:
                return theta, step, False
        decrement_sq = float(grad @ direction)
        if not np.isfinite(decrement_sq) or decrement_sq <= _CENTER_DECREMENT_SQ:
            return theta, step, True

        s = 1.0
        accepted = False
        for _ in range(80):
            cand = theta + s * direction
            cand_val = _barrier_value(cand, m, t, h_b, d_mat, p)
            if cand_val is not None and cand_val >= val + cfg.backtrack_alpha * s * decrement_sq:
                theta, val = cand, cand_val
                accepted = True
                break
            s *= cfg.backtrack_beta
        if not accepted:
            # Improvements fell below the floating-point noise of the barrier
            # value.  Inside the quadratic zone that means we are centered for
            # all practical purposes; far outside it the point is stuck.
            return theta, step + 1, decrement_sq <= 1.0
    return theta, cfg.max_newton_iters, False


def _maximize_concave_model(h_b, d_mat, p, r_start, cfg: CovSolverConfig, t_start=1.0):
    """Barrier path for max logdet(I + Hb R Hb^H) - tr(D R) on the feasible set.

    Returns (R, newton_steps, centered, t_final).  When ``t_start`` already
    satisfies the gap bound a single centering suffices; if that stalls, the
    full path from t = 1 is rerun.
    """
    m = r_start.shape[0]
    nu = m + 1
    theta = _to_theta(r_start)
    t = t_start
    total_steps = 0
    while True:
        theta, steps, centered = _newton_center(theta, t, h_b, d_mat, p, cfg)
        total_steps += steps
        if not centered and t_start > 1.0:
            # Warm start was too far from the central point at high t.
            theta = _to_theta(r_start)
            t = 1.0
            t_start = 1.0
            continue
        if nu / t <= cfg.target_accuracy:
            break
        t *= cfg.barrier_mu
    return hermitize(_to_matrix(theta, m)), total_steps, centered, t


def _interior_point(r_init: np.ndarray, p: float) -> np.ndarray:
    """Return r_init if strictly inside the cone and budget, else a shifted copy."""
    m = r_init.shape[0]
    w = np.linalg.eigvalsh(r_init)
    trace = float(np.real(np.trace(r_init)))
    if w[0] > 1e-12 * p / m and trace < p * (1.0 - 1e-12):
        return r_init
    w_clip, v = np.linalg.eigh(r_init)
    r = hermitize((v * np.clip(w_clip, 0.0, None)) @ v.conj().T)
    mix = 1e-3
    return (1.0 - mix) * ((1.0 - mix) * r + mix * (p / m) * np.eye(m))


def optimize_covariance(
    h_b: np.ndarray,
    h_e: np.ndarray,
    p: float,
    cfg: CovSolverConfig | None = None,
    r_init: np.ndarray | None = None,
) -> CovSolverReport:
    """Maximize the secrecy objective over the covariance for fixed channels.

    The returned covariance is feasible (PSD within 1e-8, trace within the
    budget) and its rate is never below the warm start's.  ``converged``
    means the outer linearization loop stalled below its tolerance with the
    last pass fully centered; otherwise the best iterate found is returned
    without raising.
    """
    cfg = cfg or CovSolverConfig()
    h_b = np.asarray(h_b, dtype=complex)
    h_e = np.asarray(h_e, dtype=complex)
    if h_b.ndim != 2 or h_e.ndim != 2 or h_b.shape[1] != h_e.shape[1]:
        raise ValueError("channel matrices must share their column count")
    if p <= 0:
        raise ValueError("power budget must be positive")
    m = h_b.shape[1]

    if r_init is None:
        r_init = (p / m) * np.eye(m, dtype=complex)
    else:
        r_init = require_hermitian(r_init)
        if r_init.shape[0] != m:
            raise ValueError("warm-start covariance has the wrong dimension")
        if not is_psd(r_init, 1e-8):
            raise ValueError("warm-start covariance is not PSD")
        if float(np.real(np.trace(r_init))) > p + 1e-8:
            raise ValueError("warm-start covariance exceeds the power budget")

    if not np.any(h_b):
        # No useful channel to Bob: any covariance only leaks.
        zero = np.zeros((m, m), dtype=complex)
        return CovSolverReport(r_opt=zero, c_s_achieved=0.0, iterations=0, converged=True)

    best_r = r_init
    best_nat = _rate_nats(h_b, h_e, r_init)

    r_cur = _interior_point(r_init, p)
    prev_nat = _rate_nats(h_b, h_e, r_cur)
    total_steps = 0
    converged = False
    nu = m + 1
    t_full = nu / cfg.target_accuracy
    t_start = 1.0
    for _ in range(cfg.max_outer_iters):
        me = np.eye(h_e.shape[0]) + h_e @ r_cur @ h_e.conj().T
        d_mat = hermitize(h_e.conj().T @ np.linalg.solve(me, h_e))
        r_new, steps, centered, _ = _maximize_concave_model(
            h_b, d_mat, p, r_cur, cfg, t_start=t_start
        )
        total_steps += steps
        new_nat = _rate_nats(h_b, h_e, r_new)
        if new_nat > best_nat:
            best_nat, best_r = new_nat, r_new
        gain = abs(new_nat - prev_nat)
        if gain <= cfg.outer_abs_tol + cfg.outer_rel_tol * abs(prev_nat):
            converged = centered
            break
        # The next model differs from this one by roughly the gain just made,
        # so start its barrier path at the matching accuracy level.
        t_start = min(max(1.0, nu / (10.0 * gain + cfg.target_accuracy)), t_full)
        prev_nat, r_cur = new_nat, r_new

    return CovSolverReport(
        r_opt=best_r,
        c_s_achieved=best_nat * LOG2E,
        iterations=total_steps,
        converged=converged,
    )

"""Secrecy-rate objective and its fixed-covariance decomposition.

For transmit covariance R and phase vector q the secrecy rate is

    c_s = log2 det(I + H_b R H_b^H) - log2 det(I + H_e R H_e^H)

with H_b, H_e the effective cascades from ``effective_channel``.  For fixed R
the same quantity, seen as a function of q alone, splits through the n x n
gram L = H_tx^H-side congruence ``build_L`` into the Bob and Eve log-det
terms evaluated by ``f_of_q``.  Values can be negative for adversarial R;
no clamping is applied so line searches stay smooth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import WiretapChannel, effective_channel, require_unit_modulus
from .linalg import PSD_TOL, hermitize, is_psd, logdet2, require_hermitian


@dataclass(frozen=True)
class ObjectiveValue:
    """Secrecy rate in bits plus its Bob/Eve split (c_s = f_b + f_e)."""

    c_s: float
    f_b: float
    f_e: float


def validate_covariance(r: np.ndarray, power_budget: float, tol: float = PSD_TOL) -> np.ndarray:
    """Check R is Hermitian PSD with tr(R) <= power budget (within ``tol``)."""
    r = require_hermitian(r)
    if not is_psd(r, tol):
        raise ValueError("covariance is not PSD within tolerance")
    trace = float(np.real(np.trace(r)))
    if trace > power_budget + tol:
        raise ValueError(f"trace {trace:.6g} exceeds power budget {power_budget:.6g}")
    return r


def secrecy_rate(ch: WiretapChannel, r: np.ndarray, q: np.ndarray) -> ObjectiveValue:
    """Evaluate the secrecy objective at (R, q)."""
    r = require_hermitian(r)
    if r.shape[0] != ch.m:
        raise ValueError(f"covariance is {r.shape[0]}x{r.shape[0]}, expected m={ch.m}")
    q = require_unit_modulus(q)
    h_b = effective_channel(ch, q, "bob")
    h_e = effective_channel(ch, q, "eve")
    f_b = logdet2(np.eye(ch.d) + h_b @ r @ h_b.conj().T)
    f_e = -logdet2(np.eye(ch.e) + h_e @ r @ h_e.conj().T)
    return ObjectiveValue(c_s=f_b + f_e, f_b=f_b, f_e=f_e)


def build_L(ch: WiretapChannel, r: np.ndarray) -> np.ndarray:
    """The n x n PSD gram ``H_tx_irs R H_tx_irs^H`` carrying R into phase space."""
    r = require_hermitian(r)
    if r.shape[0] != ch.m:
        raise ValueError(f"covariance is {r.shape[0]}x{r.shape[0]}, expected m={ch.m}")
    return hermitize(ch.h_tx_irs @ r @ ch.h_tx_irs.conj().T)


def f_of_q(l_gram: np.ndarray, ch: WiretapChannel, q: np.ndarray) -> float:
    """Fixed-R secrecy rate as a function of the phase vector, in bits."""
    l_gram = hermitize(np.asarray(l_gram, dtype=complex))
    q = np.asarray(q, dtype=complex).ravel()
    if q.size != ch.n or l_gram.shape[0] != ch.n:
        raise ValueError("phase vector / gram size does not match n")
    qlq = (q[:, None] * l_gram) * q.conj()[None, :]
    bob = np.eye(ch.d) + ch.h_irs_bob @ qlq @ ch.h_irs_bob.conj().T
    eve = np.eye(ch.e) + ch.h_irs_eve @ qlq @ ch.h_irs_eve.conj().T
    return logdet2(bob) - logdet2(eve)

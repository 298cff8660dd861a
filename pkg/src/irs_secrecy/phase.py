"""Ascent over the unit-modulus reflection coefficients for fixed covariance.

For fixed R the rate difference f(q) splits into Bob and Eve log-det terms.
Each outer iteration builds, at the current point q_ref, a global lower bound
of f that touches it there, through three stages:

1. log-det tangent bounds.  The Eve term is bounded directly by the concavity
   tangent of log det.  The Bob term is first rewritten through the matrix
   inversion lemma as -log det(I - T (I + T^H T)^-1 T^H) with
   T = H_irs_bob diag(q) sqrt(L), then bounded by the same tangent taken at
   the expansion point's value of that inverse.
2. matrix-fractional tangent.  The remaining trace term
   tr(M T (I + T^H T)^-1 T^H) with the fixed weight M = bob_gram is jointly
   convex in (T, I + T^H T), hence bounded below by its first-order expansion.
3. largest-eigenvalue majorizer.  The resulting convex quadratic q^H Z q is
   pushed up to lmax(Z) * I, leaving a linear form in q.

The closed-form unit-modulus maximizer of the final bound aligns each phase
with the linear coefficient, giving a monotone ascent to a stationary point.
Bound pieces are kept in natural-log units internally; values cross the
module boundary in bits.  Z is PSD by the Schur product theorem, which also
guarantees the majorizer direction in stage 3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import WiretapChannel, require_unit_modulus
from .linalg import LOG2E, hermitize, logdet_nat, sqrt_psd
from .objective import f_of_q


@dataclass(frozen=True)
class MMConfig:
    """Stopping rule for the phase ascent: relative change of f below tol."""

    tol: float = 1e-4
    max_iters: int = 500

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass(frozen=True)
class SurrogateWorkspace:
    """Everything the bound needs at one expansion point.

    quad (Z), lin and the three constants are in natural-log units; the
    conversion to bits happens in ``surrogate_value``.  opt_dir is the linear
    form whose phases the closed-form update copies.
    """

    q_ref: np.ndarray
    sqrt_l: np.ndarray
    bob_gram: np.ndarray
    eve_gram: np.ndarray
    quad: np.ndarray
    lin: np.ndarray
    c_eve: float
    c_bob: float
    c_frac: float
    quad_lmax: float
    quad_at_ref: float
    opt_dir: np.ndarray

    @property
    def n(self) -> int:
        return self.q_ref.size


def build_workspace(l_gram: np.ndarray, ch: WiretapChannel, q_ref: np.ndarray) -> SurrogateWorkspace:
    """Assemble the surrogate pieces at expansion point ``q_ref``."""
    q_ref = require_unit_modulus(q_ref)
    if q_ref.size != ch.n:
        raise ValueError("phase vector length does not match n")
    l_gram = hermitize(np.asarray(l_gram, dtype=complex))
    sqrt_l = sqrt_psd(l_gram)

    h_b = ch.h_irs_bob
    h_e = ch.h_irs_eve
    d, e, n = ch.d, ch.e, ch.n

    t_ref = (h_b * q_ref[None, :]) @ sqrt_l
    bob_gram = hermitize(np.eye(d) + t_ref @ t_ref.conj().T)
    qlq = (q_ref[:, None] * l_gram) * q_ref.conj()[None, :]
    eve_gram = hermitize(np.eye(e) + h_e @ qlq @ h_e.conj().T)

    # J = T (I + T^H T)^-1; the inverted matrix has eigenvalues >= 1.
    inner = hermitize(np.eye(n) + t_ref.conj().T @ t_ref)
    j_gain = np.linalg.solve(inner, t_ref.conj().T).conj().T

    weighted_j = bob_gram @ j_gain
    # Bob quadratic weight: sqrt(L) J^H bob_gram J sqrt(L), Hermitian PSD.
    bob_path = hermitize(sqrt_l @ j_gain.conj().T @ weighted_j @ sqrt_l)
    bob_outer = h_b.conj().T @ h_b
    eve_inv = np.linalg.solve(eve_gram, np.eye(e))
    eve_quad = hermitize(h_e.conj().T @ eve_inv @ h_e)

    quad = hermitize(bob_outer * bob_path.T + eve_quad * l_gram.T)
    lin = np.diag(h_b.conj().T @ weighted_j @ sqrt_l).copy()

    c_eve = -logdet_nat(eve_gram) + e - float(np.real(np.trace(eve_inv)))
    tr_bob = float(np.real(np.trace(bob_gram)))
    c_bob = logdet_nat(bob_gram) + d - tr_bob
    bob_inv = np.linalg.solve(bob_gram, np.eye(d))
    c_frac = float(np.real(np.trace(bob_inv))) - d

    eigs = np.linalg.eigvalsh(quad)
    quad_lmax = float(eigs[-1])
    quad_at_ref = float(np.real(q_ref.conj() @ (quad @ q_ref)))
    opt_dir = quad_lmax * q_ref - quad @ q_ref + lin

    return SurrogateWorkspace(
        q_ref=q_ref,
        sqrt_l=sqrt_l,
        bob_gram=bob_gram,
        eve_gram=eve_gram,
        quad=quad,
        lin=lin,
        c_eve=c_eve,
        c_bob=c_bob,
        c_frac=c_frac,
        quad_lmax=quad_lmax,
        quad_at_ref=quad_at_ref,
        opt_dir=opt_dir,
    )


def surrogate_value(ws: SurrogateWorkspace, q: np.ndarray) -> float:
    """Value of the stage-3 lower bound at unit-modulus q, in bits.

    Equals f_of_q at the expansion point and never exceeds it elsewhere.
    """
    q = require_unit_modulus(q)
    if q.size != ws.n:
        raise ValueError("phase vector length does not match workspace")
    val_nat = (
        2.0 * float(np.real(q.conj() @ ws.opt_dir))
        - 2.0 * ws.n * ws.quad_lmax
        + ws.quad_at_ref
        + ws.c_eve
        + ws.c_bob
        + ws.c_frac
    )
    return val_nat * LOG2E


def mm_update(ws: SurrogateWorkspace) -> np.ndarray:
    """Exact unit-modulus maximizer of the surrogate: align with opt_dir.

    Coefficients whose linear form vanishes keep their previous phase (any
    phase is optimal there; keeping it preserves determinism and ascent).
    """
    mag = np.abs(ws.opt_dir)
    q = ws.q_ref.copy()
    nz = mag > 0.0
    q[nz] = ws.opt_dir[nz] / mag[nz]
    return q


def mm_solve(
    l_gram: np.ndarray,
    ch: WiretapChannel,
    q0: np.ndarray,
    cfg: MMConfig | None = None,
) -> tuple[np.ndarray, list[float]]:
    """Iterate build_workspace / mm_update from q0 until f stagnates.

    Returns the final phase vector and the trace of f values (bits), starting
    at f(q0).  The trace is non-decreasing up to round-off.  Hitting
    cfg.max_iters leaves the trace at max_iters + 1 entries with the last
    relative change still above tol.
    """
    cfg = cfg or MMConfig()
    q = require_unit_modulus(q0)
    l_gram = hermitize(np.asarray(l_gram, dtype=complex))
    trace = [f_of_q(l_gram, ch, q)]
    for _ in range(cfg.max_iters):
        ws = build_workspace(l_gram, ch, q)
        q = mm_update(ws)
        trace.append(f_of_q(l_gram, ch, q))
        rel = abs(trace[-1] - trace[-2]) / max(abs(trace[-2]), 1e-12)
        if rel <= cfg.tol:
            break
    return q, trace

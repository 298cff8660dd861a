"""Alternating optimization joining the covariance and phase steps.

Each round first re-optimizes the transmit covariance for the current
phases (warm-started at the previous covariance), then runs the surrogate
phase ascent for the new covariance (warm-started at the previous phases),
and records the secrecy rate.  Both steps are individually non-decreasing,
so the recorded trace is monotone up to round-off, and since the rate is
bounded for a fixed power budget the loop converges.  The stopping rule is
the relative rate change, with the denominator guarded so a zero-rate
plateau terminates immediately.

Two single-shot baselines are provided for benchmark sweeps: covariance
optimization at identity phases and at uniformly random phases.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import WiretapChannel, effective_channel, random_phases, require_unit_modulus, zero_phases
from .covariance import CovSolverConfig, optimize_covariance
from .objective import build_L, secrecy_rate
from .phase import MMConfig, mm_solve


def dbm_to_linear(p_dbm: float) -> float:
    """Transmit power in the unit-noise linear system: 10^(dBm / 10)."""
    return float(10.0 ** (p_dbm / 10.0))


@dataclass(frozen=True)
class AOConfig:
    ao_tol: float = 1e-4
    max_ao_iters: int = 300
    cov: CovSolverConfig = field(default_factory=CovSolverConfig)
    mm: MMConfig = field(default_factory=MMConfig)
    # "zero" starts at identity phases, "random" draws angles from phase_seed,
    # or pass an explicit unit-modulus vector.
    init_phase: str | np.ndarray = "zero"
    phase_seed: int = 0

    def __post_init__(self):
        if self.ao_tol <= 0:
            raise ValueError("ao_tol must be positive")
        if self.max_ao_iters < 1:
            raise ValueError("max_ao_iters must be at least 1")


@dataclass(frozen=True)
class AOReport:
    r_final: np.ndarray
    q_final: np.ndarray
    trace: list[tuple[int, float]]
    iterations: int
    converged: bool


def _initial_phases(ch: WiretapChannel, cfg: AOConfig) -> np.ndarray:
    if isinstance(cfg.init_phase, str):
        if cfg.init_phase == "zero":
            return zero_phases(ch.n)
        if cfg.init_phase == "random":
            return random_phases(ch.n, cfg.phase_seed)
        raise ValueError(f"unknown init_phase {cfg.init_phase!r}")
    q = require_unit_modulus(cfg.init_phase)
    if q.size != ch.n:
        raise ValueError("explicit initial phase vector has the wrong length")
    return q


def ao_solve(ch: WiretapChannel, p_dbm: float, cfg: AOConfig | None = None) -> AOReport:
    """Alternate covariance and phase steps until the rate change stalls.

    The trace holds (round index, secrecy rate in bits) pairs starting at
    the initial point, and is non-decreasing within round-off.
    """
    cfg = cfg or AOConfig()
    p = dbm_to_linear(p_dbm)
    q = _initial_phases(ch, cfg)
    r = (p / ch.m) * np.eye(ch.m, dtype=complex)
    c_prev = secrecy_rate(ch, r, q).c_s
    trace: list[tuple[int, float]] = [(0, c_prev)]
    converged = False
    for k in range(1, cfg.max_ao_iters + 1):
        h_b = effective_channel(ch, q, "bob")
        h_e = effective_channel(ch, q, "eve")
        cov_report = optimize_covariance(h_b, h_e, p, cfg.cov, r_init=r)
        r = cov_report.r_opt
        l_gram = build_L(ch, r)
        q, _ = mm_solve(l_gram, ch, q, cfg.mm)
        c_cur = secrecy_rate(ch, r, q).c_s
        trace.append((k, c_cur))
        if abs(c_cur - c_prev) / max(abs(c_prev), 1e-12) <= cfg.ao_tol:
            converged = True
            break
        c_prev = c_cur
    return AOReport(
        r_final=r,
        q_final=q,
        trace=trace,
        iterations=len(trace) - 1,
        converged=converged,
    )


def baseline_zero_phase(
    ch: WiretapChannel, p_dbm: float, cov_cfg: CovSolverConfig | None = None
) -> float:
    """Secrecy rate with identity phases and one covariance optimization."""
    q = zero_phases(ch.n)
    return _baseline(ch, q, p_dbm, cov_cfg)


def baseline_random_phase(
    ch: WiretapChannel,
    p_dbm: float,
    cov_cfg: CovSolverConfig | None = None,
    seed: int = 0,
) -> float:
    """Secrecy rate with seeded uniform random phases and one covariance step."""
    q = random_phases(ch.n, seed)
    return _baseline(ch, q, p_dbm, cov_cfg)


def _baseline(ch, q, p_dbm, cov_cfg):
    p = dbm_to_linear(p_dbm)
    h_b = effective_channel(ch, q, "bob")
    h_e = effective_channel(ch, q, "eve")
    report = optimize_covariance(h_b, h_e, p, cov_cfg)
    return report.c_s_achieved

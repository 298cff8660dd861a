"""Secrecy-rate maximization for reflecting-surface-assisted MIMO wiretap channels."""

from .ao import AOConfig, AOReport, ao_solve, baseline_random_phase, baseline_zero_phase, dbm_to_linear
from .channel import (
    FadingConfig,
    WiretapChannel,
    effective_channel,
    generate_channel,
    path_loss_linear,
    random_phases,
    zero_phases,
)
from .covariance import CovSolverConfig, CovSolverReport, optimize_covariance
from .experiments import (
    ExperimentConfig,
    SweepRow,
    load_config,
    run_convergence,
    run_sweep,
    seed_schedule,
    solve_single,
)
from .linalg import FactorizationError, hadamard, hermitize, is_psd, lambda_max, logdet2, sqrt_psd
from .objective import ObjectiveValue, build_L, f_of_q, secrecy_rate, validate_covariance
from .phase import MMConfig, SurrogateWorkspace, build_workspace, mm_solve, mm_update, surrogate_value

__all__ = [
    "AOConfig",
    "AOReport",
    "CovSolverConfig",
    "CovSolverReport",
    "ExperimentConfig",
    "FactorizationError",
    "FadingConfig",
    "MMConfig",
    "ObjectiveValue",
    "SurrogateWorkspace",
    "SweepRow",
    "WiretapChannel",
    "ao_solve",
    "baseline_random_phase",
    "baseline_zero_phase",
    "build_L",
    "build_workspace",
    "dbm_to_linear",
    "effective_channel",
    "f_of_q",
    "generate_channel",
    "hadamard",
    "hermitize",
    "is_psd",
    "lambda_max",
    "load_config",
    "logdet2",
    "mm_solve",
    "mm_update",
    "optimize_covariance",
    "path_loss_linear",
    "random_phases",
    "run_convergence",
    "run_sweep",
    "secrecy_rate",
    "seed_schedule",
    "solve_single",
    "sqrt_psd",
    "surrogate_value",
    "validate_covariance",
    "zero_phases",
]

"""Reproducible experiment harness: seeded channel batches, CSV reporting.

Config files are flat ``key = value`` text with dotted section names (see
``load_config``).  Seeds for every (channel, power point) cell come from a
splitmix64-based mixing schedule, so re-running a config reproduces the CSV
byte for byte; the optional timestamp header line is the only non-
deterministic output and can be suppressed (``output.timestamp = false``).
All three benchmark schemes consume the identical channel realization for a
given (channel, power) cell.

Output directory resolution order: explicit function argument, the
IRS_SECRECY_OUTPUT_DIR environment variable, then the config value.
"""

from __future__ import annotations

import dataclasses
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ao import AOConfig, ao_solve, baseline_random_phase, baseline_zero_phase
from .channel import FadingConfig, generate_channel
from .covariance import CovSolverConfig
from .phase import MMConfig

ENV_OUTPUT_DIR = "IRS_SECRECY_OUTPUT_DIR"

_MASK64 = (1 << 64) - 1
# Tag mixed into the schedule to decouple the random-phase baseline's angle
# draws from the channel draws.
_RANDOM_PHASE_TAG = 0x52504853


@dataclass(frozen=True)
class ExperimentConfig:
    dims: tuple[int, int, int, int] = (3, 10, 3, 3)
    fading: FadingConfig = field(default_factory=FadingConfig)
    power_grid_dbm: tuple[float, ...] = (35.0,)
    num_channels: int = 1
    ao: AOConfig = field(default_factory=AOConfig)
    output_dir: str = "results"
    master_seed: int = 1
    timestamp: bool = True

    def __post_init__(self):
        if self.num_channels < 1:
            raise ValueError("num_channels must be at least 1")
        grid = tuple(float(x) for x in self.power_grid_dbm)
        if not grid:
            raise ValueError("power grid must be non-empty")
        if list(grid) != sorted(grid):
            raise ValueError("power grid must be sorted ascending")
        object.__setattr__(self, "power_grid_dbm", grid)
        object.__setattr__(self, "dims", tuple(int(x) for x in self.dims))


@dataclass(frozen=True)
class SweepRow:
    power_dbm: float
    scheme: str
    mean_c_s: float
    stderr_c_s: float
    num_channels: int


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def seed_schedule(master_seed: int, channel_id: int, power_index: int) -> int:
    """Deterministic per-cell seed: splitmix64 absorption of the three inputs.

    Stable across versions; distinct inputs give distinct outputs with
    overwhelming probability.
    """
    s = _splitmix64(master_seed & _MASK64)
    s = _splitmix64(s ^ ((channel_id * 0xD1342543DE82EF95) & _MASK64))
    s = _splitmix64(s ^ ((power_index * 0xAF251AF3B0F025B5) & _MASK64))
    return s


def _phase_seed(cell_seed: int) -> int:
    return _splitmix64(cell_seed ^ _RANDOM_PHASE_TAG)


def _format(x: float) -> str:
    return format(float(x), ".17g")


def _resolve_output_dir(cfg: ExperimentConfig, output_dir: str | None) -> Path:
    path = output_dir or os.environ.get(ENV_OUTPUT_DIR) or cfg.output_dir
    return Path(path)


def _open_csv(directory: Path, name: str, header: str, stamped: bool):
    directory.mkdir(parents=True, exist_ok=True)
    handle = open(directory / name, "w", encoding="utf-8", newline="\n")
    if stamped:
        handle.write(f"# generated {time.strftime('%Y-%m-%dT%H:%M:%S')}\n")
    handle.write(header + "\n")
    return handle


def _channel_for_cell(cfg: ExperimentConfig, channel_id: int, power_index: int):
    cell_seed = seed_schedule(cfg.master_seed, channel_id, power_index)
    fading = dataclasses.replace(cfg.fading, seed=cell_seed)
    return generate_channel(cfg.dims, fading), cell_seed


def run_convergence(cfg: ExperimentConfig, output_dir: str | None = None) -> tuple[Path, list[str]]:
    """Write per-channel rate traces at the first grid power point.

    Returns the CSV path and a list of invariant-audit violations (empty on
    a clean run).  Columns: channel_id, iteration, c_s_bits.
    """
    directory = _resolve_output_dir(cfg, output_dir)
    csv = _open_csv(directory, "convergence.csv", "channel_id,iteration,c_s_bits", cfg.timestamp)
    power = cfg.power_grid_dbm[0]
    violations: list[str] = []
    with csv:
        for cid in range(cfg.num_channels):
            ch, _ = _channel_for_cell(cfg, cid, 0)
            report = ao_solve(ch, power, cfg.ao)
            values = [v for _, v in report.trace]
            for k, v in report.trace:
                csv.write(f"{cid},{k},{_format(v)}\n")
            if np.any(np.diff(values) < -1e-6):
                violations.append(f"channel {cid}: non-monotone trace")
    _write_gnuplot_convergence(directory)
    return directory / "convergence.csv", violations


def run_sweep(cfg: ExperimentConfig, output_dir: str | None = None) -> tuple[Path, list[str]]:
    """Benchmark the AO scheme against the zero/random phase baselines.

    For every (power, channel) cell all three schemes see the identical
    channel realization.  Rows are sorted by power then scheme name.
    Columns: power_dbm, scheme, mean_c_s, stderr_c_s, num_channels.
    """
    directory = _resolve_output_dir(cfg, output_dir)
    csv = _open_csv(
        directory, "sweep.csv", "power_dbm,scheme,mean_c_s,stderr_c_s,num_channels", cfg.timestamp
    )
    violations: list[str] = []
    rows: list[SweepRow] = []
    with csv:
        for p_idx, power in enumerate(cfg.power_grid_dbm):
            per_scheme = {"AO": [], "RandomPhase": [], "ZeroPhase": []}
            for cid in range(cfg.num_channels):
                ch, cell_seed = _channel_for_cell(cfg, cid, p_idx)
                ao_val = ao_solve(ch, power, cfg.ao).trace[-1][1]
                zero_val = baseline_zero_phase(ch, power, cfg.ao.cov)
                rand_val = baseline_random_phase(ch, power, cfg.ao.cov, seed=_phase_seed(cell_seed))
                per_scheme["AO"].append(ao_val)
                per_scheme["ZeroPhase"].append(zero_val)
                per_scheme["RandomPhase"].append(rand_val)
                if ao_val < zero_val - 1e-8:
                    violations.append(
                        f"power {power} channel {cid}: AO below the zero-phase baseline"
                    )
            for scheme in sorted(per_scheme):
                vals = np.asarray(per_scheme[scheme])
                stderr = float(np.std(vals, ddof=1) / np.sqrt(vals.size)) if vals.size > 1 else 0.0
                row = SweepRow(power, scheme, float(np.mean(vals)), stderr, vals.size)
                rows.append(row)
                csv.write(
                    f"{_format(row.power_dbm)},{row.scheme},{_format(row.mean_c_s)},"
                    f"{_format(row.stderr_c_s)},{row.num_channels}\n"
                )
            if np.mean(per_scheme["AO"]) < np.mean(per_scheme["ZeroPhase"]) - 1e-8:
                violations.append(f"power {power}: AO mean below the zero-phase mean")
    _write_gnuplot_sweep(directory)
    return directory / "sweep.csv", violations


def _write_gnuplot_convergence(directory: Path) -> None:
    script = """\
# gnuplot script: per-channel convergence traces
set datafile separator ","
set key autotitle columnheader off
set xlabel "round"
set ylabel "secrecy rate (bits/s/Hz)"
plot "convergence.csv" using 2:3:1 with linespoints palette notitle
"""
    (directory / "convergence.gp").write_text(script, encoding="utf-8")


def _write_gnuplot_sweep(directory: Path) -> None:
    script = """\
# gnuplot script: scheme comparison over the power grid
set datafile separator ","
set xlabel "transmit power (dBm)"
set ylabel "mean secrecy rate (bits/s/Hz)"
set key left top
plot for [s in "AO ZeroPhase RandomPhase"] \\
    "< grep ".s." sweep.csv" using 1:3:4 with yerrorlines title s
"""
    (directory / "sweep.gp").write_text(script, encoding="utf-8")


def solve_single(cfg: ExperimentConfig, channel_seed: int) -> dict:
    """One AO solve on an explicitly seeded channel; JSON-friendly report."""
    fading = dataclasses.replace(cfg.fading, seed=int(channel_seed))
    ch = generate_channel(cfg.dims, fading)
    power = cfg.power_grid_dbm[0]
    report = ao_solve(ch, power, cfg.ao)
    return {
        "dims": list(cfg.dims),
        "power_dbm": power,
        "channel_seed": int(channel_seed),
        "c_s_bits": report.trace[-1][1],
        "iterations": report.iterations,
        "converged": report.converged,
        "trace": [v for _, v in report.trace],
    }


_CONFIG_KEYS = {
    "dims.m": int,
    "dims.n": int,
    "dims.d": int,
    "dims.e": int,
    "fading.pathloss_ref_db": float,
    "fading.pathloss_exponent": float,
    "fading.dist_tx_irs": float,
    "fading.dist_irs_bob": float,
    "fading.dist_irs_eve": float,
    "power.grid_dbm": "float_list",
    "channels.count": int,
    "ao.tol": float,
    "ao.max_iters": int,
    "ao.init_phase": str,
    "ao.phase_seed": int,
    "cov.target_accuracy": float,
    "cov.max_newton_iters": int,
    "cov.barrier_mu": float,
    "cov.backtrack_alpha": float,
    "cov.backtrack_beta": float,
    "mm.tol": float,
    "mm.max_iters": int,
    "output.dir": str,
    "output.timestamp": "bool",
    "seed.master": int,
}


def _parse_value(kind, raw: str, key: str):
    raw = raw.strip()
    if kind == "float_list":
        return tuple(float(tok) for tok in raw.split(",") if tok.strip())
    if kind == "bool":
        low = raw.lower()
        if low in ("true", "yes", "1"):
            return True
        if low in ("false", "no", "0"):
            return False
        raise ValueError(f"config key {key}: expected a boolean, got {raw!r}")
    try:
        return kind(raw)
    except ValueError as exc:
        raise ValueError(f"config key {key}: cannot parse {raw!r}") from exc


def load_config(path: str | Path) -> ExperimentConfig:
    """Parse a flat dotted-key config file into an ExperimentConfig."""
    entries: dict[str, object] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        if key in entries:
            raise ValueError(f"{path}:{lineno}: duplicate config key {key!r}")
        entries[key] = _parse_value(_CONFIG_KEYS[key], raw, key)

    def pick(key, default):
        return entries.get(key, default)

    dims = (
        pick("dims.m", 3),
        pick("dims.n", 10),
        pick("dims.d", 3),
        pick("dims.e", 3),
    )
    fading = FadingConfig(
        pathloss_ref_db=pick("fading.pathloss_ref_db", -30.0),
        pathloss_exponent=pick("fading.pathloss_exponent", 3.0),
        dist_tx_irs=pick("fading.dist_tx_irs", 10.0),
        dist_irs_bob=pick("fading.dist_irs_bob", 10.0),
        dist_irs_eve=pick("fading.dist_irs_eve", 10.0),
    )
    cov = CovSolverConfig(
        target_accuracy=pick("cov.target_accuracy", 1e-8),
        max_newton_iters=pick("cov.max_newton_iters", 200),
        barrier_mu=pick("cov.barrier_mu", 30.0),
        backtrack_alpha=pick("cov.backtrack_alpha", 0.1),
        backtrack_beta=pick("cov.backtrack_beta", 0.5),
    )
    mm = MMConfig(tol=pick("mm.tol", 1e-4), max_iters=pick("mm.max_iters", 500))
    ao = AOConfig(
        ao_tol=pick("ao.tol", 1e-4),
        max_ao_iters=pick("ao.max_iters", 300),
        cov=cov,
        mm=mm,
        init_phase=pick("ao.init_phase", "zero"),
        phase_seed=pick("ao.phase_seed", 0),
    )
    return ExperimentConfig(
        dims=dims,
        fading=fading,
        power_grid_dbm=pick("power.grid_dbm", (35.0,)),
        num_channels=pick("channels.count", 1),
        ao=ao,
        output_dir=pick("output.dir", "results"),
        master_seed=pick("seed.master", 1),
        timestamp=pick("output.timestamp", True),
    )

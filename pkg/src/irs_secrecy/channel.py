"""Three-hop wiretap channel: transmitter to reflecting surface to Bob / Eve.

The direct transmitter-receiver paths are modeled as blocked, so every
effective channel is the cascade ``H_rx diag(q) H_tx`` where q holds the
unit-modulus reflection coefficients of the surface.  Noise at both receivers
is fixed at unit variance; transmit power lives in the same linear unit
system (dBm inputs are converted as 10^(dBm/10)).

Small-scale fading entries are i.i.d. circularly symmetric complex Gaussian
with unit variance, scaled per link by the distance-based amplitude from
``path_loss_linear``.  Generation is fully determined by (dims, config),
including the seed; no global RNG state is touched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIT_MODULUS_TOL = 1e-12


@dataclass(frozen=True)
class FadingConfig:
    """Large-scale fading law and link geometry.

    The amplitude multiplier for a link of length ``dist`` meters is
    sqrt(10^((pathloss_ref_db - 10 * pathloss_exponent * log10(dist)) / 10)).
    """

    pathloss_ref_db: float = -30.0
    pathloss_exponent: float = 3.0
    dist_tx_irs: float = 10.0
    dist_irs_bob: float = 10.0
    dist_irs_eve: float = 10.0
    seed: int = 0

    def __post_init__(self):
        for name in ("dist_tx_irs", "dist_irs_bob", "dist_irs_eve"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.pathloss_exponent <= 0:
            raise ValueError("pathloss_exponent must be positive")


@dataclass(frozen=True)
class WiretapChannel:
    """The three link matrices plus dimensions, under the unit-noise convention.

    Shapes: h_tx_irs is n x m, h_irs_bob is d x n, h_irs_eve is e x n.
    """

    h_tx_irs: np.ndarray
    h_irs_bob: np.ndarray
    h_irs_eve: np.ndarray
    noise_power: float = 1.0

    def __post_init__(self):
        for name in ("h_tx_irs", "h_irs_bob", "h_irs_eve"):
            mat = np.asarray(getattr(self, name), dtype=complex)
            if mat.ndim != 2:
                raise ValueError(f"{name} must be a matrix")
            if not np.all(np.isfinite(mat.view(float))):
                raise ValueError(f"{name} has non-finite entries")
            object.__setattr__(self, name, mat)
        n = self.h_tx_irs.shape[0]
        if self.h_irs_bob.shape[1] != n or self.h_irs_eve.shape[1] != n:
            raise ValueError(
                "inconsistent reflecting-element count across links: "
                f"{self.h_tx_irs.shape}, {self.h_irs_bob.shape}, {self.h_irs_eve.shape}"
            )
        if self.noise_power != 1.0:
            raise ValueError("noise power is fixed at 1 (unit-variance convention)")

    @property
    def m(self) -> int:
        return self.h_tx_irs.shape[1]

    @property
    def n(self) -> int:
        return self.h_tx_irs.shape[0]

    @property
    def d(self) -> int:
        return self.h_irs_bob.shape[0]

    @property
    def e(self) -> int:
        return self.h_irs_eve.shape[0]


def path_loss_linear(dist_m: float, cfg: FadingConfig) -> float:
    """Amplitude scale applied to every small-scale entry of a link."""
    if dist_m <= 0:
        raise ValueError("distance must be positive")
    loss_db = cfg.pathloss_ref_db - 10.0 * cfg.pathloss_exponent * np.log10(dist_m)
    return float(np.sqrt(10.0 ** (loss_db / 10.0)))


def _cn_matrix(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """i.i.d. circularly symmetric complex Gaussian entries, unit variance."""
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return (re + 1j * im) / np.sqrt(2.0)


def generate_channel(dims: tuple[int, int, int, int], cfg: FadingConfig) -> WiretapChannel:
    """Draw a channel for antenna/element counts ``dims = (m, n, d, e)``.

    Deterministic for a fixed (dims, cfg); links are drawn in the fixed
    order tx-irs, irs-bob, irs-eve from a generator seeded by cfg.seed.
    """
    m, n, d, e = dims
    if min(m, n, d, e) < 1:
        raise ValueError("all dimensions must be at least 1")
    rng = np.random.default_rng(cfg.seed)
    h_tx_irs = path_loss_linear(cfg.dist_tx_irs, cfg) * _cn_matrix(rng, n, m)
    h_irs_bob = path_loss_linear(cfg.dist_irs_bob, cfg) * _cn_matrix(rng, d, n)
    h_irs_eve = path_loss_linear(cfg.dist_irs_eve, cfg) * _cn_matrix(rng, e, n)
    return WiretapChannel(h_tx_irs, h_irs_bob, h_irs_eve)


def zero_phases(n: int) -> np.ndarray:
    """Phase vector with all coefficients at angle zero (identity surface)."""
    return np.ones(n, dtype=complex)


def random_phases(n: int, seed: int) -> np.ndarray:
    """Unit-modulus vector with angles uniform on [0, 2*pi), seeded."""
    rng = np.random.default_rng(seed)
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n))


def require_unit_modulus(q: np.ndarray, tol: float = UNIT_MODULUS_TOL) -> np.ndarray:
    """Validate |q_i| = 1 within ``tol`` and return q as a complex vector."""
    q = np.asarray(q, dtype=complex).ravel()
    gap = float(np.max(np.abs(np.abs(q) - 1.0))) if q.size else 0.0
    if gap > tol:
        raise ValueError(f"phase vector is not unit-modulus: max deviation {gap:.3e}")
    return q


def effective_channel(ch: WiretapChannel, q: np.ndarray, receiver: str) -> np.ndarray:
    """Cascade channel ``H_rx diag(q) H_tx`` toward ``receiver`` ("bob" or "eve")."""
    q = np.asarray(q, dtype=complex).ravel()
    if q.size != ch.n:
        raise ValueError(f"phase vector length {q.size} does not match n={ch.n}")
    if receiver == "bob":
        h_rx = ch.h_irs_bob
    elif receiver == "eve":
        h_rx = ch.h_irs_eve
    else:
        raise ValueError(f"receiver must be 'bob' or 'eve', got {receiver!r}")
    return h_rx @ (q[:, None] * ch.h_tx_irs)

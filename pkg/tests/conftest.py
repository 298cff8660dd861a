import numpy as np
import pytest

from irs_secrecy.channel import WiretapChannel
from irs_secrecy.linalg import hermitize


def cn_matrix(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Unit-variance circularly symmetric complex Gaussian matrix."""
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def random_channel(rng: np.random.Generator, m=3, n=8, d=2, e=2, scale=1.0) -> WiretapChannel:
    """Unscaled random channel for solver tests (no fading geometry)."""
    return WiretapChannel(
        scale * cn_matrix(rng, n, m),
        scale * cn_matrix(rng, d, n),
        scale * cn_matrix(rng, e, n),
    )


def random_psd(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    g = cn_matrix(rng, n, rank or n)
    return hermitize(g @ g.conj().T)


def random_unit_phases(rng: np.random.Generator, n: int) -> np.ndarray:
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_channel, random_unit_phases
from irs_secrecy.channel import (
    FadingConfig,
    WiretapChannel,
    effective_channel,
    generate_channel,
    path_loss_linear,
    random_phases,
    require_unit_modulus,
    zero_phases,
)


def test_path_loss_reference_distance():
    cfg = FadingConfig()
    assert path_loss_linear(1.0, cfg) == pytest.approx(np.sqrt(1e-3), rel=1e-12)


def test_path_loss_ten_meters():
    cfg = FadingConfig()
    assert path_loss_linear(10.0, cfg) == pytest.approx(1e-3, rel=1e-12)


def test_path_loss_two_meters():
    amp = path_loss_linear(2.0, FadingConfig())
    assert amp**2 == pytest.approx(1e-3 * 2.0**-3, rel=1e-12)


def test_path_loss_rejects_nonpositive_distance():
    with pytest.raises(ValueError):
        path_loss_linear(0.0, FadingConfig())


def test_generate_channel_deterministic():
    cfg = FadingConfig(seed=42)
    ch1 = generate_channel((2, 4, 2, 2), cfg)
    ch2 = generate_channel((2, 4, 2, 2), cfg)
    assert np.array_equal(ch1.h_tx_irs, ch2.h_tx_irs)
    assert np.array_equal(ch1.h_irs_bob, ch2.h_irs_bob)
    assert np.array_equal(ch1.h_irs_eve, ch2.h_irs_eve)


def test_generate_channel_shapes():
    ch = generate_channel((2, 4, 2, 2), FadingConfig(seed=0))
    assert ch.h_tx_irs.shape == (4, 2)
    assert ch.h_irs_bob.shape == (2, 4)
    assert ch.h_irs_eve.shape == (2, 4)
    assert (ch.m, ch.n, ch.d, ch.e) == (2, 4, 2, 2)


def test_generate_channel_empirical_variance():
    # Mean squared magnitude over many draws at 1 m should hit the path-loss
    # power 1e-3 within 5 percent.
    cfg = FadingConfig(dist_tx_irs=1.0)
    samples = []
    for seed in range(10_000):
        ch = generate_channel((2, 2, 1, 1), FadingConfig(dist_tx_irs=1.0, seed=seed))
        samples.append(np.abs(ch.h_tx_irs) ** 2)
    mean_power = float(np.mean(samples))
    assert mean_power == pytest.approx(1e-3, rel=0.05)


def test_effective_channel_identity_phase(rng):
    ch = random_channel(rng)
    q = zero_phases(ch.n)
    assert np.allclose(effective_channel(ch, q, "bob"), ch.h_irs_bob @ ch.h_tx_irs)


def test_effective_channel_scalar_sign_flip():
    ch = WiretapChannel(np.array([[2.0 + 0j]]), np.array([[3.0 + 0j]]), np.array([[1.0 + 0j]]))
    q = np.array([np.exp(1j * np.pi)])
    assert effective_channel(ch, q, "bob")[0, 0] == pytest.approx(-6.0, abs=1e-12)


def test_effective_channel_matches_triple_product(rng):
    ch = random_channel(rng, m=3, n=6, d=2, e=2)
    q = random_unit_phases(rng, ch.n)
    direct = ch.h_irs_eve @ np.diag(q) @ ch.h_tx_irs
    assert np.max(np.abs(effective_channel(ch, q, "eve") - direct)) < 1e-12


def test_effective_channel_length_mismatch(rng):
    ch = random_channel(rng)
    with pytest.raises(ValueError):
        effective_channel(ch, np.ones(ch.n + 1), "bob")


def test_effective_channel_global_phase_homogeneity(rng):
    ch = random_channel(rng)
    q = random_unit_phases(rng, ch.n)
    phi = np.exp(1j * 0.7)
    assert np.allclose(
        effective_channel(ch, phi * q, "bob"), phi * effective_channel(ch, q, "bob")
    )


def test_channel_shape_validation():
    with pytest.raises(ValueError):
        WiretapChannel(np.ones((4, 2)), np.ones((2, 3)), np.ones((2, 4)))
    with pytest.raises(ValueError):
        WiretapChannel(np.ones((4, 2)), np.ones((2, 4)), np.ones((2, 4)), noise_power=2.0)


def test_phase_helpers():
    assert np.array_equal(zero_phases(3), np.ones(3, dtype=complex))
    q = random_phases(5, seed=9)
    assert np.array_equal(q, random_phases(5, seed=9))
    assert np.max(np.abs(np.abs(q) - 1.0)) <= 1e-12
    with pytest.raises(ValueError):
        require_unit_modulus(np.array([1.0, 0.5]))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_generation_depends_only_on_config(seed):
    dims = (2, 3, 2, 2)
    a = generate_channel(dims, FadingConfig(seed=seed))
    b = generate_channel(dims, FadingConfig(seed=seed))
    assert np.array_equal(a.h_irs_eve, b.h_irs_eve)

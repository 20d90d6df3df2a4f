import numpy as np
import pytest
from hypothesis import given, strategies as st

from uvwdecomp.errors import InvalidInputError, InvalidParameterError
from uvwdecomp.partition import (compute_partition, local_variance, normalize_partition,
                                 pyramidalize)
from uvwdecomp.synth import add_gaussian_noise, default_spec, make_synthetic


def two_pass_variance(v, L):
    """Mean then squared deviation over the zero-padded L x L window."""
    h = L // 2
    padded = np.pad(v, h)
    out = np.empty_like(v)
    for i in range(v.shape[0]):
        for j in range(v.shape[1]):
            win = padded[i:i + L, j:j + L]
            m = win.sum() / L**2
            out[i, j] = ((win - m) ** 2).sum() / L**2
    return out


def test_single_spike_center():
    v = np.zeros((3, 3))
    v[0, 0] = 9.0
    assert local_variance(v, 3)[1, 1] == pytest.approx(8.0, abs=1e-12)


def test_constant_zero_variance_interior():
    v = np.full((12, 12), 5.0)
    lv = local_variance(v, 5)
    np.testing.assert_allclose(lv[2:-2, 2:-2], 0.0, atol=1e-12)
    assert not local_variance(np.zeros((6, 6)), 3).any()


@pytest.mark.parametrize("L", [4, 1, 2, 3.0])
def test_bad_window(L):
    with pytest.raises(InvalidParameterError):
        local_variance(np.zeros((8, 8)), L)


@pytest.mark.parametrize("L", [3, 5, 7])
def test_matches_two_pass_oracle(rng, L):
    v = rng.normal(scale=30, size=(32, 32))
    np.testing.assert_allclose(local_variance(v, L), two_pass_variance(v, L), atol=1e-9)


def test_interior_nonnegative(rng):
    v = rng.normal(scale=30, size=(32, 32))
    assert local_variance(v, 7)[3:-3, 3:-3].min() >= -1e-12


def test_normalize_constant_and_endpoints():
    np.testing.assert_array_equal(normalize_partition(np.full((4, 4), 3.0)), 0.5)
    nu = normalize_partition(np.array([[0.0, 8.0], [8.0, 0.0]]), 0.01)
    np.testing.assert_allclose(nu, [[0.01, 0.99], [0.99, 0.01]], atol=1e-15)


def test_normalize_rejects():
    with pytest.raises(InvalidInputError):
        normalize_partition(np.array([[np.nan, 1.0]]))
    with pytest.raises(InvalidParameterError):
        normalize_partition(np.ones((2, 2)), 0.5)


@given(st.integers(0, 2**32 - 1), st.floats(0.001, 0.4))
def test_normalize_range_and_monotone(seed, floor):
    raw = np.random.default_rng(seed).normal(size=(6, 6))
    nu = normalize_partition(raw, floor)
    assert nu.min() == floor
    assert nu.max() == 1 - floor
    order = np.argsort(raw, axis=None)
    assert np.all(np.diff(nu.ravel()[order]) >= 0)


def test_partition_constant_image():
    nu1, nu2 = compute_partition(np.full((16, 16), 60.0), 10.0, 100.0, 3)
    np.testing.assert_array_equal(nu1, 0.5)
    np.testing.assert_array_equal(nu2, 0.5)


def test_partition_complement_exact(rng):
    nu1, nu2 = compute_partition(rng.uniform(0, 255, (16, 16)), 10.0, 100.0, 3)
    assert np.all(nu1 + nu2 == 1.0)
    assert np.all((nu1 > 0) & (nu1 < 1))


def test_partition_higher_on_texture():
    clean, mask = make_synthetic(default_spec())
    f = add_gaussian_noise(clean, 20.0, 0)
    nu1, _ = compute_partition(f, 50.0, 1000.0, 7)
    assert nu1[mask].mean() > nu1[~mask].mean()


def test_pyramid_constant():
    pyr = pyramidalize(np.full((8, 8), 0.5), 3)
    assert len(pyr) == 3
    for k, grid in enumerate(pyr.levels, 1):
        assert grid.shape == (8 >> k, 8 >> k)
        np.testing.assert_array_equal(grid, 0.5)


def test_pyramid_block_mean():
    nu = np.full((4, 4), 0.1)
    nu[:2, :2] = 0.9
    np.testing.assert_allclose(pyramidalize(nu, 1)[0], [[0.9, 0.1], [0.1, 0.1]], atol=1e-15)


def test_pyramid_odd_size_ceil_halves():
    pyr = pyramidalize(np.full((10, 6), 0.3), 2)
    assert pyr[0].shape == (5, 3) and pyr[1].shape == (3, 2)
    np.testing.assert_allclose(pyr[1], 0.3)


def test_pyramid_level_limit():
    with pytest.raises(InvalidParameterError):
        pyramidalize(np.full((8, 8), 0.5), 4)
    with pytest.raises(InvalidParameterError):
        pyramidalize(np.full((8, 8), 0.5), 0)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_pyramid_preserves_mean_and_range(seed, levels):
    nu = np.random.default_rng(seed).uniform(0.01, 0.99, size=(32, 16))
    for grid in pyramidalize(nu, levels).levels:
        assert abs(grid.mean() - nu.mean()) <= 1e-12
        assert grid.min() > 0 and grid.max() < 1

"""Discretization and transform contracts."""

import numpy as np
import pytest

from antiplane import Grid, SymmetryError, forward, inverse
from antiplane.grid import half_to_full


@pytest.fixture
def grid():
    return Grid(L=64.0, N=64)


def test_grid_geometry(grid):
    assert grid.dx * grid.N == grid.L
    assert grid.x_centers[grid.N // 2] == 0.0
    assert np.abs(grid.k_values).max() == pytest.approx(np.pi / grid.dx)
    j = np.fft.fftfreq(grid.N) * grid.N
    assert np.allclose(grid.k_values, 2 * np.pi * j / grid.L)


def test_grid_rejects_bad_n():
    with pytest.raises(ValueError, match="power of two"):
        Grid(L=10.0, N=100)


def test_constant_field(grid):
    amps = forward(grid, np.full(grid.N, 3.25))
    assert amps[0] == pytest.approx(3.25, abs=1e-14)
    assert np.abs(amps[1:]).max() <= 1e-14


def test_single_cosine_mode(grid):
    f = np.cos(2 * np.pi * grid.x_centers / grid.L)
    amps = forward(grid, f)
    assert amps[1] == pytest.approx(0.5, abs=1e-13)
    assert amps[-1] == pytest.approx(0.5, abs=1e-13)
    others = np.delete(np.abs(amps), [1, grid.N - 1])
    assert others.max() <= 1e-13


def test_nyquist_mode_kept(grid):
    f = np.cos(grid.k_values[grid.N // 2] * grid.x_centers)
    amps = forward(grid, f)
    assert amps[grid.N // 2] == pytest.approx(1.0, abs=1e-13)
    assert amps[grid.N // 2].imag == 0.0


def test_roundtrip(grid, rng):
    f = rng.normal(size=grid.N)
    back = inverse(grid, forward(grid, f))
    assert np.abs(back - f).max() <= 1e-12 * np.abs(f).max()


def test_hermitian_symmetry_enforced(grid, rng):
    amps = forward(grid, rng.normal(size=grid.N))
    mirrored = np.concatenate((amps[:1], amps[1:][::-1]))
    assert np.array_equal(amps, np.conj(mirrored))


def test_parseval(grid, rng):
    f = rng.normal(size=grid.N)
    amps = forward(grid, f)
    lhs = np.sum(f * f) / grid.N
    rhs = np.sum(np.abs(amps) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_linearity(grid, rng):
    f, g = rng.normal(size=grid.N), rng.normal(size=grid.N)
    a, b = 2.5, -1.25
    lhs = forward(grid, a * f + b * g)
    rhs = a * forward(grid, f) + b * forward(grid, g)
    assert np.abs(lhs - rhs).max() <= 1e-12 * np.abs(rhs).max()


def test_zero_mode_is_mean(grid, rng):
    f = rng.normal(size=grid.N) + 4.0
    amps = forward(grid, f)
    assert amps[0].real == pytest.approx(f.mean(), rel=1e-12)


def test_shape_and_type_errors(grid):
    with pytest.raises(ValueError, match="length"):
        forward(grid, np.zeros(grid.N + 1))
    with pytest.raises(ValueError, match="real"):
        forward(grid, np.zeros(grid.N, dtype=complex))
    with pytest.raises(ValueError, match="length"):
        inverse(grid, np.zeros(grid.N - 1, dtype=complex))


def test_inverse_rejects_non_hermitian(grid):
    amps = np.zeros(grid.N, dtype=complex)
    amps[1] = 1.0  # no conjugate partner
    with pytest.raises(SymmetryError):
        inverse(grid, amps)


def test_element_index(grid):
    assert grid.element_index(0.0) == grid.N // 2
    assert grid.element_index(grid.dx * 3 + 0.4 * grid.dx) == grid.N // 2 + 3
    with pytest.raises(ValueError):
        grid.element_index(grid.L)


def test_reflect_is_involution(grid, rng):
    f = rng.normal(size=grid.N)
    assert np.array_equal(grid.reflect(grid.reflect(f)), f)
    # an even field is a fixed point
    even = np.cos(2 * np.pi * grid.x_centers / grid.L)
    assert np.abs(grid.reflect(even) - even).max() <= 1e-15


def test_half_to_full_roundtrip(grid, rng):
    amps = forward(grid, rng.normal(size=grid.N))
    full = half_to_full(grid, amps[: grid.N // 2 + 1])
    assert np.array_equal(full, amps)

import numpy as np
import pytest

from nlse_ite import GridSpec, laplacian, quadrature_weight


def test_gridspec_basic():
    grid = GridSpec(length=10.0, points=100)
    assert grid.dx == pytest.approx(0.1)
    assert abs(grid.dx * grid.points - grid.length) <= 1e-14 * grid.length
    x = grid.coordinates
    assert x[0] == pytest.approx(-5.0)
    assert np.all(np.diff(x) > 0)
    assert np.allclose(np.diff(x), grid.dx, rtol=1e-14)


def test_gridspec_even_n_has_origin_on_grid():
    grid = GridSpec(length=40.0, points=512)
    assert grid.coordinates[256] == 0.0


def test_gridspec_rejects_bad_inputs():
    with pytest.raises(ValueError):
        GridSpec(length=-1.0, points=32)
    with pytest.raises(ValueError):
        GridSpec(length=10.0, points=3)


def test_laplacian_constant_field_is_zero():
    grid = GridSpec(length=4.0, points=4)
    out = laplacian(np.full(4, 3.7 + 0.2j), grid)
    assert np.allclose(out, 0.0)


def test_laplacian_alternating_pairs():
    # psi = [1, 0, -1, 0] on dx = 1 is the kx*dx = pi/2 mode: eigenvalue -2.
    grid = GridSpec(length=4.0, points=4)
    out = laplacian(np.array([1.0, 0.0, -1.0, 0.0]), grid)
    assert np.allclose(out, [-2.0, 0.0, 2.0, 0.0])


def test_laplacian_shape_mismatch():
    grid = GridSpec(length=4.0, points=4)
    with pytest.raises(ValueError, match="shape"):
        laplacian(np.zeros(5), grid)


@pytest.mark.parametrize("n,m", [(8, 1), (64, 3), (257, 100)])
def test_plane_wave_eigenvector(n, m):
    grid = GridSpec(length=13.0, points=n)
    j = np.arange(n)
    psi = np.exp(2j * np.pi * m * j / n)
    eig = -(2.0 - 2.0 * np.cos(2.0 * np.pi * m / n)) / grid.dx**2
    assert np.allclose(laplacian(psi, grid), eig * psi, rtol=1e-12, atol=1e-12 * abs(eig))


def test_laplacian_linearity():
    rng = np.random.default_rng(7)
    grid = GridSpec(length=5.0, points=37)
    u = rng.normal(size=37) + 1j * rng.normal(size=37)
    v = rng.normal(size=37) + 1j * rng.normal(size=37)
    a, b = 1.3 - 0.4j, -2.2 + 0.9j
    lhs = laplacian(a * u + b * v, grid)
    rhs = a * laplacian(u, grid) + b * laplacian(v, grid)
    assert np.allclose(lhs, rhs, rtol=1e-13, atol=1e-12)


def test_laplacian_self_adjoint():
    rng = np.random.default_rng(11)
    grid = GridSpec(length=9.0, points=64)
    u = rng.normal(size=64) + 1j * rng.normal(size=64)
    v = rng.normal(size=64) + 1j * rng.normal(size=64)
    lhs = np.sum(np.conj(u) * laplacian(v, grid))
    rhs = np.sum(np.conj(laplacian(u, grid)) * v)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_laplacian_second_order_accuracy():
    L = 40.0
    errors = []
    for n in (128, 256):
        grid = GridSpec(length=L, points=n)
        f = np.sin(2.0 * np.pi * grid.coordinates / L)
        exact = -((2.0 * np.pi / L) ** 2) * f
        errors.append(np.max(np.abs(laplacian(f, grid) - exact)))
    ratio = errors[0] / errors[1]
    assert 3.6 <= ratio <= 4.4


def test_quadrature_weight_is_dx():
    assert quadrature_weight(GridSpec(length=10.0, points=100)) == pytest.approx(0.1)


def test_quadrature_constant_field():
    grid = GridSpec(length=40.0, points=128)
    assert np.sum(np.ones(128)) * quadrature_weight(grid) == pytest.approx(40.0)


def test_quadrature_sech_squared():
    # Integral of sech^2 over the line is exactly 2; the periodic trapezoidal
    # rule on L = 40 only misses the exponentially small tails.
    grid = GridSpec(length=40.0, points=512)
    f = 1.0 / np.cosh(grid.coordinates) ** 2
    assert np.sum(f) * quadrature_weight(grid) == pytest.approx(2.0, abs=1e-8)

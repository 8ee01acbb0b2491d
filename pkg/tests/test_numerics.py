import math

import numpy as np
import pytest

from vortexsim import numerics


def test_bessel_at_zero():
    assert numerics.bessel_j(0, 0.0) == 1.0
    for n in range(1, 9):
        assert numerics.bessel_j(n, 0.0) == 0.0


def test_bessel_recurrence():
    rng = np.random.default_rng(11)
    x = rng.uniform(0.3, 60.0, size=40)
    for n in range(1, 12):
        lhs = numerics.bessel_j(n - 1, x) + numerics.bessel_j(n + 1, x)
        rhs = (2.0 * n / x) * numerics.bessel_j(n, x)
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_bessel_parity():
    x = np.linspace(0.1, 30.0, 23)
    for n in range(0, 7):
        assert np.allclose(numerics.bessel_j(n, -x),
                           (-1.0) ** n * numerics.bessel_j(n, x),
                           rtol=0, atol=1e-14)


def test_bessel_negative_order():
    x = np.linspace(0.2, 20.0, 17)
    for n in range(1, 6):
        assert np.allclose(numerics.bessel_j(-n, x),
                           (-1.0) ** n * numerics.bessel_j(n, x),
                           rtol=0, atol=1e-14)


def test_bessel_quadrature_identity():
    # int_0^{2pi} e^{i x cos phi} e^{i n phi} dphi = 2 pi i^n J_n(x),
    # via the periodic trapezoid rule (spectrally exact here)
    n_grid = 512
    phi = np.arange(n_grid) * (2.0 * np.pi / n_grid)
    for x in (0.5, 5.0, 20.0):
        for n in range(-8, 9):
            val = np.sum(np.exp(1j * x * np.cos(phi) + 1j * n * phi))
            val *= 2.0 * np.pi / n_grid
            ref = 2.0 * np.pi * (1j) ** n * numerics.bessel_j(n, x)
            assert abs(val - ref) < 1e-10


def test_bessel_large_argument_accuracy():
    from scipy.special import jv

    x = np.array([100.0, 500.0, 1000.0])
    for n in (0, 1, 5, 20, 64):
        assert np.max(np.abs(numerics.bessel_j(n, x) - jv(n, x))) < 1e-12


def test_bessel_order_cap():
    with pytest.raises(ValueError):
        numerics.bessel_j(65, 1.0)


def test_integrate_sin():
    val, err = numerics.integrate_1d(math.sin, 0.0, math.pi)
    assert val == pytest.approx(2.0, abs=1e-12)


def test_integrate_gaussian_moment():
    # smearing-profile normalization integral equals 1
    sigma = 10.0
    val, _ = numerics.integrate_1d(
        lambda q: (math.pi * sigma**2) ** -0.5 * math.exp(-q**2 / sigma**2),
        -80.0, 80.0)
    assert val == pytest.approx(1.0, abs=1e-12)


def test_integrate_oscillatory_sinc_kernel():
    # int_{-L}^{L} e^{i Delta z} dz = 2 sin(Delta L)/Delta
    L, delta = 4.0, 17.3
    val = numerics.integrate_oscillatory(
        lambda z: np.exp(1j * delta * z), -L, L, freq=delta)
    assert val == pytest.approx(2.0 * math.sin(delta * L) / delta, abs=1e-10)


def test_spectral_derivative_constant():
    out = numerics.spectral_derivative_periodic(np.ones(64))
    assert np.max(np.abs(out)) < 1e-13


def test_spectral_derivative_eigenfunction():
    phi = np.arange(64) * (2.0 * np.pi / 64)
    f = np.exp(3j * phi)
    out = numerics.spectral_derivative_periodic(f)
    assert np.max(np.abs(out - 3j * f)) < 1e-12


def test_spectral_derivative_random_band_limited():
    rng = np.random.default_rng(5)
    n = 128
    phi = np.arange(n) * (2.0 * np.pi / n)
    f = np.zeros(n, dtype=complex)
    df = np.zeros(n, dtype=complex)
    for k in range(-20, 21):
        c = rng.normal() + 1j * rng.normal()
        f += c * np.exp(1j * k * phi)
        df += 1j * k * c * np.exp(1j * k * phi)
    out = numerics.spectral_derivative_periodic(f)
    assert np.max(np.abs(out - df)) < 1e-12 * np.max(np.abs(df))


def test_spectral_derivative_rejects_non_pow2():
    with pytest.raises(ValueError):
        numerics.spectral_derivative_periodic(np.ones(60))


def test_transverse_closure_kernel():
    # int_0^R rho J_l(p rho) J_l(p' rho) drho acting on a smooth g(p')
    # tends to g(p)/p as R grows (checked as an improving trend)
    l, p = 2, 3.0
    pp = np.linspace(1.5, 4.5, 121)
    g = np.exp(-((pp - 3.2) ** 2))

    def smoothed(big_r):
        rho = np.linspace(0.0, big_r, int(24 * big_r) + 1)
        dr = rho[1] - rho[0]
        jl_p = numerics.bessel_j(l, p * rho)
        jl_pp = numerics.bessel_j(l, np.outer(pp, rho))
        kern = (jl_pp * (rho * jl_p)[None, :]).sum(axis=1) * dr
        return np.trapezoid(kern * g, pp)

    target = math.exp(-((3.0 - 3.2) ** 2)) / p
    errs = [abs(smoothed(r) - target) for r in (30.0, 60.0, 120.0)]
    assert errs[1] < errs[0]
    assert errs[2] < 0.02 * abs(target)


def test_quadrature_rule_validation():
    with pytest.raises(ValueError):
        numerics.QuadratureRule(order=0)
    with pytest.raises(ValueError):
        numerics.QuadratureRule(abs_tol=-1.0)

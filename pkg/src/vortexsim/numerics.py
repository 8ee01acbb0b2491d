"""Shared numerical kernels: integer-order Bessel J, quadrature, spectral tools.

Bessel functions are evaluated by backward recurrence with Miller
normalization (sum rule J_0 + 2 sum J_2k = 1), vectorized over the argument
array.  Orders are capped; the twisted-beam code only ever needs |l| + 2.

Oscillatory integrals use composite Gauss-Legendre panels sized to the known
carrier frequency; smooth adaptive integrals delegate to Gauss-Kronrod.
Delta-like kernels are never discretized here; callers reformulate them
analytically first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate as _si

MAX_BESSEL_ORDER = 64


@dataclass(frozen=True)
class QuadratureRule:
    """Composite Gauss-Legendre rule: `order` nodes on each of `panels` panels."""

    order: int = 32
    panels: int = 1
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.order < 1 or self.panels < 1:
            raise ValueError("order and panels must be >= 1")
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ValueError("tolerances must be positive")


def gauss_legendre_panels(a: float, b: float, panels: int, order: int):
    """Nodes and weights of a composite Gauss-Legendre rule on [a, b]."""
    x0, w0 = leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * x0[None, :]).ravel()
    w = (half[:, None] * w0[None, :]).ravel()
    return x, w


def integrate_1d(f, a: float, b: float, rule: QuadratureRule | None = None):
    """Adaptive Gauss-Kronrod integral of a smooth scalar function.

    Returns (value, error_estimate).  Raises RuntimeError when the requested
    tolerance is not reached, with the best estimate attached to the message.
    """
    rule = rule or QuadratureRule()
    val, err = _si.quad(f, a, b, epsabs=rule.abs_tol, epsrel=rule.rel_tol,
                        limit=400)
    if err > max(rule.abs_tol, rule.rel_tol * abs(val)) * 50.0:
        raise RuntimeError(
            f"quadrature did not converge: value={val!r} error={err!r}")
    return val, err


def integrate_oscillatory(f, a: float, b: float, freq: float,
                          points_per_period: int = 16, order: int = 16):
    """Integral of f over [a, b] where f oscillates at angular frequency freq.

    Panel count is chosen so each carrier period is covered by at least
    `points_per_period` Gauss-Legendre nodes.
    """
    periods = abs(freq) * (b - a) / (2.0 * np.pi)
    panels = max(1, int(np.ceil(periods * points_per_period / order)) + 1)
    x, w = gauss_legendre_panels(a, b, panels, order)
    return np.sum(f(x) * w)


def _bessel_j_miller(nmax: int, x: np.ndarray) -> np.ndarray:
    """All orders 0..nmax by backward recurrence with Miller normalization."""
    xmax = float(np.max(x)) if x.size else 1.0
    start = int(np.ceil(max(nmax, xmax) + 12.0 * np.sqrt(max(nmax, xmax) + 1.0) + 20))
    if start % 2:
        start += 1
    jp = np.zeros_like(x)
    jc = np.full_like(x, 1e-300)
    out = np.zeros((nmax + 1,) + x.shape)
    norm = np.zeros_like(x)
    safe_x = np.where(x == 0.0, 1.0, x)
    for n in range(start, 0, -1):
        jm = (2.0 * n / safe_x) * jc - jp
        jp, jc = jc, jm
        big = np.abs(jc) > 1e250
        if np.any(big):
            scale = np.where(big, 1e-250, 1.0)
            jc = jc * scale
            jp = jp * scale
            norm = norm * scale
            out[: nmax + 1] *= scale
        if n - 1 <= nmax:
            out[n - 1] = jc
        if (n - 1) >= 2 and (n - 1) % 2 == 0:
            norm += 2.0 * jc
    norm += out[0] if nmax >= 0 else jc
    out /= norm
    # x == 0 column: J_0 = 1, J_n>0 = 0
    zero = (x == 0.0)
    if np.any(zero):
        out[:, zero] = 0.0
        out[0, zero] = 1.0
    return out


def bessel_j_orders(nmax: int, x) -> np.ndarray:
    """J_n(x) for all n in 0..nmax, shape (nmax+1,) + x.shape.

    Accurate to ~1e-12 absolute for |x| <= 1e3 and nmax <= MAX_BESSEL_ORDER.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    if nmax > MAX_BESSEL_ORDER:
        raise ValueError(f"order {nmax} beyond cap {MAX_BESSEL_ORDER}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    sign = np.where(x < 0.0, -1.0, 1.0)
    ax = np.abs(x)
    out = _bessel_j_miller(nmax, ax)
    # J_n(-x) = (-1)^n J_n(x)
    parity = np.array([(-1.0) ** n for n in range(nmax + 1)])
    neg = sign < 0.0
    if np.any(neg):
        out[:, neg] = out[:, neg] * parity[:, None]
    return out


def bessel_j(n: int, x):
    """Bessel function of the first kind of integer order.

    Supports negative orders via J_{-n} = (-1)^n J_n and negative arguments
    via J_n(-x) = (-1)^n J_n(x).  `x` may be a scalar or array.
    """
    n = int(n)
    an = abs(n)
    if an > MAX_BESSEL_ORDER:
        raise ValueError(f"order {n} beyond cap {MAX_BESSEL_ORDER}")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    vals = bessel_j_orders(an, x_arr)[an]
    if n < 0 and an % 2:
        vals = -vals
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(vals[0])
    return vals.reshape(np.shape(x))


def spectral_derivative_periodic(samples: np.ndarray) -> np.ndarray:
    """d/dphi of uniform samples over one period of [0, 2pi).

    Exact for band-limited input up to Nyquist.  The sample count must be a
    power of two (guards against silent aliasing from ad-hoc grids).
    """
    samples = np.asarray(samples)
    n = samples.shape[-1]
    if n < 2 or (n & (n - 1)) != 0:
        raise ValueError(f"sample count must be a power of two, got {n}")
    k = np.fft.fftfreq(n, d=1.0 / n)  # integer wavenumbers
    k = k.astype(float)
    if n % 2 == 0:
        k[n // 2] = 0.0  # zero the Nyquist mode of the derivative
    spec = np.fft.fft(samples, axis=-1)
    return np.fft.ifft(1j * k * spec, axis=-1)


def cumulative_simpson(y: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Cumulative integral along the last axis, Simpson accuracy, starts at 0.

    Handles complex integrands (scipy's routine silently casts to real).
    """
    y = np.asarray(y)
    if np.iscomplexobj(y):
        return (_si.cumulative_simpson(y.real, x=x, initial=0.0)
                + 1j * _si.cumulative_simpson(y.imag, x=x, initial=0.0))
    return np.asarray(_si.cumulative_simpson(y, x=x, initial=0.0))

"""Finite, possibly unipolar, linearly polarized plane-wave laser pulse.

The pulse counterpropagates against the electron (it moves toward -z), so
every field quantity depends on the single light-front coordinate
xi = c t + z.  The electric component is

    E_x(xi) = E* exp(-(omega xi / c)^2 / a^2) sin(omega xi / c + phi),

i.e. the Gaussian envelope multiplies the *field*, not the potential, which
is what makes nonzero field area (unipolarity) possible.  The vector
potential A(xi) = -int_{-inf}^{xi} E dxi' follows in closed form from the
complex error function, as does its asymptotic value

    A0 = -(sqrt(pi) c a E*/omega) exp(-a^2/4) sin(phi),

and the electric-field area S_E = -A0/c.  The cumulative integrals of A and
A^2 enter the Volkov phases; beyond the pulse support they continue
analytically as plateau + linear growth, so arbitrarily late light-front
times never require extending tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import erf

from .units import C, intensity_to_field

DEFAULT_SUPPORT_TOL = 1e-8
DEFAULT_TABLE_POINTS = 2**14 + 1


def support_bounds(omega: float, a: float, tol: float = DEFAULT_SUPPORT_TOL) -> float:
    """Smallest xi_max with envelope below `tol` of peak for |xi| > xi_max."""
    if not (0.0 < tol < 1.0):
        raise ValueError(f"support tolerance must be in (0, 1), got {tol}")
    if omega <= 0.0 or a <= 0.0:
        raise ValueError("omega and a must be positive")
    return (C * a / omega) * math.sqrt(math.log(1.0 / tol))


@dataclass
class LaserPulse:
    """Immutable pulse model with precomputed xi tables.

    Attributes `A0` and `S_E` hold the asymptotic potential and field area;
    `ia_end`, `ia2_end` are the plateau values of the cumulative integrals at
    +xi_max.  Tables sample [-xi_max, xi_max] uniformly.
    """

    E_star: float
    omega: float
    a: float
    phi: float = 0.0
    support_tol: float = DEFAULT_SUPPORT_TOL
    n_points: int = DEFAULT_TABLE_POINTS

    xi_max: float = dc_field(init=False)
    A0: float = dc_field(init=False)
    S_E: float = dc_field(init=False)
    ia_end: float = dc_field(init=False)
    ia2_end: float = dc_field(init=False)
    xi_grid: np.ndarray = dc_field(init=False, repr=False)
    E_table: np.ndarray = dc_field(init=False, repr=False)
    A_table: np.ndarray = dc_field(init=False, repr=False)
    IA_table: np.ndarray = dc_field(init=False, repr=False)
    IA2_table: np.ndarray = dc_field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.E_star < 0.0:
            raise ValueError("E_star must be >= 0")
        if self.omega <= 0.0 or self.a <= 0.0:
            raise ValueError("omega and a must be positive")
        if self.n_points < 5 or self.n_points % 2 == 0:
            raise ValueError("n_points must be odd and >= 5")
        self.xi_max = support_bounds(self.omega, self.a, self.support_tol)
        # closed-form field area (exact Gaussian integral of the carrier)
        self.A0 = -(math.sqrt(math.pi) * C * self.a * self.E_star / self.omega) \
            * math.exp(-self.a**2 / 4.0) * math.sin(self.phi)
        self.S_E = -self.A0 / C

        self.xi_grid = np.linspace(-self.xi_max, self.xi_max, self.n_points)
        self.E_table = self.electric_field(self.xi_grid)
        self.A_table = self._potential_analytic(self.xi_grid)
        self.IA_table = self._ia_analytic(self.xi_grid)
        from .numerics import cumulative_simpson

        self.IA2_table = cumulative_simpson(self.A_table**2, self.xi_grid)
        self.ia_end = float(self.IA_table[-1])
        self.ia2_end = float(self.IA2_table[-1])
        # Clamped-derivative spline: d(IA2)/dxi = A^2 exactly at both ends.
        self._ia2_spline = CubicSpline(
            self.xi_grid, self.IA2_table,
            bc_type=((1, float(self.A_table[0] ** 2)),
                     (1, float(self.A_table[-1] ** 2))))

    @classmethod
    def from_intensity(cls, intensity_Wcm2: float, omega: float, a: float,
                       phi: float, **kw) -> "LaserPulse":
        return cls(intensity_to_field(intensity_Wcm2), omega, a, phi, **kw)

    # -- closed forms ------------------------------------------------------

    def electric_field(self, xi):
        """E(xi), a total function of the light-front coordinate."""
        eta = self.omega * np.asarray(xi, dtype=float) / C
        return self.E_star * np.exp(-(eta / self.a) ** 2) * np.sin(eta + self.phi)

    def _erf_arg(self, xi):
        return self.omega * np.asarray(xi, dtype=float) / (C * self.a) - 0.5j * self.a

    def _potential_analytic(self, xi):
        # A(xi) = -int E = K Im[e^{i phi} (erf(z) + 1)],
        # K = -(a sqrt(pi)/2) e^{-a^2/4} E* c / omega
        k = -(self.a * math.sqrt(math.pi) / 2.0) * math.exp(-self.a**2 / 4.0) \
            * self.E_star * C / self.omega
        z = self._erf_arg(xi)
        return k * np.imag(np.exp(1j * self.phi) * (erf(z) + 1.0))

    def _ia_analytic(self, xi):
        # int_{-inf}^{xi} A dxi' via the erf antiderivative
        # F(z) = z (erf z + 1) + e^{-z^2}/sqrt(pi), F -> 0 at the left end.
        k = -(self.a * math.sqrt(math.pi) / 2.0) * math.exp(-self.a**2 / 4.0) \
            * self.E_star * C / self.omega
        z = self._erf_arg(xi)
        f = z * (erf(z) + 1.0) + np.exp(-z * z) / math.sqrt(math.pi)
        return k * (C * self.a / self.omega) * np.imag(np.exp(1j * self.phi) * f)

    # -- queries with analytic continuation beyond the support -------------

    def vector_potential(self, xi):
        """A(xi): 0 left of the support, the plateau A0 right of it."""
        xi = np.asarray(xi, dtype=float)
        inside = self._potential_analytic(np.clip(xi, -self.xi_max, self.xi_max))
        out = np.where(xi <= -self.xi_max, 0.0,
                       np.where(xi >= self.xi_max, self.A0, inside))
        return out if out.ndim else float(out)

    def phase_integrals(self, xi):
        """(I_A, I_A2) = cumulative integrals of A and A^2 up to xi.

        For xi beyond +xi_max both grow linearly: plateau + A0 (xi - xi_max)
        and plateau + A0^2 (xi - xi_max).
        """
        xi = np.asarray(xi, dtype=float)
        xc = np.clip(xi, -self.xi_max, self.xi_max)
        ia = self._ia_analytic(xc)
        ia2 = self._ia2_spline(xc)
        over = np.maximum(xi - self.xi_max, 0.0)
        ia = np.where(xi <= -self.xi_max, 0.0, ia + self.A0 * over)
        ia2 = np.where(xi <= -self.xi_max, 0.0, ia2 + self.A0**2 * over)
        if ia.ndim:
            return ia, ia2
        return float(ia), float(ia2)

    def field_area(self) -> tuple[float, float]:
        """(S_E, A0) from the closed form."""
        return self.S_E, self.A0

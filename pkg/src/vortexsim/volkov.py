"""Exact Volkov solutions of the Dirac equation in the plane-wave pulse.

For the counterpropagating pulse everything depends on xi = c t + z, and the
positive/negative-energy Volkov states labeled by generalized momentum p',
spin s' and energy sign zeta read

    phi = (2 pi)^{-3/2} e^{i zeta p'.x} f(t, z),
    f   = e^{-i zeta eps' t}
          exp{ -i [p'_x I_A(xi) + (zeta/2c) I_A2(xi)] / (eps' + c p'_z) }
          [ 1 + zeta A(xi) (g0+g3) g1 / (2 (eps' + c p'_z)) ] w_zeta,

with w_+ = u(p', s') and w_- = v(-p', s').  The coupling sign of the Dirac
operator is fixed by requiring these to be exact solutions (unit negative
charge); the classical module uses the matching force law.

Left of the pulse support the states reduce to free plane waves; right of it
they are free plane waves of the gauge-shifted kinetic momentum

    pi = (p'_x + A0/c,  p'_y,  p'_z - kappa),
    kappa = (p'_x A0 + A0^2/(2c)) / (eps' + c p'_z),

with frequency eps(pi) = eps' + c kappa.  Those maps (and the spinor
dressing, which is exactly unitary together with the d p'_z / d pi_z
Jacobian) drive the post-pulse observables.

Finite differencing the full state cannot verify the Dirac equation here:
the free phase oscillates at eps' ~ c^2, so eps' h >> 1 for any sane step.
`dirac_residual` therefore differentiates the plane-wave phase analytically
and applies finite differences in t and z only to the pulse-dependent slow
factor, which converges at 4th order as expected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import LaserPulse
from .spinors import (ALPHA_X, ALPHA_Y, ALPHA_Z, BETA, LIGHTFRONT_MATRIX,
                      bispinor_u, bispinor_v)
from .units import C

LIGHTFRONT_GUARD = 1e-6  # reject denominators below c * this


@dataclass(frozen=True)
class VolkovIndex:
    """Label (p_perp, phi_p, p_par, s, zeta) of one Volkov state."""

    p_perp: float
    phi_p: float
    p_par: float
    s: float
    zeta: int = +1

    def __post_init__(self) -> None:
        if self.zeta not in (+1, -1):
            raise ValueError("zeta must be +-1")

    @property
    def p(self) -> np.ndarray:
        return np.array([self.p_perp * math.cos(self.phi_p),
                         self.p_perp * math.sin(self.phi_p),
                         self.p_par])

    @property
    def eps(self) -> float:
        return C * math.sqrt(C**2 + self.p_perp**2 + self.p_par**2)

    @property
    def denominator(self) -> float:
        d = self.eps + C * self.p_par
        if d < C * LIGHTFRONT_GUARD:
            raise ValueError(
                f"light-front denominator eps + c p_z = {d:.3e} too close to "
                "zero; configuration approaches the light-front singularity")
        return d

    def w(self) -> np.ndarray:
        if self.zeta > 0:
            return bispinor_u(self.p, self.s)
        return bispinor_v(-self.p, self.s)


def slow_factor(pulse: LaserPulse, idx: VolkovIndex, xi) -> np.ndarray:
    """Pulse-dependent factor of f (everything except e^{-i zeta eps t}).

    Vectorized over xi; result shape xi.shape + (4,).
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    d = idx.denominator
    ia, ia2 = pulse.phase_integrals(xi)
    a = pulse.vector_potential(xi)
    px = idx.p_perp * math.cos(idx.phi_p)
    phase = np.exp(-1j * (px * ia + idx.zeta * ia2 / (2.0 * C)) / d)
    w = idx.w()
    nw = LIGHTFRONT_MATRIX @ w
    return phase[..., None] * (w + (idx.zeta * a / (2.0 * d))[..., None] * nw)


def volkov_f(pulse: LaserPulse, idx: VolkovIndex, t: float, z) -> np.ndarray:
    """f^{(zeta)}_{p', s'}(t, z); shape z.shape + (4,)."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    g = slow_factor(pulse, idx, C * t + z)
    return np.exp(-1j * idx.zeta * idx.eps * t) * g


def volkov_state(pulse: LaserPulse, idx: VolkovIndex, t: float,
                 points) -> np.ndarray:
    """Full Volkov wavefunction at positions of shape (..., 3)."""
    pts = np.asarray(points, dtype=float)
    f = volkov_f(pulse, idx, t, pts[..., 2])
    plane = np.exp(1j * idx.zeta * np.einsum("...i,i->...", pts, idx.p))
    return (2.0 * math.pi) ** -1.5 * plane[..., None] * f


def dirac_residual(pulse: LaserPulse, idx: VolkovIndex, t: float, z: float,
                   h: float) -> float:
    """Relative Dirac-equation residual with step h on the slow factor.

    The plane-wave phase is differentiated analytically; 4th-order central
    differences in t (step h/c in time, i.e. h in xi) and in z (step h)
    estimate the slow factor's derivative entering i d_t and -i c alpha_z d_z
    respectively.  Declines as O(h^4) until interpolation noise of the pulse
    tables takes over.
    """
    xi = C * t + z

    def g(x):
        return slow_factor(pulse, idx, np.array([x]))[0]

    def deriv(step):
        return (-g(xi + 2 * step) + 8 * g(xi + step)
                - 8 * g(xi - step) + g(xi - 2 * step)) / (12.0 * step)

    gv = g(xi)
    dg_t = deriv(h)   # (1/c) d/dt of the slow factor equals d/dxi
    dg_z = deriv(h)   # d/dz equals d/dxi as well; kept separate for clarity
    a = float(pulse.vector_potential(xi))
    p = idx.p
    zeta = idx.zeta
    # i d_t psi = P (zeta eps g + i c g'); H psi per unit negative charge.
    lhs = zeta * idx.eps * gv + 1j * C * dg_t
    rhs = (C * zeta * (p[0] * (ALPHA_X @ gv) + p[1] * (ALPHA_Y @ gv)
                       + p[2] * (ALPHA_Z @ gv))
           - 1j * C * (ALPHA_Z @ dg_z)
           + a * (ALPHA_X @ gv)
           + C**2 * (BETA @ gv))
    return float(np.linalg.norm(lhs - rhs) / (idx.eps * np.linalg.norm(gv)))


def post_pulse_maps(pulse: LaserPulse, p_par, p_perp: float, phi) -> dict:
    """Asymptotic (post-pulse) mode maps on a (p_par, phi) grid.

    Returns kappa (z-momentum shift), chi0 (constant phase offset), their
    partial derivatives in p_par and phi, plus eps, v_z and the light-front
    denominator.  Broadcasts p_par against phi.
    """
    p = np.asarray(p_par, dtype=float)
    phi = np.asarray(phi, dtype=float)
    eps = C * np.sqrt(C**2 + p_perp**2 + p * p)
    v = C**2 * p / eps
    d = eps + C * p
    if np.any(d < C * LIGHTFRONT_GUARD):
        raise ValueError("light-front denominator too close to zero on grid")
    a0 = pulse.A0
    px = p_perp * np.cos(phi)
    kappa = (px * a0 + a0**2 / (2.0 * C)) / d
    # plateau constants of the Volkov phase, referenced to xi_max
    ca = pulse.ia_end - a0 * pulse.xi_max
    cb = pulse.ia2_end - a0**2 * pulse.xi_max
    chi0 = -(px * ca + cb / (2.0 * C)) / d
    return {
        "eps": eps, "v": v, "den": d, "kappa": kappa, "chi0": chi0,
        "dkappa_dphi": -p_perp * np.sin(phi) * a0 / d,
        "dkappa_dp": -kappa * (v + C) / d,
        "dchi0_dphi": p_perp * np.sin(phi) * ca / d,
        "dchi0_dp": -chi0 * (v + C) / d,
    }

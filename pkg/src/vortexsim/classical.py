"""Relativistic classical motion of a point charge in the pulse.

The force law matches the quantum side (unit negative charge, pulse moving
toward -z with magnetic field B_y = -E_x):

    dp_x/dt = -E (1 + v_z/c),   dp_y/dt = 0,   dp_z/dt = +v_x E / c,

which conserves the light-front invariant h = eps/c + p_z exactly and gives
the closed-form final momenta after full passage

    p_x = p_0x - S_E,
    p_y = p_0y,
    p_z = p_0z + S_E (p_0x - S_E/2) / (eps_0/c + p_0z).

Because the wave depends on xi = c t + z only, trajectories admit an exact
quadrature parameterization in xi (momenta algebraic in A(xi), positions by
cumulative integration, time by inverting the monotone t(xi) map); a
batched RK4 integrator provides the independent cross-check.  Twisted
packets fix only |p_perp|, so observables are predicted by averaging the
trajectories over the transverse direction phi_p0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import LaserPulse
from .numerics import cumulative_simpson
from .units import C


@dataclass(frozen=True)
class ClassicalState:
    t: float
    x: np.ndarray
    p: np.ndarray

    @property
    def energy(self) -> float:
        return C * math.sqrt(C**2 + float(np.dot(self.p, self.p)))

    @property
    def lightfront_invariant(self) -> float:
        return self.energy / C + float(self.p[2])


def final_momentum(p0, s_e: float) -> np.ndarray:
    """Closed-form momentum after full pulse passage, field area s_e."""
    p0 = np.asarray(p0, dtype=float)
    eps0 = C * math.sqrt(C**2 + float(p0 @ p0))
    h = eps0 / C + p0[2]
    if abs(h) < 1e-12 * eps0 / C:
        raise ValueError("light-front denominator eps0/c + p0z vanishes")
    return np.array([p0[0] - s_e,
                     p0[1],
                     p0[2] + s_e * (p0[0] - 0.5 * s_e) / h])


def free_flight_start(p0, pulse: LaserPulse, t_ref: float = 0.0,
                      margin: float = 1.0):
    """(t0, x0) on the free incoming asymptote anchored at the origin.

    The particle moves freely with momentum p0 and would sit at the origin
    at t_ref; t0 is chosen so its light-front coordinate is just left of the
    pulse support.
    """
    p0 = np.asarray(p0, dtype=float)
    eps0 = C * math.sqrt(C**2 + float(p0 @ p0))
    v = C**2 * p0 / eps0
    target = -pulse.xi_max * (1.0 + margin * 0.05) - margin
    t0 = (target + v[2] * t_ref) / (C + v[2])
    return t0, v * (t0 - t_ref)


def trajectory_exact(pulse: LaserPulse, p0, x0, t0: float, t_samples,
                     points_per_period: int = 64):
    """Exact plane-wave trajectories, batched over initial momenta.

    p0, x0 have shape (n, 3); t_samples is a 1-d array of absolute times not
    earlier than t0.  Returns (x, p) of shapes (n, len(t), 3).  The xi
    parameterization is exact; accuracy is set only by the cumulative
    quadrature of the positions.
    """
    p0 = np.atleast_2d(np.asarray(p0, dtype=float))
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    t_samples = np.asarray(t_samples, dtype=float)
    if np.any(t_samples < t0 - 1e-12):
        raise ValueError("t_samples must not precede t0")
    eps0 = C * np.sqrt(C**2 + np.sum(p0**2, axis=1))
    h = eps0 / C + p0[:, 2]                       # conserved per trajectory
    xi0 = C * t0 + x0[:, 2]

    # xi advances at c + v_z < 2c, so this xi range always covers t_samples
    t_span = float(np.max(t_samples) - t0)
    xi_end = float(np.max(xi0)) + 2.5 * C * t_span + 10.0
    lam = 2.0 * math.pi * C / pulse.omega
    n_grid = int(max(4097, points_per_period * (xi_end - np.min(xi0)) / lam))
    n_grid = min(n_grid, 2_000_000)
    xi = np.linspace(float(np.min(xi0)), xi_end, n_grid)

    a_xi = pulse.vector_potential(xi)
    px = p0[:, 0][:, None] + (a_xi[None, :] - pulse.vector_potential(xi0)[:, None]) / C
    py = np.broadcast_to(p0[:, 1][:, None], px.shape)
    pt2 = C**2 + px**2 + py**2
    pz = 0.5 * (h[:, None] - pt2 / h[:, None])
    eps_over_c = h[:, None] - pz

    # d(t, x)/dxi along the path
    dt_dxi = eps_over_c / (C * h[:, None])
    dx_dxi = px / h[:, None]
    dz_dxi = pz / h[:, None]
    t_of_xi = t0 + cumulative_simpson(dt_dxi, xi)
    x_of_xi = x0[:, 0][:, None] + cumulative_simpson(dx_dxi, xi)
    y_of_xi = x0[:, 1][:, None] + p0[:, 1][:, None] / h[:, None] * (xi - xi[0])
    z_of_xi = x0[:, 2][:, None] + cumulative_simpson(dz_dxi, xi)

    n = p0.shape[0]
    xs = np.empty((n, len(t_samples), 3))
    ps = np.empty_like(xs)
    for i in range(n):
        xi_t = np.interp(t_samples, t_of_xi[i], xi)
        xs[i, :, 0] = np.interp(xi_t, xi, x_of_xi[i])
        xs[i, :, 1] = np.interp(xi_t, xi, y_of_xi[i])
        xs[i, :, 2] = np.interp(xi_t, xi, z_of_xi[i])
        ps[i, :, 0] = np.interp(xi_t, xi, px[i])
        ps[i, :, 1] = p0[i, 1]
        # p_z from the conserved invariant rather than interpolation, so
        # eps/c + p_z is exact at the sample points too
        pt2_t = C**2 + ps[i, :, 0] ** 2 + p0[i, 1] ** 2
        ps[i, :, 2] = 0.5 * (h[i] - pt2_t / h[i])
    return xs, ps


def trajectory_rk4(pulse: LaserPulse, p0, x0, t0: float, t1: float,
                   steps_per_period: int = 128):
    """Lorentz-force RK4 oracle, batched; returns final (x, p) at t1."""
    p = np.atleast_2d(np.asarray(p0, dtype=float)).copy()
    x = np.atleast_2d(np.asarray(x0, dtype=float)).copy()
    period = 2.0 * math.pi / pulse.omega / (1.0 + 1.0)  # carrier at 2c rate
    dt = period / steps_per_period
    n_steps = int(math.ceil((t1 - t0) / dt))
    dt = (t1 - t0) / n_steps

    def rhs(t, x, p):
        eps = C * np.sqrt(C**2 + np.sum(p**2, axis=1))
        v = C**2 * p / eps[:, None]
        e = pulse.electric_field(C * t + x[:, 2])
        f = np.empty_like(p)
        f[:, 0] = -e * (1.0 + v[:, 2] / C)
        f[:, 1] = 0.0
        f[:, 2] = e * v[:, 0] / C
        return v, f

    t = t0
    for _ in range(n_steps):
        v1, f1 = rhs(t, x, p)
        v2, f2 = rhs(t + dt / 2, x + dt / 2 * v1, p + dt / 2 * f1)
        v3, f3 = rhs(t + dt / 2, x + dt / 2 * v2, p + dt / 2 * f2)
        v4, f4 = rhs(t + dt, x + dt * v3, p + dt * f3)
        x = x + dt / 6 * (v1 + 2 * v2 + 2 * v3 + v4)
        p = p + dt / 6 * (f1 + 2 * f2 + 2 * f3 + f4)
        t += dt
    return x, p


def ring_initial_momenta(p_par: float, p_perp: float, n_phi: int):
    """Initial momenta (p_perp cos phi, p_perp sin phi, p_par) on the ring."""
    if n_phi < 16:
        raise ValueError("need at least 16 ring directions")
    phi = np.arange(n_phi) * (2.0 * math.pi / n_phi)
    return np.stack([p_perp * np.cos(phi), p_perp * np.sin(phi),
                     np.full(n_phi, p_par)], axis=1)


def averaged_trajectory(p_par: float, p_perp: float, pulse: LaserPulse,
                        t_samples, n_phi: int = 32, t_ref: float = 0.0):
    """Mean classical path over the transverse-direction ring.

    Trajectories are anchored on free incoming asymptotes through the origin
    at t_ref.  Returns (mean_x(t) array of shape (len(t), 3), per-trajectory
    positions (n_phi, len(t), 3)).
    """
    p0 = ring_initial_momenta(p_par, p_perp, n_phi)
    t_samples = np.asarray(t_samples, dtype=float)
    t0s, x0s = [], []
    for i in range(n_phi):
        t0, x0 = free_flight_start(p0[i], pulse, t_ref)
        t0s.append(t0)
        x0s.append(x0)
    t0 = min(min(t0s), float(np.min(t_samples)))
    # pull every start back to the common t0 along its free asymptote
    eps0 = C * np.sqrt(C**2 + np.sum(p0**2, axis=1))
    v0 = C**2 * p0 / eps0[:, None]
    x0 = np.array([x0s[i] + v0[i] * (t0 - t0s[i]) for i in range(n_phi)])
    xs, _ = trajectory_exact(pulse, p0, x0, t0, t_samples)
    return xs.mean(axis=0), xs

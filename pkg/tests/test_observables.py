import math

import numpy as np
import pytest

from vortexsim import observables
from vortexsim.beams import BeamSpec, smearing
from vortexsim.evolve import Box, SynthesisSettings, packet_coefficients_delta
from vortexsim.field import LaserPulse
from vortexsim.numerics import gauss_legendre_panels
from vortexsim.units import C, kinetic_energy_to_momentum


def fig2_beam(sigma=10.0):
    p = kinetic_energy_to_momentum(817.4)
    return BeamSpec.bessel(3, +0.5, p / math.sqrt(2.0), p / math.sqrt(2.0),
                           sigma)


def weak_pulse():
    from vortexsim.units import intensity_to_field

    return LaserPulse(intensity_to_field(1.3e13), 0.242, 9.0, 0.0)


def smeared_lz_oracle(beam):
    """|f|^2-weighted closed form l + s (1 - c^2/eps) sin^2 theta0."""
    q, w = gauss_legendre_panels(-6.5 * beam.sigma, 6.5 * beam.sigma, 24, 24)
    pq = beam.p_par + q
    p2 = pq**2 + beam.p_perp**2
    eps = C * np.sqrt(C**2 + p2)
    delta = (1.0 - C**2 / eps) * (beam.p_perp**2 / p2)
    wt = smearing(q, beam.sigma) ** 2 * w
    return beam.l + beam.s * float(np.sum(wt * delta) / np.sum(wt))


def test_initial_state_exactness():
    beam = fig2_beam()
    amp = packet_coefficients_delta(beam)
    pulse = weak_pulse()
    t_in = -(pulse.xi_max + 50.0) / C - 2.0
    rep = observables.angular_momentum_stats(amp, pulse, t_in, recenter=0.0)
    assert rep.J_mean == pytest.approx(3.5, abs=1e-8)
    assert rep.DJ < 1e-6
    assert rep.L_mean == pytest.approx(smeared_lz_oracle(beam), abs=1e-8)
    assert rep.J_mean == pytest.approx(rep.L_mean + rep.S_mean, abs=1e-10)


def test_angular_momentum_independent_of_recenter_at_t_in():
    beam = fig2_beam()
    amp = packet_coefficients_delta(beam)
    pulse = weak_pulse()
    t_in = -(pulse.xi_max + 50.0) / C - 2.0
    a = observables.angular_momentum_stats(amp, pulse, t_in, recenter=0.0)
    b = observables.angular_momentum_stats(amp, pulse, t_in, recenter=0.37)
    # the mean is axis-independent for an on-axis packet (<p_y> = 0) ...
    assert a.J_mean == pytest.approx(b.J_mean, abs=1e-8)
    # ... while the dispersion about a displaced axis picks up exactly
    # |d| Delta(p_y) = |d| p_perp / sqrt(2), validating the recentering term
    assert b.DJ == pytest.approx(0.37 * amp.p_perp / math.sqrt(2.0), rel=1e-2)


def test_stats_rejects_mid_pulse_times():
    beam = fig2_beam()
    amp = packet_coefficients_delta(beam)
    pulse = weak_pulse()
    with pytest.raises(ValueError, match="overlap"):
        observables.angular_momentum_stats(amp, pulse, 0.0)


def test_position_space_cross_check_at_t_in():
    # momentum-space <J_z> equals the position-space spectral evaluation
    beam = BeamSpec.bessel(2, +0.5, 20.0, 12.0, 4.0)
    amp = packet_coefficients_delta(beam, n_p=129, n_phi=32)
    pulse = LaserPulse(0.3, 2.0, 0.8, 0.9)
    t_in = -(pulse.xi_max + 30.0) / C
    rep = observables.angular_momentum_stats(amp, pulse, t_in, recenter=0.0)
    j_pos, norm = observables.angular_momentum_position_space(
        amp, pulse, t_in, rho_max=1.9, n_rho=30, n_phi=32, n_z=41)
    assert norm > 0.0
    assert j_pos == pytest.approx(rep.J_mean, abs=1e-4 * abs(rep.J_mean))


def test_density_snapshot_ring_structure():
    # at the anchor with no field the z-integrated density is the packet's
    # ring pattern: empty on axis, peaked near the J_{l}-weighted main ring
    beam = BeamSpec.bessel(3, +0.5, 20.0, 12.0, 4.0)
    amp = packet_coefficients_delta(beam, n_p=129, n_phi=32)
    pulse = LaserPulse(0.0, 0.5, 1.3, 0.0)
    box = Box(x_center=0.0, z_center=0.0, half_xy=0.8, z_half=1.2, n_xy=41)
    grid = observables.density_snapshot(amp, pulse, 0.0, box,
                                        SynthesisSettings(n_phi=48))
    vals = grid.values
    da = (grid.axes[0][1] - grid.axes[0][0]) * (grid.axes[1][1]
                                                - grid.axes[1][0])
    assert np.sum(vals) * da == pytest.approx(1.0, rel=1e-12)
    nx = len(grid.axes[0])
    center = vals[nx // 2, nx // 2]
    assert center < 0.02 * np.max(vals)
    # radial profile peaks where J_3(p_perp rho)^2-dominated pattern peaks
    xg, yg = np.meshgrid(grid.axes[0], grid.axes[1], indexing="ij")
    rho = np.hypot(xg, yg)
    peak_rho = rho.flat[np.argmax(vals)]
    from scipy.special import jnp_zeros

    main = jnp_zeros(3, 1)[0] / beam.p_perp  # first max of J_3
    assert abs(peak_rho - main) < 0.12 * main


def test_position_means_y_zero_and_x_tracks_classical():
    beam = BeamSpec.bessel(2, +0.5, 20.0, 12.0, 4.0)
    amp = packet_coefficients_delta(beam, n_p=129, n_phi=32)
    pulse = LaserPulse(0.25, 0.35, 1.1, 1.1)
    t = 0.5
    box = observables.default_box(amp, pulse, t, n_xy=41)
    dm = observables.position_mean(amp, pulse, t, box,
                                   SynthesisSettings(n_phi=48))
    dx = 2.0 * box.half_xy / 40
    assert abs(dm.y_mean) < 2.0 * dx
    center = observables.classical_center(beam, pulse, t)[0]
    assert abs(dm.z_mean - center[2]) < 0.2


def test_box_guard():
    beam = BeamSpec.bessel(2, +0.5, 20.0, 12.0, 4.0)
    amp = packet_coefficients_delta(beam, n_p=65, n_phi=32)
    pulse = LaserPulse(0.0, 0.5, 1.3, 0.0)
    bad = Box(x_center=5.0, z_center=0.0, half_xy=0.4, z_half=1.0, n_xy=16)
    with pytest.raises(ValueError, match="box"):
        observables.density_snapshot(amp, pulse, 0.0, bad)


def test_scalar_grid_validation():
    with pytest.raises(ValueError):
        observables.ScalarGrid(("x",), (np.array([1.0, 0.5]),),
                               np.array([1.0, 2.0]), 0.0, {})
    with pytest.raises(ValueError):
        observables.ScalarGrid(("x",), (np.array([0.0, 1.0]),),
                               np.array([1.0, -2.0]), 0.0, {})


def test_cep_sweep_trend():
    import vortexsim.units as units

    beam = BeamSpec.bessel(3, +0.5,
                           kinetic_energy_to_momentum(1.41)
                           * math.cos(math.radians(11.3)),
                           kinetic_energy_to_momentum(1.41)
                           * math.sin(math.radians(11.3)), 10.0)
    e_star = units.intensity_to_field(3.5e16)
    rows = observables.cep_sweep(beam, e_star, 0.15, 0.9,
                                 [0.0, math.pi / 4, math.pi / 2])
    s_e = [abs(r["S_E"]) for r in rows]
    dj = [r["DJ"] for r in rows]
    assert s_e[2] > s_e[1] > s_e[0]
    assert dj[2] > dj[1] > dj[0]
    assert rows[0]["S_E"] == 0.0
    for r in rows:
        assert abs(r["J_mean"] - 3.5) < 0.2

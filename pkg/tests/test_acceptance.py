"""Acceptance suite: one test per criterion, each printing a pass line.

Desk-scaled but physically faithful: every tolerance below is the contract
tolerance, not a calibrated-after-the-fact number.  Criteria 6 and 8 use the
published parameter sets; the remaining criteria use the stated setups.
"""

import math

import numpy as np
import pytest

from vortexsim import classical, observables
from vortexsim.beams import BeamSpec, bessel_beam, smearing
from vortexsim.evolve import (Box, SynthesisSettings, density_moments,
                              packet_coefficients_delta)
from vortexsim.field import LaserPulse
from vortexsim.numerics import bessel_j, gauss_legendre_panels
from vortexsim.observables import packet_z_width
from vortexsim.scenario import crossing_halfwidth, settle_time
from vortexsim.units import (C, intensity_to_field,
                             kinetic_energy_to_momentum)
from vortexsim.volkov import VolkovIndex, dirac_residual


def report(n, detail):
    print(f"\n[criterion {n:>2}] PASS - {detail}")


def fig2_pulse(phi=0.0, support_tol=1e-8):
    return LaserPulse(intensity_to_field(1.3e13), 0.242, 9.0, phi,
                      support_tol=support_tol)


def fig2_beam():
    p = kinetic_energy_to_momentum(817.4)
    return BeamSpec.bessel(3, +0.5, p / math.sqrt(2.0), p / math.sqrt(2.0),
                           10.0)


def fig7_beam():
    p = kinetic_energy_to_momentum(1.41)
    th = math.radians(11.3)
    return BeamSpec.bessel(3, +0.5, p * math.cos(th), p * math.sin(th), 10.0)


def fig7_pulse(phi, support_tol=1e-8):
    return LaserPulse(intensity_to_field(3.5e16), 0.15, 0.9, phi,
                      support_tol=support_tol)


def test_criterion_1_initial_state_exactness():
    beam = fig2_beam()  # l = 3, s = +1/2, theta0 = pi/4, sigma = 10
    amp = packet_coefficients_delta(beam)
    pulse = fig2_pulse()
    t_in = -(pulse.xi_max + 60.0) / C
    rep = observables.angular_momentum_stats(amp, pulse, t_in, recenter=0.0)
    assert rep.J_mean == pytest.approx(3.5, abs=1e-8)
    assert rep.DJ < 1e-6
    # closed form l + s (1 - c^2/eps) sin^2 theta0 averaged over the smeared
    # longitudinal momentum, by an independent quadrature
    q, w = gauss_legendre_panels(-6.5 * beam.sigma, 6.5 * beam.sigma, 24, 24)
    pq = beam.p_par + q
    p2 = pq**2 + beam.p_perp**2
    eps = C * np.sqrt(C**2 + p2)
    delta = (1.0 - C**2 / eps) * (beam.p_perp**2 / p2)
    wt = smearing(q, beam.sigma) ** 2 * w
    lz_oracle = beam.l + beam.s * float(np.sum(wt * delta) / np.sum(wt))
    assert rep.L_mean == pytest.approx(lz_oracle, abs=1e-8)
    report(1, f"<J_z> = {rep.J_mean:.10f}, DJ = {rep.DJ:.2e}, "
              f"<L_z> - oracle = {rep.L_mean - lz_oracle:+.2e}")


def test_criterion_2_volkov_dirac_residual():
    pulse = fig2_pulse()
    p = kinetic_energy_to_momentum(817.4)
    idx = VolkovIndex(p_perp=p / math.sqrt(2.0), phi_p=0.7,
                      p_par=p / math.sqrt(2.0), s=+0.5)
    t = 5.0
    z = 0.3 * pulse.xi_max - C * t  # mid-pulse light-front position
    res = [dirac_residual(pulse, idx, t, z, h) for h in (256.0, 128.0, 64.0,
                                                         32.0)]
    for a, b in zip(res, res[1:]):
        assert b < a / 10.0, f"not 4th order: {res}"
    final = dirac_residual(pulse, idx, t, z, 1e-4)
    assert final < 1e-6
    report(2, f"residuals {['%.2e' % r for r in res]} (x16 per halving), "
              f"h=1e-4: {final:.2e} < 1e-6")


def test_criterion_3_transverse_integral_identity():
    n_grid = 512
    phi = np.arange(n_grid) * (2.0 * np.pi / n_grid)
    worst = 0.0
    for x in (0.5, 5.0, 20.0):
        for n in range(-8, 9):
            val = np.sum(np.exp(1j * x * np.cos(phi) + 1j * n * phi)) \
                * (2.0 * np.pi / n_grid)
            ref = 2.0 * np.pi * (1j) ** n * bessel_j(n, x)
            worst = max(worst, abs(val - ref))
    assert worst < 1e-10
    report(3, f"quadrature vs 2 pi i^n J_n: worst |diff| = {worst:.2e}")


def test_criterion_4_current_density_suite():
    m = -0.5
    rho = np.linspace(0.0, 2.4, 512)
    from vortexsim.beams import radial_current_profile

    prof_b = {}
    for l in (-1, 0):
        spec = BeamSpec.bessel(l, m - l, 10.0, 10.0, 10.0)
        prof_b[l] = radial_current_profile(spec, rho)
        assert np.min(prof_b[l]) >= -1e-14, "Bessel-packet current negative"
    prof_r = {}
    for mu in (0.5, -0.5):
        spec = BeamSpec.rotated(m, mu, 10.0, 10.0, 10.0)
        prof_r[mu] = radial_current_profile(spec, rho)
    assert np.min(prof_r[0.5]) < 0.0, "rotated packet has no negative lobes"
    total_b = prof_b[-1] + prof_b[0]
    total_r = prof_r[0.5] + prof_r[-0.5]
    mismatch = np.max(np.abs(total_b - total_r)) / np.max(np.abs(total_b))
    assert mismatch < 1e-6
    report(4, f"Bessel >= 0, rotated min = {np.min(prof_r[0.5]):.3e} < 0, "
              f"sum identity to {mismatch:.2e}")


def test_criterion_5_classical_oracle_equivalence():
    pulse = LaserPulse(0.3, 0.5, 1.3, 0.9)
    rng = np.random.default_rng(42)
    p0 = rng.uniform(-8.0, 8.0, size=(100, 3))
    p0[:, 2] = rng.uniform(1.0, 40.0, size=100)
    x0 = np.zeros((100, 3))
    x0[:, 2] = -pulse.xi_max - 30.0
    t_end = (2.0 * pulse.xi_max + 60.0) / C * 2.2
    xf, pf = classical.trajectory_rk4(pulse, p0, x0, 0.0, t_end,
                                      steps_per_period=4096)
    assert np.min(C * t_end + xf[:, 2]) > pulse.xi_max
    pred = np.array([classical.final_momentum(p0[i], pulse.S_E)
                     for i in range(100)])
    err = np.max(np.abs(pf - pred) / np.maximum(np.abs(pred), 1.0))
    assert err < 1e-6
    # light-front invariant along exact paths
    ts = np.linspace(0.0, 30.0, 40)
    xs, ps = classical.trajectory_exact(pulse, p0[:5], x0[:5], 0.0, ts)
    eps = C * np.sqrt(C**2 + np.sum(ps**2, axis=-1))
    h = eps / C + ps[:, :, 2]
    drift = np.max(np.abs(h - h[:, :1]) / h[:, :1])
    assert drift < 1e-10
    report(5, f"closed form vs RK4 (100 draws): {err:.2e}; "
              f"invariant drift {drift:.2e}")


def test_criterion_6_quantum_classical_x_agreement():
    beam = fig2_beam()
    pulse = fig2_pulse()
    amp = packet_coefficients_delta(beam)
    half = crossing_halfwidth(pulse, beam)
    ts = np.linspace(-1.05 * half, 1.2 * half, 9)
    mean, _ = classical.averaged_trajectory(beam.p_par, beam.p_perp, pulse,
                                            ts, n_phi=32)
    st = SynthesisSettings(n_phi=96)
    n_xy = 72
    worst = 0.0
    worst_y_cells = 0.0
    for i, t in enumerate(ts):
        box = observables.default_box(amp, pulse, float(t), n_xy=n_xy)
        dm = observables.position_mean(amp, pulse, float(t), box, st)
        worst = max(worst, abs(dm.x_mean - mean[i, 0]))
        cell = 2.0 * box.half_xy / (n_xy - 1)
        worst_y_cells = max(worst_y_cells, abs(dm.y_mean) / cell)
    excursion = float(mean[:, 0].max() - mean[:, 0].min())
    assert worst <= 0.05 * excursion, (worst, excursion)
    assert worst_y_cells <= 2.0
    report(6, f"max |<x>_q - x_cl| = {worst:.2e} = "
              f"{worst / excursion * 100:.2f}% of excursion "
              f"{excursion:.3e}; |<y>| <= {worst_y_cells:.2f} cells")


def test_criterion_7_free_evolution_oracle():
    beam = fig2_beam()
    amp = packet_coefficients_delta(beam)
    pulse = LaserPulse(0.0, 0.242, 9.0, 0.0)
    # the z-integrated transverse density of a free packet is static:
    # rho(x, y) = 2 pi Int dq |f|^2 |g_q(x, y)|^2  (independent oracle)
    n_xy = 48
    half = 0.13
    ax = np.linspace(-half, half, n_xy)
    xg, yg = np.meshgrid(ax, ax, indexing="ij")
    pts = np.stack([xg, yg, np.zeros_like(xg)], axis=-1).reshape(-1, 3)
    q, wq = gauss_legendre_panels(-65.0, 65.0, 16, 16)
    f2 = smearing(q, beam.sigma) ** 2
    rho_oracle = np.zeros(n_xy * n_xy)
    for qi, wi, fi in zip(q, wq, f2):
        psi = bessel_beam(beam.l, beam.s, beam.p_par + qi, beam.p_perp, pts)
        rho_oracle += wi * fi * np.sum(np.abs(psi) ** 2, axis=-1)
    rho_oracle = 2.0 * np.pi * rho_oracle.reshape(n_xy, n_xy)
    v = C**2 * beam.p_par / beam.eps
    worst = 0.0
    for t in (0.0, 25.0):
        box = Box(x_center=0.0, z_center=v * t, half_xy=half,
                  z_half=6.0 * packet_z_width(beam, t) + 0.8, n_xy=n_xy)
        dm = density_moments(amp, pulse, t, box, SynthesisSettings(n_phi=96))
        rms = np.sqrt(np.mean((dm.rho_xy - rho_oracle) ** 2)) \
            / np.sqrt(np.mean(rho_oracle**2))
        worst = max(worst, rms)
    assert worst < 1e-4
    report(7, f"E*=0 snapshots vs analytic free packet: rel RMS {worst:.2e}")


SWEEP_PHIS = (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2)


def run_fig7_sweep(support_tol=1e-8, p_span=6.5):
    beam = fig7_beam()
    amp = packet_coefficients_delta(beam, p_span=p_span)
    t_out = settle_time(fig7_pulse(0.0, support_tol), beam)
    rows = []
    for phi in SWEEP_PHIS:
        pulse = fig7_pulse(phi, support_tol)
        rep = observables.angular_momentum_stats(amp, pulse, t_out)
        rows.append((pulse.S_E, rep.J_mean, rep.DJ))
    return rows


def test_criterion_8_unipolarity_effect():
    rows = run_fig7_sweep()
    dj0 = rows[0][2]
    dj_max = rows[-1][2]  # phi = pi/2 maximizes |S_E|
    assert abs(rows[-1][0]) == max(abs(r[0]) for r in rows)
    assert dj_max > 5.0 * dj0, (dj_max, dj0)
    for s_e, j_mean, dj in rows:
        assert abs(j_mean - 3.5) < 0.2
    report(8, f"DJ(|S_E|max) = {dj_max:.3f} vs DJ(0) = {dj0:.3f} "
              f"(x{dj_max / dj0:.1f} >= 5); <J_z> within "
              f"{max(abs(r[1] - 3.5) for r in rows):.2e} of 3.5")


def test_criterion_9_geometry_insensitivity():
    # doubled numerical margins: pulse support (tol 1e-8 -> 1e-32 doubles
    # xi_max), momentum span, and z-window padding
    beam = fig2_beam()
    amp = packet_coefficients_delta(beam)
    amp_wide = packet_coefficients_delta(beam, p_span=8.0)
    pulse = fig2_pulse()
    pulse_wide = fig2_pulse(support_tol=1e-32)
    assert pulse_wide.xi_max > 1.9 * pulse.xi_max
    half = crossing_halfwidth(pulse, beam)
    # the three central samples of the criterion-6 grid, including both
    # displacement extremes
    ts = [float(np.linspace(-1.05 * half, 1.2 * half, 9)[k])
          for k in (3, 4, 5)]
    mean, _ = classical.averaged_trajectory(beam.p_par, beam.p_perp, pulse,
                                            np.asarray(ts), n_phi=32)
    excursion = 0.0552  # criterion-6 scale at these parameters
    st = SynthesisSettings(n_phi=96)
    worst = 0.0
    for i, t in enumerate(ts):
        box = observables.default_box(amp, pulse, t, n_xy=72)
        a = observables.position_mean(amp, pulse, t, box, st).x_mean
        box2 = observables.default_box(amp_wide, pulse_wide, t, n_xy=72,
                                       z_pad_sigmas=9.0)
        b = observables.position_mean(amp_wide, pulse_wide, t, box2, st).x_mean
        worst = max(worst, abs(a - b))
    assert worst < 1e-3 * excursion, worst
    base = run_fig7_sweep()
    wide = run_fig7_sweep(support_tol=1e-32, p_span=8.0)
    worst_dj = max(abs(a[2] - b[2]) / max(abs(a[2]), 1e-12)
                   for a, b in zip(base, wide))
    worst_j = max(abs(a[1] - b[1]) for a, b in zip(base, wide))
    assert worst_dj < 1e-3, worst_dj
    assert worst_j < 1e-3
    report(9, f"margin doubling: d<x> = {worst:.2e} "
              f"({worst / excursion:.1e} of excursion), "
              f"dDJ/DJ = {worst_dj:.1e}, d<J> = {worst_j:.1e}")

"""Command-line interface: scenario runs and figure reproduction scripts.

Subcommands: field, current, simulate, observables, classical, sweep,
reproduce.  Every run writes CSV artifacts plus a JSON metadata sidecar
carrying the scenario echo and hash; outputs are deterministic for a given
config and code version.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .beams import radial_current_profile
from .evolve import SynthesisSettings, packet_coefficients_delta
from .field import LaserPulse
from .io import write_csv, write_meta
from .observables import (angular_momentum_stats, cep_sweep, classical_center,
                          default_box, density_snapshot, position_mean)
from .scenario import (Scenario, ScenarioError, fig2_like_times, preset,
                       settle_time)
from .units import C
from . import classical as _classical


def _load_scenario(args) -> Scenario:
    if getattr(args, "figure", None):
        return preset(args.figure, full=args.full)
    if not args.config:
        raise ScenarioError("--config is required (or use `reproduce <fig>`)")
    return Scenario.from_json(args.config)


def _amp(scn: Scenario):
    n_p = int(scn.numerics.get("n_p", 257))
    n_phi = int(scn.numerics.get("n_phi", 64))
    return packet_coefficients_delta(scn.beam(), t_ref=scn.anchor_time,
                                     n_p=n_p, n_phi=n_phi)


def _settings(scn: Scenario) -> SynthesisSettings:
    return SynthesisSettings(n_phi=int(scn.numerics.get("synth_n_phi", 96)))


def cmd_field(args) -> int:
    scn = _load_scenario(args)
    pulse = scn.pulse()
    rows = zip(pulse.xi_grid, pulse.E_table, pulse.A_table,
               pulse.IA_table, pulse.IA2_table)
    write_csv(f"{args.out}/field.csv", ["xi", "E", "A", "IA", "IA2"], rows)
    write_meta(f"{args.out}/field.meta.json", {
        "scenario": scn.describe(), "S_E": pulse.S_E, "A0": pulse.A0,
        "xi_max": pulse.xi_max})
    return 0


def cmd_current(args) -> int:
    scn = _load_scenario(args)
    beam = scn.beam()
    n_rho = int(scn.numerics.get("n_rho", 512))
    rho_max = 14.0 * math.pi / beam.p_perp
    rho = np.linspace(0.0, rho_max, n_rho)
    m = beam.total_m
    from .beams import BeamSpec

    cols: dict[str, np.ndarray] = {"rho": rho}
    for l in (int(round(m - 0.5)), int(round(m + 0.5))):
        s = m - l
        spec = BeamSpec.bessel(l, s, beam.p_par, beam.p_perp, beam.sigma)
        cols[f"bessel_l{l}"] = radial_current_profile(spec, rho)
    for mu in (0.5, -0.5):
        spec = BeamSpec.rotated(m, mu, beam.p_par, beam.p_perp, beam.sigma)
        tag = "p" if mu > 0 else "m"
        cols[f"rotated_mu_{tag}"] = radial_current_profile(spec, rho)
    names = list(cols)
    write_csv(f"{args.out}/current.csv", names,
              zip(*[cols[k] for k in names]))
    write_meta(f"{args.out}/current.meta.json", {
        "scenario": scn.describe(), "m": m,
        "normalization": "unnormalized phi- and z-integrated j_z; common "
                         "factor 2*pi*Int |f|^2 dq carried in the values"})
    return 0


def cmd_simulate(args) -> int:
    scn = _load_scenario(args)
    pulse = scn.pulse()
    amp = _amp(scn)
    times = scn.snapshot_times()
    settings = _settings(scn)
    n_xy = int(scn.numerics.get("n_xy", 64))

    def one(idx_time):
        idx, t = idx_time
        box = default_box(amp, pulse, t, n_xy=n_xy)
        grid = density_snapshot(amp, pulse, t, box, settings)
        return idx, t, grid

    results = []
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(one, enumerate(times)))
    else:
        results = [one(it) for it in enumerate(times)]
    for idx, t, grid in sorted(results, key=lambda r: r[0]):
        xs, ys = grid.axes
        rows = ((x, y, grid.values[i, j])
                for i, x in enumerate(xs) for j, y in enumerate(ys))
        write_csv(f"{args.out}/density_{idx:02d}.csv", ["x", "y", "value"], rows)
        write_meta(f"{args.out}/density_{idx:02d}.meta.json", {
            "scenario": scn.describe(), "time": t, **grid.meta})
        np.savez_compressed(
            f"{args.out}/density_{idx:02d}.npz", x=xs, y=ys,
            value=grid.values, time=t)
    return 0


def cmd_observables(args) -> int:
    scn = _load_scenario(args)
    pulse = scn.pulse()
    beam = scn.beam()
    amp = _amp(scn)
    times = np.asarray(scn.snapshot_times(), dtype=float)
    settings = _settings(scn)
    n_xy = int(scn.numerics.get("n_xy", 64))
    rows = []
    for t in times:
        dm = position_mean(amp, pulse, float(t),
                           default_box(amp, pulse, float(t), n_xy=n_xy),
                           settings)
        rows.append((t, dm.x_mean, dm.y_mean, dm.z_mean, dm.norm))
    write_csv(f"{args.out}/means.csv",
              ["t", "x_mean", "y_mean", "z_mean", "box_norm"], rows)
    t_out = settle_time(pulse, beam, scn.anchor_time)
    rep = angular_momentum_stats(amp, pulse, t_out)
    write_csv(f"{args.out}/angular_momentum.csv",
              ["t", "J_mean", "DJ", "L_mean", "S_mean", "S_E"],
              [(t_out, rep.J_mean, rep.DJ, rep.L_mean, rep.S_mean, rep.S_E)])
    write_meta(f"{args.out}/observables.meta.json",
               {"scenario": scn.describe(), "t_out": t_out})
    return 0


def cmd_classical(args) -> int:
    scn = _load_scenario(args)
    pulse = scn.pulse()
    beam = scn.beam()
    times = fig2_like_times(scn)
    mean, per = _classical.averaged_trajectory(
        beam.p_par, beam.p_perp, pulse, times,
        n_phi=int(scn.numerics.get("n_classical_phi", 32)),
        t_ref=scn.anchor_time)
    write_csv(f"{args.out}/classical_mean.csv", ["t", "x", "y", "z"],
              ((t, *mean[i]) for i, t in enumerate(times)))
    rows = []
    for i, t in enumerate(times):
        for k in range(per.shape[0]):
            rows.append((t, k, *per[k, i]))
    write_csv(f"{args.out}/classical_trajectories.csv",
              ["t", "traj", "x", "y", "z"], rows)
    write_meta(f"{args.out}/classical.meta.json", {"scenario": scn.describe()})
    return 0


def cmd_sweep(args) -> int:
    scn = _load_scenario(args)
    beam = scn.beam()
    pulse0 = scn.pulse()
    n_cep = int(scn.numerics.get("n_cep", 9))
    phis = np.linspace(-math.pi / 2.0, math.pi / 2.0, n_cep)
    rows = cep_sweep(beam, pulse0.E_star, pulse0.omega, pulse0.a, phis)
    write_csv(f"{args.out}/sweep.csv",
              ["phi", "S_E", "J_mean", "DJ", "L_mean", "S_mean"],
              ((r["phi"], r["S_E"], r["J_mean"], r["DJ"], r["L_mean"],
                r["S_mean"]) for r in rows))
    write_meta(f"{args.out}/sweep.meta.json",
               {"scenario": scn.describe(), "t_out": rows[0]["t_out"]})
    return 0


def cmd_reproduce(args) -> int:
    fig = args.target
    scn = preset(fig, full=args.full)
    args.figure = fig
    if fig in ("fig2", "fig3"):
        return cmd_simulate(args)
    if fig in ("fig4", "fig5"):
        pulse = scn.pulse()
        amp = _amp(scn)
        times = fig2_like_times(scn)
        settings = _settings(scn)
        n_xy = int(scn.numerics.get("n_xy", 64))
        mean, _ = _classical.averaged_trajectory(
            amp.beam.p_par, amp.beam.p_perp, pulse, times,
            t_ref=scn.anchor_time)
        rows = []
        for i, t in enumerate(times):
            dm = position_mean(amp, pulse, float(t),
                               default_box(amp, pulse, float(t), n_xy=n_xy),
                               settings)
            rows.append((t, dm.x_mean, dm.y_mean, dm.z_mean,
                         mean[i, 0], mean[i, 1], mean[i, 2]))
        write_csv(f"{args.out}/{fig}_means.csv",
                  ["t", "x_mean", "y_mean", "z_mean",
                   "x_classical", "y_classical", "z_classical"], rows)
        write_meta(f"{args.out}/{fig}_means.meta.json",
                   {"scenario": scn.describe()})
        return 0
    if fig == "fig6":
        return cmd_current(args)
    if fig == "fig7":
        return cmd_sweep(args)
    raise ScenarioError(f"unknown reproduce target {fig!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="vortexsim",
        description="Twisted-electron wavepackets in finite laser pulses")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="scenario JSON file")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--full", action="store_true",
                       help="paper-scale grids instead of desk-scale")
        p.set_defaults(figure=None)

    for name, fn in (("field", cmd_field), ("current", cmd_current),
                     ("simulate", cmd_simulate),
                     ("observables", cmd_observables),
                     ("classical", cmd_classical), ("sweep", cmd_sweep)):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(func=fn)
    p = sub.add_parser("reproduce", help="rebuild one published figure's data")
    p.add_argument("target", choices=["fig2", "fig3", "fig4", "fig5",
                                      "fig6", "fig7"])
    common(p)
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

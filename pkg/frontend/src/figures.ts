/** Figure recipes: map an input directory onto panels, mirroring the
 * simulator's published-panel exports. */

import { existsSync, readFileSync } from "node:fs";
import { join } from "node:path";
import { CsvError, column, readCsv } from "./csv.js";
import { Figure, HeatPanel, LinePanel, PALETTE, fmt } from "./charts.js";

export const FIGURE_IDS = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"];

function densityPanel(path: string, title: string): HeatPanel {
  const t = readCsv(path);
  const xs = column(t, "x", path);
  const ys = column(t, "y", path);
  const vs = column(t, "value", path);
  const ux = Array.from(new Set(xs)).sort((a, b) => a - b);
  const uy = Array.from(new Set(ys)).sort((a, b) => a - b);
  if (ux.length * uy.length !== vs.length) {
    throw new CsvError(path, 1, "rows do not form a rectangular grid");
  }
  return {
    kind: "heatmap",
    title,
    xlabel: "x (a.u.)",
    ylabel: "y (a.u.)",
    nx: ux.length,
    ny: uy.length,
    values: vs,
    extent: [ux[0], ux[ux.length - 1], uy[0], uy[uy.length - 1]],
    vmax: 0, // filled by the filmstrip builder (shared scale)
  };
}

function snapshotTime(dir: string, idx: number): string {
  const metaPath = join(dir, `density_${String(idx).padStart(2, "0")}.meta.json`);
  if (existsSync(metaPath)) {
    try {
      const meta = JSON.parse(readFileSync(metaPath, "utf-8"));
      if (typeof meta.time === "number") {
        return `t = ${fmt(meta.time)} a.u.`;
      }
    } catch {
      // sidecar optional; fall through
    }
  }
  return `snapshot ${idx}`;
}

function filmstrip(dir: string, id: string): Figure {
  const panels: HeatPanel[] = [];
  for (let i = 0; ; i++) {
    const path = join(dir, `density_${String(i).padStart(2, "0")}.csv`);
    if (!existsSync(path)) break;
    panels.push(densityPanel(path, snapshotTime(dir, i)));
  }
  if (panels.length === 0) {
    throw new CsvError(join(dir, "density_00.csv"), 0, "file missing or unreadable");
  }
  const vmax = Math.max(...panels.map((p) => Math.max(...p.values)));
  panels.forEach((p) => { p.vmax = vmax; });
  return { id, panels };
}

function meansOverlay(dir: string, id: string, coord: "x" | "z"): Figure {
  const path = join(dir, `${id}_means.csv`);
  const t = readCsv(path);
  const ts = column(t, "t", path);
  const q = column(t, `${coord}_mean`, path);
  const cl = column(t, `${coord}_classical`, path);
  const panel: LinePanel = {
    kind: "lines",
    title: `mean ${coord} coordinate`,
    xlabel: "t (a.u.)",
    ylabel: `${coord} (a.u.)`,
    series: [
      { label: "quantum", x: ts, y: q, color: PALETTE[0] },
      { label: "classical avg", x: ts, y: cl, color: PALETTE[1], dashed: true },
    ],
  };
  return { id, panels: [panel] };
}

function currents(dir: string, id: string): Figure {
  const path = join(dir, "current.csv");
  const t = readCsv(path);
  const rho = column(t, "rho", path);
  const series = [];
  let k = 0;
  for (const name of t.columns) {
    if (name === "rho") continue;
    series.push({
      label: name,
      x: rho,
      y: column(t, name, path),
      color: PALETTE[k % PALETTE.length],
      dashed: name.startsWith("rotated"),
    });
    k += 1;
  }
  const panel: LinePanel = {
    kind: "lines",
    title: "longitudinal current profiles",
    xlabel: "rho (a.u.)",
    ylabel: "integrated j_z (arb.)",
    series,
  };
  return { id, panels: [panel] };
}

function sweep(dir: string, id: string): Figure {
  const path = join(dir, "sweep.csv");
  const t = readCsv(path);
  const se = column(t, "S_E", path);
  const j = column(t, "J_mean", path);
  const dj = column(t, "DJ", path);
  const order = se.map((_, i) => i).sort((a, b) => se[a] - se[b]);
  const sx = order.map((i) => se[i]);
  const left: LinePanel = {
    kind: "lines",
    title: "mean total angular momentum",
    xlabel: "S_E (a.u.)",
    ylabel: "<J_z> (a.u.)",
    series: [{ label: "<J_z>", x: sx, y: order.map((i) => j[i]),
               color: PALETTE[0] }],
  };
  const right: LinePanel = {
    kind: "lines",
    title: "angular momentum dispersion",
    xlabel: "S_E (a.u.)",
    ylabel: "DJ_z (a.u.)",
    series: [{ label: "DJ_z", x: sx, y: order.map((i) => dj[i]),
               color: PALETTE[1] }],
  };
  return { id, panels: [left, right] };
}

export function buildFigure(id: string, dir: string): Figure {
  switch (id) {
    case "fig2":
    case "fig3":
      return filmstrip(dir, id);
    case "fig4":
      return meansOverlay(dir, id, "x");
    case "fig5":
      return meansOverlay(dir, id, "z");
    case "fig6":
      return currents(dir, id);
    case "fig7":
      return sweep(dir, id);
    default:
      throw new Error(`unknown figure id '${id}' (choose from ${FIGURE_IDS.join(", ")})`);
  }
}

/** Figure model and deterministic SVG/PNG rendering. */

import { Canvas } from "./png.js";
import { colormap, cssColor } from "./colormap.js";
import { drawText } from "./font.js";

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: [number, number, number];
  dashed?: boolean;
}

export interface LinePanel {
  kind: "lines";
  title: string;
  xlabel: string;
  ylabel: string;
  series: Series[];
}

export interface HeatPanel {
  kind: "heatmap";
  title: string;
  xlabel: string;
  ylabel: string;
  nx: number;
  ny: number;
  /** row-major over x (outer) then y (inner), normalized by the caller */
  values: number[];
  extent: [number, number, number, number]; // x0 x1 y0 y1
  vmax: number;
}

export type Panel = LinePanel | HeatPanel;

export interface Figure {
  id: string;
  panels: Panel[];
}

export const PALETTE: [number, number, number][] = [
  [31, 119, 180], [214, 39, 40], [44, 160, 44], [255, 127, 14],
  [148, 103, 189], [140, 86, 75],
];

const PW = 320;   // panel width
const PH = 300;   // panel height
const ML = 56;    // margins
const MR = 14;
const MT = 30;
const MB = 44;

export function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.01 && a < 10000) {
    return String(Number(v.toPrecision(4)));
  }
  return v.toExponential(2).replace("e-", "e-").replace("e+", "e+");
}

function niceTicks(lo: number, hi: number, n = 5): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const span = hi - lo;
  const step0 = span / n;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const norm = step0 / mag;
  const step = (norm < 1.5 ? 1 : norm < 3.5 ? 2 : norm < 7.5 ? 5 : 10) * mag;
  const out: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12 * span; t += step) {
    out.push(Math.abs(t) < 1e-12 * span ? 0 : t);
  }
  return out;
}

function range(vals: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of vals) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(hi > lo)) {
    lo -= 1;
    hi += 1;
  }
  const pad = 0.06 * (hi - lo);
  return [lo - pad, hi + pad];
}

function panelRanges(p: LinePanel): [number, number, number, number] {
  const xs = p.series.flatMap((s) => s.x);
  const ys = p.series.flatMap((s) => s.y);
  const [x0, x1] = range(xs);
  const [y0, y1] = range(ys);
  return [x0, x1, y0, y1];
}

// ---------------------------------------------------------------------------
// SVG

export function renderSvg(fig: Figure): string {
  const width = fig.panels.length * PW;
  const height = PH;
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}" ` +
    `font-family="Helvetica,Arial,sans-serif" font-size="11">`);
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  fig.panels.forEach((panel, i) => {
    const ox = i * PW;
    const innerW = PW - ML - MR;
    const innerH = PH - MT - MB;
    parts.push(`<g transform="translate(${ox},0)">`);
    parts.push(`<text x="${ML + innerW / 2}" y="${MT - 12}" ` +
      `text-anchor="middle">${panel.title}</text>`);
    if (panel.kind === "heatmap") {
      const cw = innerW / panel.nx;
      const ch = innerH / panel.ny;
      for (let ix = 0; ix < panel.nx; ix++) {
        for (let iy = 0; iy < panel.ny; iy++) {
          const v = panel.values[ix * panel.ny + iy] / (panel.vmax || 1);
          const c = cssColor(colormap(v));
          const x = ML + ix * cw;
          const y = MT + innerH - (iy + 1) * ch;
          parts.push(`<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" ` +
            `width="${(cw + 0.5).toFixed(2)}" height="${(ch + 0.5).toFixed(2)}" ` +
            `fill="${c}"/>`);
        }
      }
      const [x0, x1, y0, y1] = panel.extent;
      parts.push(axisBoxSvg(x0, x1, y0, y1, innerW, innerH,
                            panel.xlabel, panel.ylabel));
    } else {
      const [x0, x1, y0, y1] = panelRanges(panel);
      const sx = (v: number) => ML + ((v - x0) / (x1 - x0)) * innerW;
      const sy = (v: number) => MT + innerH - ((v - y0) / (y1 - y0)) * innerH;
      if (y0 < 0 && y1 > 0) {
        parts.push(`<line x1="${ML}" y1="${sy(0).toFixed(2)}" ` +
          `x2="${ML + innerW}" y2="${sy(0).toFixed(2)}" stroke="#cccccc"/>`);
      }
      panel.series.forEach((s, k) => {
        const pts = s.x.map((xv, j) =>
          `${sx(xv).toFixed(2)},${sy(s.y[j]).toFixed(2)}`).join(" ");
        const dash = s.dashed ? ` stroke-dasharray="6,4"` : "";
        parts.push(`<polyline points="${pts}" fill="none" ` +
          `stroke="${cssColor(s.color)}" stroke-width="1.6"${dash}/>`);
        parts.push(`<text x="${ML + 8}" y="${MT + 14 + 14 * k}" ` +
          `fill="${cssColor(s.color)}">${s.label}</text>`);
      });
      parts.push(axisBoxSvg(x0, x1, y0, y1, innerW, innerH,
                            panel.xlabel, panel.ylabel));
    }
    parts.push("</g>");
  });
  parts.push("</svg>\n");
  return parts.join("\n");
}

function axisBoxSvg(x0: number, x1: number, y0: number, y1: number,
                    innerW: number, innerH: number,
                    xlabel: string, ylabel: string): string {
  const parts: string[] = [];
  parts.push(`<rect x="${ML}" y="${MT}" width="${innerW}" height="${innerH}" ` +
    `fill="none" stroke="black"/>`);
  for (const t of niceTicks(x0, x1)) {
    const px = ML + ((t - x0) / (x1 - x0)) * innerW;
    parts.push(`<line x1="${px.toFixed(2)}" y1="${MT + innerH}" ` +
      `x2="${px.toFixed(2)}" y2="${MT + innerH + 4}" stroke="black"/>`);
    parts.push(`<text x="${px.toFixed(2)}" y="${MT + innerH + 16}" ` +
      `text-anchor="middle">${fmt(t)}</text>`);
  }
  for (const t of niceTicks(y0, y1)) {
    const py = MT + innerH - ((t - y0) / (y1 - y0)) * innerH;
    parts.push(`<line x1="${ML - 4}" y1="${py.toFixed(2)}" x2="${ML}" ` +
      `y2="${py.toFixed(2)}" stroke="black"/>`);
    parts.push(`<text x="${ML - 7}" y="${(py + 3.5).toFixed(2)}" ` +
      `text-anchor="end">${fmt(t)}</text>`);
  }
  parts.push(`<text x="${ML + innerW / 2}" y="${MT + innerH + 32}" ` +
    `text-anchor="middle">${xlabel}</text>`);
  parts.push(`<text x="14" y="${MT + innerH / 2}" text-anchor="middle" ` +
    `transform="rotate(-90 14 ${MT + innerH / 2})">${ylabel}</text>`);
  return parts.join("\n");
}

// ---------------------------------------------------------------------------
// PNG

const BLACK: [number, number, number] = [0, 0, 0];
const GREY: [number, number, number] = [200, 200, 200];

export function renderPng(fig: Figure): Buffer {
  const canvas = new Canvas(fig.panels.length * PW, PH);
  fig.panels.forEach((panel, i) => {
    const ox = i * PW;
    const innerW = PW - ML - MR;
    const innerH = PH - MT - MB;
    if (panel.kind === "heatmap") {
      for (let px = 0; px < innerW; px++) {
        for (let py = 0; py < innerH; py++) {
          const ix = Math.min(panel.nx - 1,
                              Math.floor((px / innerW) * panel.nx));
          const iy = Math.min(panel.ny - 1,
                              Math.floor(((innerH - 1 - py) / innerH) * panel.ny));
          const v = panel.values[ix * panel.ny + iy] / (panel.vmax || 1);
          canvas.set(ox + ML + px, MT + py, colormap(v));
        }
      }
      drawAxesPng(canvas, ox, innerW, innerH, panel.extent[0],
                  panel.extent[1], panel.extent[2], panel.extent[3]);
    } else {
      const [x0, x1, y0, y1] = panelRanges(panel);
      const sx = (v: number) => ox + ML +
        Math.round(((v - x0) / (x1 - x0)) * innerW);
      const sy = (v: number) => MT + innerH -
        Math.round(((v - y0) / (y1 - y0)) * innerH);
      if (y0 < 0 && y1 > 0) {
        canvas.line(ox + ML, sy(0), ox + ML + innerW, sy(0), GREY, 1);
      }
      for (const s of panel.series) {
        for (let j = 1; j < s.x.length; j++) {
          if (s.dashed && j % 2 === 0) continue;
          canvas.line(sx(s.x[j - 1]), sy(s.y[j - 1]), sx(s.x[j]), sy(s.y[j]),
                      s.color, 2);
        }
      }
      drawAxesPng(canvas, ox, innerW, innerH, x0, x1, y0, y1);
    }
  });
  return canvas.encode();
}

function drawAxesPng(canvas: Canvas, ox: number, innerW: number,
                     innerH: number, x0: number, x1: number, y0: number,
                     y1: number): void {
  canvas.line(ox + ML, MT, ox + ML + innerW, MT, BLACK);
  canvas.line(ox + ML, MT + innerH, ox + ML + innerW, MT + innerH, BLACK);
  canvas.line(ox + ML, MT, ox + ML, MT + innerH, BLACK);
  canvas.line(ox + ML + innerW, MT, ox + ML + innerW, MT + innerH, BLACK);
  for (const t of niceTicks(x0, x1)) {
    const px = ox + ML + Math.round(((t - x0) / (x1 - x0)) * innerW);
    canvas.line(px, MT + innerH, px, MT + innerH + 4, BLACK);
    const label = fmt(t);
    drawText(canvas, px - 3 * label.length, MT + innerH + 7, label, BLACK);
  }
  for (const t of niceTicks(y0, y1)) {
    const py = MT + innerH - Math.round(((t - y0) / (y1 - y0)) * innerH);
    canvas.line(ox + ML - 4, py, ox + ML, py, BLACK);
    const label = fmt(t);
    drawText(canvas, ox + ML - 6 - 6 * label.length, py - 3, label, BLACK);
  }
}

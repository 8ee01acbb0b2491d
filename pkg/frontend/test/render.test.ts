import { describe, expect, it } from "vitest";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { readCsv, column, CsvError } from "../src/csv.js";
import { Canvas } from "../src/png.js";
import { buildFigure } from "../src/figures.js";
import { renderPng, renderSvg } from "../src/charts.js";
import { main } from "../src/cli.js";

const FIX = join(__dirname, "fixtures");

describe("csv", () => {
  it("parses a simulator export", () => {
    const t = readCsv(join(FIX, "fig7", "sweep.csv"));
    expect(t.columns).toContain("S_E");
    expect(t.rows.length).toBe(9);
    expect(column(t, "DJ", "sweep.csv").every((v) => v >= 0)).toBe(true);
  });

  it("names file and row on malformed input", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "a,b\n1,2\n3,oops\n");
    expect(() => readCsv(bad)).toThrowError(/bad\.csv:3: .*'b'/);
    writeFileSync(bad, "a,b\n1\n");
    expect(() => readCsv(bad)).toThrowError(/bad\.csv:2: expected 2 fields/);
    expect(() => readCsv(join(dir, "missing.csv"))).toThrowError(CsvError);
  });
});

describe("png encoder", () => {
  it("writes a valid signature and is deterministic", () => {
    const c = new Canvas(20, 10);
    c.rect(2, 2, 8, 6, [10, 200, 50]);
    c.line(0, 0, 19, 9, [0, 0, 0], 1);
    const a = c.encode();
    const b = c.encode();
    expect(Buffer.compare(a, b)).toBe(0);
    expect(Array.from(a.subarray(0, 8)))
      .toEqual([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    expect(a.subarray(12, 16).toString("ascii")).toBe("IHDR");
    expect(a.readUInt32BE(16)).toBe(20);
    expect(a.readUInt32BE(20)).toBe(10);
  });
});

describe("figures", () => {
  it("builds a four-panel filmstrip with a shared color scale", () => {
    const fig = buildFigure("fig2", join(FIX, "fig2"));
    expect(fig.panels.length).toBe(4);
    const vmaxes = fig.panels.map((p) => (p as any).vmax);
    expect(new Set(vmaxes).size).toBe(1);
  });

  it("builds the two-panel sweep chart", () => {
    const fig = buildFigure("fig7", join(FIX, "fig7"));
    expect(fig.panels.length).toBe(2);
  });

  it("builds overlays and current profiles", () => {
    expect(buildFigure("fig4", join(FIX, "fig4")).panels.length).toBe(1);
    const cur = buildFigure("fig6", join(FIX, "fig6"));
    expect((cur.panels[0] as any).series.length).toBeGreaterThanOrEqual(4);
  });

  it("rejects unknown figures and missing inputs", () => {
    expect(() => buildFigure("fig9", FIX)).toThrowError(/unknown figure/);
    expect(() => buildFigure("fig7", join(FIX, "fig2")))
      .toThrowError(/sweep\.csv/);
  });
});

describe("rendering", () => {
  it("is byte-stable for identical inputs", () => {
    for (const id of ["fig2", "fig7"]) {
      const fig = buildFigure(id, join(FIX, id));
      const svg1 = renderSvg(fig);
      const svg2 = renderSvg(buildFigure(id, join(FIX, id)));
      expect(svg1).toBe(svg2);
      const png1 = renderPng(fig);
      const png2 = renderPng(buildFigure(id, join(FIX, id)));
      expect(Buffer.compare(png1, png2)).toBe(0);
      expect(png1.length).toBeGreaterThan(1000);
      expect(svg1).toContain("</svg>");
    }
  });

  it("cli renders fig2 and fig7 end to end", () => {
    const out = mkdtempSync(join(tmpdir(), "plots-out-"));
    for (const id of ["fig2", "fig7"]) {
      const rc = main(["node", "cli.js", "render", "--figure", id,
                      "--in", join(FIX, id), "--out", out]);
      expect(rc).toBe(0);
      const png = readFileSync(join(out, `${id}.png`));
      expect(png.subarray(1, 4).toString("ascii")).toBe("PNG");
      const svg = readFileSync(join(out, `${id}.svg`), "utf-8");
      expect(svg.startsWith("<svg")).toBe(true);
    }
  });

  it("cli reports missing inputs with a nonzero exit", () => {
    const out = mkdtempSync(join(tmpdir(), "plots-out-"));
    const rc = main(["node", "cli.js", "render", "--figure", "fig7",
                    "--in", join(FIX, "fig2"), "--out", out]);
    expect(rc).toBe(1);
    expect(main(["node", "cli.js", "bogus"])).toBe(2);
  });
});

/** Figure builders: rendering, determinism, and failure modes. */

import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, describe, expect, it } from "vitest";

import { FigureSpec, makeFigure } from "../src/figures.js";
import { renderChart } from "../src/svg.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");
const OUT = mkdtempSync(join(tmpdir(), "figtest-"));

afterAll(() => rmSync(OUT, { recursive: true, force: true }));

describe("makeFigure", () => {
  it("renders the impulse comparison figure", () => {
    const spec: FigureSpec = {
      id: "fig4",
      inputs: { comparison: join(FIXTURES, "impulse_small.csv") },
      outPath: join(OUT, "fig4.svg"),
    };
    makeFigure(spec);
    const svg = readFileSync(spec.outPath, "utf8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("numeric");
    expect(svg).toContain("analytic");
  });

  it("renders the loading-profile figure from the manifest alone", () => {
    const spec: FigureSpec = {
      id: "fig5",
      inputs: { manifest: join(FIXTURES, "manifest_small.json") },
      outPath: join(OUT, "fig5.svg"),
    };
    makeFigure(spec);
    expect(readFileSync(spec.outPath, "utf8")).toContain("peak strength");
  });

  it("renders modal overlays", () => {
    const spec: FigureSpec = {
      id: "fig2",
      inputs: { modalTables: [join(FIXTURES, "modal_small.csv")] },
      outPath: join(OUT, "fig2.svg"),
    };
    makeFigure(spec);
    expect(readFileSync(spec.outPath, "utf8")).toContain("step 0.5");
  });

  it("is idempotent: identical bytes on re-render", () => {
    const spec: FigureSpec = {
      id: "fig4",
      inputs: { comparison: join(FIXTURES, "impulse_small.csv") },
      outPath: join(OUT, "fig4_again.svg"),
    };
    makeFigure(spec);
    const first = readFileSync(spec.outPath);
    makeFigure(spec);
    const second = readFileSync(spec.outPath);
    expect(second.equals(first)).toBe(true);
  });

  it("fails with the missing file's name", () => {
    const spec: FigureSpec = {
      id: "fig4",
      inputs: { comparison: join(FIXTURES, "nonexistent.csv") },
      outPath: join(OUT, "nope.svg"),
    };
    expect(() => makeFigure(spec)).toThrow(/nonexistent\.csv/);
  });

  it("rejects unknown figure ids", () => {
    expect(() =>
      makeFigure({ id: "fig99", inputs: {}, outPath: join(OUT, "x.svg") }),
    ).toThrow(/unknown figure/);
  });
});

describe("renderChart", () => {
  it("renders flat zero series without error", () => {
    const svg = renderChart({
      title: "flat",
      xLabel: "x",
      yLabel: "y",
      series: [{ x: [0, 1, 2], y: [0, 0, 0], label: "zero" }],
    });
    expect(svg).toContain("polyline");
  });

  it("skips non-finite samples", () => {
    const svg = renderChart({
      title: "gaps",
      xLabel: "x",
      yLabel: "y",
      series: [{ x: [0, 1, 2], y: [1, Infinity, 2], label: "gappy" }],
    });
    expect(svg).toContain("polyline");
    expect(svg).not.toContain("NaN");
    expect(svg).not.toContain("Infinity");
  });

  it("escapes markup in labels", () => {
    const svg = renderChart({
      title: "a < b",
      xLabel: "x",
      yLabel: "y",
      series: [{ x: [0, 1], y: [0, 1], label: "s & t" }],
    });
    expect(svg).toContain("a &lt; b");
    expect(svg).toContain("s &amp; t");
  });
});

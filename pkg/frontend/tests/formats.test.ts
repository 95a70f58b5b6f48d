/**
 * Parser golden-file tests: parsing is the value-exact inverse of the
 * simulator's writing for every emitted file type.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  formatDouble17,
  parseImpulseComparison,
  parseManifest,
  parseModalTable,
  parseProbe,
  parseRecords,
  parseSnapshot,
} from "../src/formats.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

interface Sidecar {
  meta: Record<string, string>;
  header: string[];
  columns: number[][];
}

function sidecar(name: string): Sidecar {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf8"));
}

function checkAgainstSidecar(csvName: string, jsonName: string) {
  const records = parseRecords(join(FIXTURES, csvName));
  const expected = sidecar(jsonName);
  expect(records.header).toEqual(expected.header);
  expect(records.columns.length).toBe(expected.columns.length);
  records.columns.forEach((col, i) => {
    expect(col.length).toBe(expected.columns[i].length);
    col.forEach((v, j) => {
      // bit-exact double equality
      expect(v).toBe(expected.columns[i][j]);
    });
  });
}

describe("delimited records", () => {
  it("snapshot values round-trip bit-exactly", () => {
    checkAgainstSidecar("snapshot_small.csv", "snapshot_small.json");
  });

  it("probe values round-trip bit-exactly", () => {
    checkAgainstSidecar("probe_small.csv", "probe_small.json");
  });

  it("modal table values round-trip bit-exactly", () => {
    checkAgainstSidecar("modal_small.csv", "modal_small.json");
  });

  it("impulse comparison values round-trip bit-exactly", () => {
    checkAgainstSidecar("impulse_small.csv", "impulse_small.json");
  });

  it("re-formatting parsed cells reproduces the file text", () => {
    for (const name of [
      "snapshot_small.csv",
      "probe_small.csv",
      "modal_small.csv",
      "impulse_small.csv",
    ]) {
      const text = readFileSync(join(FIXTURES, name), "utf8");
      const lines = text.trimEnd().split("\n");
      const records = parseRecords(join(FIXTURES, name));
      const dataLines = lines.filter((l) => !l.startsWith("#")).slice(1);
      dataLines.forEach((line, row) => {
        line.split(",").forEach((cell, colIdx) => {
          expect(formatDouble17(records.columns[colIdx][row])).toBe(cell);
        });
      });
    }
  });
});

describe("typed parsers", () => {
  it("snapshot carries time and the four field columns", () => {
    const snap = parseSnapshot(join(FIXTURES, "snapshot_small.csv"));
    expect(snap.timeS).toBeGreaterThan(0);
    expect(snap.configSha256).toMatch(/^[0-9a-f]{64}$/);
    expect(snap.x1M.length).toBe(snap.slipM.length);
    expect(snap.slipRateMS.length).toBe(snap.shearStressPa.length);
  });

  it("probe carries its position", () => {
    const probe = parseProbe(join(FIXTURES, "probe_small.csv"));
    expect(probe.positionM).toBe(4500);
    expect(probe.tS[0]).toBe(0);
    expect(probe.tS.length).toBe(probe.slipRateMS.length);
  });

  it("modal table exposes step size and deviation", () => {
    const table = parseModalTable(join(FIXTURES, "modal_small.csv"));
    expect(table.dgamma).toBe(0.5);
    expect(table.rNumeric[0]).toBe(1);
    expect(table.maxDeviation).toBeGreaterThan(0);
  });

  it("impulse comparison exposes the fitted amplitude", () => {
    const cmp = parseImpulseComparison(join(FIXTURES, "impulse_small.csv"));
    expect(cmp.fittedAmplitude).toBeGreaterThan(0);
    expect(cmp.slipNumericM.length).toBe(cmp.tS.length);
  });

  it("manifest exposes config echo and file inventory", () => {
    const man = parseManifest(join(FIXTURES, "manifest_small.json"));
    expect(man.codeVersion).toBeTruthy();
    expect(man.config.interface.elements).toBe(64);
    expect(man.config.friction.peak_strength_pa).toBe(81.24e6);
    expect(man.files.snapshots?.length).toBe(2);
    expect(man.warnings.length).toBeGreaterThan(0);
  });

  it("rejects files with missing columns", () => {
    expect(() => parseProbe(join(FIXTURES, "snapshot_small.csv"))).toThrow(/t_s/);
  });

  it("rejects missing files", () => {
    expect(() => parseSnapshot(join(FIXTURES, "ghost.csv"))).toThrow();
  });
});

describe("formatDouble17", () => {
  it("matches python %.17e forms", () => {
    expect(formatDouble17(0)).toBe("0.00000000000000000e+00");
    expect(formatDouble17(-0)).toBe("-0.00000000000000000e+00");
    expect(formatDouble17(1)).toBe("1.00000000000000000e+00");
    expect(formatDouble17(-2.5e-7)).toBe("-2.49999999999999989e-07");
    expect(formatDouble17(8.1e101)).toBe("8.09999999999999988e+101");
  });
});

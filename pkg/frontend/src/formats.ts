/**
 * Parsers for the simulator's output files.
 *
 * Data files are comma-delimited text: '#'-prefixed `key = value`
 * metadata lines, one header row, then float rows in full double
 * precision. The run manifest is JSON. Parsing is the inverse of the
 * simulator's writing: numbers reproduce the original doubles exactly.
 */

import { readFileSync } from "node:fs";

export interface Records {
  meta: Record<string, string>;
  header: string[];
  columns: number[][];
}

export function parseRecords(path: string): Records {
  const text = readFileSync(path, "utf8");
  const meta: Record<string, string> = {};
  let header: string[] | null = null;
  const columns: number[][] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (!line) continue;
    if (line.startsWith("#")) {
      const body = line.slice(1);
      const eq = body.indexOf("=");
      if (eq >= 0) meta[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
      continue;
    }
    if (header === null) {
      header = line.split(",");
      for (const _ of header) columns.push([]);
      continue;
    }
    const parts = line.split(",");
    if (parts.length !== header.length) {
      throw new Error(`${path}: row has ${parts.length} fields, expected ${header.length}`);
    }
    parts.forEach((p, i) => {
      const v = Number(p);
      if (Number.isNaN(v) && p.trim() !== "nan") {
        throw new Error(`${path}: unparseable number '${p}'`);
      }
      columns[i].push(v);
    });
  }
  if (header === null) throw new Error(`${path}: no header row`);
  return { meta, header, columns };
}

function column(r: Records, name: string, path: string): number[] {
  const i = r.header.indexOf(name);
  if (i < 0) throw new Error(`${path}: missing column '${name}'`);
  return r.columns[i];
}

export interface Snapshot {
  timeS: number;
  configSha256: string;
  x1M: number[];
  slipM: number[];
  slipRateMS: number[];
  shearStressPa: number[];
}

export function parseSnapshot(path: string): Snapshot {
  const r = parseRecords(path);
  return {
    timeS: Number(r.meta["time_s"]),
    configSha256: r.meta["config_sha256"] ?? "",
    x1M: column(r, "x1_m", path),
    slipM: column(r, "slip_m", path),
    slipRateMS: column(r, "slip_rate_m_s", path),
    shearStressPa: column(r, "shear_stress_Pa", path),
  };
}

export interface Probe {
  positionM: number;
  tS: number[];
  slipRateMS: number[];
}

export function parseProbe(path: string): Probe {
  const r = parseRecords(path);
  return {
    positionM: Number(r.meta["position_m"]),
    tS: column(r, "t_s", path),
    slipRateMS: column(r, "slip_rate_m_s", path),
  };
}

export interface ModalTable {
  dgamma: number;
  delayGamma: number;
  maxDeviation: number;
  gamma: number[];
  rNumeric: number[];
  rAnalytic: number[];
  deviation: number[];
}

export function parseModalTable(path: string): ModalTable {
  const r = parseRecords(path);
  return {
    dgamma: Number(r.meta["dgamma"]),
    delayGamma: Number(r.meta["delay_gamma"]),
    maxDeviation: Number(r.meta["max_deviation"]),
    gamma: column(r, "gamma", path),
    rNumeric: column(r, "r_numeric", path),
    rAnalytic: column(r, "r_analytic", path),
    deviation: column(r, "deviation", path),
  };
}

export interface ImpulseComparison {
  positionM: number;
  fittedAmplitude: number;
  relL2Error: number;
  tS: number[];
  slipNumericM: number[];
  slipReferenceM: number[];
}

export function parseImpulseComparison(path: string): ImpulseComparison {
  const r = parseRecords(path);
  return {
    positionM: Number(r.meta["position_m"]),
    fittedAmplitude: Number(r.meta["fitted_amplitude"]),
    relL2Error: Number(r.meta["rel_l2_error"]),
    tS: column(r, "t_s", path),
    slipNumericM: column(r, "slip_numeric_m", path),
    slipReferenceM: column(r, "slip_reference_m", path),
  };
}

export interface Manifest {
  codeVersion: string;
  config: {
    scenario: string;
    interface: {
      length_m: number;
      elements: number;
      barrier_length_m: number;
      nucleation_length_m: number;
    };
    loading: {
      background_stress_pa: number;
      nucleation_stress_pa: number;
    };
    friction: {
      peak_strength_pa: number;
      residual_strength_pa: number;
      critical_slip_m: number;
      barrier_strength_pa: number;
    };
    output: { snapshot_times_s: number[]; probe_positions_m: number[] };
  };
  files: {
    snapshots?: { path: string; time_s: number }[];
    probes?: { path: string; position_m: number }[];
  };
  warnings: string[];
}

export function parseManifest(path: string): Manifest {
  const data = JSON.parse(readFileSync(path, "utf8"));
  if (!data.config || !data.files) {
    throw new Error(`${path}: not a run manifest`);
  }
  return {
    codeVersion: data.code_version,
    config: data.config,
    files: data.files,
    warnings: data.warnings ?? [],
  };
}

/** Python '%.17e' formatting (for value-level round-trip checks). */
export function formatDouble17(x: number): string {
  if (!Number.isFinite(x)) return String(x);
  if (Object.is(x, -0)) return "-" + formatDouble17(0);
  let s = x.toExponential(17);
  const m = s.match(/^(-?\d\.\d+e[+-])(\d+)$/);
  if (!m) return s;
  const digits = m[2].length >= 2 ? m[2] : "0" + m[2];
  return m[1] + digits;
}

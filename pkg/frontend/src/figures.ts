/**
 * Figure builders over the simulator's output files.
 *
 * Each figure reads the files named in its spec, renders a
 * deterministic SVG, and writes it to the output path:
 *
 *   fig2  modal response vs analytic for several step sizes
 *   fig3  effect of the convolution delay on the modal response
 *   fig4  impulse slip at a probe vs the analytic waveform
 *   fig5  initial stress and frictional strength profiles
 *   fig6  probe slip-rate histories with and without the delay
 *   fig7  rupture snapshots, identical half-planes (slip/rate/stress)
 *   fig8  rupture snapshots, faster bottom half-plane
 *   fig9  rupture snapshots, slower bottom half-plane
 */

import { existsSync, mkdirSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";

import {
  parseImpulseComparison,
  parseManifest,
  parseModalTable,
  parseProbe,
  parseSnapshot,
} from "./formats.js";
import { renderChart, stackCharts, Series } from "./svg.js";

export interface FigureSpec {
  id: string;
  /** figure-specific named input files */
  inputs: Record<string, string | string[]>;
  outPath: string;
}

function need(path: string): string {
  if (!existsSync(path)) throw new Error(`missing input file: ${path}`);
  return path;
}

function needAll(paths: string | string[]): string[] {
  const list = Array.isArray(paths) ? paths : [paths];
  return list.map(need);
}

function writeSvg(outPath: string, svg: string): void {
  mkdirSync(dirname(outPath), { recursive: true });
  writeFileSync(outPath, svg);
}

function fig2(spec: FigureSpec): void {
  const tables = needAll(spec.inputs.modalTables).map(parseModalTable);
  const series: Series[] = [];
  tables.forEach((t) => {
    series.push({
      x: t.gamma,
      y: t.rNumeric,
      label: `numeric, step ${t.dgamma}`,
    });
  });
  const ref = tables[0];
  series.push({
    x: ref.gamma,
    y: ref.rAnalytic,
    label: "analytic",
    color: "#000",
    dash: "5,3",
  });
  writeSvg(
    spec.outPath,
    renderChart({
      title: "Modal response: marching vs analytic",
      xLabel: "nondimensional time",
      yLabel: "normalized stress response",
      series,
    }),
  );
}

function fig3(spec: FigureSpec): void {
  const tables = needAll(spec.inputs.modalTables).map(parseModalTable);
  const series: Series[] = tables.map((t) => ({
    x: t.gamma,
    y: t.rNumeric,
    label: t.delayGamma > 0 ? `delay ${t.delayGamma}` : "no delay",
  }));
  series.push({
    x: tables[0].gamma,
    y: tables[0].rAnalytic,
    label: "analytic",
    color: "#000",
    dash: "5,3",
  });
  writeSvg(
    spec.outPath,
    renderChart({
      title: `Convolution delay at step ${tables[0].dgamma}`,
      xLabel: "nondimensional time",
      yLabel: "normalized stress response",
      series,
    }),
  );
}

function fig4(spec: FigureSpec): void {
  const cmp = parseImpulseComparison(need(spec.inputs.comparison as string));
  writeSvg(
    spec.outPath,
    renderChart({
      title: `Impulse slip at x = ${cmp.positionM} m (fitted amplitude ${cmp.fittedAmplitude.toPrecision(5)})`,
      xLabel: "time (s)",
      yLabel: "slip (m)",
      series: [
        { x: cmp.tS, y: cmp.slipNumericM, label: "numeric" },
        {
          x: cmp.tS,
          y: cmp.slipReferenceM,
          label: "analytic (scaled)",
          color: "#000",
          dash: "5,3",
        },
      ],
    }),
  );
}

function fig5(spec: FigureSpec): void {
  // profiles reconstructed from the manifest's config echo
  const man = parseManifest(need(spec.inputs.manifest as string));
  const c = man.config;
  const L = c.interface.length_m;
  const n = c.interface.elements;
  const dx = L / n;
  const x: number[] = [];
  const stress: number[] = [];
  const strengthProfile: number[] = [];
  for (let m = 0; m < n; m++) {
    const xm = (m - n / 2) * dx;
    x.push(xm / 1e3);
    stress.push(
      (Math.abs(xm) <= c.interface.nucleation_length_m / 2
        ? c.loading.nucleation_stress_pa
        : c.loading.background_stress_pa) / 1e6,
    );
    const barrier = Math.abs(xm) >= L / 2 - c.interface.barrier_length_m;
    strengthProfile.push(
      (barrier ? c.friction.barrier_strength_pa : c.friction.peak_strength_pa) / 1e6,
    );
  }
  writeSvg(
    spec.outPath,
    renderChart({
      title: "Initial shear stress and peak strength",
      xLabel: "position (km)",
      yLabel: "stress (MPa)",
      series: [
        { x, y: stress, label: "background stress" },
        { x, y: strengthProfile, label: "peak strength", color: "#d62728" },
      ],
      // barrier strength is orders of magnitude above the stresses
      yLimits: [0, (c.loading.nucleation_stress_pa / 1e6) * 1.5],
    }),
  );
}

function fig6(spec: FigureSpec): void {
  const probes = needAll(spec.inputs.probes).map(parseProbe);
  const labels = ["with delay", "no delay"];
  writeSvg(
    spec.outPath,
    renderChart({
      title: `Slip rate ${probes[0].positionM / 1e3} km from the center`,
      xLabel: "time (s)",
      yLabel: "slip rate (m/s)",
      series: probes.map((p, i) => ({
        x: p.tS,
        y: p.slipRateMS,
        label: labels[i] ?? `probe ${i}`,
      })),
    }),
  );
}

function ruptureTriptych(spec: FigureSpec, title: string): void {
  const snaps = needAll(spec.inputs.snapshots).map(parseSnapshot);
  snaps.sort((a, b) => a.timeS - b.timeS);
  const xKm = snaps[0].x1M.map((v) => v / 1e3);
  const panels = [
    { get: (s: ReturnType<typeof parseSnapshot>) => s.slipM, label: "slip (m)", scale: 1 },
    {
      get: (s: ReturnType<typeof parseSnapshot>) => s.slipRateMS,
      label: "slip rate (m/s)",
      scale: 1,
    },
    {
      get: (s: ReturnType<typeof parseSnapshot>) => s.shearStressPa,
      label: "shear stress (MPa)",
      scale: 1e-6,
    },
  ];
  const charts = panels.map((panel, pi) =>
    renderChart({
      title: pi === 0 ? title : "",
      xLabel: pi === panels.length - 1 ? "position (km)" : "",
      yLabel: panel.label,
      series: snaps.map((s) => ({
        x: xKm,
        y: panel.get(s).map((v) => v * panel.scale),
        label: `t = ${s.timeS.toFixed(2)} s`,
      })),
      height: 320,
    }),
  );
  writeSvg(spec.outPath, stackCharts(charts));
}

const BUILDERS: Record<string, (spec: FigureSpec) => void> = {
  fig2,
  fig3,
  fig4,
  fig5,
  fig6,
  fig7: (s) => ruptureTriptych(s, "Rupture between identical half-planes"),
  fig8: (s) => ruptureTriptych(s, "Rupture, faster bottom half-plane"),
  fig9: (s) => ruptureTriptych(s, "Rupture, slower bottom half-plane"),
};

export function makeFigure(spec: FigureSpec): string {
  const builder = BUILDERS[spec.id];
  if (!builder) throw new Error(`unknown figure id: ${spec.id}`);
  builder(spec);
  return spec.outPath;
}

/** Conventional data-directory layout produced by scripts/make_data.sh. */
export function defaultSpecs(dataDir: string, outDir: string): FigureSpec[] {
  const snapshotPaths = (run: string) =>
    [0, 1, 2, 3, 4].map((i) => join(dataDir, run, `snapshot_000${i}.csv`));
  return [
    {
      id: "fig2",
      inputs: {
        modalTables: [
          join(dataDir, "modal", "modal_dg0.1.csv"),
          join(dataDir, "modal", "modal_dg0.5.csv"),
          join(dataDir, "modal", "modal_dg1.0.csv"),
        ],
      },
      outPath: join(outDir, "fig2_modal_accuracy.svg"),
    },
    {
      id: "fig3",
      inputs: {
        modalTables: [
          join(dataDir, "modal", "modal_dg0.5.csv"),
          join(dataDir, "modal", "modal_dg0.5_delay1.csv"),
          join(dataDir, "modal", "modal_dg0.5_delay2.csv"),
        ],
      },
      outPath: join(outDir, "fig3_delay_effect.svg"),
    },
    {
      id: "fig4",
      inputs: { comparison: join(dataDir, "impulse", "impulse_comparison.csv") },
      outPath: join(outDir, "fig4_impulse_vs_analytic.svg"),
    },
    {
      id: "fig5",
      inputs: { manifest: join(dataDir, "reference", "manifest.json") },
      outPath: join(outDir, "fig5_loading_profiles.svg"),
    },
    {
      id: "fig6",
      inputs: {
        probes: [
          join(dataDir, "reference", "probe_0000.csv"),
          join(dataDir, "reference_nodelay", "probe_0000.csv"),
        ],
      },
      outPath: join(outDir, "fig6_probe_delay_effect.svg"),
    },
    {
      id: "fig7",
      inputs: { snapshots: snapshotPaths("reference") },
      outPath: join(outDir, "fig7_rupture_identical.svg"),
    },
    {
      id: "fig8",
      inputs: { snapshots: snapshotPaths("bimaterial_fast") },
      outPath: join(outDir, "fig8_rupture_fast_bottom.svg"),
    },
    {
      id: "fig9",
      inputs: { snapshots: snapshotPaths("bimaterial_slow") },
      outPath: join(outDir, "fig9_rupture_slow_bottom.svg"),
    },
  ];
}

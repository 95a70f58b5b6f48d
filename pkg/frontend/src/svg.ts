/**
 * Minimal deterministic SVG line charts.
 *
 * No timestamps, no randomness, fixed coordinate formatting: the same
 * inputs always produce the same bytes, which the tests rely on.
 */

export interface Series {
  x: number[];
  y: number[];
  label: string;
  color?: string;
  dash?: string;
  width?: number;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  width?: number;
  height?: number;
  yLimits?: [number, number];
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];
const MARGIN = { left: 72, right: 16, top: 34, bottom: 46 };

function fmtCoord(v: number): string {
  return v.toFixed(2);
}

function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) hi = lo + 1;
  const span = hi - lo;
  const step0 = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const mult of [1, 2, 2.5, 5, 10]) {
    if (mag * mult >= step0) {
      step = mag * mult;
      break;
    }
  }
  const ticks: number[] = [];
  const start = Math.ceil(lo / step) * step;
  for (let v = start; v <= hi + 1e-9 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) return v.toExponential(1).replace("e", "e");
  const s = v.toPrecision(6);
  return String(Number(s));
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderChart(spec: ChartSpec): string {
  const W = spec.width ?? 760;
  const H = spec.height ?? 420;
  const plotW = W - MARGIN.left - MARGIN.right;
  const plotH = H - MARGIN.top - MARGIN.bottom;

  let xMin = Infinity, xMax = -Infinity, yMin = Infinity, yMax = -Infinity;
  for (const s of spec.series) {
    for (const v of s.x) {
      if (Number.isFinite(v)) {
        xMin = Math.min(xMin, v);
        xMax = Math.max(xMax, v);
      }
    }
    for (const v of s.y) {
      if (Number.isFinite(v)) {
        yMin = Math.min(yMin, v);
        yMax = Math.max(yMax, v);
      }
    }
  }
  if (!Number.isFinite(xMin)) {
    xMin = 0;
    xMax = 1;
  }
  if (!Number.isFinite(yMin)) {
    yMin = 0;
    yMax = 1;
  }
  if (spec.yLimits) [yMin, yMax] = spec.yLimits;
  if (yMax === yMin) yMax = yMin + 1;
  const yPad = 0.05 * (yMax - yMin);
  if (!spec.yLimits) {
    yMin -= yPad;
    yMax += yPad;
  }

  const sx = (v: number) => MARGIN.left + ((v - xMin) / (xMax - xMin)) * plotW;
  const sy = (v: number) => MARGIN.top + plotH - ((v - yMin) / (yMax - yMin)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}">`,
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">${escapeXml(spec.title)}</text>`,
  );

  // frame and ticks
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const t of niceTicks(xMin, xMax)) {
    const px = sx(t);
    if (px < MARGIN.left - 0.5 || px > MARGIN.left + plotW + 0.5) continue;
    parts.push(
      `<line x1="${fmtCoord(px)}" y1="${MARGIN.top + plotH}" x2="${fmtCoord(px)}" y2="${MARGIN.top + plotH + 5}" stroke="#333"/>`,
      `<line x1="${fmtCoord(px)}" y1="${MARGIN.top}" x2="${fmtCoord(px)}" y2="${MARGIN.top + plotH}" stroke="#ddd" stroke-width="0.5"/>`,
      `<text x="${fmtCoord(px)}" y="${MARGIN.top + plotH + 18}" font-family="sans-serif" font-size="11" text-anchor="middle">${fmtTick(t)}</text>`,
    );
  }
  for (const t of niceTicks(yMin, yMax)) {
    const py = sy(t);
    if (py < MARGIN.top - 0.5 || py > MARGIN.top + plotH + 0.5) continue;
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${fmtCoord(py)}" x2="${MARGIN.left}" y2="${fmtCoord(py)}" stroke="#333"/>`,
      `<line x1="${MARGIN.left}" y1="${fmtCoord(py)}" x2="${MARGIN.left + plotW}" y2="${fmtCoord(py)}" stroke="#ddd" stroke-width="0.5"/>`,
      `<text x="${MARGIN.left - 8}" y="${fmtCoord(py + 4)}" font-family="sans-serif" font-size="11" text-anchor="end">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${H - 10}" font-family="sans-serif" font-size="12" text-anchor="middle">${escapeXml(spec.xLabel)}</text>`,
    `<text x="16" y="${MARGIN.top + plotH / 2}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${escapeXml(spec.yLabel)}</text>`,
  );

  // series (clipped to the frame)
  const clipId = "plot-area";
  parts.push(
    `<clipPath id="${clipId}"><rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}"/></clipPath>`,
  );
  spec.series.forEach((s, idx) => {
    const color = s.color ?? PALETTE[idx % PALETTE.length];
    const pts: string[] = [];
    for (let i = 0; i < s.x.length; i++) {
      if (!Number.isFinite(s.x[i]) || !Number.isFinite(s.y[i])) continue;
      pts.push(`${fmtCoord(sx(s.x[i]))},${fmtCoord(sy(s.y[i]))}`);
    }
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<polyline clip-path="url(#${clipId})" points="${pts.join(" ")}" fill="none" stroke="${color}" stroke-width="${s.width ?? 1.4}"${dash}/>`,
    );
  });

  // legend
  let ly = MARGIN.top + 14;
  spec.series.forEach((s, idx) => {
    const color = s.color ?? PALETTE[idx % PALETTE.length];
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<line x1="${MARGIN.left + 10}" y1="${ly - 4}" x2="${MARGIN.left + 34}" y2="${ly - 4}" stroke="${color}" stroke-width="2"${dash}/>`,
      `<text x="${MARGIN.left + 40}" y="${ly}" font-family="sans-serif" font-size="11">${escapeXml(s.label)}</text>`,
    );
    ly += 15;
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/** Stack several charts vertically into one SVG document. */
export function stackCharts(charts: string[], width = 760): string {
  let y = 0;
  const body: string[] = [];
  for (const svg of charts) {
    const hMatch = svg.match(/height="(\d+)"/);
    const h = hMatch ? Number(hMatch[1]) : 420;
    const inner = svg
      .replace(/^<svg[^>]*>/, "")
      .replace(/<\/svg>\s*$/, "")
      .replace(/clip-path="url\(#plot-area\)"/g, `clip-path="url(#plot-area-${y})"`)
      .replace(/<clipPath id="plot-area">/g, `<clipPath id="plot-area-${y}">`);
    body.push(`<g transform="translate(0 ${y})">${inner}</g>`);
    y += h;
  }
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${y}" viewBox="0 0 ${width} ${y}">\n` +
    body.join("\n") +
    "\n</svg>\n"
  );
}

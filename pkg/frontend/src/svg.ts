/**
 * Static SVG builders for randomization-test reports and formation-game
 * sweeps. Every function is a pure map from parsed inputs to a markup
 * string, so identical inputs always produce identical bytes.
 *
 * Reference-distribution masses are written through to `data-mass`
 * attributes unchanged, which lets tests re-sum the rendered histogram.
 */

import { TestReport } from './schema.js';
import { SweepRow, SweepMetric } from './csv.js';

export const PANEL_W = 480;
export const PANEL_H = 300;
const MARGIN = { left: 58, right: 18, top: 40, bottom: 46 };
const INNER_W = PANEL_W - MARGIN.left - MARGIN.right;
const INNER_H = PANEL_H - MARGIN.top - MARGIN.bottom;

const BAR_FILL = '#4878a8';
const MARKER_STROKE = '#c03028';
const AXIS_STROKE = '#333333';
const MODE_COLORS: Record<string, string> = {
  least: '#4878a8',
  greatest: '#c03028',
};
const FALLBACK_COLORS = ['#3f8f5f', '#8f5fb0', '#b08f3f'];

export function fmt(x: number): string {
  if (Number.isInteger(x) && Math.abs(x) < 1e15) return String(x);
  return String(Number(x.toPrecision(6)));
}

function esc(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');
}

function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>\n` +
    body +
    '</svg>\n'
  );
}

interface Scale {
  (value: number): number;
}

function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo;
  return (value: number) => outLo + ((value - lo) / span) * (outHi - outLo);
}

function xTicks(sx: Scale, lo: number, hi: number, axisY: number): string {
  let out = '';
  for (const value of [lo, (lo + hi) / 2, hi]) {
    const px = sx(value);
    out += `<line x1="${fmt(px)}" y1="${axisY}" x2="${fmt(px)}" y2="${axisY + 5}" stroke="${AXIS_STROKE}"/>\n`;
    out += `<text x="${fmt(px)}" y="${axisY + 18}" font-size="11" text-anchor="middle">${fmt(value)}</text>\n`;
  }
  return out;
}

/**
 * One histogram panel as a translated `<g>` group: reference-distribution
 * bars, a vertical line at the observed statistic, and axis furniture.
 */
export function histogramGroup(report: TestReport, x0: number, y0: number): string {
  const edges = report.histogram.edges;
  const masses = report.histogram.masses;
  const lo = Math.min(edges[0], report.observed);
  const hi = Math.max(edges[edges.length - 1], report.observed);
  const pad = 0.06 * (hi - lo);
  const sx = linearScale(lo - pad, hi + pad, MARGIN.left, MARGIN.left + INNER_W);
  const maxMass = Math.max(...masses);
  const sy = linearScale(0, maxMass, MARGIN.top + INNER_H, MARGIN.top);
  const axisY = MARGIN.top + INNER_H;

  let body = '';
  body += `<text x="${MARGIN.left}" y="18" font-size="13" font-weight="bold">${esc(report.statistic)}</text>\n`;
  body +=
    `<text x="${MARGIN.left}" y="32" font-size="11" fill="#555555">` +
    `B=${fmt(report.B)}  seed=${fmt(report.seed)}  p(T&#8805;obs)=${fmt(report.p_value_geq)}` +
    `  c(&#945;=${fmt(report.alpha)})=${fmt(report.c_alpha)}</text>\n`;

  for (let i = 0; i < masses.length; i++) {
    const xLeft = sx(edges[i]);
    const xRight = sx(edges[i + 1]);
    const yTop = sy(masses[i]);
    body +=
      `<rect class="bin" data-mass="${masses[i]}" data-x0="${edges[i]}" data-x1="${edges[i + 1]}" ` +
      `x="${fmt(xLeft)}" y="${fmt(yTop)}" width="${fmt(xRight - xLeft)}" ` +
      `height="${fmt(axisY - yTop)}" fill="${BAR_FILL}" stroke="#ffffff" stroke-width="0.5"/>\n`;
  }

  const markerX = sx(report.observed);
  body +=
    `<line class="observed" data-value="${report.observed}" x1="${fmt(markerX)}" y1="${MARGIN.top}" ` +
    `x2="${fmt(markerX)}" y2="${axisY}" stroke="${MARKER_STROKE}" stroke-width="1.5" stroke-dasharray="4,3"/>\n`;
  const anchor = markerX > MARGIN.left + INNER_W / 2 ? 'end' : 'start';
  body +=
    `<text x="${fmt(markerX + (anchor === 'end' ? -4 : 4))}" y="${MARGIN.top + 12}" font-size="11" ` +
    `fill="${MARKER_STROKE}" text-anchor="${anchor}">observed ${fmt(report.observed)}</text>\n`;

  body += `<line x1="${MARGIN.left}" y1="${axisY}" x2="${MARGIN.left + INNER_W}" y2="${axisY}" stroke="${AXIS_STROKE}"/>\n`;
  body += `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${axisY}" stroke="${AXIS_STROKE}"/>\n`;
  body += xTicks(sx, edges[0], edges[edges.length - 1], axisY);
  body += `<text x="${MARGIN.left - 8}" y="${fmt(sy(maxMass) + 4)}" font-size="11" text-anchor="end">${fmt(maxMass)}</text>\n`;
  body += `<text x="${MARGIN.left - 8}" y="${axisY + 4}" font-size="11" text-anchor="end">0</text>\n`;
  body +=
    `<text x="${fmt(MARGIN.left + INNER_W / 2)}" y="${PANEL_H - 8}" font-size="11" ` +
    `text-anchor="middle">statistic value</text>\n`;
  body +=
    `<text x="14" y="${fmt(MARGIN.top + INNER_H / 2)}" font-size="11" text-anchor="middle" ` +
    `transform="rotate(-90 14 ${fmt(MARGIN.top + INNER_H / 2)})">reference mass</text>\n`;

  return `<g class="panel" transform="translate(${x0},${y0})">\n${body}</g>\n`;
}

/** A single report rendered as a standalone SVG document. */
export function histogramSvg(report: TestReport): string {
  return svgDocument(PANEL_W, PANEL_H, histogramGroup(report, 0, 0));
}

/** Several reports side by side, two panels per row. */
export function panelsSvg(reports: TestReport[]): string {
  const columns = Math.min(2, reports.length);
  const rows = Math.ceil(reports.length / columns);
  let body = '';
  reports.forEach((report, i) => {
    const x0 = (i % columns) * PANEL_W;
    const y0 = Math.floor(i / columns) * PANEL_H;
    body += histogramGroup(report, x0, y0);
  });
  return svgDocument(columns * PANEL_W, rows * PANEL_H, body);
}

function modeColor(mode: string, i: number): string {
  return MODE_COLORS[mode] ?? FALLBACK_COLORS[i % FALLBACK_COLORS.length];
}

/**
 * Externality sweep: one polyline per equilibrium mode tracing the mean of
 * `column` across replications at each externality strength.
 */
export function sweepSvg(rows: SweepRow[], column: SweepMetric = 'transitivity_index'): string {
  const modes = [...new Set(rows.map((r) => r.mode))];
  const gammas = [...new Set(rows.map((r) => r.gamma))].sort((a, b) => a - b);
  const series = modes.map((mode) => ({
    mode,
    points: gammas.map((gamma) => {
      const values = rows
        .filter((r) => r.mode === mode && r.gamma === gamma)
        .map((r) => r[column]);
      return { gamma, mean: values.reduce((a, b) => a + b, 0) / values.length };
    }),
  }));

  const gammaLo = gammas[0];
  const gammaHi = gammas[gammas.length - 1];
  const gammaPad = gammaLo === gammaHi ? 0.5 : 0.04 * (gammaHi - gammaLo);
  const sx = linearScale(gammaLo - gammaPad, gammaHi + gammaPad, MARGIN.left, MARGIN.left + INNER_W);
  const maxMean = Math.max(...series.flatMap((s) => s.points.map((p) => p.mean)), 0);
  const yHi = maxMean === 0 ? 1 : 1.08 * maxMean;
  const sy = linearScale(0, yHi, MARGIN.top + INNER_H, MARGIN.top);
  const axisY = MARGIN.top + INNER_H;

  let body = `<g class="sweep" data-column="${column}">\n`;
  body += `<text x="${MARGIN.left}" y="18" font-size="13" font-weight="bold">mean ${column} by externality strength</text>\n`;
  series.forEach((s, i) => {
    const color = modeColor(s.mode, i);
    const points = s.points.map((p) => `${fmt(sx(p.gamma))},${fmt(sy(p.mean))}`).join(' ');
    body +=
      `<polyline class="mode" data-mode="${esc(s.mode)}" points="${points}" ` +
      `fill="none" stroke="${color}" stroke-width="1.8"/>\n`;
    for (const p of s.points) {
      body +=
        `<circle class="point" data-mode="${esc(s.mode)}" data-gamma="${p.gamma}" data-mean="${p.mean}" ` +
        `cx="${fmt(sx(p.gamma))}" cy="${fmt(sy(p.mean))}" r="3" fill="${color}"/>\n`;
    }
    const legendY = MARGIN.top + 14 + 16 * i;
    body += `<line x1="${MARGIN.left + INNER_W - 72}" y1="${legendY}" x2="${MARGIN.left + INNER_W - 52}" y2="${legendY}" stroke="${color}" stroke-width="1.8"/>\n`;
    body += `<text x="${MARGIN.left + INNER_W - 46}" y="${legendY + 4}" font-size="11">${esc(s.mode)}</text>\n`;
  });

  body += `<line x1="${MARGIN.left}" y1="${axisY}" x2="${MARGIN.left + INNER_W}" y2="${axisY}" stroke="${AXIS_STROKE}"/>\n`;
  body += `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${axisY}" stroke="${AXIS_STROKE}"/>\n`;
  body += xTicks(sx, gammaLo, gammaHi, axisY);
  body += `<text x="${MARGIN.left - 8}" y="${fmt(sy(yHi) + 4)}" font-size="11" text-anchor="end">${fmt(yHi)}</text>\n`;
  body += `<text x="${MARGIN.left - 8}" y="${axisY + 4}" font-size="11" text-anchor="end">0</text>\n`;
  body += `<text x="${fmt(MARGIN.left + INNER_W / 2)}" y="${PANEL_H - 8}" font-size="11" text-anchor="middle">externality strength</text>\n`;
  body +=
    `<text x="14" y="${fmt(MARGIN.top + INNER_H / 2)}" font-size="11" text-anchor="middle" ` +
    `transform="rotate(-90 14 ${fmt(MARGIN.top + INNER_H / 2)})">mean ${column}</text>\n`;
  body += '</g>\n';
  return svgDocument(PANEL_W, PANEL_H, body);
}

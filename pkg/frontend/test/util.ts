/** Shared fixture loading and SVG scraping for the test suite. */

import * as fs from 'node:fs';
import * as path from 'node:path';
import { fileURLToPath } from 'node:url';

// Compiled tests run from dist/test/, fixtures stay in test/fixtures/.
export const FIXTURES = path.join(
  path.dirname(fileURLToPath(import.meta.url)),
  '..',
  '..',
  'test',
  'fixtures',
);

export const REPORT_FIXTURES = [
  'constant_triangle.json',
  'cubic_triangle.json',
  'path_diameter.json',
  'path_mean_distance.json',
  'nyakatoke_shaped.json',
];

export function fixturePath(name: string): string {
  return path.join(FIXTURES, name);
}

export function fixtureText(name: string): string {
  return fs.readFileSync(fixturePath(name), 'utf8');
}

export interface Bar {
  mass: number;
  x0: number;
  x1: number;
  px: number;
  pxWidth: number;
}

const BAR_RE =
  /<rect class="bin" data-mass="([^"]+)" data-x0="([^"]+)" data-x1="([^"]+)" x="([^"]+)" y="[^"]+" width="([^"]+)"/g;

export function extractBars(svg: string): Bar[] {
  const bars: Bar[] = [];
  for (const m of svg.matchAll(BAR_RE)) {
    bars.push({
      mass: Number(m[1]),
      x0: Number(m[2]),
      x1: Number(m[3]),
      px: Number(m[4]),
      pxWidth: Number(m[5]),
    });
  }
  return bars;
}

const MARKER_RE = /<line class="observed" data-value="([^"]+)" x1="([^"]+)"/;

export function extractMarker(svg: string): { value: number; px: number } {
  const m = svg.match(MARKER_RE);
  if (m === null) throw new Error('no observed marker in SVG');
  return { value: Number(m[1]), px: Number(m[2]) };
}

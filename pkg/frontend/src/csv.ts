/** Parser for the formation-game sweep CSV emitted by `netnull simulate`. */

import { SchemaError } from './schema.js';

export const SWEEP_COLUMNS = [
  'gamma',
  'replication',
  'mode',
  'edge_count',
  'triangle_count',
  'transitivity_index',
] as const;

export type SweepColumn = (typeof SWEEP_COLUMNS)[number];

export const SWEEP_METRICS = ['edge_count', 'triangle_count', 'transitivity_index'] as const;

export type SweepMetric = (typeof SWEEP_METRICS)[number];

export interface SweepRow {
  gamma: number;
  replication: number;
  mode: string;
  edge_count: number;
  triangle_count: number;
  transitivity_index: number;
}

export function parseSweepCsv(text: string, source: string): SweepRow[] {
  const lines = text.split('\n').filter((line) => line.trim() !== '');
  if (lines.length === 0) throw new SchemaError(`${source}: empty file`);
  const header = lines[0].trim().split(',');
  for (const column of SWEEP_COLUMNS) {
    if (!header.includes(column)) {
      throw new SchemaError(`${source}: missing column "${column}"`);
    }
  }
  const index = new Map(header.map((name, i) => [name, i]));
  const rows: SweepRow[] = [];
  for (let lineNo = 1; lineNo < lines.length; lineNo++) {
    const cells = lines[lineNo].trim().split(',');
    if (cells.length !== header.length) {
      throw new SchemaError(
        `${source}: line ${lineNo + 1} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    const cell = (column: SweepColumn) => cells[index.get(column)!];
    const num = (column: SweepColumn) => {
      const value = Number(cell(column));
      if (!Number.isFinite(value)) {
        throw new SchemaError(
          `${source}: line ${lineNo + 1}: column "${column}" is not a number (got "${cell(column)}")`,
        );
      }
      return value;
    };
    rows.push({
      gamma: num('gamma'),
      replication: num('replication'),
      mode: cell('mode'),
      edge_count: num('edge_count'),
      triangle_count: num('triangle_count'),
      transitivity_index: num('transitivity_index'),
    });
  }
  if (rows.length === 0) throw new SchemaError(`${source}: no data rows`);
  return rows;
}

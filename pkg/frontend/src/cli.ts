#!/usr/bin/env node
/**
 * netnull-plots: render randomization-test reports (.json) and
 * formation-game sweeps (.csv) to static SVG files.
 *
 * Inputs are routed by extension. Each file becomes <out>/<stem>.svg;
 * two or more reports additionally produce <out>/panels.svg. Exit code 1
 * flags a file that fails schema validation, 2 a usage error.
 */

import * as fs from 'node:fs';
import * as path from 'node:path';
import { fileURLToPath } from 'node:url';
import { readReport, SchemaError, TestReport } from './schema.js';
import { parseSweepCsv, SWEEP_METRICS, SweepMetric } from './csv.js';
import { histogramSvg, panelsSvg, sweepSvg } from './svg.js';

const USAGE =
  'usage: netnull-plots --out DIR [--column METRIC] FILE.json|FILE.csv [MORE...]\n' +
  `  METRIC: one of ${SWEEP_METRICS.join(', ')} (sweep plots only)\n`;

interface Args {
  out: string;
  column: SweepMetric;
  inputs: string[];
}

function parseArgs(argv: string[]): Args {
  let out: string | null = null;
  let column: SweepMetric = 'transitivity_index';
  const inputs: string[] = [];
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === '--out') {
      out = argv[++i];
      if (out === undefined) throw new UsageError('--out needs a directory');
    } else if (arg === '--column') {
      const value = argv[++i];
      if (!SWEEP_METRICS.includes(value as SweepMetric)) {
        throw new UsageError(`--column must be one of ${SWEEP_METRICS.join(', ')} (got "${value}")`);
      }
      column = value as SweepMetric;
    } else if (arg === '--help' || arg === '-h') {
      process.stdout.write(USAGE);
      process.exit(0);
    } else if (arg.startsWith('-')) {
      throw new UsageError(`unknown option "${arg}"`);
    } else {
      inputs.push(arg);
    }
  }
  if (out === null) throw new UsageError('--out is required');
  if (inputs.length === 0) throw new UsageError('no input files given');
  return { out, column, inputs };
}

class UsageError extends Error {}

function stem(file: string): string {
  return path.basename(file, path.extname(file));
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`error: ${err.message}\n${USAGE}`);
      return 2;
    }
    throw err;
  }

  fs.mkdirSync(args.out, { recursive: true });
  const reports: TestReport[] = [];
  const written: string[] = [];

  try {
    for (const input of args.inputs) {
      const ext = path.extname(input).toLowerCase();
      if (ext !== '.json' && ext !== '.csv') {
        throw new UsageError(`"${input}": unsupported extension, expected .json or .csv`);
      }
      let text: string;
      try {
        text = fs.readFileSync(input, 'utf8');
      } catch (err) {
        process.stderr.write(`error: cannot read "${input}": ${(err as Error).message}\n`);
        return 1;
      }
      const target = path.join(args.out, `${stem(input)}.svg`);
      if (ext === '.json') {
        const report = readReport(text, input);
        reports.push(report);
        fs.writeFileSync(target, histogramSvg(report));
      } else {
        fs.writeFileSync(target, sweepSvg(parseSweepCsv(text, input), args.column));
      }
      written.push(target);
    }
    if (reports.length >= 2) {
      const target = path.join(args.out, 'panels.svg');
      fs.writeFileSync(target, panelsSvg(reports));
      written.push(target);
    }
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    if (err instanceof UsageError) {
      process.stderr.write(`error: ${err.message}\n${USAGE}`);
      return 2;
    }
    throw err;
  }

  for (const target of written) process.stderr.write(`wrote ${target}\n`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  path.resolve(process.argv[1]) === fileURLToPath(import.meta.url);

if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}

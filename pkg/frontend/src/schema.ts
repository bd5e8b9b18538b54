/**
 * TestReport JSON schema checks. Rendering trusts nothing: a report is
 * validated field by field and every failure names the offending key.
 */

export interface Histogram {
  edges: number[];
  masses: number[];
}

export interface TestReport {
  statistic: string;
  observed: number;
  B: number;
  seed: number;
  alpha: number;
  p_value_geq: number;
  p_value_gt: number;
  log_cardinality: number;
  c_alpha: number;
  g_alpha: number;
  ess: number;
  histogram: Histogram;
  degenerate_draw_count: number;
}

export class SchemaError extends Error {}

const NUMBER_KEYS = [
  'observed',
  'B',
  'seed',
  'alpha',
  'p_value_geq',
  'p_value_gt',
  'log_cardinality',
  'c_alpha',
  'g_alpha',
  'ess',
  'degenerate_draw_count',
] as const;

const ALL_KEYS = ['statistic', ...NUMBER_KEYS, 'histogram'] as const;

function fail(source: string, message: string): never {
  throw new SchemaError(`${source}: ${message}`);
}

function requireNumberArray(source: string, key: string, value: unknown): number[] {
  if (!Array.isArray(value)) fail(source, `key "${key}" must be an array`);
  for (const x of value) {
    if (typeof x !== 'number' || !Number.isFinite(x)) {
      fail(source, `key "${key}" must contain only finite numbers`);
    }
  }
  return value as number[];
}

export function validateReport(doc: unknown, source: string): TestReport {
  if (typeof doc !== 'object' || doc === null || Array.isArray(doc)) {
    fail(source, 'report must be a JSON object');
  }
  const record = doc as Record<string, unknown>;
  for (const key of ALL_KEYS) {
    if (!(key in record)) fail(source, `missing key "${key}"`);
  }
  if (typeof record.statistic !== 'string' || record.statistic === '') {
    fail(source, 'key "statistic" must be a non-empty string');
  }
  for (const key of NUMBER_KEYS) {
    if (typeof record[key] !== 'number') fail(source, `key "${key}" must be a number`);
  }
  const hist = record.histogram;
  if (typeof hist !== 'object' || hist === null || Array.isArray(hist)) {
    fail(source, 'key "histogram" must be an object');
  }
  const histRecord = hist as Record<string, unknown>;
  for (const key of ['edges', 'masses']) {
    if (!(key in histRecord)) fail(source, `missing key "histogram.${key}"`);
  }
  const edges = requireNumberArray(source, 'histogram.edges', histRecord.edges);
  const masses = requireNumberArray(source, 'histogram.masses', histRecord.masses);
  if (edges.length !== masses.length + 1) {
    fail(
      source,
      `key "histogram.edges" must have one more entry than "histogram.masses" ` +
        `(got ${edges.length} edges for ${masses.length} masses)`,
    );
  }
  if (masses.length === 0) fail(source, 'key "histogram.masses" must not be empty');
  for (let i = 1; i < edges.length; i++) {
    if (!(edges[i] > edges[i - 1])) {
      fail(source, 'key "histogram.edges" must be strictly increasing');
    }
  }
  for (const m of masses) {
    if (m < 0) fail(source, 'key "histogram.masses" must be non-negative');
  }
  return record as unknown as TestReport;
}

export function readReport(text: string, source: string): TestReport {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    fail(source, `not valid JSON (${(err as Error).message})`);
  }
  return validateReport(doc, source);
}

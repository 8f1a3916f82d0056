/**
 * Fixture record construction: every record is computed by two genuinely
 * independent methods (Hermite integral and Euler-Maclaurin limit formula)
 * and only written out if they agree to GATE_DIGITS, a wide margin beyond
 * the published precision.  Any disagreement or convergence stall aborts
 * generation loudly.
 */

import { Field } from "./field.js";
import { limitGamma } from "./limit.js";
import { hermiteGamma } from "./hermite.js";
import { agreementDigits, toFixtureString } from "./format.js";

export const DIGITS = 30;
export const GATE_DIGITS = 45;

export const REAL_N = [0, 1, 2, 3, 5, 10, 20, 50, 100, 200];
export const COMPLEX_N = [0, 1, 2, 3, 5, 10, 20, 50];
export const REAL_V = ["1", "1.5", "2"];

export interface GridPoint {
  n: number;
  vRe: string;
  vIm: string;
}

export interface FixtureRecord {
  n: number;
  v: [number, number];
  digits: number;
  value: [string, string];
  methods: string[];
}

export interface RecordReport {
  record: FixtureRecord;
  agreement: number;
  limitWorkDigits: number;
  hermiteWorkDigits: number;
  hermiteCutoff: number;
}

export function fullGrid(): GridPoint[] {
  const points: GridPoint[] = [];
  for (const vRe of REAL_V) {
    for (const n of REAL_N) points.push({ n, vRe, vIm: "0" });
  }
  for (const n of COMPLEX_N) points.push({ n, vRe: "1", vIm: "1" });
  return points;
}

export function smokeGrid(): GridPoint[] {
  return [
    { n: 0, vRe: "1", vIm: "0" },
    { n: 1, vRe: "1", vIm: "0" },
    { n: 3, vRe: "1.5", vIm: "0" },
    { n: 2, vRe: "1", vIm: "1" },
  ];
}

export function makeRecord(point: GridPoint, digits = DIGITS): RecordReport {
  const { n, vRe, vIm } = point;
  const gate = Math.max(GATE_DIGITS, digits + 15);
  const dps = gate + 10;

  const lim = limitGamma(n, vRe, vIm, dps);
  if (lim.stall.gt(`1e-${gate + 5}`)) {
    throw new Error(
      `limit formula stalled for n=${n} v=${vRe}+${vIm}i: ` +
        `last relative term ${lim.stall.toExponential(3)}`,
    );
  }

  const expectedMagLog10 = Math.log10(
    Math.max(Math.hypot(lim.value.re.toNumber(), lim.value.im.toNumber()), 1e-300),
  );
  const her = hermiteGamma(n, vRe, vIm, dps, expectedMagLog10);

  const Fc = new Field(gate + 25);
  const agreement = agreementDigits(
    Fc,
    Fc.cx(lim.value.re, lim.value.im),
    Fc.cx(her.value.re, her.value.im),
  );
  if (agreement < gate) {
    throw new Error(
      `method disagreement for n=${n} v=${vRe}+${vIm}i: ` +
        `hermite and limit agree to only ${agreement} of ${gate} digits\n` +
        `  limit:   ${toFixtureString(lim.value.re)} ${toFixtureString(lim.value.im)}\n` +
        `  hermite: ${toFixtureString(her.value.re)} ${toFixtureString(her.value.im)}`,
    );
  }

  const record: FixtureRecord = {
    n,
    v: [Number(vRe), Number(vIm)],
    digits,
    value: [toFixtureString(lim.value.re), toFixtureString(lim.value.im)],
    methods: ["hermite", "limit"],
  };
  return {
    record,
    agreement,
    limitWorkDigits: lim.workDigits,
    hermiteWorkDigits: her.workDigits,
    hermiteCutoff: her.cutoff,
  };
}

export function generateRecords(
  points: GridPoint[],
  digits = DIGITS,
  log?: (line: string) => void,
): FixtureRecord[] {
  const reports: RecordReport[] = [];
  for (const point of points) {
    const started = Date.now();
    const report = makeRecord(point, digits);
    reports.push(report);
    if (log) {
      const secs = ((Date.now() - started) / 1000).toFixed(1);
      log(
        `n=${point.n} v=${point.vRe}+${point.vIm}i: agreement ${report.agreement} digits ` +
          `(limit wp ${report.limitWorkDigits}, hermite wp ${report.hermiteWorkDigits} ` +
          `cutoff ${report.hermiteCutoff}, ${secs}s)`,
      );
    }
  }
  const records = reports.map((r) => r.record);
  sortRecords(records);
  return records;
}

/** Canonical fixture ordering: by Re v, then Im v, then n. */
export function sortRecords(records: FixtureRecord[]): void {
  records.sort((a, b) => a.v[0] - b.v[0] || a.v[1] - b.v[1] || a.n - b.n);
}

export function renderJsonl(records: FixtureRecord[]): string {
  return records.map((r) => JSON.stringify(r)).join("\n") + "\n";
}

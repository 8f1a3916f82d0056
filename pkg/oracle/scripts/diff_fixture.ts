/**
 * Semantic fixture comparison.
 *
 *   node dist/scripts/diff_fixture.js FILE_A FILE_B [--digits N] [--subset]
 *
 * Matches records by (n, Re v, Im v) and checks that the complex values agree
 * to at least N significant digits (default 45), ignoring representation
 * details such as JSON whitespace, float rendering of v, or which pair of
 * methods produced each file.  Without --subset the two files must contain
 * exactly the same record keys; with --subset, FILE_A may be a subset of
 * FILE_B.  Exits 0 when every check passes, 1 otherwise.
 */

import { readFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { Field, type Cx } from "../src/field.js";
import { agreementDigits, parseFixtureValue } from "../src/format.js";

interface RawRecord {
  n: number;
  v: [number, number];
  digits: number;
  value: [string, string];
  methods: string[];
}

function loadJsonl(path: string): Map<string, RawRecord> {
  const records = new Map<string, RawRecord>();
  const text = readFileSync(path, "utf8");
  for (const line of text.split("\n")) {
    if (line.trim() === "") continue;
    const rec = JSON.parse(line) as RawRecord;
    const key = `n=${rec.n} v=${rec.v[0]}+${rec.v[1]}i`;
    if (records.has(key)) throw new Error(`${path}: duplicate record ${key}`);
    records.set(key, rec);
  }
  return records;
}

function main(): number {
  const { values, positionals } = parseArgs({
    allowPositionals: true,
    options: {
      digits: { type: "string", default: "45" },
      subset: { type: "boolean", default: false },
    },
  });
  if (positionals.length !== 2) {
    console.error("usage: diff_fixture FILE_A FILE_B [--digits N] [--subset]");
    return 2;
  }
  const need = Number(values.digits);
  if (!Number.isInteger(need) || need < 1 || need > 60) {
    console.error(`--digits must be an integer in [1, 60], got '${values.digits}'`);
    return 2;
  }

  const [pathA, pathB] = positionals;
  const a = loadJsonl(pathA);
  const b = loadJsonl(pathB);

  let failures = 0;
  if (!values.subset) {
    for (const key of b.keys()) {
      if (!a.has(key)) {
        console.log(`FAIL ${key}: present only in ${pathB}`);
        failures += 1;
      }
    }
  }

  const F = new Field(80);
  const parse = (rec: RawRecord): Cx =>
    F.cx(parseFixtureValue(F, rec.value[0]), parseFixtureValue(F, rec.value[1]));

  let minAgree = Infinity;
  let compared = 0;
  for (const [key, recA] of a) {
    const recB = b.get(key);
    if (recB === undefined) {
      console.log(`FAIL ${key}: present only in ${pathA}`);
      failures += 1;
      continue;
    }
    const problems: string[] = [];
    if (recA.digits !== recB.digits) {
      problems.push(`digits ${recA.digits} != ${recB.digits}`);
    }
    if (recA.methods.length < 2 || recB.methods.length < 2) {
      problems.push("fewer than 2 methods");
    }
    const agree = agreementDigits(F, parse(recA), parse(recB));
    if (agree < need) {
      problems.push(`values agree to only ${agree} < ${need} digits`);
    }
    compared += 1;
    minAgree = Math.min(minAgree, agree);
    if (problems.length > 0) {
      console.log(`FAIL ${key}: ${problems.join("; ")}`);
      failures += 1;
    } else {
      console.log(`ok   ${key}: ${Math.min(agree, 999)} digits`);
    }
  }

  console.log(
    `${compared} compared, ${failures} failure(s), ` +
      `min agreement ${Number.isFinite(minAgree) ? Math.min(minAgree, 999) : "n/a"} ` +
      `(required ${need})`,
  );
  return failures === 0 ? 0 : 1;
}

process.exit(main());

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import { Field } from "../src/field.js";
import { parseFixtureValue, toFixtureString } from "../src/format.js";
import { COMPLEX_N, REAL_N, REAL_V } from "../src/records.js";

interface RawRecord {
  n: number;
  v: [number, number];
  digits: number;
  value: [string, string];
  methods: string[];
}

const FIXTURE_URL = new URL(
  "../../tests/fixtures/stieltjes_reference.jsonl",
  import.meta.url,
);

function loadRecords(): RawRecord[] {
  return readFileSync(FIXTURE_URL, "utf8")
    .split("\n")
    .filter((line) => line.trim() !== "")
    .map((line) => JSON.parse(line) as RawRecord);
}

describe("committed reference fixture", () => {
  const records = loadRecords();

  it("contains the full grid exactly once", () => {
    expect(records).toHaveLength(REAL_N.length * REAL_V.length + COMPLEX_N.length);
    const keys = new Set(records.map((r) => `${r.n}|${r.v[0]}|${r.v[1]}`));
    expect(keys.size).toBe(records.length);
    for (const vRe of REAL_V.map(Number)) {
      for (const n of REAL_N) expect(keys.has(`${n}|${vRe}|0`)).toBe(true);
    }
    for (const n of COMPLEX_N) expect(keys.has(`${n}|1|1`)).toBe(true);
  });

  it("is sorted by (Re v, Im v, n) with a well-formed schema", () => {
    let prev: [number, number, number] | null = null;
    for (const rec of records) {
      expect(Object.keys(rec)).toEqual(["n", "v", "digits", "value", "methods"]);
      expect(rec.digits).toBe(30);
      expect(rec.n).toBeLessThanOrEqual(200);
      expect(rec.methods.length).toBeGreaterThanOrEqual(2);
      expect([...rec.methods].sort()).toEqual(rec.methods);
      const key: [number, number, number] = [rec.v[0], rec.v[1], rec.n];
      if (prev !== null) {
        const after =
          key[0] > prev[0] ||
          (key[0] === prev[0] && (key[1] > prev[1] || (key[1] === prev[1] && key[2] > prev[2])));
        expect(after).toBe(true);
      }
      prev = key;
    }
  });

  it("has value strings that round-trip through the formatter", () => {
    const F = new Field(60);
    for (const rec of records) {
      for (const component of rec.value) {
        expect(toFixtureString(parseFixtureValue(F, component))).toBe(component);
      }
      if (rec.v[1] === 0) expect(rec.value[1]).toBe("0.0");
    }
  });
});

import { describe, expect, it } from "vitest";
import {
  COMPLEX_N,
  DIGITS,
  GATE_DIGITS,
  REAL_N,
  REAL_V,
  type FixtureRecord,
  fullGrid,
  makeRecord,
  renderJsonl,
  smokeGrid,
  sortRecords,
} from "../src/records.js";
import { Field } from "../src/field.js";
import { parseFixtureValue, toFixtureString } from "../src/format.js";

describe("grids", () => {
  it("full grid covers every (n, v) combination once", () => {
    const points = fullGrid();
    expect(points).toHaveLength(REAL_N.length * REAL_V.length + COMPLEX_N.length);
    const keys = new Set(points.map((p) => `${p.n}|${p.vRe}|${p.vIm}`));
    expect(keys.size).toBe(points.length);
    expect(points.every((p) => p.n <= 200)).toBe(true);
  });

  it("smoke grid is a small subset of the full grid", () => {
    const full = new Set(fullGrid().map((p) => `${p.n}|${p.vRe}|${p.vIm}`));
    const smoke = smokeGrid();
    expect(smoke.length).toBeGreaterThanOrEqual(3);
    expect(smoke.length).toBeLessThan(8);
    for (const p of smoke) expect(full.has(`${p.n}|${p.vRe}|${p.vIm}`)).toBe(true);
  });
});

describe("makeRecord", () => {
  it("produces a schema-complete, dual-method-gated, deterministic record", () => {
    const point = { n: 0, vRe: "2", vIm: "0" };
    const first = makeRecord(point);
    const second = makeRecord(point);

    // determinism: byte-identical serialized records on repeat runs
    expect(JSON.stringify(first.record)).toBe(JSON.stringify(second.record));

    const rec = first.record;
    expect(Object.keys(rec)).toEqual(["n", "v", "digits", "value", "methods"]);
    expect(rec.n).toBe(0);
    expect(rec.v).toEqual([2, 0]);
    expect(rec.digits).toBe(DIGITS);
    expect(rec.methods).toEqual(["hermite", "limit"]);
    expect(first.agreement).toBeGreaterThanOrEqual(GATE_DIGITS);

    // the value strings parse and round-trip, with 50 significant digits
    const F = new Field(60);
    expect(toFixtureString(parseFixtureValue(F, rec.value[0]))).toBe(rec.value[0]);
    expect(rec.value[1]).toBe("0.0");

    // dual-method-verified reference value from the committed fixture corpus
    const want = parseFixtureValue(F, "-0.42278433509846713939348790991759756895784066406008");
    expect(parseFixtureValue(F, rec.value[0]).minus(want).abs().lte("1e-45")).toBe(true);
  });
});

describe("renderJsonl", () => {
  const rec = (n: number, v0: number, v1: number): FixtureRecord => ({
    n,
    v: [v0, v1],
    digits: DIGITS,
    value: ["1.0", "0.0"],
    methods: ["hermite", "limit"],
  });

  it("emits one JSON object per line with a trailing newline", () => {
    const text = renderJsonl([rec(0, 1, 0), rec(1, 1, 0)]);
    const lines = text.split("\n");
    expect(lines).toHaveLength(3);
    expect(lines[2]).toBe("");
    expect(JSON.parse(lines[0]).n).toBe(0);
    expect(JSON.parse(lines[1]).n).toBe(1);
  });

  it("sorts records by (Re v, Im v, n)", () => {
    const records = [rec(1, 2, 0), rec(5, 1, 0), rec(0, 1, 1), rec(2, 1, 0)];
    sortRecords(records);
    expect(records.map((r) => [r.v[0], r.v[1], r.n])).toEqual([
      [1, 0, 2],
      [1, 0, 5],
      [1, 1, 0],
      [2, 0, 1],
    ]);
  });
});

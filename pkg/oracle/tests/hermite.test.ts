import { describe, expect, it } from "vitest";
import { Field } from "../src/field.js";
import { agreementDigits, parseFixtureValue } from "../src/format.js";
import { hermiteGamma } from "../src/hermite.js";

// dual-method-verified reference values from the committed fixture corpus
const REFS: Array<{
  n: number;
  vRe: string;
  vIm: string;
  re: string;
  im: string;
  magLog10: number;
}> = [
  {
    n: 0,
    vRe: "1.5",
    vIm: "0",
    re: "-0.036489973978576520559023667001244432806840395339566",
    im: "0.0",
    magLog10: -1.44,
  },
  {
    n: 5,
    vRe: "1.5",
    vIm: "0",
    re: "-0.00080663116358284806241120643419827214061971100854590",
    im: "0.0",
    magLog10: -3.09,
  },
  {
    n: 3,
    vRe: "1",
    vIm: "1",
    re: "-0.25949313713561686083170960527711960357413011214018",
    im: "0.20099745042762736287793125504466155273012254312781",
    magLog10: -0.48,
  },
];

const Fc = new Field(60);

describe("hermiteGamma", () => {
  it.each(REFS)("matches reference for n=$n v=$vRe+$vIm i", (ref) => {
    const r = hermiteGamma(ref.n, ref.vRe, ref.vIm, 22, ref.magLog10);
    const got = Fc.cx(r.value.re, r.value.im);
    const want = Fc.cx(parseFixtureValue(Fc, ref.re), parseFixtureValue(Fc, ref.im));
    expect(agreementDigits(Fc, got, want)).toBeGreaterThanOrEqual(20);
    expect(r.cutoff).toBeGreaterThanOrEqual(30);
    expect(r.workDigits).toBeGreaterThanOrEqual(52);
  });

  it("keeps real inputs exactly real", () => {
    const r = hermiteGamma(0, "2", "0", 15, -0.37);
    expect(r.value.im.isZero()).toBe(true);
  });

  it("rejects arguments left of the supported half-plane", () => {
    expect(() => hermiteGamma(1, "0.5", "0", 20, 0)).toThrow(/Re\(v\) >= 1/);
  });
});

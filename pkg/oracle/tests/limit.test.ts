import { describe, expect, it } from "vitest";
import { Field } from "../src/field.js";
import { agreementDigits, parseFixtureValue } from "../src/format.js";
import { limitGamma } from "../src/limit.js";

// dual-method-verified reference values from the committed fixture corpus
const REFS: Array<{
  n: number;
  vRe: string;
  vIm: string;
  re: string;
  im: string;
}> = [
  {
    n: 0,
    vRe: "1",
    vIm: "0",
    re: "0.57721566490153286060651209008240243104215933593992",
    im: "0.0",
  },
  {
    n: 1,
    vRe: "1",
    vIm: "0",
    re: "-0.072815845483676724860586375874901319137736338334338",
    im: "0.0",
  },
  {
    n: 3,
    vRe: "2",
    vIm: "0",
    re: "0.0020538344203033458661600465427533842857158044454106",
    im: "0.0",
  },
  {
    n: 5,
    vRe: "1.5",
    vIm: "0",
    re: "-0.00080663116358284806241120643419827214061971100854590",
    im: "0.0",
  },
  {
    n: 2,
    vRe: "1",
    vIm: "1",
    re: "0.17030420146858743116249630502438940773369164673734",
    im: "0.37317719575749517085188474564446879223481795478566",
  },
];

const Fc = new Field(60);

function refCx(re: string, im: string) {
  return Fc.cx(parseFixtureValue(Fc, re), parseFixtureValue(Fc, im));
}

describe("limitGamma", () => {
  it.each(REFS)("matches reference for n=$n v=$vRe+$vIm i", (ref) => {
    const r = limitGamma(ref.n, ref.vRe, ref.vIm, 40);
    expect(r.stall.lt("1e-45")).toBe(true);
    const got = Fc.cx(r.value.re, r.value.im);
    expect(agreementDigits(Fc, got, refCx(ref.re, ref.im))).toBeGreaterThanOrEqual(38);
  });

  it("keeps real inputs exactly real", () => {
    const r = limitGamma(4, "1.5", "0", 25);
    expect(r.value.im.isZero()).toBe(true);
  });

  it("handles large n where the summand peaks far from the origin", () => {
    const r = limitGamma(200, "1", "0", 35);
    const want = refCx("-6.9746497194788228686243330694268145844746330908380e+55", "0.0");
    expect(agreementDigits(Fc, Fc.cx(r.value.re, r.value.im), want)).toBeGreaterThanOrEqual(33);
  });
});

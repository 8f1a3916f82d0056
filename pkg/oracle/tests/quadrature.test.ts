import { describe, expect, it } from "vitest";
import { Field, type Cx } from "../src/field.js";
import { integrateInterval, legendreRule } from "../src/quadrature.js";

// reference values computed independently with a 40+ digit library
const PI_40 = "3.14159265358979323846264338327950288419717";
const LN2_40 = "0.6931471805599453094172321214581765680755";
const HALF_LN5_SQ_40 = "1.29514519699011747259008550249632744769623";

const F = new Field(55);

function err(value: Cx, want: string): number {
  return value.re.minus(want).abs().toNumber();
}

describe("legendreRule", () => {
  it("produces symmetric nodes and weights summing to 2", () => {
    for (const m of [8, 17]) {
      const { nodes, weights } = legendreRule(F, m);
      expect(nodes).toHaveLength(m);
      let wsum = F.dec(0);
      for (let i = 0; i < m; i++) {
        expect(nodes[i].plus(nodes[m - 1 - i]).abs().lte("1e-50")).toBe(true);
        expect(weights[i].minus(weights[m - 1 - i]).abs().lte("1e-48")).toBe(true);
        expect(weights[i].isPositive()).toBe(true);
        wsum = wsum.plus(weights[i]);
      }
      expect(wsum.minus(2).abs().lte("1e-48")).toBe(true);
      if (m % 2 === 1) expect(nodes[(m - 1) / 2].isZero()).toBe(true);
    }
  });

  it("integrates polynomials of degree 2m-1 exactly", () => {
    // integral of x^14 over [-1, 1] = 2/15 with an 8-point rule
    const { nodes, weights } = legendreRule(F, 8);
    let s = F.dec(0);
    for (let i = 0; i < 8; i++) s = s.plus(nodes[i].pow(14).times(weights[i]));
    expect(s.minus(F.dec(2).div(15)).abs().lte("1e-47")).toBe(true);
  });
});

describe("integrateInterval", () => {
  it("integrates 4/(1+x^2) over [0,1] to pi", () => {
    const q = integrateInterval(
      F,
      (x) => F.cx(F.dec(4).div(x.times(x).plus(1))),
      0,
      1,
      40,
    );
    expect(err(q.value, PI_40)).toBeLessThan(1e-40);
    expect(q.chunks).toHaveLength(1);
  });

  it("integrates ln(x)/x over [1,5] to ln(5)^2/2 across chunks", () => {
    const q = integrateInterval(F, (x) => F.cx(x.ln().div(x)), 1, 5, 40);
    expect(q.chunks.length).toBeGreaterThan(1);
    expect(err(q.value, HALF_LN5_SQ_40)).toBeLessThan(1e-40);
  });

  it("integrates 1/(1+x) over [0,1] to ln 2", () => {
    const q = integrateInterval(F, (x) => F.cx(F.dec(1).div(x.plus(1))), 0, 1, 40);
    expect(err(q.value, LN2_40)).toBeLessThan(1e-40);
  });

  it("handles complex-valued integrands", () => {
    // integral over [0,1] of (1 + i x) dx = 1 + i/2
    const q = integrateInterval(F, (x) => F.cx(1, x), 0, 1, 30);
    expect(q.value.re.minus(1).abs().lte("1e-30")).toBe(true);
    expect(q.value.im.minus("0.5").abs().lte("1e-30")).toBe(true);
  });
});

/**
 * Generalized Stieltjes constants via the Hermite integral representation:
 *
 * gamma_n(v) = (1/(2v) - log(v)/(n+1)) * log^n(v)
 *              - i * integral_0^inf [ log^n(v-ix)/(v-ix)
 *                                     - log^n(v+ix)/(v+ix) ] / (e^{2 pi x} - 1) dx
 *
 * valid for Re(v) > 0.  For real v the bracket is -2i Im[log^n(v+ix)/(v+ix)],
 * halving the work.  The integrand is analytic in |Im x| < min(1, Re v)
 * (kernel poles at x = ik, logarithm branch points at x = +-iv), so the
 * composite Gauss-Legendre scheme in quadrature.ts applies with its 0.8-strip
 * sizing as long as Re v >= 1, which holds for every grid point here.
 *
 * Working precision is sized from a double-precision magnitude model of the
 * integrand: the quadrature sees values as large as the integrand peak while
 * the result can be much smaller, and that cancellation is paid for in extra
 * digits.  An internal consistency check re-evaluates the two largest chunks
 * with a finer rule and fails loudly on disagreement, so an undersized rule
 * cannot silently produce a wrong value.
 */

import { Decimal } from "decimal.js";
import { Field, type Cx } from "./field.js";
import { integrateChunk, integrateInterval } from "./quadrature.js";
import { agreementDigits } from "./format.js";

export interface HermiteResult {
  value: Cx;
  workDigits: number;
  cutoff: number;
}

/** log10 of e^{2 pi x} - 1, double precision, safe for large x. */
function denLog10(x: number): number {
  if (x > 0.05) {
    return (2 * Math.PI * x) / Math.LN10 + Math.log10(-Math.expm1(-2 * Math.PI * x));
  }
  return Math.log10(Math.expm1(2 * Math.PI * x));
}

/** log10 |log^n(w)/w| for w = vr + i*im, double precision. */
function branchLog10(n: number, vr: number, im: number): number {
  const mag = Math.hypot(vr, im);
  const L = Math.hypot(Math.log(mag), Math.atan2(im, vr));
  return n * Math.log10(Math.max(L, 1e-300)) - Math.log10(mag);
}

/** log10 of the integrand magnitude at x (larger of the two branches). */
function integrandLog10(n: number, vr: number, vi: number, x: number): number {
  const t = Math.max(branchLog10(n, vr, vi + x), branchLog10(n, vr, vi - x));
  return t - denLog10(x);
}

export function hermiteGamma(
  n: number,
  vRe: string,
  vIm: string,
  dps: number,
  expectedMagLog10: number,
): HermiteResult {
  const vr = Number(vRe);
  const vi = Number(vIm);
  if (!(vr >= 1)) {
    throw new Error(`hermiteGamma requires Re(v) >= 1, got ${vRe}`);
  }

  // scan for the integrand peak
  let peak = -Infinity;
  let xPeak = 1e-3;
  for (let x = 1e-3; x <= 500; x *= 1.05) {
    const t = integrandLog10(n, vr, vi, x);
    if (t > peak) {
      peak = t;
      xPeak = x;
    }
  }

  const cancel = Math.max(0, Math.ceil(peak - expectedMagLog10));
  // round up to a multiple of 5 so nearby records share cached quadrature rules
  const wd = Math.ceil((dps + 30 + cancel) / 5) * 5;
  const targetDigits = wd - 10;
  const F = new Field(wd);

  // truncation point: integrand decays like e^{-2 pi x} beyond the peak
  let u = Math.max(30, 2 * xPeak);
  while (integrandLog10(n, vr, vi, u) >= -(wd + 10)) u *= 1.25;
  const cutoff = Math.ceil(u);

  const v = F.cx(vRe, vIm);
  const lv = F.ln(v);
  const pref = F.mul(
    F.sub(F.div(F.cx(1), F.mulDec(v, F.dec(2))), F.divInt(lv, n + 1)),
    F.powInt(lv, n),
  );

  const twoPi = F.pi().times(2);
  const one = F.cx(1);
  const term = (re: Decimal, im: Decimal): Cx => {
    const z = F.cx(re, im);
    return n === 0 ? F.div(one, z) : F.div(F.powInt(F.ln(z), n), z);
  };

  const realV = F.isReal(v);
  const g = (x: Decimal): Cx => {
    const den = twoPi.times(x).exp().minus(1);
    if (realV) {
      const w = term(v.re, x);
      return F.cx(w.im.times(-2).div(den), 0);
    }
    const a = term(v.re, v.im.minus(x));
    const b = term(v.re, v.im.plus(x));
    const d = F.sub(a, b);
    return F.cx(d.im.div(den), d.re.neg().div(den));
  };

  const quad = integrateInterval(F, g, 0, cutoff, targetDigits);

  // re-evaluate the two largest chunks with a finer rule; any quadrature
  // underconvergence shows up here as a loud failure, never a silent one
  const ranked = [...quad.chunks].sort(
    (p, q) =>
      Math.hypot(q.value.re.toNumber(), q.value.im.toNumber()) -
      Math.hypot(p.value.re.toNumber(), p.value.im.toNumber()),
  );
  for (const chunk of ranked.slice(0, 2)) {
    const refined = integrateChunk(F, g, chunk.a, chunk.b, quad.m + 24);
    const agree = agreementDigits(F, chunk.value, refined);
    if (agree < wd - 25) {
      throw new Error(
        `quadrature self-check failed: chunk [${chunk.a}, ${chunk.b}] of ` +
          `n=${n} v=${vRe}+${vIm}i agrees to only ${agree} of ${wd - 25} digits`,
      );
    }
  }

  return { value: F.add(pref, quad.value), workDigits: wd, cutoff };
}

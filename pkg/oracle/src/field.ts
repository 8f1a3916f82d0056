/**
 * Fixed-precision decimal arithmetic context and complex operations on it.
 *
 * A Field wraps a decimal.js constructor clone pinned to a given number of
 * significant digits (round-half-even).  Complex numbers are plain
 * {re, im} pairs of Decimals; operations take fast pure-real paths when
 * imaginary parts are exactly zero, so real data never acquires spurious
 * imaginary round-off.
 */

import { Decimal } from "decimal.js";
import type { Rat } from "./rational.js";

export interface Cx {
  readonly re: Decimal;
  readonly im: Decimal;
}

export class Field {
  readonly digits: number;
  readonly D: typeof Decimal;
  private piCached: Decimal | null = null;

  constructor(digits: number) {
    if (!Number.isInteger(digits) || digits < 10) {
      throw new RangeError(`bad precision: ${digits}`);
    }
    this.digits = digits;
    this.D = Decimal.clone({
      precision: digits,
      rounding: Decimal.ROUND_HALF_EVEN,
      toExpNeg: -9e15,
      toExpPos: 9e15,
    });
  }

  dec(x: Decimal.Value): Decimal {
    return new this.D(x);
  }

  ratToDec(r: Rat): Decimal {
    return this.dec(r.num.toString()).div(this.dec(r.den.toString()));
  }

  pi(): Decimal {
    if (this.piCached === null) this.piCached = this.D.acos(-1);
    return this.piCached;
  }

  cx(re: Decimal.Value, im: Decimal.Value = 0): Cx {
    return { re: this.dec(re), im: this.dec(im) };
  }

  isReal(z: Cx): boolean {
    return z.im.isZero();
  }

  add(a: Cx, b: Cx): Cx {
    return { re: a.re.plus(b.re), im: a.im.plus(b.im) };
  }

  sub(a: Cx, b: Cx): Cx {
    return { re: a.re.minus(b.re), im: a.im.minus(b.im) };
  }

  neg(a: Cx): Cx {
    return { re: a.re.neg(), im: a.im.neg() };
  }

  mul(a: Cx, b: Cx): Cx {
    if (a.im.isZero()) {
      if (b.im.isZero()) return { re: a.re.times(b.re), im: a.im };
      return { re: a.re.times(b.re), im: a.re.times(b.im) };
    }
    if (b.im.isZero()) {
      return { re: a.re.times(b.re), im: a.im.times(b.re) };
    }
    return {
      re: a.re.times(b.re).minus(a.im.times(b.im)),
      im: a.re.times(b.im).plus(a.im.times(b.re)),
    };
  }

  mulDec(a: Cx, x: Decimal): Cx {
    return { re: a.re.times(x), im: a.im.times(x) };
  }

  div(a: Cx, b: Cx): Cx {
    if (b.im.isZero()) {
      return { re: a.re.div(b.re), im: a.im.isZero() ? a.im : a.im.div(b.re) };
    }
    const den = b.re.times(b.re).plus(b.im.times(b.im));
    return {
      re: a.re.times(b.re).plus(a.im.times(b.im)).div(den),
      im: a.im.times(b.re).minus(a.re.times(b.im)).div(den),
    };
  }

  divInt(a: Cx, k: number): Cx {
    const d = this.dec(k);
    return { re: a.re.div(d), im: a.im.isZero() ? a.im : a.im.div(d) };
  }

  abs(z: Cx): Decimal {
    if (z.im.isZero()) return z.re.abs();
    if (z.re.isZero()) return z.im.abs();
    return z.re.times(z.re).plus(z.im.times(z.im)).sqrt();
  }

  /** Principal branch logarithm; real positive arguments stay real. */
  ln(z: Cx): Cx {
    if (z.im.isZero() && z.re.isPositive() && !z.re.isZero()) {
      return { re: z.re.ln(), im: z.im };
    }
    const mag2 = z.re.times(z.re).plus(z.im.times(z.im));
    return {
      re: mag2.ln().div(2),
      im: this.D.atan2(z.im, z.re),
    };
  }

  /** z^k for a non-negative integer k, by binary exponentiation. */
  powInt(z: Cx, k: number): Cx {
    if (!Number.isInteger(k) || k < 0) throw new RangeError(`bad exponent: ${k}`);
    if (k === 0) return this.cx(1);
    if (z.im.isZero()) return { re: z.re.pow(k), im: z.im };
    let base = z;
    let acc: Cx | null = null;
    let e = k;
    while (e > 0) {
      if (e & 1) acc = acc === null ? base : this.mul(acc, base);
      e >>= 1;
      if (e > 0) base = this.mul(base, base);
    }
    return acc as Cx;
  }
}

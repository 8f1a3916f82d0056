/** Exact rational arithmetic on bigint, and Bernoulli numbers. */

function bigAbs(x: bigint): bigint {
  return x < 0n ? -x : x;
}

function bigGcd(a: bigint, b: bigint): bigint {
  a = bigAbs(a);
  b = bigAbs(b);
  while (b !== 0n) {
    const t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/** Immutable rational number with positive denominator, always reduced. */
export class Rat {
  readonly num: bigint;
  readonly den: bigint;

  constructor(num: bigint, den: bigint = 1n) {
    if (den === 0n) throw new RangeError("zero denominator");
    if (den < 0n) {
      num = -num;
      den = -den;
    }
    const g = bigGcd(num, den);
    this.num = g === 0n ? 0n : num / g;
    this.den = g === 0n ? 1n : den / g;
  }

  static of(n: number | bigint): Rat {
    return new Rat(BigInt(n));
  }

  add(o: Rat): Rat {
    return new Rat(this.num * o.den + o.num * this.den, this.den * o.den);
  }

  mul(o: Rat): Rat {
    return new Rat(this.num * o.num, this.den * o.den);
  }

  neg(): Rat {
    return new Rat(-this.num, this.den);
  }

  isZero(): boolean {
    return this.num === 0n;
  }

  eq(o: Rat): boolean {
    return this.num === o.num && this.den === o.den;
  }

  toString(): string {
    return this.den === 1n ? `${this.num}` : `${this.num}/${this.den}`;
  }
}

export function factorial(n: number): bigint {
  let r = 1n;
  for (let i = 2; i <= n; i++) r *= BigInt(i);
  return r;
}

export function binomial(n: number, k: number): bigint {
  if (k < 0 || k > n) return 0n;
  k = Math.min(k, n - k);
  let r = 1n;
  for (let i = 1; i <= k; i++) {
    r = (r * BigInt(n - k + i)) / BigInt(i);
  }
  return r;
}

/**
 * Bernoulli numbers B_0..B_max (inclusive), B_1 = -1/2 convention, from the
 * defining recurrence sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1.
 */
export function bernoulliNumbers(max: number): Rat[] {
  const B: Rat[] = [new Rat(1n)];
  for (let m = 1; m <= max; m++) {
    if (m > 1 && m % 2 === 1) {
      B.push(new Rat(0n));
      continue;
    }
    let s = new Rat(0n);
    for (let k = 0; k < m; k++) {
      if (B[k].isZero()) continue;
      s = s.add(B[k].mul(new Rat(binomial(m + 1, k))));
    }
    B.push(s.mul(new Rat(-1n, BigInt(m + 1))));
  }
  return B;
}

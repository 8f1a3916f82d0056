/**
 * Generalized Stieltjes constants via the Euler-Maclaurin limit formula.
 *
 * gamma_n(v) = lim_{K->inf} [ sum_{k=0}^{K} log^n(v+k)/(v+k)
 *                             - log^{n+1}(v+K)/(n+1) ]
 *
 * with the tail of the sum replaced by Euler-Maclaurin correction terms in
 * f(t) = log^n(v+t)/(v+t): subtract f(K)/2 and the B_{2j} derivative terms.
 * Derivatives of f are carried symbolically as exact integer combinations of
 * log-powers over powers of (v+K), so the only rounding happens in the final
 * evaluation at working precision.
 */

import { Decimal } from "decimal.js";
import { Field, type Cx } from "./field.js";
import { Rat, bernoulliNumbers, factorial } from "./rational.js";

export interface LimitResult {
  value: Cx;
  /** last Euler-Maclaurin term, relative to |S| + 1 (convergence witness) */
  stall: Decimal;
  workDigits: number;
}

const MAX_EM_ORDER = 30;

export function limitGamma(
  n: number,
  vRe: string,
  vIm: string,
  dps: number,
): LimitResult {
  const K = Math.max(400, 16 * n);
  const cancel = Math.floor(n * Math.log10(Math.max(Math.log(K + 2), 1.5))) + 10;
  const wd = dps + 30 + cancel;
  const F = new Field(wd);

  const v = F.cx(vRe, vIm);

  const one = F.cx(1);
  let S = F.cx(0);
  for (let k = 0; k <= K; k++) {
    const u = F.cx(v.re.plus(k), v.im);
    S = F.add(S, n === 0 ? F.div(one, u) : F.div(F.powInt(F.ln(u), n), u));
  }

  const u = F.cx(v.re.plus(K), v.im);
  const lu = F.ln(u);

  // powers lu^0 .. lu^{n+1}
  const luPow: Cx[] = [F.cx(1)];
  for (let a = 1; a <= n + 1; a++) luPow.push(F.mul(luPow[a - 1], lu));

  S = F.sub(S, F.divInt(luPow[n + 1], n + 1));
  S = F.sub(S, F.divInt(F.div(luPow[n], u), 2));

  // f(t) = log^n(v+t)/(v+t); represent d^m/dt^m f as
  //   sum_a coeffs[a] * log^a(v+t) / (v+t)^{m+1}
  // (m tracked separately; coeffs are exact integers).
  // One differentiation step maps coeffs[a] -> { a*coeffs[a] at a-1,
  // -m*coeffs[a] at a } and then increments m.
  const bern = bernoulliNumbers(2 * MAX_EM_ORDER);
  let coeffs = new Map<number, bigint>([[n, 1n]]);
  let m = 1; // current denominator power: representation divides by u^m
  let uPowM = u; // u^m, kept in sync with m

  const step = () => {
    const next = new Map<number, bigint>();
    const bump = (a: number, c: bigint) => {
      if (c === 0n) return;
      next.set(a, (next.get(a) ?? 0n) + c);
    };
    for (const [a, c] of coeffs) {
      if (a > 0) bump(a - 1, c * BigInt(a));
      bump(a, -c * BigInt(m));
    }
    coeffs = next;
    m += 1;
    uPowM = F.mul(uPowM, u);
  };

  const stallGate = F.dec(`1e-${dps + 25}`);
  let stall = F.dec(1);
  for (let j = 1; j <= MAX_EM_ORDER; j++) {
    // advance to the (2j-1)-th derivative
    step();
    if (j > 1) step();

    let num = F.cx(0);
    for (const [a, c] of coeffs) {
      num = F.add(num, F.mulDec(luPow[a], F.dec(c.toString())));
    }
    const fd = F.div(num, uPowM);

    const scale = F.ratToDec(bern[2 * j].mul(new Rat(1n, factorial(2 * j))));
    const term = F.mulDec(fd, scale);
    S = F.sub(S, term);

    stall = F.abs(term).div(F.abs(S).plus(1));
    if (stall.lt(stallGate)) break;
  }

  return { value: S, stall, workDigits: wd };
}

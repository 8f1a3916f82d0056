/**
 * Fixture number formatting and digit-agreement measurement.
 *
 * Values are rendered with a fixed number of significant digits (trailing
 * zeros kept), positionally when the decimal exponent lies in [-5, digits)
 * and in d.ddd...e+X scientific form otherwise; exact zero renders "0.0".
 */

import { Decimal } from "decimal.js";
import { Field, type Cx } from "./field.js";

export const PRINT_DIGITS = 50;

export function toFixtureString(x: Decimal, sd: number = PRINT_DIGITS): string {
  if (x.isZero()) return "0.0";
  const sign = x.isNegative() ? "-" : "";
  const r = x.abs().toSignificantDigits(sd, Decimal.ROUND_HALF_EVEN);
  // "d.ddd...e±k" with exactly sd digits (toExponential pads trailing zeros)
  const [mantRaw, expRaw] = r.toExponential(sd - 1).split("e");
  const digits = mantRaw.replace(".", "");
  const e = parseInt(expRaw, 10);
  if (e >= -5 && e < sd) {
    if (e >= 0) {
      const frac = digits.slice(e + 1) || "0";
      return `${sign}${digits.slice(0, e + 1)}.${frac}`;
    }
    return `${sign}0.${"0".repeat(-e - 1)}${digits}`;
  }
  return `${sign}${digits[0]}.${digits.slice(1)}e${e < 0 ? "-" : "+"}${Math.abs(e)}`;
}

/**
 * Number of agreeing decimal digits between two complex values, measured as
 * -log10(|a - b| / max(|a|, |b|, 1e-12)); equal values report 1e9.
 */
export function agreementDigits(F: Field, a: Cx, b: Cx): number {
  const d = F.abs(F.sub(a, b));
  if (d.isZero()) return 1e9;
  const scale = Decimal.max(F.abs(a), F.abs(b), F.dec("1e-12"));
  const r = d.div(scale);
  // exponent-safe double log10 of a positive Decimal
  const [mant, exp] = r.toExponential(10).split("e");
  const log10r = parseInt(exp, 10) + Math.log10(parseFloat(mant));
  return Math.floor(-log10r);
}

/** Parse a fixture decimal string (positional or scientific) at high precision. */
export function parseFixtureValue(F: Field, s: string): Decimal {
  return F.dec(s);
}

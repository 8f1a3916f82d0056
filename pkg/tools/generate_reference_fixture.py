#!/usr/bin/env python3
"""Generate the small-n reference fixture for the test suite.

Computes gamma_n(v) for a grid of small n and v by at least two
independent routes and writes tests/fixtures/stieltjes_reference.jsonl.
A record is emitted only when every computed route agrees to
`digits + 15` decimal places; disagreement aborts with a report.

Routes:
  limit    regularized limit of sum(log^n(v+k)/(v+k)) minus
           log^(n+1)(v+K)/(n+1), accelerated with Euler-Maclaurin
           correction terms evaluated from closed-form derivatives.
  hermite  the Hermite-type integral representation, integrated
           numerically (used for complex v).
  library  mpmath's own stieltjes() implementation (real v only;
           mpmath's digamma supplies n = 0 for complex v).

Usage: python3 tools/generate_reference_fixture.py [output.jsonl]
"""

import json
import math
import sys
from pathlib import Path

from mpmath import mp, bernoulli

DIGITS = 30
GATE_DIGITS = DIGITS + 15
PRINT_DIGITS = DIGITS + 20

REAL_N = [0, 1, 2, 3, 5, 10, 20, 50, 100, 200]
COMPLEX_N = [0, 1, 2, 3, 5, 10, 20, 50]
REAL_V = ["1", "1.5", "2"]


def limit_formula(n, v, dps, order=30):
    """gamma_n(v) via the regularized limit with Euler-Maclaurin tail.

    gamma_n(v) = sum_{k=0}^{K} f(k) - log^{n+1}(v+K)/(n+1) - f(K)/2
                 - sum_j B_{2j}/(2j)! f^{(2j-1)}(K) + R,
    with f(t) = log^n(v+t)/(v+t).  Derivatives of f are exact finite
    sums c * log^a(u) * u^-m, so each correction term is closed-form.
    Returns (value, stall) where stall is the relative size of the last
    correction term (the usual error scale of the truncated series).
    """
    K = max(400, 16 * n)
    cancel = int(n * math.log10(max(math.log(K + 2), 1.5))) + 10
    with mp.workdps(dps + 30 + cancel):
        S = mp.mpf(0)
        for k in range(K + 1):
            u = v + k
            S += mp.log(u) ** n / u
        u = v + K
        lu = mp.log(u)
        S -= lu ** (n + 1) / (n + 1)
        S -= (lu ** n / u) / 2
        coeffs = {n: 1}
        m = 1
        stall = mp.inf
        for j in range(1, order + 1):
            for _ in range(2 if j > 1 else 1):
                new = {}
                for a, c in coeffs.items():
                    if a > 0:
                        new[a - 1] = new.get(a - 1, 0) + c * a
                    new[a] = new.get(a, 0) - c * m
                coeffs, m = new, m + 1
            fd = sum(c * lu ** a for a, c in coeffs.items()) / u ** m
            term = bernoulli(2 * j) / mp.factorial(2 * j) * fd
            S -= term
            stall = abs(term) / (abs(S) + 1)
            if stall < mp.mpf(10) ** (-(dps + 25)):
                break
        return +S, stall


def hermite_integral(n, v, dps):
    """gamma_n(v) via the Hermite-type integral representation:
    (1/(2v) - log(v)/(n+1)) log^n(v) minus i times the integral over
    [0, inf) of (log^n(v-ix)/(v-ix) - log^n(v+ix)/(v+ix))/(e^{2 pi x}-1).
    """
    with mp.workdps(dps + 30):
        lv = mp.log(v)
        pref = (1 / (2 * v) - lv / (n + 1)) * lv ** n

        def f(x):
            den = mp.expm1(2 * mp.pi * x)
            return (mp.log(v - 1j * x) ** n / (v - 1j * x)
                    - mp.log(v + 1j * x) ** n / (v + 1j * x)) / den

        points = [0, 1, 5, 20, mp.inf]
        return pref - 1j * mp.quad(f, points, maxdegree=10)


def library_value(n, v, dps):
    with mp.workdps(dps + 25):
        return +mp.stieltjes(n, v)


def agreement_digits(a, b):
    d = abs(mp.mpc(a) - mp.mpc(b))
    if d == 0:
        return 10 ** 9
    scale = max(abs(mp.mpc(a)), abs(mp.mpc(b)), mp.mpf(1) / 10 ** 12)
    return int(-mp.log10(d / scale))


def make_record(n, v_pair):
    re_s, im_s = v_pair
    complex_v = mp.mpf(im_s) != 0
    with mp.workdps(GATE_DIGITS + 40):
        v = mp.mpc(mp.mpf(re_s), mp.mpf(im_s)) if complex_v else mp.mpf(re_s)
    results = {}
    results["limit"], stall = limit_formula(n, v, GATE_DIGITS + 10)
    with mp.workdps(GATE_DIGITS + 40):
        if float(stall) > 10 ** (-(GATE_DIGITS + 5)):
            raise SystemExit(
                "limit formula stalled at %s for n=%d v=%s" % (stall, n, v))
    if complex_v:
        results["hermite"] = hermite_integral(n, v, GATE_DIGITS + 10)
        if n == 0:
            with mp.workdps(GATE_DIGITS + 25):
                results["library"] = -mp.digamma(v)
    else:
        results["library"] = library_value(n, v, GATE_DIGITS + 10)

    names = sorted(results)
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            got = agreement_digits(results[x], results[y])
            if got < GATE_DIGITS:
                raise SystemExit(
                    "method disagreement at n=%d v=%s+%si: %s vs %s agree "
                    "to only %d digits (needed %d)"
                    % (n, re_s, im_s, x, y, got, GATE_DIGITS))

    with mp.workdps(GATE_DIGITS + 40):
        val = mp.mpc(results["limit"])
        re_out = mp.nstr(val.real, PRINT_DIGITS, strip_zeros=False)
        im_out = mp.nstr(val.imag, PRINT_DIGITS, strip_zeros=False)
    return {
        "n": n,
        "v": [float(re_s), float(im_s)],
        "digits": DIGITS,
        "value": [re_out, im_out],
        "methods": names,
    }


def main():
    out_path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(
        __file__).resolve().parent.parent / "tests" / "fixtures" / \
        "stieltjes_reference.jsonl"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    records = []
    for v_pair in [(s, "0") for s in REAL_V] + [("1", "1")]:
        n_list = COMPLEX_N if v_pair[1] != "0" else REAL_N
        for n in n_list:
            rec = make_record(n, v_pair)
            records.append(rec)
            print("ok n=%-4d v=%s+%si  methods=%s" %
                  (n, v_pair[0], v_pair[1], ",".join(rec["methods"])))
    records.sort(key=lambda r: (r["v"][0], r["v"][1], r["n"]))
    with out_path.open("w") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    print("wrote %d records to %s" % (len(records), out_path))


if __name__ == "__main__":
    main()

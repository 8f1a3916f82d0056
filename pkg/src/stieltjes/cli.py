"""Command-line front end.

Parses one request per invocation, runs the library, and prints the
resulting enclosure either as human-readable text or as JSON with
diagnostics.  Four modes are exposed as subcommands:

  stieltjes N      generalized Stieltjes constant gamma_N(v)
  zeta             Hurwitz zeta zeta(s, v)
  asymptotic N     Knessl-Coffey estimate of gamma_N (non-rigorous)
  bench            timing table over a grid of (n, precision) pairs

As a convenience, a leading integer is treated as the `stieltjes`
subcommand (`stieltjes 100 --digits 30` == `stieltjes stieltjes 100 ...`).

Exit codes: 0 on success, 1 on domain or usage errors (for example v
overlapping a nonpositive integer, or s overlapping 1), 2 when the
requested tolerance was not met -- the printed enclosure is still a sound
(but wider than requested) interval in that case.

The environment variable STIELTJES_THREADS, when set to an integer, caps
the thread-count knobs of any optional accelerated backends (GMP/BLAS
style libraries); the evaluation itself is single-threaded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from .ball import BallDomainError, ball_to_json, mpf_to_decimal

__all__ = ["CliConfig", "build_parser", "main", "run"]

_MODES = ("stieltjes", "zeta", "asymptotic", "bench")

_THREAD_KNOBS = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
    "GMP_NUM_THREADS",
)


def _cap_threads() -> None:
    cap = os.environ.get("STIELTJES_THREADS", "").strip()
    if not cap.isdigit() or int(cap) < 1:
        return
    for knob in _THREAD_KNOBS:
        cur = os.environ.get(knob, "")
        if not cur.isdigit() or int(cur) > int(cap):
            os.environ[knob] = cap


class CliError(ValueError):
    """Invalid request configuration."""


# ---------------------------------------------------------------------------
# configuration


@dataclass
class CliConfig:
    """One parsed request; `validate` enforces the cross-field rules."""

    mode: str
    n: int = 0
    v_re: str = "1"
    v_im: str = "0"
    s_re: str | None = None
    s_im: str = "0"
    digits: int | None = None
    prec_bits: int | None = None
    format: str = "plain"
    diagnostics: bool = False
    check_asymptotic: bool = False
    bench_n: list = field(default_factory=list)
    bench_prec: list = field(default_factory=list)

    def validate(self) -> None:
        if self.mode not in _MODES:
            raise CliError("mode must be one of %s" % (", ".join(_MODES)))
        if self.digits is not None and self.prec_bits is not None:
            raise CliError("--digits and --prec are mutually exclusive")
        if self.digits is not None and self.digits < 3:
            raise CliError("--digits must be at least 3")
        if self.prec_bits is not None and self.prec_bits < 16:
            raise CliError("--prec must be at least 16 bits")
        if self.format not in ("plain", "json"):
            raise CliError("format must be plain or json")
        for label, text in (("v_re", self.v_re), ("v_im", self.v_im)):
            _require_decimal(label, text)
        if self.mode in ("stieltjes", "asymptotic") and self.n < 0:
            raise CliError("n must be a nonnegative integer")
        if self.mode == "zeta":
            if self.s_re is None:
                raise CliError("zeta mode requires --s (or --s-re)")
            _require_decimal("s_re", self.s_re)
            _require_decimal("s_im", self.s_im)
        if self.check_asymptotic:
            if self.mode != "stieltjes":
                raise CliError("--check-asymptotic applies to stieltjes mode")
            if self.n < 1:
                raise CliError("--check-asymptotic requires n >= 1")
            if Decimal(self.v_re) != 1 or Decimal(self.v_im) != 0:
                raise CliError("--check-asymptotic requires v = 1")
        if self.mode == "bench":
            if not self.bench_n or not self.bench_prec:
                raise CliError("bench mode needs nonempty --n-list and "
                               "--prec-list")
            if any(n < 0 for n in self.bench_n):
                raise CliError("bench n values must be nonnegative")
            if any(p < 16 for p in self.bench_prec):
                raise CliError("bench precisions must be at least 16 bits")

    def resolved_prec(self) -> int:
        if self.prec_bits is not None:
            return self.prec_bits
        if self.digits is not None:
            return math.ceil(self.digits * math.log2(10)) + 10
        return 64

    def resolved_digits(self) -> int:
        if self.digits is not None:
            return self.digits
        return max(6, int(self.resolved_prec() * 0.30103) + 2)


def _require_decimal(label: str, text: str) -> None:
    try:
        Decimal(text)
    except (InvalidOperation, TypeError):
        raise CliError("%s is not a decimal number: %r" % (label, text)) \
            from None


# ---------------------------------------------------------------------------
# parsing helpers


def _parse_bigint(text: str) -> int:
    """Integer with big-number sugar: 1_000_000, 1e6, 10^100."""
    t = text.strip().replace("_", "")
    try:
        if "^" in t:
            base, _, ex = t.partition("^")
            value = int(base) ** int(ex)
        elif ("e" in t.lower()) and ("." not in t):
            mant, _, ex = t.lower().partition("e")
            exp = int(ex)
            if exp < 0:
                raise ValueError
            value = int(mant) * 10 ** exp
        else:
            value = int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "%r is not an integer (accepted forms: 123, 1_000, 1e6, 10^100)"
            % text) from None
    return value


def _parse_int_list(text: str) -> list:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list")
    return [_parse_bigint(s) for s in items]


def _split_pair(text: str) -> tuple:
    """Decimal pair "RE" or "RE,IM" -> (re, im) strings."""
    re_s, _, im_s = text.partition(",")
    return re_s.strip(), (im_s.strip() or "0")


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with code 1.

    Exit code 2 is reserved for a sound-but-wider-than-requested result.
    """

    def error(self, message):
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def _add_precision_flags(sub) -> None:
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--digits", type=int, metavar="D",
                       help="target decimal digits (>= 3)")
    group.add_argument("--prec", dest="prec_bits", type=int, metavar="P",
                       help="target precision in bits (>= 16)")


def _add_common_flags(sub, with_v: bool = True) -> None:
    if with_v:
        sub.add_argument("--v", metavar="RE[,IM]",
                         help="argument v as decimal(s), default 1")
        sub.add_argument("--v-re", metavar="RE", help="real part of v")
        sub.add_argument("--v-im", metavar="IM", help="imaginary part of v")
    _add_precision_flags(sub)
    sub.add_argument("--format", choices=("plain", "json"), default="plain")
    sub.add_argument("--diagnostics", action="store_true",
                     help="print working precision, contour, and timing "
                          "details")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="stieltjes",
        description="Generalized Stieltjes constants and Hurwitz zeta with "
                    "rigorous enclosures.")
    sub = parser.add_subparsers(dest="mode", required=True, metavar="MODE")

    p_st = sub.add_parser("stieltjes", help="compute gamma_n(v)")
    p_st.add_argument("n", type=_parse_bigint,
                      help="index n (accepts 1e6 / 10^100 shorthand)")
    _add_common_flags(p_st)
    p_st.add_argument("--check-asymptotic", action="store_true",
                      help="also print the Knessl-Coffey estimate and the "
                           "digit agreement count")

    p_ze = sub.add_parser("zeta", help="compute zeta(s, v)")
    p_ze.add_argument("--s", metavar="RE[,IM]",
                      help="argument s as decimal(s)")
    p_ze.add_argument("--s-re", metavar="RE", help="real part of s")
    p_ze.add_argument("--s-im", metavar="IM", help="imaginary part of s")
    _add_common_flags(p_ze)

    p_as = sub.add_parser("asymptotic",
                          help="Knessl-Coffey estimate of gamma_n "
                               "(non-rigorous)")
    p_as.add_argument("n", type=_parse_bigint,
                      help="index n >= 1 (accepts 1e6 / 10^100 shorthand)")
    _add_precision_flags(p_as)
    p_as.add_argument("--format", choices=("plain", "json"), default="plain")

    p_be = sub.add_parser("bench",
                          help="time gamma_n over a grid of (n, precision)")
    p_be.add_argument("--n-list", type=_parse_int_list,
                      default=[10, 1000, 100000], metavar="N1,N2,...")
    p_be.add_argument("--prec-list", type=_parse_int_list,
                      default=[64, 256], metavar="P1,P2,...")
    p_be.add_argument("--format", choices=("plain", "json"), default="plain")
    return parser


def _config_from_namespace(ns) -> CliConfig:
    cfg = CliConfig(mode=ns.mode)
    cfg.digits = getattr(ns, "digits", None)
    cfg.prec_bits = getattr(ns, "prec_bits", None)
    cfg.format = getattr(ns, "format", "plain")
    cfg.diagnostics = getattr(ns, "diagnostics", False)
    cfg.check_asymptotic = getattr(ns, "check_asymptotic", False)
    if hasattr(ns, "n"):
        cfg.n = ns.n
    if getattr(ns, "v", None) is not None:
        if getattr(ns, "v_re", None) is not None \
                or getattr(ns, "v_im", None) is not None:
            raise CliError("--v conflicts with --v-re/--v-im")
        cfg.v_re, cfg.v_im = _split_pair(ns.v)
    else:
        if getattr(ns, "v_re", None) is not None:
            cfg.v_re = ns.v_re
        if getattr(ns, "v_im", None) is not None:
            cfg.v_im = ns.v_im
    if ns.mode == "zeta":
        if getattr(ns, "s", None) is not None:
            if ns.s_re is not None or ns.s_im is not None:
                raise CliError("--s conflicts with --s-re/--s-im")
            cfg.s_re, cfg.s_im = _split_pair(ns.s)
        else:
            cfg.s_re = ns.s_re
            if ns.s_im is not None:
                cfg.s_im = ns.s_im
    if ns.mode == "bench":
        cfg.bench_n = list(ns.n_list)
        cfg.bench_prec = list(ns.prec_list)
    return cfg


# ---------------------------------------------------------------------------
# output formatting


def _positionalize(sci: str) -> str:
    """Rewrite d.ddd...e+K positionally when K is small; keep huge values
    in scientific notation (same digits, so outward rounding is preserved)."""
    if "e" not in sci:
        return sci
    mant, _, es = sci.partition("e")
    dexp = int(es)
    neg = mant.startswith("-")
    digits = mant.lstrip("-").replace(".", "")
    if not (-8 <= dexp < len(digits)):
        return sci
    if dexp >= 0:
        ipart, fpart = digits[:dexp + 1], digits[dexp + 1:]
        body = ipart + ("." + fpart if fpart else "")
    else:
        body = "0." + "0" * (-dexp - 1) + digits
    return ("-" if neg else "") + body


def _format_real(rb, dps: int) -> str:
    parts = ball_to_json(rb, dps)
    return "%s +/- %s" % (_positionalize(parts["mid"]), parts["rad"])


def _format_value(cb, dps: int) -> str:
    if cb.im.is_zero():
        return _format_real(cb.re, dps)
    return "(%s) + (%s) i" % (_format_real(cb.re, dps),
                              _format_real(cb.im, dps))


def _pretty_complex_label(re_s: str, im_s: str) -> str:
    if Decimal(im_s) == 0:
        return re_s
    if im_s.startswith("-"):
        return "%s-%si" % (re_s, im_s[1:])
    return "%s+%si" % (re_s, im_s)


def _spec_diagnostics(diag: dict) -> dict:
    out = {}
    for k in ("wp", "N", "M", "segments", "evals"):
        v = diag.get(k)
        out[k] = None if v is None else int(v)
    out["C"] = diag.get("C")
    out["omega"] = diag.get("omega")
    v = diag.get("seconds")
    out["seconds"] = None if v is None else float(v)
    return out


def _diagnostics_lines(diag: dict) -> str:
    d = _spec_diagnostics(diag)
    omega = d["omega"]
    if isinstance(omega, dict):
        omega = "%s + %s i" % (omega["re"]["mid"], omega["im"]["mid"])
    items = [
        ("wp", "%d bits" % d["wp"]),
        ("N", d["N"]),
        ("M", d["M"]),
        ("C", d["C"]),
        ("omega", omega),
        ("segments", d["segments"]),
        ("evals", d["evals"]),
        ("seconds", "%.4f" % d["seconds"]),
    ]
    return "".join("# %s = %s\n" % (k, v) for k, v in items if v is not None)


def _split_sci(s: str) -> tuple:
    """(negative, digit-string, exponent) of a printed decimal."""
    neg = s.startswith("-")
    body = s.lstrip("-")
    mant, _, es = body.partition("e")
    return neg, mant.replace(".", ""), (int(es) if es else 0)


def _decimal_agreement(a: str, b: str) -> dict:
    neg_a, dig_a, exp_a = _split_sci(a)
    neg_b, dig_b, exp_b = _split_sci(b)
    sign_match = neg_a == neg_b
    exponent_match = exp_a == exp_b
    agreed = 0
    if sign_match and exponent_match:
        for x, y in zip(dig_a, dig_b):
            if x != y:
                break
            agreed += 1
    return {"sign_match": sign_match, "exponent_match": exponent_match,
            "agreement_digits": agreed}


# ---------------------------------------------------------------------------
# mode runners


def _run_stieltjes(cfg: CliConfig, out) -> int:
    from .driver import stieltjes_gamma_full

    p = cfg.resolved_prec()
    dps = cfg.resolved_digits()
    res = stieltjes_gamma_full(cfg.n, (cfg.v_re, cfg.v_im), p)
    code = 0 if res.converged else 2

    check = None
    if cfg.check_asymptotic:
        from .asymptotic import knessl_coffey

        kc = knessl_coffey(cfg.n)
        est_s = mpf_to_decimal(kc.estimate._mpf_, 20)
        comp_s = mpf_to_decimal(res.value.re.mid, 20)
        check = {"estimate": est_s, "computed_mid": comp_s}
        check.update(_decimal_agreement(comp_s, est_s))

    if cfg.format == "json":
        doc = {
            "input": {
                "mode": "stieltjes",
                "n": str(cfg.n),
                "v": {"re": cfg.v_re, "im": cfg.v_im},
                "digits": cfg.digits,
                "prec_bits": p,
            },
            "value": ball_to_json(res.value, dps),
            "warnings": list(res.warnings),
            "diagnostics": _spec_diagnostics(res.diagnostics),
        }
        if check is not None:
            doc["asymptotic"] = check
        json.dump(doc, out, indent=2)
        out.write("\n")
        return code

    label = "gamma_%d(%s)" % (cfg.n, _pretty_complex_label(cfg.v_re,
                                                           cfg.v_im))
    out.write("%s = %s\n" % (label, _format_value(res.value, dps)))
    for w in res.warnings:
        out.write("warning: %s\n" % w)
    if check is not None:
        out.write("asymptotic estimate = %s\n" % check["estimate"])
        out.write("agreement: sign %s, exponent %s, %d leading digits\n"
                  % ("match" if check["sign_match"] else "MISMATCH",
                     "match" if check["exponent_match"] else "MISMATCH",
                     check["agreement_digits"]))
    if cfg.diagnostics:
        out.write(_diagnostics_lines(res.diagnostics))
    return code


def _run_zeta(cfg: CliConfig, out) -> int:
    from .driver import hurwitz_zeta_full

    p = cfg.resolved_prec()
    dps = cfg.resolved_digits()
    res = hurwitz_zeta_full((cfg.s_re, cfg.s_im), (cfg.v_re, cfg.v_im), p)
    code = 0 if res.converged else 2

    if cfg.format == "json":
        doc = {
            "input": {
                "mode": "zeta",
                "s": {"re": cfg.s_re, "im": cfg.s_im},
                "v": {"re": cfg.v_re, "im": cfg.v_im},
                "digits": cfg.digits,
                "prec_bits": p,
            },
            "value": ball_to_json(res.value, dps),
            "warnings": list(res.warnings),
            "diagnostics": _spec_diagnostics(res.diagnostics),
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return code

    label = "zeta(%s, %s)" % (_pretty_complex_label(cfg.s_re, cfg.s_im),
                              _pretty_complex_label(cfg.v_re, cfg.v_im))
    out.write("%s = %s\n" % (label, _format_value(res.value, dps)))
    for w in res.warnings:
        out.write("warning: %s\n" % w)
    if cfg.diagnostics:
        out.write(_diagnostics_lines(res.diagnostics))
    return code


def _run_asymptotic(cfg: CliConfig, out) -> int:
    from .asymptotic import knessl_coffey

    if cfg.n < 1:
        raise CliError("the asymptotic estimate requires n >= 1")
    dps = cfg.digits if cfg.digits is not None else 20
    kc = knessl_coffey(cfg.n)
    est_s = mpf_to_decimal(kc.estimate._mpf_, dps)
    fields = {name: mpf_to_decimal(getattr(kc, name)._mpf_, 20)
              for name in ("beta", "alpha", "A", "B", "a", "b")}

    if cfg.format == "json":
        doc = {
            "input": {"mode": "asymptotic", "n": str(cfg.n)},
            "estimate": est_s,
            "decimal_exponent": str(kc.decimal_exponent),
            "fields": fields,
            "note": "saddle-point estimate; no error bound attached",
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return 0

    out.write("gamma_%d ~= %s   (non-rigorous estimate)\n" % (cfg.n, est_s))
    out.write("decimal exponent = %d\n" % kc.decimal_exponent)
    if cfg.diagnostics:
        for name, val in fields.items():
            out.write("# %s = %s\n" % (name, val))
    return 0


def _run_bench(cfg: CliConfig, out) -> int:
    from .driver import stieltjes_gamma_full

    rows = []
    for n in cfg.bench_n:
        for p in cfg.bench_prec:
            t0 = time.monotonic()
            res = stieltjes_gamma_full(n, 1, p)
            dt = time.monotonic() - t0
            rows.append({"n": n, "p": p, "seconds": dt, "evals": res.evals})

    if cfg.format == "json":
        doc = {
            "input": {"mode": "bench",
                      "n_list": [str(n) for n in cfg.bench_n],
                      "prec_list": list(cfg.bench_prec)},
            "bench": [{"n": str(r["n"]), "p": r["p"],
                       "seconds": r["seconds"], "evals": r["evals"]}
                      for r in rows],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return 0

    out.write("time in seconds to compute gamma_n at p bits\n")
    ncol = max([len(str(n)) for n in cfg.bench_n] + [1]) + 2
    header = "n".ljust(ncol) + "".join(
        ("p=%d" % p).rjust(12) for p in cfg.bench_prec)
    out.write(header + "\n")
    by_n = {}
    for r in rows:
        by_n.setdefault(r["n"], {})[r["p"]] = r["seconds"]
    for n in cfg.bench_n:
        cells = "".join(("%.4f" % by_n[n][p]).rjust(12)
                        for p in cfg.bench_prec)
        out.write(str(n).ljust(ncol) + cells + "\n")
    return 0


# ---------------------------------------------------------------------------
# entry points


def run(config: CliConfig, out=None, err=None) -> int:
    """Execute one validated request; returns the process exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        config.validate()
    except CliError as exc:
        err.write("error: %s\n" % exc)
        return 1
    try:
        if config.mode == "stieltjes":
            return _run_stieltjes(config, out)
        if config.mode == "zeta":
            return _run_zeta(config, out)
        if config.mode == "asymptotic":
            return _run_asymptotic(config, out)
        return _run_bench(config, out)
    except (BallDomainError, ValueError) as exc:
        err.write("error: %s\n" % exc)
        return 1


def main(argv=None) -> int:
    _cap_threads()
    args = list(sys.argv[1:] if argv is None else argv)
    if args and args[0] not in _MODES and not args[0].startswith("-"):
        args.insert(0, "stieltjes")
    parser = build_parser()
    try:
        ns = parser.parse_args(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from_namespace(ns)
    except CliError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

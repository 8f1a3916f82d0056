"""Top-level evaluation of Stieltjes constants and Hurwitz zeta.

Each request is split into three rigorously tracked stages: a recurrence
normalization that shifts the argument until Re(v) >= 1 (collecting the
exact correction terms), a contour integration with tolerances scaled to a
magnitude proxy for the nonoscillatory size of the integral, and a final
assembly step that applies the closed-form prefactor and attaches
diagnostics.  Every returned ball is a sound enclosure; warnings (not
errors) report when the requested tolerance could not be met or when
cancellation ate into the relative accuracy.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

from mpmath.libmp import (
    finf,
    fnan,
    fninf,
    fone,
    from_int,
    fzero,
    mpf_ceil,
    mpf_floor,
    mpf_le,
    mpf_lt,
    mpf_shift,
    mpf_sub,
    to_float,
    to_int,
)

from .ball import (
    BallDomainError,
    BranchCutError,
    ComplexBall,
    RealBall,
    ball_to_json,
    const_pi,
    mag_mul,
    mpf_to_decimal,
)
from .contour import build_contour, choose_N
from .integrand import GammaIntegrand, ZetaKernel
from .quadrature import integrate_segment

__all__ = [
    "StieltjesRequest",
    "StieltjesResult",
    "ZetaResult",
    "as_complex_ball",
    "half_line_integral",
    "hurwitz_zeta",
    "hurwitz_zeta_full",
    "normalize_v",
    "stieltjes",
    "stieltjes_gamma",
    "stieltjes_gamma_full",
]

_POW_ROUTE_BITS = 48


# ---------------------------------------------------------------------------
# input coercion and domain checks


def _as_real_ball(x, prec: int) -> RealBall:
    if isinstance(x, RealBall):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a valid numeric input")
    if isinstance(x, int):
        return RealBall.from_int(x)
    if isinstance(x, float):
        return RealBall.from_float(x)
    if isinstance(x, Fraction):
        return RealBall.from_rational(x.numerator, x.denominator, prec)
    if isinstance(x, str):
        return RealBall.from_decimal(x.strip(), prec)
    raise TypeError("cannot interpret %r as a real number" % (x,))


def as_complex_ball(x, prec: int) -> ComplexBall:
    """Coerce ints, floats, Fractions, decimal strings, complex numbers, or
    (re, im) pairs into a ComplexBall; exact inputs stay exact."""
    if isinstance(x, ComplexBall):
        return x
    if isinstance(x, complex):
        return ComplexBall(RealBall.from_float(x.real),
                           RealBall.from_float(x.imag))
    if isinstance(x, tuple) and len(x) == 2:
        return ComplexBall(_as_real_ball(x[0], prec),
                           _as_real_ball(x[1], prec))
    return ComplexBall.from_real(_as_real_ball(x, prec))


def _reject_nonpositive_integers(v: ComplexBall, what: str) -> None:
    """Raise unless the ball provably excludes {0, -1, -2, ...}."""
    if v.is_indeterminate():
        raise BallDomainError("%s is indeterminate" % what)
    if not v.im.contains_zero():
        return
    hi = v.re.upper()
    lo = v.re.lower()
    if lo in (fninf, fnan) or hi in (finf, fnan):
        raise BallDomainError("%s has an unbounded real part" % what)
    if not mpf_lt(hi, fzero):
        hi = fzero
    candidate = mpf_floor(hi, 0)
    if mpf_le(lo, candidate):
        raise BallDomainError(
            "%s overlaps a nonpositive integer, where the function "
            "has a pole" % what)


# ---------------------------------------------------------------------------
# integer powers of logarithms (recurrence correction terms)


def _real_log_power(L: RealBall, n: int, prec: int) -> RealBall:
    """Enclose L^n for a real ball and an arbitrarily large integer n >= 0."""
    if n == 0:
        return RealBall.from_int(1)
    if n.bit_length() <= _POW_ROUTE_BITS:
        return L.pow_int(n, prec)
    mag = L.mag_upper()
    if L.contains_zero():
        if mag == fzero:
            return RealBall.from_int(0)
        bound = RealBall(mag).log(prec).mul_int(n, prec).exp(prec).mag_upper()
        return RealBall(fzero, bound)
    r = L.abs().log(prec).mul_int(n, prec).exp(prec)
    if L.is_negative() and (n & 1):
        r = r.neg()
    return r


def _complex_log_power(L: ComplexBall, n: int, prec: int) -> ComplexBall:
    """Enclose L^n for a complex ball and an arbitrarily large n >= 0."""
    if n == 0:
        return ComplexBall.from_int(1)
    if n.bit_length() <= _POW_ROUTE_BITS:
        return L.pow_int(n, prec)
    if L.contains_zero():
        mag = L.mag_upper()
        if mag == fzero:
            return ComplexBall.from_int(0)
        bound = RealBall(mag).log(prec).mul_int(n, prec).exp(prec).mag_upper()
        return ComplexBall(RealBall(fzero, bound), RealBall(fzero, bound))
    return L.log(prec).mul_int(n, prec).exp(prec)


# ---------------------------------------------------------------------------
# recurrence normalization


def normalize_v(n: int, v: ComplexBall, wp: int):
    """Shift v rightwards until Re >= 1 and collect the correction terms.

    Returns (a, correction, k) where gamma_n(v) = gamma_n(v + k) + correction,
    correction = sum_{j<k} log^n(v+j)/(v+j), and a = v + k - 1/2 is the
    integral parameter for the shifted argument.
    """
    re_mid = v.re.mid
    if mpf_le(fone, re_mid):
        k = 0
    else:
        k = to_int(mpf_ceil(mpf_sub(fone, re_mid, 0)))
        if k < 0:
            k = 0
    half = RealBall.from_float(0.5)
    a = ComplexBall(v.re.add(RealBall.from_int(k), wp).sub(half, wp), v.im)
    if k == 0:
        return a, ComplexBall.from_int(0), 0
    try:
        if v.im.is_zero():
            tot = RealBall.from_int(0)
            for j in range(k):
                w = v.re.add(RealBall.from_int(j), wp)
                if not w.is_positive():
                    raise BallDomainError(
                        "v + %d is not strictly positive: the recurrence "
                        "term log^n(v+%d)/(v+%d) lies on the log branch "
                        "cut" % (j, j, j))
                term = _real_log_power(w.log(wp), n, wp).div(w, wp)
                tot = tot.add(term, wp)
            correction = ComplexBall(tot, RealBall.from_int(0))
        else:
            tot = ComplexBall.from_int(0)
            for j in range(k):
                w = v.add(ComplexBall.from_int(j), wp)
                if w.contains_zero():
                    raise BallDomainError(
                        "v + %d contains zero; the recurrence term is "
                        "undefined" % j)
                term = _complex_log_power(w.log(wp), n, wp).div(w, wp)
                tot = tot.add(term, wp)
            correction = tot
    except BranchCutError as exc:
        raise BallDomainError(
            "recurrence shift touched the log branch cut: %s" % exc) from None
    return a, correction, k


# ---------------------------------------------------------------------------
# the half-line integral


def _gamma_proxy(integrand: GammaIntegrand, plan, wp: int):
    """Magnitude proxy for the nonoscillatory size of the integral."""
    if plan.shifted:
        g = integrand.g_at(plan.saddle.omega, wp)
        mag = g.re.exp(wp).mag_upper()
        n = integrand.n1 - 1
        mag = mag_mul(mag, from_int(math.isqrt(max(n, 1)) + 1))
    else:
        mag = integrand.point(ComplexBall.from_int(0), wp).mag_upper()
    if mag in (finf, fnan):
        raise RuntimeError("magnitude proxy evaluation failed")
    if mpf_lt(mag, fone):
        mag = fone
    return mag


def half_line_integral(n: int, a: ComplexBall, p: int,
                       force_shift: bool | None = None,
                       max_evals: int = 10_000_000):
    """Enclose the integral of log^{n+1}(a+ix) sech^2(pi x) over [0, inf).

    Returns (ball, diagnostics).  The working precision is
    p + bitlength(n+1) + 20 and the absolute tolerance is the magnitude
    proxy scaled by 2^-(p+10); the analytic tail bound past the truncation
    point is added to the radius.
    """
    wp = p + (n + 1).bit_length() + 20
    plan = build_contour(n, a, p, force_shift=force_shift)
    integrand = GammaIntegrand(n, a)
    proxy = _gamma_proxy(integrand, plan, wp)
    abs_tol = mpf_shift(proxy, -(p + 10))
    total = ComplexBall.from_int(0)
    evals = leaves = depth = 0
    converged = True
    for z0, z1 in plan.segments:
        res = integrate_segment(integrand, z0, z1, abs_tol, wp,
                                rel_bits=p + 10, max_evals=max_evals)
        total = total.add(res.value, wp)
        evals += res.evaluations
        leaves += res.leaves
        depth = max(depth, res.max_depth)
        converged = converged and res.converged
    total = total.add_error(integrand.tail_bound(plan.N))
    diag = {
        "wp": wp,
        "plan": plan,
        "evals": evals,
        "leaves": leaves,
        "max_depth": depth,
        "converged": converged,
        "proxy": proxy,
    }
    return total, diag


# ---------------------------------------------------------------------------
# requests and results


class StieltjesRequest:
    """Inputs for one gamma_n(v) evaluation."""

    __slots__ = ("n", "v", "p")

    def __init__(self, n: int, v=1, p: int = 64):
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ValueError("n must be a nonnegative integer")
        if isinstance(p, bool) or not isinstance(p, int) or p < 8:
            raise ValueError("target precision p must be an integer >= 8")
        self.n = n
        self.p = p
        self.v = as_complex_ball(v, p + (n + 1).bit_length() + 40)

    def __repr__(self):
        return "StieltjesRequest(n=%d, v=%r, p=%d)" % (self.n, self.v, self.p)


class StieltjesResult:
    """Final enclosure plus provenance metadata."""

    __slots__ = ("value", "n", "v", "p", "shifted_terms", "plan", "wp",
                 "evals", "warnings", "seconds", "diagnostics")

    def __init__(self, value, n, v, p, shifted_terms, plan, wp, evals,
                 warnings, seconds, diagnostics):
        self.value = value
        self.n = n
        self.v = v
        self.p = p
        self.shifted_terms = shifted_terms
        self.plan = plan
        self.wp = wp
        self.evals = evals
        self.warnings = warnings
        self.seconds = seconds
        self.diagnostics = diagnostics

    @property
    def converged(self) -> bool:
        return bool(self.diagnostics.get("converged", True))

    def __repr__(self):
        return ("StieltjesResult(n=%d, p=%d, value=%r, evals=%d, "
                "warnings=%r)" % (self.n, self.p, self.value, self.evals,
                                  self.warnings))


class ZetaResult:
    """Hurwitz zeta enclosure plus provenance metadata."""

    __slots__ = ("value", "s", "v", "p", "shifted_terms", "wp", "evals",
                 "warnings", "seconds", "diagnostics")

    def __init__(self, value, s, v, p, shifted_terms, wp, evals, warnings,
                 seconds, diagnostics):
        self.value = value
        self.s = s
        self.v = v
        self.p = p
        self.shifted_terms = shifted_terms
        self.wp = wp
        self.evals = evals
        self.warnings = warnings
        self.seconds = seconds
        self.diagnostics = diagnostics

    @property
    def converged(self) -> bool:
        return bool(self.diagnostics.get("converged", True))

    def __repr__(self):
        return ("ZetaResult(value=%r, evals=%d, warnings=%r)"
                % (self.value, self.evals, self.warnings))


def _plan_diagnostics(plan, wp, evals, seconds, converged, warnings):
    d = {
        "wp": wp,
        "evals": evals,
        "seconds": seconds,
        "converged": converged,
        "warnings": list(warnings),
        "segments": len(plan.segments),
        "N": plan.N,
        "M": plan.M,
        "C": None if plan.C is None else mpf_to_decimal(plan.C, 17),
        "omega": None,
        "shifted": plan.shifted,
    }
    if plan.saddle is not None:
        d["omega"] = ball_to_json(plan.saddle.omega)
        d["saddle_bits"] = plan.saddle.bits
    return d


# ---------------------------------------------------------------------------
# Stieltjes constants


def stieltjes(req: StieltjesRequest,
              force_shift: bool | None = None) -> StieltjesResult:
    """Evaluate gamma_n(v) as a sound enclosure with diagnostics."""
    t_start = time.monotonic()
    n, v, p = req.n, req.v, req.p
    _reject_nonpositive_integers(v, "v")
    wp = p + (n + 1).bit_length() + 20
    a, correction, k = normalize_v(n, v, wp)
    real_v = v.im.is_zero()
    I1, diag1 = half_line_integral(n, a, p, force_shift=force_shift)
    pi_ball = const_pi(wp)
    if real_v:
        factor = pi_ball.div(RealBall.from_int(n + 1), wp).neg()
        main = ComplexBall(I1.re.mul(factor, wp), RealBall.from_int(0))
        evals = diag1["evals"]
        converged = diag1["converged"]
    else:
        I2, diag2 = half_line_integral(n, a.conj(), p,
                                       force_shift=force_shift)
        paired = I1.add(I2.conj(), wp)
        factor = pi_ball.div(RealBall.from_int(2 * (n + 1)), wp).neg()
        main = paired.mul_real(factor, wp)
        evals = diag1["evals"] + diag2["evals"]
        converged = diag1["converged"] and diag2["converged"]
    value = main if k == 0 else main.add(correction, wp)
    warnings = []
    if not converged:
        warnings.append("tolerance not met: the enclosure is sound but "
                        "wider than requested")
    if value.rel_accuracy_bits() < p // 2:
        warnings.append("cancellation: fewer than p/2 relative bits "
                        "(the value may sit near a sign change)")
    seconds = time.monotonic() - t_start
    plan = diag1["plan"]
    diagnostics = _plan_diagnostics(plan, wp, evals, seconds, converged,
                                    warnings)
    return StieltjesResult(value=value, n=n, v=v, p=p, shifted_terms=k,
                           plan=plan, wp=wp, evals=evals, warnings=warnings,
                           seconds=seconds, diagnostics=diagnostics)


def stieltjes_gamma_full(n: int, v=1, prec: int = 64,
                         force_shift: bool | None = None) -> StieltjesResult:
    return stieltjes(StieltjesRequest(n, v, prec), force_shift=force_shift)


def stieltjes_gamma(n: int, v=1, prec: int = 64) -> ComplexBall:
    """Sound enclosure of the generalized Stieltjes constant gamma_n(v)."""
    return stieltjes_gamma_full(n, v, prec).value


# ---------------------------------------------------------------------------
# Hurwitz zeta


def _normalize_v_zeta(s: ComplexBall, v: ComplexBall, wp: int):
    """Shift v rightwards until Re >= 1 for the zeta integral.

    Returns (a, correction, k) with zeta(s, v) = zeta(s, v+k) + correction,
    correction = sum_{j<k} (v+j)^(-s), a = v + k - 1/2.
    """
    re_mid = v.re.mid
    if mpf_le(fone, re_mid):
        k = 0
    else:
        k = to_int(mpf_ceil(mpf_sub(fone, re_mid, 0)))
        if k < 0:
            k = 0
    half = RealBall.from_float(0.5)
    a = ComplexBall(v.re.add(RealBall.from_int(k), wp).sub(half, wp), v.im)
    if k == 0:
        return a, ComplexBall.from_int(0), 0
    real_pair = s.im.is_zero() and v.im.is_zero()
    try:
        if real_pair:
            tot = RealBall.from_int(0)
            for j in range(k):
                w = v.re.add(RealBall.from_int(j), wp)
                if not w.is_positive():
                    raise BallDomainError(
                        "v + %d is not strictly positive: (v+%d)^(-s) lies "
                        "on the branch cut" % (j, j))
                term = w.log(wp).mul(s.re, wp).neg().exp(wp)
                tot = tot.add(term, wp)
            correction = ComplexBall(tot, RealBall.from_int(0))
        else:
            tot = ComplexBall.from_int(0)
            for j in range(k):
                w = v.add(ComplexBall.from_int(j), wp)
                if w.contains_zero():
                    raise BallDomainError(
                        "v + %d contains zero; (v+%d)^(-s) is undefined"
                        % (j, j))
                term = w.pow_via_log(s.neg(), wp)
                tot = tot.add(term, wp)
            correction = tot
    except BranchCutError as exc:
        raise BallDomainError(
            "recurrence shift touched the log branch cut: %s" % exc) from None
    return a, correction, k


def _zeta_truncation_start(s: ComplexBall, a: ComplexBall) -> int:
    """Starting truncation point honoring the tail bound's validity floors."""
    floors = [1]
    amag = a.mag_upper()
    if amag not in (fzero, finf, fnan):
        floors.append(to_int(mpf_ceil(mpf_shift(amag, 1), 0)))
    immag = a.im.mag_upper()
    if immag not in (fzero, finf, fnan):
        floors.append(to_int(mpf_ceil(immag, 0)) + 1)
    q = 1.0 - to_float(s.re.lower())
    if q > 0.0:
        floors.append(int(q / 3.0) + 1)
    return max(floors)


def hurwitz_zeta_full(s, v, prec: int = 64) -> ZetaResult:
    """Evaluate zeta(s, v) as a sound enclosure with diagnostics.

    Restricted to |s| <= 1000 with the s-ball excluding the pole at 1.
    """
    t_start = time.monotonic()
    p = prec
    if isinstance(p, bool) or not isinstance(p, int) or p < 8:
        raise ValueError("target precision must be an integer >= 8")
    coerce_prec = p + 60
    s = as_complex_ball(s, coerce_prec)
    v = as_complex_ball(v, coerce_prec)
    _reject_nonpositive_integers(v, "v")
    if s.contains(ComplexBall.from_int(1)):
        raise BallDomainError("s overlaps 1, the pole of zeta(s, v)")
    smag = s.mag_upper()
    if smag in (finf, fnan) or mpf_lt(from_int(1000), smag):
        raise BallDomainError("|s| > 1000 is outside the supported range")

    # The integrand transiently reaches ~exp((pi/2)|Im s|) while the value
    # can be O(1): the oscillation allowance below absorbs that peak, plus
    # the polynomial growth (2N)^(1-Re s) for very negative real parts.
    s_abs = to_float(smag)
    im_abs = to_float(s.im.mag_upper())
    re_lo = to_float(s.re.lower())
    cancel_bits = (int(1.4427 * (math.pi / 2) * im_abs)
                   + (int(s_abs) + 2).bit_length() + 4)
    growth_bits = int(1.4427 * max(0.0, 1.0 - re_lo)
                      * math.log(2.0 + s_abs / (2.0 * math.pi)))
    wp = p + 20 + cancel_bits + growth_bits

    a, correction, k = _normalize_v_zeta(s, v, wp)
    kernel = ZetaKernel(s, a)
    N = choose_N(kernel, p, _zeta_truncation_start(s, a))

    xstar = int(max(0.0, (1.0 - re_lo) / (2.0 * math.pi)))
    if xstar > N:
        xstar = N
    proxy = kernel.point(ComplexBall.from_int(xstar), wp).mag_upper()
    if proxy in (finf, fnan) or mpf_lt(proxy, fone):
        proxy = fone
    abs_tol = mpf_shift(proxy, -(p + 10 + cancel_bits))

    res = integrate_segment(kernel, ComplexBall.from_int(0),
                            ComplexBall.from_int(N), abs_tol, wp,
                            rel_bits=p + 10 + cancel_bits)
    I = res.value.add_error(kernel.tail_bound(N))

    pi_ball = const_pi(wp)
    if kernel.real_pair:
        den = s.re.sub(RealBall.from_int(1), wp).mul_2exp(1)
        pref = pi_ball.div(den, wp)
        val_re = I.re.mul(pref, wp)
        if k:
            val_re = val_re.add(correction.re, wp)
        value = ComplexBall(val_re, RealBall.from_int(0))
    else:
        den = s.sub(ComplexBall.from_int(1), wp).mul_2exp(1)
        pref = ComplexBall.from_real(pi_ball).div(den, wp)
        value = I.mul(pref, wp)
        if k:
            value = value.add(correction, wp)

    warnings = []
    if not res.converged:
        warnings.append("tolerance not met: the enclosure is sound but "
                        "wider than requested")
    if value.rel_accuracy_bits() < p // 2:
        warnings.append("cancellation: fewer than p/2 relative bits")
    seconds = time.monotonic() - t_start
    diagnostics = {
        "wp": wp,
        "evals": res.evaluations,
        "seconds": seconds,
        "converged": res.converged,
        "warnings": list(warnings),
        "segments": 1,
        "N": N,
        "M": None,
        "C": None,
        "omega": None,
        "shifted": False,
    }
    return ZetaResult(value=value, s=s, v=v, p=p, shifted_terms=k, wp=wp,
                      evals=res.evaluations, warnings=warnings,
                      seconds=seconds, diagnostics=diagnostics)


def hurwitz_zeta(s, v, prec: int = 64) -> ComplexBall:
    """Sound enclosure of the Hurwitz zeta function zeta(s, v)."""
    return hurwitz_zeta_full(s, v, prec).value

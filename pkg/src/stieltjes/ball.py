"""Midpoint-radius ball arithmetic over arbitrary-precision binary floats.

A RealBall is a pair (mid, rad) representing the set [mid-rad, mid+rad];
a ComplexBall is an axis-aligned rectangle re x im of two RealBalls.
Every operation returns a ball containing the exact image of its input
sets: that inclusion property is the only contract callers rely on.

Numbers are raw mpmath.libmp tuples (sign, mantissa, exponent, bitcount).
Exponents are Python big ints, so values like 10^(10^100) are representable;
this is load-bearing and is why a fixed-exponent float type cannot be used
underneath. Midpoints are computed at the caller's working precision with
libmp's correctly rounded field arithmetic. Radii are kept at RAD_PREC bits
and always rounded away from zero.

Trust model: libmp add/sub/mul/div/sqrt are correctly rounded (error at most
half an ulp, covered here by a full-ulp term). exp/log/atan2/cos/sin/tanh in
libmp are accurate but not proven correctly rounded, so results of those get
_TRANS_ULPS extra ulps of radius. All structural error propagation (input
radii through derivative bounds, interval endpoints) is done explicitly in
this module with directed rounding.
"""

from __future__ import annotations

from functools import lru_cache

from mpmath.libmp import (
    MPZ,
    finf,
    fnan,
    fninf,
    fnone,
    fone,
    from_int,
    from_man_exp,
    from_str,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_atan,
    mpf_atan2,
    mpf_cos_sin,
    mpf_cosh_sinh,
    mpf_div,
    mpf_exp,
    mpf_ge,
    mpf_gt,
    mpf_hypot,
    mpf_le,
    mpf_log,
    mpf_log_hypot,
    mpf_lt,
    mpf_mul,
    mpf_mul_int,
    mpf_neg,
    mpf_pi,
    mpf_pos,
    mpf_shift,
    mpf_sqrt,
    mpf_sub,
    mpf_tanh,
    to_str,
)

RAD_PREC = 30        # radius mantissa width; magnitude accuracy only
_TRANS_ULPS = 2      # extra ulp exponent credited to delegated transcendentals

_MPZ_ONE = MPZ(1)
_SPECIALS = (finf, fninf, fnan)


class BallDomainError(ArithmeticError):
    """Input set leaves the operation's domain (div by 0-ball, log of 0, ...)."""


class BranchCutError(BallDomainError):
    """Complex rectangle touches a log branch cut or contains 0.

    kind is 'zero' (rectangle contains the origin) or 'cut' (rectangle
    straddles the negative real axis). Integrators catch this to bisect.
    """

    def __init__(self, kind: str, msg: str = ""):
        super().__init__(msg or kind)
        self.kind = kind


def _is_special(x) -> bool:
    return x[1] == 0 and x != fzero


def _ulp(x, prec: int, extra: int = 0):
    # 2^(exp+bc-prec+extra) >= one ulp of a prec-bit result tuple x.
    # Covers the half-ulp error of a correctly rounded op with 2x margin.
    if x[1] == 0:
        if x == fzero:
            return fzero
        return finf
    return (0, _MPZ_ONE, x[2] + x[3] - prec + extra, 1)


# -- magnitude (nonnegative mpf) arithmetic, always rounded up --------------

def mag_add(a, b):
    return mpf_add(a, b, RAD_PREC, 'u')


def mag_mul(a, b):
    return mpf_mul(a, b, RAD_PREC, 'u')


def mag_div(a, b):
    """Upper bound of a/b for nonnegative a, positive b."""
    if b == fzero:
        return finf
    return mpf_div(a, b, RAD_PREC, 'u')


def mag_of(x):
    """30-bit upper bound of |x|."""
    return mpf_pos(mpf_abs(x), RAD_PREC, 'u')


def mag_of_lower(x):
    """30-bit lower bound of |x|."""
    return mpf_pos(mpf_abs(x), RAD_PREC, 'd')


def mag_expm1(r):
    """Upper bound of e^r - 1 for a nonnegative magnitude r."""
    if r == fzero:
        return fzero
    if _is_special(r):
        return finf
    if r[2] + r[3] <= -10:
        # r <= 2^-10: e^r - 1 <= r/(1-r) <= r*(1+2^-9)
        return mpf_mul(r, _ONE_PLUS_2M9, RAD_PREC, 'u')
    return mpf_sub(mpf_exp(r, RAD_PREC + 10, 'u'), fone, RAD_PREC, 'u')


def mag_exp(r):
    """Upper bound of e^r for a nonnegative magnitude r."""
    if r == fzero:
        return fone
    return mpf_exp(r, RAD_PREC, 'u')


_ONE_PLUS_2M9 = mpf_add(fone, from_man_exp(1, -9), RAD_PREC, 'u')


# -- real balls --------------------------------------------------------------

class RealBall:
    __slots__ = ("mid", "rad")

    def __init__(self, mid=fzero, rad=fzero):
        self.mid = mid
        self.rad = rad

    # construction

    @classmethod
    def from_int(cls, k: int) -> "RealBall":
        return cls(from_int(k), fzero)

    @classmethod
    def from_float(cls, x: float) -> "RealBall":
        # binary floats are exact in binary; no radius
        from mpmath.libmp import from_float
        return cls(from_float(x), fzero)

    @classmethod
    def from_decimal(cls, s: str, prec: int) -> "RealBall":
        """Parse a decimal string; radius covers the binary conversion."""
        m = from_str(s, prec + 10, 'n')
        return cls(m, _ulp(m, prec + 10))

    @classmethod
    def from_rational(cls, p: int, q: int, prec: int) -> "RealBall":
        m = mpf_div(from_int(p), from_int(q), prec, 'n')
        return cls(m, _ulp(m, prec))

    @classmethod
    def indeterminate(cls) -> "RealBall":
        return cls(fzero, finf)

    # predicates

    def is_exact(self) -> bool:
        return self.rad == fzero

    def is_indeterminate(self) -> bool:
        return _is_special(self.rad) or _is_special(self.mid)

    def is_zero(self) -> bool:
        return self.mid == fzero and self.rad == fzero

    def contains_zero(self) -> bool:
        if self.is_indeterminate():
            return True
        return mpf_le(mpf_abs(self.mid), self.rad)

    def is_positive(self) -> bool:
        """True only if every point of the ball is > 0."""
        return (not self.is_indeterminate()) and self.mid[0] == 0 \
            and self.mid != fzero and mpf_gt(self.mid, self.rad)

    def is_negative(self) -> bool:
        return (not self.is_indeterminate()) and self.mid[0] == 1 \
            and mpf_gt(mpf_abs(self.mid), self.rad)

    # endpoints and magnitudes

    def _ep_prec(self) -> int:
        return max(53, self.mid[3] + 35)

    def lower(self):
        """mpf lower bound of the ball."""
        if self.is_indeterminate():
            return fninf
        return mpf_sub(self.mid, self.rad, self._ep_prec(), 'f')

    def upper(self):
        if self.is_indeterminate():
            return finf
        return mpf_add(self.mid, self.rad, self._ep_prec(), 'c')

    def mag_upper(self):
        """30-bit magnitude upper bound of |x| over the ball."""
        if self.is_indeterminate():
            return finf
        return mag_add(mag_of(self.mid), self.rad)

    def mag_lower(self):
        """30-bit lower bound of |x| over the ball (0 if it straddles 0)."""
        if self.is_indeterminate() or self.contains_zero():
            return fzero
        return mpf_sub(mag_of_lower(self.mid), self.rad, RAD_PREC, 'd')

    def rel_accuracy_bits(self) -> int:
        if self.is_indeterminate():
            return -(1 << 62)
        if self.rad == fzero:
            return 1 << 62
        if self.mid == fzero:
            return -(1 << 62)
        return (self.mid[2] + self.mid[3]) - (self.rad[2] + self.rad[3])

    def contains(self, other) -> bool:
        """Certain containment of an mpf tuple, int, or RealBall.

        Returns True only when containment is provable; near-boundary
        queries within ~2^-200 relative may conservatively return False.
        """
        if self.is_indeterminate():
            return True
        if isinstance(other, RealBall):
            if other.is_indeterminate():
                return False
            d = mpf_add(mpf_abs(mpf_sub(other.mid, self.mid, 300, 'c')),
                        other.rad, RAD_PREC + 10, 'u')
            return mpf_le(d, self.rad)
        if isinstance(other, int):
            other = from_int(other)
        other = getattr(other, '_mpf_', other)
        for p in (120, 600):
            d_hi = mpf_abs(mpf_sub(other, self.mid, p, 'c'))
            d_lo = mpf_abs(mpf_sub(other, self.mid, p, 'f'))
            hi = d_hi if mpf_ge(d_hi, d_lo) else d_lo
            lo = d_lo if mpf_ge(d_hi, d_lo) else d_hi
            if mpf_le(hi, self.rad):
                return True
            if mpf_gt(lo, self.rad):
                return False
        return False

    def overlaps(self, other: "RealBall") -> bool:
        """False only when the balls are provably disjoint."""
        if self.is_indeterminate() or other.is_indeterminate():
            return True
        d_c = mpf_abs(mpf_sub(other.mid, self.mid, 300, 'c'))
        d_f = mpf_abs(mpf_sub(other.mid, self.mid, 300, 'f'))
        d_lo = d_c if mpf_le(d_c, d_f) else d_f
        s = mag_add(self.rad, other.rad)
        return mpf_le(mpf_pos(d_lo, RAD_PREC, 'd'), s)

    # arithmetic (explicit working precision)

    def neg(self) -> "RealBall":
        return RealBall(mpf_neg(self.mid), self.rad)

    def abs(self) -> "RealBall":
        return RealBall(mpf_abs(self.mid), self.rad)

    def _sum_is_exact(self, other: "RealBall", prec: int) -> bool:
        # both exact and the exponent windows overlap within prec bits,
        # so the exact sum is representable without rounding
        if self.rad != fzero or other.rad != fzero:
            return False
        x, y = self.mid, other.mid
        if x[1] == 0 or y[1] == 0:
            z = y if x[1] == 0 else x
            return z[1] == 0 or z[3] <= prec
        hi = max(x[2] + x[3], y[2] + y[3]) + 1
        lo = min(x[2], y[2])
        return hi - lo <= prec

    def add(self, other: "RealBall", prec: int) -> "RealBall":
        m = mpf_add(self.mid, other.mid, prec, 'n')
        if self._sum_is_exact(other, prec):
            return RealBall(m, fzero)
        return RealBall(m, mag_add(mag_add(self.rad, other.rad),
                                   _ulp(m, prec)))

    def sub(self, other: "RealBall", prec: int) -> "RealBall":
        m = mpf_sub(self.mid, other.mid, prec, 'n')
        if self._sum_is_exact(other, prec):
            return RealBall(m, fzero)
        return RealBall(m, mag_add(mag_add(self.rad, other.rad),
                                   _ulp(m, prec)))

    def mul(self, other: "RealBall", prec: int) -> "RealBall":
        m = mpf_mul(self.mid, other.mid, prec, 'n')
        xr, yr = self.rad, other.rad
        if xr == fzero and yr == fzero:
            if self.mid[3] + other.mid[3] <= prec:
                return RealBall(m, fzero)
            return RealBall(m, _ulp(m, prec))
        # |x||dy| + |y||dx| + |dx||dy|
        r = mag_add(mag_mul(mag_of(self.mid), yr),
                    mag_mul(mag_add(mag_of(other.mid), yr), xr))
        return RealBall(m, mag_add(r, _ulp(m, prec)))

    def mul_int(self, k: int, prec: int) -> "RealBall":
        m = mpf_mul_int(self.mid, k, prec, 'n')
        if self.rad == fzero and self.mid[3] + abs(k).bit_length() <= prec:
            return RealBall(m, fzero)
        r = mag_mul(self.rad, mag_of(from_int(abs(k))))
        return RealBall(m, mag_add(r, _ulp(m, prec)))

    def mul_2exp(self, e: int) -> "RealBall":
        # exact scaling by 2^e
        return RealBall(mpf_shift(self.mid, e), mpf_shift(self.rad, e))

    def div(self, other: "RealBall", prec: int) -> "RealBall":
        den_lo = other.mag_lower()
        if den_lo == fzero or other.is_indeterminate():
            return RealBall.indeterminate()
        m = mpf_div(self.mid, other.mid, prec, 'n')
        num = mag_add(mag_mul(self.rad, mag_of(other.mid)),
                      mag_mul(mag_of(self.mid), other.rad))
        den = mpf_mul(den_lo, mag_of_lower(other.mid), RAD_PREC, 'd')
        return RealBall(m, mag_add(mag_div(num, den), _ulp(m, prec)))

    def sqrt(self, prec: int) -> "RealBall":
        lo = self.lower()
        if self.is_indeterminate() or mpf_lt(lo, fzero):
            return RealBall.indeterminate()
        m = mpf_sqrt(self.mid, prec, 'n')
        if self.rad == fzero:
            return RealBall(m, _ulp(m, prec))
        if lo == fzero:
            # hull of [0, sqrt(hi)]
            h = mpf_sqrt(self.upper(), RAD_PREC + 4, 'u')
            half = mpf_shift(h, -1)
            return RealBall(mpf_pos(half, prec, 'n'), mpf_pos(half, RAD_PREC, 'u'))
        d = mpf_sqrt(mpf_pos(lo, RAD_PREC, 'd'), RAD_PREC, 'd')
        r = mag_div(self.rad, mpf_shift(d, 1))
        return RealBall(m, mag_add(r, _ulp(m, prec)))

    def exp(self, prec: int) -> "RealBall":
        if self.is_indeterminate():
            return RealBall.indeterminate()
        if self.mid[1] and self.mid[2] + self.mid[3] > (1 << 30):
            # the result's exponent integer alone would be astronomical
            return RealBall.indeterminate()
        m = mpf_exp(self.mid, prec, 'n')
        e = _ulp(m, prec, _TRANS_ULPS)
        if self.rad == fzero:
            return RealBall(m, e)
        r = mag_mul(mag_add(mag_of(m), e), mag_expm1(self.rad))
        return RealBall(m, mag_add(r, e))

    def log(self, prec: int) -> "RealBall":
        lo = self.mag_lower()
        if self.is_indeterminate() or lo == fzero or self.mid[0] == 1 \
                or self.mid == fzero:
            return RealBall.indeterminate()
        m = mpf_log(self.mid, prec, 'n')
        r = mag_div(self.rad, lo)
        return RealBall(m, mag_add(r, _ulp(m, prec, _TRANS_ULPS)))

    def atan(self, prec: int) -> "RealBall":
        if self.is_indeterminate():
            return RealBall.indeterminate()
        m = mpf_atan(self.mid, prec, 'n')
        return RealBall(m, mag_add(self.rad, _ulp(m, prec, _TRANS_ULPS)))

    def tanh(self, prec: int) -> "RealBall":
        if self.is_indeterminate():
            return RealBall.indeterminate()
        lo = self.mag_lower()
        if lo != fzero and mpf_gt(lo, from_int(prec + 6)):
            # |x| >= prec+6: |tanh x| in (1 - 2^-2prec, 1), sign of mid
            one = fnone if self.mid[0] else fone
            return RealBall(one, from_man_exp(1, -prec))
        m = mpf_tanh(self.mid, prec, 'n')
        return RealBall(m, mag_add(self.rad, _ulp(m, prec, _TRANS_ULPS)))

    def cosh(self, prec: int) -> "RealBall":
        if self.is_indeterminate():
            return RealBall.indeterminate()
        lo = self.mag_lower()
        if lo != fzero and mpf_gt(lo, from_int(max(64, prec))):
            # avoid the subtraction path inside cosh for large arguments:
            # cosh x = e^|x|/2 * (1 + e^-2|x|), second factor below 2^-prec
            h = RealBall(mpf_abs(self.mid), self.rad).exp(prec).mul_2exp(-1)
            return RealBall(h.mid, mag_add(h.rad, mag_mul(
                mag_of(h.mid), from_man_exp(1, -prec + 1))))
        c, s = mpf_cosh_sinh(self.mid, prec, 'n')
        e = _ulp(c, prec, _TRANS_ULPS)
        if self.rad == fzero:
            return RealBall(c, e)
        # |cosh'| = |sinh| <= (|sinh(m)|+cosh(m)) e^r on the ball
        b = mag_mul(mag_add(mag_of(s), mag_of(c)), mag_exp(self.rad))
        return RealBall(c, mag_add(mag_mul(b, self.rad), e))

    def pow_int(self, k: int, prec: int) -> "RealBall":
        if k < 0:
            return RealBall.from_int(1).div(self.pow_int(-k, prec), prec)
        result = RealBall.from_int(1)
        base = self
        while k:
            if k & 1:
                result = result.mul(base, prec)
            k >>= 1
            if k:
                base = base.mul(base, prec)
        return result

    def add_error(self, mag) -> "RealBall":
        """Widen by a magnitude (mpf tuple or RealBall upper bound)."""
        if isinstance(mag, RealBall):
            mag = mag.mag_upper()
        return RealBall(self.mid, mag_add(self.rad, mag))

    def union(self, other: "RealBall") -> "RealBall":
        lo = self.lower() if mpf_lt(self.lower(), other.lower()) else other.lower()
        hi = self.upper() if mpf_gt(self.upper(), other.upper()) else other.upper()
        return RealBall.from_endpoints(lo, hi)

    @classmethod
    def from_endpoints(cls, lo, hi) -> "RealBall":
        p = max(lo[3], hi[3], 53) + 4
        m = mpf_shift(mpf_add(lo, hi, p, 'n'), -1)
        r = mag_add(mpf_abs(mpf_sub(hi, m, RAD_PREC, 'u')),
                    mpf_abs(mpf_sub(m, lo, RAD_PREC, 'u')))
        return cls(m, r)

    def __repr__(self) -> str:
        return "RealBall(%s)" % format_ball(self, 12)

    def __str__(self) -> str:
        return format_ball(self, 12)


# -- complex balls (axis-aligned rectangles) ---------------------------------

class ComplexBall:
    __slots__ = ("re", "im")

    def __init__(self, re: RealBall, im: RealBall | None = None):
        self.re = re
        self.im = im if im is not None else RealBall()

    @classmethod
    def from_int(cls, k: int) -> "ComplexBall":
        return cls(RealBall.from_int(k))

    @classmethod
    def from_real(cls, x: RealBall) -> "ComplexBall":
        return cls(x, RealBall())

    @classmethod
    def indeterminate(cls) -> "ComplexBall":
        return cls(RealBall.indeterminate(), RealBall.indeterminate())

    def is_indeterminate(self) -> bool:
        return self.re.is_indeterminate() or self.im.is_indeterminate()

    def is_exact(self) -> bool:
        return self.re.is_exact() and self.im.is_exact()

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def contains(self, other) -> bool:
        if isinstance(other, ComplexBall):
            return self.re.contains(other.re) and self.im.contains(other.im)
        if hasattr(other, '_mpc_'):
            other = other._mpc_
        if isinstance(other, int) or hasattr(other, '_mpf_'):
            return self.re.contains(other) and self.im.contains(0)
        if isinstance(other, complex):
            from mpmath.libmp import from_float
            return self.re.contains(from_float(other.real)) and \
                self.im.contains(from_float(other.imag))
        if isinstance(other, tuple) and len(other) == 4:
            return self.re.contains(other) and self.im.contains(0)
        re, im = other
        return self.re.contains(re) and self.im.contains(im)

    def overlaps(self, other: "ComplexBall") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def mag_upper(self):
        """30-bit upper bound of |z| over the rectangle."""
        return mpf_hypot(self.re.mag_upper(), self.im.mag_upper(),
                         RAD_PREC, 'u')

    def mag_lower(self):
        """30-bit lower bound of |z| over the rectangle (0 if 0 inside)."""
        return mpf_hypot(self.re.mag_lower(), self.im.mag_lower(),
                         RAD_PREC, 'd')

    def rel_accuracy_bits(self) -> int:
        """Accuracy of the enclosure relative to |z|, not per component,
        so exact-zero components do not mask a tight complex ball."""
        if self.is_indeterminate():
            return -(1 << 62)
        rad = mag_add(self.re.rad, self.im.rad)
        if rad == fzero:
            return 1 << 62
        mid = mpf_hypot(self.re.mid, self.im.mid, RAD_PREC, 'u')
        if mid == fzero:
            return -(1 << 62)
        return (mid[2] + mid[3]) - (rad[2] + rad[3])

    def neg(self) -> "ComplexBall":
        return ComplexBall(self.re.neg(), self.im.neg())

    def conj(self) -> "ComplexBall":
        # reflection is exact: no widening
        return ComplexBall(self.re, self.im.neg())

    def add(self, other: "ComplexBall", prec: int) -> "ComplexBall":
        return ComplexBall(self.re.add(other.re, prec),
                           self.im.add(other.im, prec))

    def sub(self, other: "ComplexBall", prec: int) -> "ComplexBall":
        return ComplexBall(self.re.sub(other.re, prec),
                           self.im.sub(other.im, prec))

    def mul(self, other: "ComplexBall", prec: int) -> "ComplexBall":
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexBall(a.mul(c, prec).sub(b.mul(d, prec), prec),
                           a.mul(d, prec).add(b.mul(c, prec), prec))

    def mul_real(self, other: RealBall, prec: int) -> "ComplexBall":
        return ComplexBall(self.re.mul(other, prec), self.im.mul(other, prec))

    def mul_int(self, k: int, prec: int) -> "ComplexBall":
        return ComplexBall(self.re.mul_int(k, prec), self.im.mul_int(k, prec))

    def mul_i(self) -> "ComplexBall":
        # multiply by i exactly
        return ComplexBall(self.im.neg(), self.re)

    def sqr(self, prec: int) -> "ComplexBall":
        a, b = self.re, self.im
        return ComplexBall(a.mul(a, prec).sub(b.mul(b, prec), prec),
                           a.mul(b, prec).mul_2exp(1))

    def div(self, other: "ComplexBall", prec: int) -> "ComplexBall":
        c, d = other.re, other.im
        den = c.mul(c, prec).add(d.mul(d, prec), prec)
        if den.contains_zero():
            return ComplexBall.indeterminate()
        num = self.mul(other.conj(), prec)
        return ComplexBall(num.re.div(den, prec), num.im.div(den, prec))

    def exp(self, prec: int) -> "ComplexBall":
        if self.is_indeterminate():
            return ComplexBall.indeterminate()
        x, y = self.re, self.im
        if x.mid[1] and x.mid[2] + x.mid[3] > (1 << 30):
            return ComplexBall.indeterminate()
        if y.mid[1] and y.mid[2] + y.mid[3] > (1 << 22):
            # cos/sin argument reduction would need pi to that many bits;
            # fall back to the trivial |cos|,|sin| <= 1 enclosure
            r = RealBall(mpf_abs(x.mid), x.rad).exp(prec)
            bound = RealBall(fzero, r.mag_upper())
            return ComplexBall(bound, bound)
        ex = mpf_exp(x.mid, prec, 'n')
        c, s = mpf_cos_sin(y.mid, prec, 'n')
        mr = mpf_mul(ex, c, prec, 'n')
        mi = mpf_mul(ex, s, prec, 'n')
        e_ex = _ulp(ex, prec, _TRANS_ULPS)
        # sup |exp| over the rectangle, with the midpoint's own error folded in
        sup = mag_mul(mag_add(mag_of(ex), e_ex), mag_exp(x.rad))
        dr = mag_mul(sup, mag_add(x.rad, y.rad))
        err_r = mag_add(mag_add(dr, _ulp(mr, prec, _TRANS_ULPS + 2)),
                        mag_mul(sup, from_man_exp(1, -prec + _TRANS_ULPS + 1)))
        if y.mid == fzero and y.rad == fzero:
            # exactly real argument: e^x has exactly zero imaginary part
            return ComplexBall(RealBall(mr, err_r), RealBall(fzero, fzero))
        return ComplexBall(RealBall(mr, err_r), RealBall(mi, err_r))

    def log(self, prec: int) -> "ComplexBall":
        """Principal branch. Raises BranchCutError if the rectangle contains
        0 or straddles the negative real axis (image not a rectangle)."""
        if self.is_indeterminate():
            return ComplexBall.indeterminate()
        lo = self.mag_lower()
        if lo == fzero:
            raise BranchCutError('zero', 'log of a set containing 0')
        if self.im.contains_zero() and not self.im.is_zero() \
                and not self.re.is_positive():
            # a rectangle of positive imaginary thickness crossing the
            # negative real axis maps to both arg ~ +pi and arg ~ -pi;
            # a degenerate segment exactly on the axis is fine (arg = pi)
            raise BranchCutError('cut', 'log set straddles the branch cut')
        a, b = self.re.mid, self.im.mid
        mr = mpf_log_hypot(a, b, prec, 'n')
        mi = mpf_atan2(b, a, prec, 'n')
        # |dlog/dz| = 1/|z| <= 1/lo on the (convex, cut-free) rectangle
        d = mag_div(mag_add(self.re.rad, self.im.rad), lo)
        return ComplexBall(
            RealBall(mr, mag_add(d, _ulp(mr, prec, _TRANS_ULPS))),
            RealBall(mi, mag_add(d, _ulp(mi, prec, _TRANS_ULPS))))

    def pow_int(self, k: int, prec: int) -> "ComplexBall":
        """z^k by binary powering; no branch issues for integer k >= 0."""
        if k < 0:
            raise ValueError("negative power not needed")
        result = ComplexBall.from_int(1)
        base = self
        while k:
            if k & 1:
                result = result.mul(base, prec)
            k >>= 1
            if k:
                base = base.sqr(prec)
        return result

    def pow_via_log(self, y: "ComplexBall", prec: int) -> "ComplexBall":
        """Principal-branch z^y = exp(y log z); raises on branch contact."""
        return y.mul(self.log(prec), prec).exp(prec)

    def tanh(self, prec: int) -> "ComplexBall":
        # (E-1)/(E+1) with E = e^{2z}
        E = self.mul_2exp(1).exp(prec)
        one = ComplexBall.from_int(1)
        return E.sub(one, prec).div(E.add(one, prec), prec)

    def mul_2exp(self, e: int) -> "ComplexBall":
        return ComplexBall(self.re.mul_2exp(e), self.im.mul_2exp(e))

    def add_error(self, mag) -> "ComplexBall":
        if isinstance(mag, ComplexBall):
            mag = mag.mag_upper()
        return ComplexBall(self.re.add_error(mag), self.im.add_error(mag))

    def __repr__(self) -> str:
        return "ComplexBall(%s, %s)" % (format_ball(self.re, 12),
                                        format_ball(self.im, 12))

    def __str__(self) -> str:
        re_s = format_ball(self.re, 12)
        im_s = format_ball(self.im, 12)
        return "(%s) + (%s)i" % (re_s, im_s)


# -- constants ----------------------------------------------------------------

@lru_cache(maxsize=None)
def const_pi(prec: int) -> RealBall:
    m = mpf_pi(prec, 'n')
    return RealBall(m, _ulp(m, prec))


@lru_cache(maxsize=None)
def const_ln2(prec: int) -> RealBall:
    from mpmath.libmp import mpf_ln2
    m = mpf_ln2(prec, 'n')
    return RealBall(m, _ulp(m, prec))


@lru_cache(maxsize=None)
def const_ln10(prec: int) -> RealBall:
    m = mpf_log(from_int(10), prec, 'n')
    return RealBall(m, _ulp(m, prec, _TRANS_ULPS))


# -- decimal serialization ----------------------------------------------------

_DIRECT_EXP_LIMIT = 1 << 22  # beyond ~4M binary exponent, print via logs


def _dec_parts(x, dps: int):
    """(sign, digits, decimal_exponent) of an mpf tuple, any exponent size.

    Well inside the direct regime this is libmp's exact conversion; for huge
    exponents the significand and the (big-int) decimal exponent are computed
    through log10 with interval arithmetic, so the digits are correct to the
    last place +/- one ulp, which the radius bump in format_ball covers.
    """
    sign, man, exp, bc = x
    if man == 0:
        if x == fzero:
            return 0, "0" * dps, 0
        raise ValueError("special value has no decimal form")
    if abs(exp + bc) < _DIRECT_EXP_LIMIT:
        from mpmath.libmp import to_digits_exp
        _, digits, dexp = to_digits_exp(x, dps)
        if len(digits) > dps:
            # round by truncation bump on the extra digit
            keep, nxt = digits[:dps], digits[dps]
            if nxt >= '5':
                keep = _inc_digits(keep)
                if len(keep) > dps:
                    keep, dexp = keep[:dps], dexp + 1
            digits = keep
        return sign, digits.ljust(dps, '0'), dexp
    # huge exponent: log10(|x|) = (exp*ln2 + log(man)) / ln10
    wp = abs(exp + bc).bit_length() + 10 * dps // 3 + 60
    lx = RealBall.from_int(exp).mul(const_ln2(wp), wp)
    lman = mpf_log(from_int(man), wp, 'n')
    lx = lx.add(RealBall(lman, _ulp(lman, wp, _TRANS_ULPS)), wp)
    l10 = lx.div(const_ln10(wp), wp)
    from mpmath.libmp import mpf_floor, to_int
    d_lo = to_int(mpf_floor(l10.lower()))
    d_hi = to_int(mpf_floor(l10.upper()))
    if d_lo != d_hi:
        # straddles a decade boundary; midpoint decides, radius covers
        d_lo = to_int(mpf_floor(l10.mid))
    # significand = exp(ln|x| - D*ln10) in [1, 10)
    t = lx.sub(RealBall.from_int(d_lo).mul(const_ln10(wp), wp), wp)
    sig = t.exp(wp)
    ssign, sdigits, sexp = _dec_parts(sig.mid, dps + 2)
    # sig in [1,10) so sexp should be 0; fold any drift into the exponent
    digits = sdigits[:dps]
    return sign, digits.ljust(dps, '0'), d_lo + sexp


def _inc_digits(ds: str) -> str:
    out = list(ds)
    i = len(out) - 1
    while i >= 0:
        if out[i] == '9':
            out[i] = '0'
            i -= 1
        else:
            out[i] = chr(ord(out[i]) + 1)
            return "".join(out)
    return "1" + "".join(out)


def mpf_to_decimal(x, dps: int) -> str:
    """Scientific-notation decimal string with an exact big-int exponent."""
    sign, digits, dexp = _dec_parts(x, dps)
    if x == fzero:
        return "0"
    body = digits[0] + "." + digits[1:] if dps > 1 else digits
    return "%s%se%+d" % ("-" if sign else "", body, dexp)


def _print_remainder(x, digits: str, dexp, dps: int):
    """Magnitude bound of |x - printed| where the printed midpoint denotes
    (+/-) int(digits) * 10^(dexp - dps + 1), computed by ball arithmetic
    so an exactly-printable midpoint contributes (essentially) nothing."""
    D = int(digits)
    if x[0]:
        D = -D
    e5 = dexp - dps + 1
    wp = x[3] + D.bit_length() + 100
    p10 = RealBall.from_int(e5).mul(const_ln10(wp), wp).exp(wp)
    printed = p10.mul_int(D, wp)
    return RealBall(x).sub(printed, wp).mag_upper()


def _mid_rad_strings(b: RealBall, dps: int) -> tuple:
    """Decimal (mid, rad) strings; the printed interval contains the ball.

    The midpoint's actual print truncation error is absorbed into the
    radius, which is then bumped upward before its own 3-digit print.
    """
    if b.rad == fzero and b.mid == fzero:
        return "0", "0"
    mid_s = mpf_to_decimal(b.mid, dps) if b.mid != fzero else "0"
    r = b.rad
    if b.mid != fzero:
        sgn, digits, dexp = _dec_parts(b.mid, dps)
        r = mag_add(r, _print_remainder(b.mid, digits, dexp, dps))
    if r == fzero:
        return mid_s, "0"
    return mid_s, mpf_to_decimal(mag_mul(r, _ONE_PLUS_2M6), 3)


def format_ball(b: RealBall, dps: int) -> str:
    """`mid +/- rad`, outward rounded: the printed interval contains b."""
    if b.is_indeterminate():
        return "nan +/- inf"
    mid_s, rad_s = _mid_rad_strings(b, dps)
    return "%s +/- %s" % (mid_s, rad_s)


_ONE_PLUS_2M6 = mpf_add(fone, from_man_exp(1, -6), RAD_PREC, 'u')


def _pow10_mag(k: int):
    """30-bit upper bound of 10^k for any big-int k."""
    if abs(k) < 300:
        return mpf_pos(from_str("1e%d" % k, 40, 'u'), RAD_PREC, 'u')
    # 10^k = exp(k ln 10)
    wp = abs(k).bit_length() + 40
    t = RealBall.from_int(k).mul(const_ln10(wp), wp)
    return mag_exp(t.upper()) if k > 0 else mpf_exp(t.upper(), RAD_PREC, 'u')


def ball_to_json(b, dps: int | None = None) -> dict:
    """JSON form {"mid": ..., "rad": ...} (complex: {"re": ..., "im": ...})."""
    if isinstance(b, ComplexBall):
        return {"re": ball_to_json(b.re, dps), "im": ball_to_json(b.im, dps)}
    if b.is_indeterminate():
        return {"mid": "nan", "rad": "inf"}
    if dps is None:
        bits = b.rel_accuracy_bits()
        dps = 50 if bits >= (1 << 61) else min(10000, max(6, int(bits / 3.32) + 2))
    mid_s, rad_s = _mid_rad_strings(b, dps)
    return {"mid": mid_s, "rad": rad_s}

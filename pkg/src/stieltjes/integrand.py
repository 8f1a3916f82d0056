"""Integrands and truncation bounds for the hyperbolic-kernel integrals.

Stieltjes constants use

    f(z) = log(a + i z)^(n+1) / cosh(pi z)^2

integrated from 0 toward +infinity, optionally along a rectangular detour
through the lower half-plane where f has a saddle point.  Writing
f = exp(g) h with

    g(z) = (n+1) log(log(a + i z)) - 2 pi z,
    h(z) = (1 + tanh(pi z))^2 = 4 (E / (E + 1))^2,   E = e^(2 pi z),

gives the pieces used for point evaluation at astronomical n and for the
second-order magnitude bound on rectangles with Re z >= 1:

    |f(z)| <= sup|h| * |exp(g(m))| * exp(|g'(m)| r + G r^2 / 2),

with m the rectangle midpoint, r its half-diagonal, G >= sup |g''| there,
and sup|h| < 4.015 on Re z >= 1.

The Hurwitz zeta function uses the kernel

    (a + i x)^(1-s) + (a - i x)^(1-s)) / cosh(pi x)^2

on the positive real axis.  Both integrand classes expose the interface
consumed by the adaptive integrator: ``point(z, prec) -> ComplexBall`` and
``bound(rect, prec) -> magnitude`` (raising ``SetBoundUnavailable`` when a
pole or branch-cut contact prevents a finite bound), plus a rigorous
``tail_bound(N)`` for the discarded half-line remainder.

No unproven inequality feeds a radius anywhere in this module.
"""

from __future__ import annotations

from mpmath.libmp import (
    finf,
    fone,
    from_int,
    from_man_exp,
    fzero,
    mpf_add,
    mpf_cos,
    mpf_exp,
    mpf_floor,
    mpf_ge,
    mpf_hypot,
    mpf_le,
    mpf_mul,
    mpf_neg,
    mpf_shift,
    mpf_sub,
    to_int,
)

from .ball import (
    BranchCutError,
    ComplexBall,
    RealBall,
    _ulp,
    const_pi,
    mag_add,
    mag_div,
    mag_mul,
    mag_of,
)
from .quadrature import SetBoundUnavailable

# |h(z)| = |1 + tanh(pi z)|^2 < 4.015 for Re z >= 1; use a dyadic cover
_H_SUP = from_man_exp(4312, -10)          # 4.2109375
_POW_ROUTE_BITS = 48                      # binary powering while n+1 fits
_EXP_ARG_LIMIT = 1 << 30


def _is_special_mag(x) -> bool:
    return x[1] == 0 and x != fzero


def _exp_mag(x):
    """Upper bound of e^x for a signed mpf x (guarding absurd arguments)."""
    if x == fzero:
        return fone
    if _is_special_mag(x):
        return finf
    if x[2] + x[3] > _EXP_ARG_LIMIT:
        # |x| >= 2^(2^30): the result exponent itself would be astronomical
        return finf if x[0] == 0 else from_man_exp(1, -_EXP_ARG_LIMIT)
    return mpf_exp(x, 30, 'u')


def _mag_exp(x) -> int:
    """max(0, exponent of |x|) for a finite mpf; 0 for zero/special."""
    if x == fzero or x[1] == 0:
        return 0
    return max(0, x[2] + x[3])


def _pow_mag_upper(b_hi, k: int):
    """Upper bound of b_hi^k for a magnitude b_hi and integer k >= 1."""
    if b_hi == fzero:
        return fzero
    if _is_special_mag(b_hi):
        return finf
    wp = 64 + k.bit_length()
    lg = RealBall(b_hi).log(wp)
    return _exp_mag(lg.mul_int(k, wp).upper())


def contains_half_integer(iv: RealBall) -> bool:
    """Could the interval contain k + 1/2 for some integer k? Outward-safe."""
    if iv.is_indeterminate():
        return True
    half = from_man_exp(1, -1)
    lo = mpf_add(iv.lower(), half, 600, 'f')
    hi = mpf_add(iv.upper(), half, 600, 'c')
    if mpf_ge(mpf_sub(hi, lo, 60, 'u'), fone):
        return True
    ceil_lo = -to_int(mpf_floor(mpf_neg(lo)))
    return to_int(mpf_floor(hi)) >= ceil_lo


def sech_squared(z: ComplexBall, prec: int) -> ComplexBall:
    """sech^2(pi z) = 4 E / (E + 1)^2 with E = e^(2 pi z)."""
    two_pi = const_pi(prec).mul_2exp(1)
    E = z.mul_real(two_pi, prec).exp(prec)
    den = E.add(ComplexBall.from_int(1), prec).sqr(prec)
    return E.mul_2exp(2).div(den, prec)


def _abs_cos_pi_lower(y):
    """Lower bound of |cos(pi y)| at an exact mpf y."""
    if y == fzero:
        return fone
    if _is_special_mag(y) or y[2] + y[3] > (1 << 22):
        return fzero
    wp = 64 + max(0, y[2] + y[3])
    t = RealBall(y).mul(const_pi(wp), wp)
    c = mpf_cos(t.mid, wp, 'n')
    ball = RealBall(c, mag_add(t.rad, _ulp(c, wp, 2)))
    if ball.contains_zero():
        return fzero
    return ball.mag_lower()


def sech_squared_mag_upper(rect: ComplexBall, prec: int):
    """Magnitude bound of |sech^2(pi z)| over a rectangle via the identity
    |cosh(pi(x+iy))|^2 = sinh^2(pi x) + cos^2(pi y), which stays sharp on
    arbitrarily wide rectangles (no enclosure wrapping)."""
    wp = 64
    pi_b = const_pi(wp)
    xm = rect.re.mag_lower()
    e = RealBall(xm).mul(pi_b, wp).exp(wp)
    sb = e.sub(RealBall.from_int(1).div(e, wp), wp).mul_2exp(-1)
    sh_lo = sb.lower()
    if sh_lo[0]:  # numerically below zero at xm ~ 0: use sinh >= 0
        sh_lo = fzero
    if contains_half_integer(rect.im):
        c_lo = fzero
    else:
        a1 = _abs_cos_pi_lower(rect.im.lower())
        a2 = _abs_cos_pi_lower(rect.im.upper())
        c_lo = a1 if mpf_le(a1, a2) else a2
    den_lo = mpf_add(mpf_mul(sh_lo, sh_lo, 30, 'd'),
                     mpf_mul(c_lo, c_lo, 30, 'd'), 30, 'f')
    if den_lo == fzero or den_lo[0]:
        raise SetBoundUnavailable("kernel denominator may vanish")
    return mag_div(fone, den_lo)


class GammaIntegrand:
    """f(z) = log(a + i z)^(n+1) sech^2(pi z) for one fixed (n, a)."""

    def __init__(self, n: int, a: ComplexBall):
        if n < 0:
            raise ValueError("n must be >= 0")
        self.n = n
        self.n1 = n + 1
        self.a = a
        self.pow_route = self.n1.bit_length() <= _POW_ROUTE_BITS

    # -- pieces ---------------------------------------------------------

    def t_of(self, z: ComplexBall, prec: int) -> ComplexBall:
        return self.a.add(z.mul_i(), prec)

    def log_t(self, z: ComplexBall, prec: int) -> ComplexBall:
        return self.t_of(z, prec).log(prec)

    def g_at(self, z: ComplexBall, prec: int) -> ComplexBall:
        """g(z) = (n+1) log(log(a + i z)) - 2 pi z."""
        LL = self.log_t(z, prec).log(prec)
        two_pi = const_pi(prec).mul_2exp(1)
        return LL.mul_int(self.n1, prec).sub(z.mul_real(two_pi, prec), prec)

    def g_prime_at_t(self, t: ComplexBall, L: ComplexBall,
                     prec: int) -> ComplexBall:
        """g'(z) = i (n+1) / (t L) - 2 pi where t = a + i z, L = log t."""
        two_pi = const_pi(prec).mul_2exp(1)
        q = ComplexBall.from_int(self.n1).div(t.mul(L, prec), prec).mul_i()
        return q.sub(ComplexBall.from_real(two_pi), prec)

    # -- point evaluation -------------------------------------------------

    def point(self, z: ComplexBall, prec: int) -> ComplexBall:
        try:
            if self.pow_route:
                P = self.log_t(z, prec).pow_int(self.n1, prec)
                return P.mul(sech_squared(z, prec), prec)
            g = self.g_at(z, prec)
            two_pi = const_pi(prec).mul_2exp(1)
            E = z.mul_real(two_pi, prec).exp(prec)
            ratio = E.div(E.add(ComplexBall.from_int(1), prec), prec)
            h = ratio.sqr(prec).mul_2exp(2)
            return g.exp(prec).mul(h, prec)
        except BranchCutError:
            return ComplexBall.indeterminate()

    # -- set bounds ---------------------------------------------------------

    def bound(self, rect: ComplexBall, prec: int):
        """Magnitude upper bound of |f| over a rectangle; raises
        SetBoundUnavailable on pole or branch-cut contact."""
        t_rect = self.t_of(rect, prec)
        if t_rect.contains_zero():
            raise SetBoundUnavailable("log argument may vanish")
        if rect.re.contains_zero() and contains_half_integer(rect.im):
            raise SetBoundUnavailable("kernel pole in rectangle")
        try:
            L_rect = t_rect.log(prec)
        except BranchCutError:
            raise SetBoundUnavailable("branch cut of log(a + i z)")
        if mpf_ge(rect.re.lower(), fone):
            return self._taylor_bound(rect, t_rect, L_rect, prec)
        return self._direct_bound(rect, L_rect, prec)

    def _direct_bound(self, rect, L_rect, prec: int):
        k_hi = sech_squared_mag_upper(rect, prec)
        p_hi = _pow_mag_upper(L_rect.mag_upper(), self.n1)
        return mag_mul(p_hi, k_hi)

    def _taylor_bound(self, rect, t_rect, L_rect, prec: int):
        L_lo = L_rect.mag_lower()
        t_lo = t_rect.mag_lower()
        if L_lo == fzero or t_lo == fzero:
            raise SetBoundUnavailable("log or its argument may vanish")
        wp = max(prec, 64)
        m = ComplexBall(RealBall(rect.re.mid), RealBall(rect.im.mid))
        t_m = self.t_of(m, wp)
        try:
            L_m = t_m.log(wp)
            LL_m = L_m.log(wp)
        except BranchCutError:
            raise SetBoundUnavailable("midpoint log on a branch cut")
        two_pi = const_pi(wp).mul_2exp(1)
        re_g = LL_m.re.mul_int(self.n1, wp).sub(m.re.mul(two_pi, wp), wp)
        gp_hi = self.g_prime_at_t(t_m, L_m, wp).mag_upper()
        # G >= sup |g''| = sup |(n+1)(L+1)/(t^2 L^2)| over the rectangle
        num = mag_mul(mag_of(from_int(self.n1)),
                      mag_add(L_rect.mag_upper(), fone))
        den = mpf_mul(mpf_mul(t_lo, t_lo, 30, 'd'),
                      mpf_mul(L_lo, L_lo, 30, 'd'), 30, 'd')
        G = mag_div(num, den)
        r = mpf_hypot(rect.re.rad, rect.im.rad, 30, 'u')
        # B = Re g(m) + |g'(m)| r + G r^2 / 2, rounded toward +inf.  B is a
        # log-magnitude of size up to ~n, so the additions must keep the
        # *absolute* ulp below O(1): precision has to track the exponent.
        t1 = mag_mul(gp_hi, r)
        t2 = mpf_shift(mag_mul(G, mag_mul(r, r)), -1)
        ru = re_g.upper()
        pB = 64 + max(_mag_exp(ru), _mag_exp(t1), _mag_exp(t2))
        B = mpf_add(mpf_add(ru, t1, pB, 'c'), t2, pB, 'c')
        return mag_mul(_exp_mag(B), _H_SUP)

    # -- truncation -----------------------------------------------------------

    def tail_bound(self, N: int, prec: int = 64):
        """Magnitude bound of the discarded integral along [N, +inf):
        0.934 e^(-2 pi N) |log(a + i N)|^(n+1), valid once
        N >= n + 2 + |Im a|."""
        im_hi = self.a.im.mag_upper()
        lim = mpf_add(from_int(self.n + 2), im_hi, 600, 'c')
        if not mpf_ge(from_int(N), lim):
            raise ValueError("tail bound invalid: N < n + 2 + |Im a|")
        zN = ComplexBall.from_int(N)
        L_hi = self.log_t(zN, max(prec, 64)).mag_upper()
        p_hi = _pow_mag_upper(L_hi, self.n1)
        wpN = 64 + (2 * N).bit_length()
        decay = _exp_mag(const_pi(wpN).mul_int(2 * N, wpN).neg().upper())
        c = from_man_exp(957, -10)  # 0.9345703125 > 0.934
        return mag_mul(mag_mul(c, decay), p_hi)


class ZetaKernel:
    """((a + i x)^(1-s) + (a - i x)^(1-s)) sech^2(pi x) on the real axis."""

    def __init__(self, s: ComplexBall, a: ComplexBall):
        self.s = s
        self.a = a
        self.real_pair = s.im.is_zero() and a.im.is_zero()

    def _w(self, prec: int) -> ComplexBall:
        return ComplexBall.from_int(1).sub(self.s, prec)

    def point(self, z: ComplexBall, prec: int) -> ComplexBall:
        w = self._w(prec)
        t1 = self.a.add(z.mul_i(), prec)
        try:
            p1 = t1.pow_via_log(w, prec)
            if self.real_pair and z.im.is_zero():
                # the second term is the exact conjugate of the first
                pair = ComplexBall(p1.re.mul_2exp(1), RealBall.from_int(0))
            else:
                t2 = self.a.sub(z.mul_i(), prec)
                pair = p1.add(t2.pow_via_log(w, prec), prec)
            return pair.mul(sech_squared(z, prec), prec)
        except BranchCutError:
            return ComplexBall.indeterminate()

    def bound(self, rect: ComplexBall, prec: int):
        if rect.re.contains_zero() and contains_half_integer(rect.im):
            raise SetBoundUnavailable("kernel pole in rectangle")
        k_hi = sech_squared_mag_upper(rect, prec)
        w = self._w(64)
        m1 = self._abs_pow_bound(self.a.add(rect.mul_i(), 64), w)
        m2 = self._abs_pow_bound(self.a.sub(rect.mul_i(), 64), w)
        return mag_mul(mag_add(m1, m2), k_hi)

    def _abs_pow_bound(self, t_rect: ComplexBall, w: ComplexBall):
        """|t^w| <= exp(sup(Re w log|t|) + pi |Im w|) over the rectangle."""
        t_lo = t_rect.mag_lower()
        t_hi = t_rect.mag_upper()
        if t_lo == fzero or _is_special_mag(t_hi):
            raise SetBoundUnavailable("power base may vanish")
        wp = 64
        log_abs = RealBall.from_endpoints(RealBall(t_lo).log(wp).lower(),
                                          RealBall(t_hi).log(wp).upper())
        P = w.re.mul(log_abs, wp)
        arg_term = mag_mul(w.im.mag_upper(), const_pi(wp).upper())
        pu = P.upper()
        pP = 64 + max(_mag_exp(pu), _mag_exp(arg_term))
        return _exp_mag(mpf_add(pu, arg_term, pP, 'c'))

    def tail_bound(self, N: int, prec: int = 64):
        """Magnitude bound of the discarded integral along [N, +inf):
        (8/pi) e^(-2 pi N + (pi/2) |Im s|) (2N)^max(0, 1 - Re s), valid once
        N >= max(1, 2|a|, |Im a| + 1, (1 - Re s)/pi)."""
        wp = 64
        pi_b = const_pi(wp)
        a_hi = self.a.mag_upper()
        ima_hi = self.a.im.mag_upper()
        q_hi = RealBall.from_int(1).sub(self.s.re, wp).upper()
        n_mpf = from_int(N)
        floors = [fone,
                  mpf_shift(a_hi, 1),
                  mpf_add(ima_hi, fone, 60, 'c'),
                  mag_div(mag_of(q_hi), pi_b.lower()) if q_hi[0] == 0
                  and q_hi != fzero else fzero]
        for fl in floors:
            if not mpf_ge(n_mpf, fl):
                raise ValueError("tail bound invalid: N below validity floor")
        base = mag_div(mag_of(from_int(8)), pi_b.lower())
        decay = pi_b.mul_int(2 * N, wp).neg()
        osc = pi_b.mul(RealBall(self.s.im.mag_upper()), wp).mul_2exp(-1)
        E = _exp_mag(decay.add(osc, wp).upper())
        if q_hi[0] == 0 and q_hi != fzero:
            lg2n = RealBall.from_int(2 * N).log(wp)
            F = _exp_mag(mag_mul(mag_of(q_hi), lg2n.mag_upper()))
        else:
            F = fone
        return mag_mul(mag_mul(base, E), F)

"""Validated adaptive Gauss-Legendre quadrature for analytic integrands.

Rules are generated once per (degree, precision bucket): nodes are found by
float Newton iteration with precision doubling, then each is certified by a
single interval-Newton contraction step in ball arithmetic, so every node
and weight is a ball rigorously containing the true value.

A segment integral is enclosed adaptively. On each dyadic subinterval the
integrator first tries the trivial length-times-set-enclosure bound; if too
wide, it looks for the cheapest usable a priori error bound over a ladder of
Bernstein ellipse parameters rho, using sup|f| on an axis-aligned rectangle
covering the ellipse; if no (rho, degree) pair within the degree cap meets
the local tolerance, the interval is bisected. Local tolerances are drawn
from a geometrically decaying budget so the total radius provably stays
below twice the requested tolerance no matter how many leaves are used.
Failure to converge within the depth/evaluation limits is reported by a
flag; the returned enclosure is then wide but still sound.
"""

from __future__ import annotations

import math
from functools import lru_cache

from mpmath.libmp import (
    fone,
    from_float,
    from_int,
    from_man_exp,
    fzero,
    mpf_add,
    mpf_div,
    mpf_gt,
    mpf_le,
    mpf_lt,
    mpf_mul,
    mpf_mul_int,
    mpf_shift,
    mpf_sub,
)

from .ball import (
    ComplexBall,
    RealBall,
    mag_add,
    mag_div,
    mag_mul,
    mag_of,
)


class SetBoundUnavailable(Exception):
    """The set evaluation cannot bound |f| on this rectangle (pole inside,
    branch contact, ...). The integrator reacts by shrinking or bisecting."""


RHO_LADDER = (2.0, 4.0, 8.0, 16.0)


# -- rule generation ---------------------------------------------------------

def _legendre_float(x: float, d: int):
    """(P_d(x), P'_d(x)) in double precision."""
    p0, p1 = 1.0, x
    for k in range(1, d):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    if d == 0:
        return 1.0, 0.0
    if x * x == 1.0:
        return p1, 0.0
    dp = d * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def _legendre_mid(x, d: int, prec: int):
    """(P_d, P'_d) on raw mpf midpoints, nearest rounding."""
    p0, p1 = fone, x
    for k in range(1, d):
        t = mpf_mul_int(mpf_mul(x, p1, prec, 'n'), 2 * k + 1, prec, 'n')
        t = mpf_sub(t, mpf_mul_int(p0, k, prec, 'n'), prec, 'n')
        p0, p1 = p1, mpf_div(t, from_int(k + 1), prec, 'n')
    num = mpf_mul_int(mpf_sub(mpf_mul(x, p1, prec, 'n'), p0, prec, 'n'), d,
                      prec, 'n')
    den = mpf_sub(mpf_mul(x, x, prec, 'n'), fone, prec, 'n')
    return p1, mpf_div(num, den, prec, 'n')


def _legendre_pair_ball(x: RealBall, d: int, prec: int):
    """(P_d(x), P'_d(x)) as balls; x is an exact point or a very thin ball.

    The forward recurrence amplifies input/rounding perturbations by about
    2^(1.3 d), so callers must pass prec inflated by _amp_bits(d); wide
    interval arguments would come back uselessly fat and are not supported
    here (interval enclosures of P' use _dp_near instead).
    """
    p0, p1 = RealBall.from_int(1), x
    for k in range(1, d):
        t = x.mul(p1, prec).mul_int(2 * k + 1, prec)
        t = t.sub(p0.mul_int(k, prec), prec)
        p0, p1 = p1, t.div(RealBall.from_int(k + 1), prec)
    if d == 0:
        return p0, RealBall.from_int(0)
    num = x.mul(p1, prec).sub(p0, prec).mul_int(d, prec)
    den = x.mul(x, prec).sub(RealBall.from_int(1), prec)
    return p1, num.div(den, prec)


def _amp_bits(d: int) -> int:
    return (13 * d) // 10 + 30


def _markov_second(d: int) -> int:
    # |P_d''| <= d^2 (d^2 - 1) / 3 on [-1,1] (Markov brothers' inequality,
    # with |P_d| <= 1 there)
    return d * d * (d * d - 1) // 3 + 1


def _dp_near(xt, rad_mag, d: int, prec: int) -> RealBall:
    """Enclosure of P'_d over the interval xt +/- rad_mag via the Taylor
    form P'(x) in P'(xt) +/- |P''|_sup * rad."""
    _, dp = _legendre_pair_ball(RealBall(xt), d, prec)
    from mpmath.libmp import from_int as _fi
    return dp.add_error(mag_mul(rad_mag, mag_of(_fi(_markov_second(d)))))


def _refine_root(x0: float, d: int, target_bits: int, amp: int):
    """Newton with precision doubling; returns a raw mpf near the root."""
    x = x0
    for _ in range(40):
        p, dp = _legendre_float(x, d)
        step = p / dp
        x -= step
        if abs(step) < 1e-13:
            break
    xt = from_float(x)
    acc = 40
    while acc < target_bits:
        acc = min(2 * acc, target_bits)
        prec = acc + amp
        p, dp = _legendre_mid(xt, d, prec)
        xt = mpf_sub(xt, mpf_div(p, dp, prec, 'n'), prec, 'n')
    return xt


def _certify_root(xt, d: int, gen_prec: int, eval_prec: int) -> RealBall:
    """One interval-Newton contraction proves a unique root in the result."""
    r = from_man_exp(1, -gen_prec + 6)
    for _ in range(6):
        dpX = _dp_near(xt, r, d, eval_prec)
        if not dpX.contains_zero():
            pm, _ = _legendre_pair_ball(RealBall(xt), d, eval_prec)
            N = RealBall(xt).sub(pm.div(dpX, eval_prec), eval_prec)
            X = RealBall(xt, r)
            if X.contains(N) and mpf_lt(N.rad, r):
                return N
            if N.rad[1] != 0:
                r = mpf_shift(N.rad, 8)
                continue
        r = mpf_shift(r, 16)
    raise RuntimeError("node certification failed (degree %d)" % d)


@lru_cache(maxsize=None)
def gauss_legendre_rule(degree: int, gen_prec: int):
    """Certified nodes/weights on [-1,1]; only the x >= 0 half is stored."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    amp = _amp_bits(degree)
    eval_prec = gen_prec + amp + 40
    half = []

    def weight_at(node: RealBall) -> RealBall:
        dp = _dp_near(node.mid, node.rad, degree, eval_prec)
        one_minus = RealBall.from_int(1).sub(
            node.mul(node, eval_prec), eval_prec)
        return RealBall.from_int(2).div(
            one_minus.mul(dp.mul(dp, eval_prec), eval_prec), eval_prec)

    for i in range(degree // 2):
        guess = math.cos(math.pi * (4 * i + 3) / (4 * degree + 2))
        xt = _refine_root(guess, degree, gen_prec + 20, amp)
        node = _certify_root(xt, degree, gen_prec, eval_prec)
        half.append((node, weight_at(node)))
    if degree % 2:
        zero = RealBall.from_int(0)
        half.append((zero, weight_at(zero)))
    return tuple(half)


def rule_points(degree: int, gen_prec: int):
    """Full node/weight list, symmetric pairs expanded."""
    out = []
    for node, w in gauss_legendre_rule(degree, gen_prec):
        out.append((node, w))
        if not (node.mid == fzero and node.rad == fzero):
            out.append((node.neg(), w))
    return out


def _rule_prec_bucket(prec: int) -> int:
    return max(64, ((prec + 40 + 63) // 64) * 64)


# -- adaptive integration -----------------------------------------------------

class QuadResult:
    __slots__ = ("value", "evaluations", "max_depth", "converged", "leaves")

    def __init__(self, value, evaluations, max_depth, converged, leaves):
        self.value = value
        self.evaluations = evaluations
        self.max_depth = max_depth
        self.converged = converged
        self.leaves = leaves

    def __repr__(self):
        return ("QuadResult(value=%r, evaluations=%d, max_depth=%d, "
                "converged=%s, leaves=%d)" % (self.value, self.evaluations,
                                              self.max_depth, self.converged,
                                              self.leaves))


class _Budget:
    """Geometrically decaying radius budget.

    Each leaf may spend at most 1/16 of the remaining budget, so the total
    spent never exceeds the initial 1.5x goal; the goal (and with it the
    budget) only ever grows as the integral's magnitude becomes known,
    which keeps every earlier spending decision valid.
    """

    def __init__(self, abs_tol, rel_bits: int):
        self.goal = abs_tol
        self.rel_bits = rel_bits
        self.remaining = mag_mul(abs_tol, _THREE_HALVES)

    def observe_magnitude(self, mag):
        cand = mag_mul(mag, from_man_exp(1, -self.rel_bits))
        if mpf_gt(cand, self.goal):
            grow = mag_mul(_mag_sub_floor(cand, self.goal), _THREE_HALVES)
            self.goal = cand
            self.remaining = mag_add(self.remaining, grow)

    def leaf_tol(self):
        return mpf_shift(self.remaining, -4)

    def spend(self, r):
        d = mpf_sub(self.remaining, r, 30, 'd')
        if d == fzero or d[0] == 1 or d[1] == 0:
            # spends respect leaf_tol, so this is unreachable; keep a floor
            d = mag_mul(self.goal, from_man_exp(1, -20))
        self.remaining = d


_THREE_HALVES = from_man_exp(3, -1)
_C_PETRAS = 64.0 / 15.0


def _mag_sub_floor(a, b):
    d = mpf_sub(a, b, 30, 'd')
    return fzero if (d[1] != 0 and d[0] == 1) else d


def _dyadic_mid(u, v):
    return mpf_shift(mpf_add(u, v, 0, 'n'), -1)


def _width(u, v):
    return mpf_sub(v, u, 0, 'n')


def _ellipse_pads(direction: str, hlen, rho: float):
    """Half-widths (pad_re, pad_im) of the axis-aligned cover of the
    Bernstein rho-ellipse around a subsegment of z-half-length hlen."""
    alpha = from_float((rho + 1.0 / rho) / 2.0)
    beta = from_float((rho - 1.0 / rho) / 2.0)
    if direction == 'h':
        return mag_mul(hlen, alpha), mag_mul(hlen, beta)
    if direction == 'v':
        return mag_mul(hlen, beta), mag_mul(hlen, alpha)
    return mag_mul(hlen, alpha), mag_mul(hlen, alpha)


def _pow2_mag_floor(rho: float, k: int):
    """Exact rho^k for rho a power of two (the whole ladder is)."""
    e = int(round(math.log2(rho)))
    assert 2.0 ** e == rho
    return from_man_exp(1, e * k)


def integrate_segment(integrand, z0: ComplexBall, z1: ComplexBall,
                      abs_tol, prec: int, rel_bits: int | None = None,
                      degree_cap: int | None = None,
                      max_depth: int = 4000,
                      max_evals: int = 10_000_000) -> QuadResult:
    """Enclose the contour integral of `integrand` along the segment z0..z1.

    integrand.point(z: ComplexBall, prec) -> ComplexBall enclosure of f(z);
    integrand.bound(rect: ComplexBall, prec) -> mpf magnitude upper bound of
    |f| over the rectangle, raising SetBoundUnavailable when analyticity
    cannot be certified there. abs_tol is an mpf magnitude. On a converged
    run the result radius is below 2 * max(abs_tol, 2^-rel_bits |integral|).
    """
    if rel_bits is None:
        rel_bits = prec
    if degree_cap is None:
        degree_cap = prec // 2 + 10
    gen_prec = _rule_prec_bucket(prec)
    acc_prec = prec + 30
    delta = z1.sub(z0, acc_prec)
    seg_len = delta.mag_upper()
    if seg_len == fzero:
        return QuadResult(ComplexBall.from_int(0), 0, 0, True, 0)
    if delta.im.mid == fzero and delta.im.rad == fzero:
        direction = 'h'
    elif delta.re.mid == fzero and delta.re.rad == fzero:
        direction = 'v'
    else:
        direction = 'g'
    budget = _Budget(abs_tol, rel_bits)

    def z_at(t) -> ComplexBall:
        return z0.add(delta.mul_real(RealBall(t), prec), prec)

    def piece_rect(u, v, pads=None) -> ComplexBall:
        zu, zv = z_at(u), z_at(v)
        re = zu.re.union(zv.re)
        im = zu.im.union(zv.im)
        if pads is not None:
            re = re.add_error(pads[0])
            im = im.add_error(pads[1])
        return ComplexBall(re, im)

    total = ComplexBall.from_int(0)
    evals = 0
    deepest = 0
    leaves = 0
    converged = True

    stack = [(fzero, fone, 0)]
    while stack:
        u, v, depth = stack.pop()
        deepest = max(deepest, depth)
        width = _width(u, v)
        piece_len = mag_mul(mag_of(width), seg_len)
        tol = budget.leaf_tol()

        # 1. direct set enclosure: 0 +/- |piece| sup|f|
        try:
            direct_mag = integrand.bound(piece_rect(u, v), prec)
        except SetBoundUnavailable:
            direct_mag = None
        if direct_mag is not None:
            direct_rad = mag_mul(piece_len, direct_mag)
            if mpf_le(direct_rad, tol):
                total = total.add_error(direct_rad)
                budget.observe_magnitude(total.mag_upper())
                budget.spend(direct_rad)
                leaves += 1
                continue

        # 2. cheapest workable (rho, degree) from the a priori bound
        best = None
        if evals < max_evals and depth < max_depth:
            hlen = mpf_shift(piece_len, -1)
            for rho in RHO_LADDER:
                try:
                    V = integrand.bound(
                        piece_rect(u, v, _ellipse_pads(direction, hlen, rho)),
                        prec)
                except SetBoundUnavailable:
                    break  # larger ellipses only get worse
                # need rho^(2d-2) >= C V piece_len / ((rho^2-1) tol)
                need = mag_div(mag_mul(mag_mul(V, piece_len),
                                       from_float(_C_PETRAS)),
                               mag_mul(from_float(rho * rho - 1.0), tol))
                if need[1] == 0 or need[0] == 1 or need[2] + need[3] <= 0:
                    d = 1
                else:
                    d = int((need[2] + need[3]) / (2.0 * math.log2(rho))) + 2
                d_pow = 1 << max(0, (d - 1).bit_length())
                if d_pow > degree_cap:
                    continue
                if best is None or d_pow < best[0]:
                    best = (d_pow, rho, V)
            if best is not None:
                d_pow, rho, V = best
                err = mag_div(
                    mag_mul(mag_mul(V, piece_len), from_float(_C_PETRAS)),
                    mag_mul(from_float(rho * rho - 1.0),
                            _pow2_mag_floor(rho, 2 * d_pow - 2)))
                if mpf_le(err, tol):
                    # run the sum precisely enough that its rounding radius
                    # is negligible against tol even under cancellation
                    vlen = mag_mul(V, piece_len)
                    cancel = (vlen[2] + vlen[3]) - (tol[2] + tol[3]) \
                        if (vlen[1] and tol[1]) else 0
                    sp = max(acc_prec, cancel + d_pow.bit_length() + 12)
                    acc = ComplexBall.from_int(0)
                    c = _dyadic_mid(u, v)
                    hw = RealBall(_width(u, c))
                    for node, w in rule_points(d_pow, gen_prec):
                        t = RealBall(c).add(node.mul(hw, sp), sp)
                        zt = z0.add(delta.mul_real(t, sp), sp)
                        acc = acc.add(integrand.point(zt, sp).mul_real(w, sp),
                                      sp)
                        evals += 1
                    piece = acc.mul_real(hw, sp).mul(delta, sp)
                    piece = piece.add_error(err)
                    total = total.add(piece, acc_prec)
                    budget.observe_magnitude(total.mag_upper())
                    budget.spend(mag_add(piece.re.rad, piece.im.rad))
                    leaves += 1
                    continue

        # 3. bisect, or close out soundly when out of allowance
        if depth >= max_depth or evals >= max_evals:
            converged = False
            if direct_mag is not None:
                total = total.add_error(mag_mul(piece_len, direct_mag))
                leaves += 1
                continue
            total = ComplexBall.indeterminate()
            break
        m = _dyadic_mid(u, v)
        stack.append((m, v, depth + 1))
        stack.append((u, m, depth + 1))

    return QuadResult(total, evals, deepest, converged, leaves)

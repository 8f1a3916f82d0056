"""Saddle location, truncation point, and contour plans for the half-line
integral.

For large n the integrand exp(g) h peaks sharply at the stationary point of
g, where g'(z) = i (n+1) / (t log t) - 2 pi vanishes for t = a + i z.  With
u = (n+1) i / (2 pi) the stationary t solves t log t = u, i.e.
t0 = u / W0(u), and the saddle sits at omega = i (a - t0) in the lower half
plane.  The solver below uses a library Lambert-W evaluation only as a
*guess*; what the rest of the pipeline relies on is the certificate
|(n+1) + 2 pi i t0 log t0| <= 2^(-bits/2) (n+1), checked in ball
arithmetic, with bits = max(53, 2 ceil(log2(n+2))).  Nothing downstream
needs the saddle to be exact: it steers contour placement and the error
budget scale while the enclosure's correctness rests on the quadrature and
tail bounds alone.

Contours (all corners exact dyadic numbers):
  unshifted   0 -> N                                  (n <= 1000)
  shifted     0 -> M -> M + iC -> N + iC -> N         (n > 1000)
with C ~ Im omega < 0, M clipped to [1, 10] left of the saddle, and N the
doubling point where the analytic tail bound drops below 2^-(p+20).
"""

from __future__ import annotations

import math

from mpmath import mp
from mpmath.libmp import (
    from_int,
    from_man_exp,
    fzero,
    mpf_le,
    mpf_lt,
    mpf_pos,
    mpf_shift,
    to_int,
)

from .ball import ComplexBall, RealBall, const_pi
from .integrand import GammaIntegrand


class SaddleInfo:
    """Certified near-stationary point of g."""

    __slots__ = ("t0", "omega", "bits", "residual", "wp")

    def __init__(self, t0, omega, bits, residual, wp):
        self.t0 = t0
        self.omega = omega
        self.bits = bits
        self.residual = residual
        self.wp = wp


def certify_saddle(n: int, a: ComplexBall, max_tries: int = 6) -> SaddleInfo:
    """Solve t log t = (n+1) i / (2 pi), certify the residual, and return
    the saddle omega = i (a - t0)."""
    if n < 1:
        raise ValueError("saddle only used for n >= 1")
    bits = max(53, 2 * ((n + 1).bit_length()))
    thr = mpf_shift(from_int(n + 1), -(bits // 2))
    wp = bits + 40
    for _ in range(max_tries):
        old = mp.prec
        try:
            mp.prec = wp
            u = mp.mpc(0, n + 1) / (2 * mp.pi)
            t0_mp = u / mp.lambertw(u)
        finally:
            mp.prec = old
        t0 = ComplexBall(RealBall(t0_mp.real._mpf_),
                         RealBall(t0_mp.imag._mpf_))
        two_pi = const_pi(wp).mul_2exp(1)
        prod = t0.mul(t0.log(wp), wp).mul_i().mul_real(two_pi, wp)
        resid = ComplexBall.from_int(n + 1).add(prod, wp)
        r_hi = resid.mag_upper()
        if mpf_le(r_hi, thr):
            omega = a.sub(t0, wp).mul_i()
            return SaddleInfo(t0, omega, bits, r_hi, wp)
        wp *= 2
    raise RuntimeError("saddle residual certificate failed for n=%d" % n)


def truncation_start(n: int, a: ComplexBall,
                     saddle: SaddleInfo | None) -> int:
    """Smallest admissible truncation point: the tail bound's validity
    floor n + 2 + |Im a|, pushed right of the saddle region when shifted."""
    im_hi = a.im.mag_upper()
    extra = to_int(im_hi, 'c') if im_hi != fzero else 0
    N0 = n + 2 + max(0, extra)
    if saddle is not None:
        re_om = saddle.omega.re.upper()
        floor2 = to_int(re_om, 'c') + math.isqrt(max(n, 0)) + 10
        N0 = max(N0, floor2)
    return N0


def choose_N(integrand: GammaIntegrand, p: int, N0: int) -> int:
    """Double N from N0 until the analytic tail bound is below 2^-(p+20)."""
    thr = from_man_exp(1, -(p + 20))
    N = N0
    for _ in range(10 ** 5):
        if mpf_le(integrand.tail_bound(N), thr):
            return N
        N *= 2
    raise RuntimeError("tail bound did not drop below threshold")


class ContourPlan:
    __slots__ = ("segments", "N", "M", "C", "shifted", "saddle")

    def __init__(self, segments, N, M, C, shifted, saddle):
        self.segments = segments
        self.N = N
        self.M = M
        self.C = C
        self.shifted = shifted
        self.saddle = saddle


SHIFT_THRESHOLD = 1000


def build_contour(n: int, a: ComplexBall, p: int,
                  force_shift: bool | None = None) -> ContourPlan:
    """Contour plan for integrating f from 0 to +infinity at target
    precision p bits; shifts through the lower half plane when the saddle
    matters (n > 1000, or as forced for seam testing)."""
    integrand = GammaIntegrand(n, a)
    shifted = (n > SHIFT_THRESHOLD) if force_shift is None else force_shift
    if not shifted:
        N = choose_N(integrand, p, truncation_start(n, a, None))
        z0 = ComplexBall.from_int(0)
        zN = ComplexBall.from_int(N)
        return ContourPlan([(z0, zN)], N, None, None, False, None)

    saddle = certify_saddle(n, a)
    if not saddle.omega.im.is_negative():
        raise RuntimeError("saddle unexpectedly not below the real axis")
    re_om = saddle.omega.re.mid
    if mpf_le(from_int(20), re_om):
        M = 10
    else:
        M = max(1, min(10, to_int(mpf_shift(re_om, -1))))
    # C must stay within the saddle's transverse width ~ |t0|/sqrt(n) of
    # Im omega, else the leg runs up the ascent direction and its sup blows
    # past exp(Re g(omega)); a fixed 53-bit rounding drifts ~|C| 2^-53.
    C = mpf_pos(saddle.omega.im.mid, 53 + (n + 1).bit_length(), 'n')
    N = choose_N(integrand, p, truncation_start(n, a, saddle))
    zM = ComplexBall.from_int(M)
    zMC = ComplexBall(RealBall.from_int(M), RealBall(C))
    zNC = ComplexBall(RealBall.from_int(N), RealBall(C))
    zN = ComplexBall.from_int(N)
    segments = [(ComplexBall.from_int(0), zM), (zM, zMC), (zMC, zNC),
                (zNC, zN)]
    return ContourPlan(segments, N, M, C, True, saddle)

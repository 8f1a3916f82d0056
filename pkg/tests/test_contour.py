"""Tests for saddle certification, truncation selection, and contour plans."""

import math

import pytest
from mpmath import mp
from mpmath.libmp import from_int, fzero, mpf_le, mpf_shift, to_float, to_int

from stieltjes.ball import ComplexBall, RealBall
from stieltjes.contour import (
    ContourPlan,
    build_contour,
    certify_saddle,
    choose_N,
    truncation_start,
)
from stieltjes.integrand import GammaIntegrand

from test_integrand import cball


class TestSaddle:
    @pytest.mark.parametrize("n", [1001, 10 ** 6, 10 ** 10, 10 ** 30,
                                   10 ** 100])
    def test_residual_certified(self, n):
        s = certify_saddle(n, cball(0.5))
        thr = mpf_shift(from_int(n + 1), -(s.bits // 2))
        assert mpf_le(s.residual, thr)
        assert s.omega.im.is_negative()
        assert s.omega.re.is_positive()

    def test_matches_lambertw_structure(self):
        # t0 log t0 = (n+1) i / (2 pi) within certificate accuracy
        n = 5000
        s = certify_saddle(n, cball(0.5))
        with mp.workdps(40):
            t0 = mp.make_mpc((s.t0.re.mid, s.t0.im.mid))
            lhs = t0 * mp.log(t0)
            rhs = mp.mpc(0, n + 1) / (2 * mp.pi)
            assert abs(lhs - rhs) < abs(rhs) * 1e-12

    def test_complex_a_shifts_omega(self):
        n = 2000
        s_real = certify_saddle(n, cball(0.5))
        s_cplx = certify_saddle(n, cball(0.5, 3.0))
        # omega = i(a - t0): Im a enters Re omega
        d = s_cplx.omega.re.sub(s_real.omega.re, 64)
        assert d.contains(-3)

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            certify_saddle(0, cball(0.5))


class TestChooseN:
    def test_documented_case(self):
        gi = GammaIntegrand(0, cball(0.5))
        assert choose_N(gi, 64, truncation_start(0, cball(0.5), None)) == 16

    def test_higher_precision_case(self):
        gi = GammaIntegrand(0, cball(0.5))
        assert choose_N(gi, 256, 2) == 32

    def test_threshold_met(self):
        for n, p in [(0, 64), (3, 128), (40, 200)]:
            gi = GammaIntegrand(n, cball(0.5))
            N = choose_N(gi, p, truncation_start(n, cball(0.5), None))
            assert mpf_le(gi.tail_bound(N), (0, 1, -(p + 20), 1))

    def test_imaginary_a_raises_floor(self):
        a = cball(0.5, 7.25)
        assert truncation_start(3, a, None) == 3 + 2 + 8


class TestContourPlan:
    def test_unshifted_small_n(self):
        plan = build_contour(5, cball(0.5), 64)
        assert not plan.shifted
        assert len(plan.segments) == 1
        z0, z1 = plan.segments[0]
        assert z0.contains(0) and z0.re.rad == fzero
        assert z1.re.mid == from_int(plan.N)
        assert plan.N >= 7

    def test_shifted_plan_structure(self):
        plan = build_contour(2000, cball(0.5), 64)
        assert plan.shifted
        assert len(plan.segments) == 4
        # corners connect exactly
        for (a0, a1), (b0, b1) in zip(plan.segments, plan.segments[1:]):
            assert a1.re.mid == b0.re.mid and a1.im.mid == b0.im.mid
            assert a1.re.rad == fzero and a1.im.rad == fzero
        # starts on the real axis at 0, ends on the real axis at N
        first, last = plan.segments[0], plan.segments[-1]
        assert first[0].re.mid == fzero and first[0].im.mid == fzero
        assert last[1].im.mid == fzero
        assert last[1].re.mid == from_int(plan.N)
        # shift goes downward
        assert plan.C[0] == 1  # negative mpf sign bit
        assert plan.M == 10
        sad = plan.saddle
        assert plan.N >= to_int(sad.omega.re.upper(), 'c') \
            + math.isqrt(2000) + 10

    def test_forced_shift_small_n(self):
        plan = build_contour(50, cball(0.5), 64, force_shift=True)
        assert plan.shifted and len(plan.segments) == 4
        plan2 = build_contour(50, cball(0.5), 64, force_shift=False)
        assert not plan2.shifted

    def test_astronomical_n_plan(self):
        n = 10 ** 100
        plan = build_contour(n, cball(0.5), 150)
        assert plan.shifted
        assert plan.N == n + 2  # tail already far below threshold
        c = plan.C
        assert c[0] == 1
        # |C| ~ (n+1)/(2 pi |log t0|) * sin(arg offset) ~ 5e94
        mag = c[2] + c[3]  # binary exponent
        assert 305 <= mag <= 325

    def test_m_clipping_rule(self):
        # moderately sized n keeps Re omega >= 20 -> M = 10
        for n in [1500, 10 ** 5]:
            plan = build_contour(n, cball(0.5), 64)
            assert 1 <= plan.M <= 10

import pytest
from mpmath import mp
from mpmath.libmp import from_man_exp, fzero, mpf_le, mpf_shift

from stieltjes.ball import ComplexBall, RealBall
from stieltjes.quadrature import (
    QuadResult,
    SetBoundUnavailable,
    gauss_legendre_rule,
    integrate_segment,
    rule_points,
)

import quadcorpus


class TestRules:
    def test_degree_one_is_midpoint_rule(self):
        ((node, w),) = gauss_legendre_rule(1, 64)
        assert node.mid == fzero and node.rad == fzero
        assert w.contains(2)

    def test_degree_two_nodes(self):
        mp.prec = 200
        pts = rule_points(2, 64)
        assert len(pts) == 2
        vals = sorted(mp.make_mpf(n.mid) for n, _ in pts)
        x = 1 / mp.sqrt(3)
        assert pts[0][0].abs().contains(x)
        assert vals[0] < 0 < vals[1]
        for _, w in pts:
            assert w.contains(1)

    @pytest.mark.parametrize("degree", [4, 16, 64])
    def test_weights_sum_to_two(self, degree):
        pts = rule_points(degree, 128)
        s = RealBall.from_int(0)
        for _, w in pts:
            s = s.add(w, 200)
        assert s.contains(2)
        assert len(pts) == degree

    @pytest.mark.parametrize("degree", [4, 16, 64])
    def test_moments_exact_up_to_2d_minus_1(self, degree):
        mp.prec = 300
        pts = rule_points(degree, 128)
        for j in range(0, 2 * degree, max(1, degree // 3)):
            s = RealBall.from_int(0)
            for node, w in pts:
                s = s.add(w.mul(node.pow_int(j, 200), 200), 200)
            expect = mp.mpf(0) if j % 2 else mp.mpf(2) / (j + 1)
            assert s.contains(expect), (degree, j)

    def test_nodes_strictly_inside_and_sorted_radii_tiny(self):
        for node, w in gauss_legendre_rule(32, 128):
            assert node.rad[1] == 0 or node.rad[2] + node.rad[3] < -120
            assert w.rad[1] == 0 or w.rad[2] + w.rad[3] < -110
            mp.prec = 60
            assert abs(mp.make_mpf(node.mid)) < 1

    def test_rule_cache_returns_same_object(self):
        a = gauss_legendre_rule(8, 128)
        b = gauss_legendre_rule(8, 128)
        assert a is b


def _tol(p):
    return from_man_exp(1, -p)


@pytest.mark.parametrize("prec", [64, 256, 1024])
@pytest.mark.parametrize("case", quadcorpus.corpus(), ids=lambda c: c[0])
def test_corpus_enclosures(case, prec):
    name, f, z0, z1, ref = case
    res = integrate_segment(f, z0, z1, _tol(prec), prec)
    assert res.converged, name
    val = ref(prec)
    assert res.value.contains(val), (name, prec)
    # radius within the structural budget: 2 * max(tol, 2^-p |I|)
    m = res.value.mag_upper()
    goal_bits = -prec + (m[2] + m[3] if m != fzero else 0)
    lim = from_man_exp(1, max(-prec, goal_bits) + 2)
    assert mpf_le(res.value.re.rad, lim) and mpf_le(res.value.im.rad, lim), name


def test_determinism():
    name, f, z0, z1, ref = quadcorpus.corpus()[4]
    r1 = integrate_segment(f, z0, z1, _tol(128), 128)
    r2 = integrate_segment(f, z0, z1, _tol(128), 128)
    assert r1.value.re.mid == r2.value.re.mid
    assert r1.value.re.rad == r2.value.re.rad
    assert r1.evaluations == r2.evaluations
    assert r1.leaves == r2.leaves


def test_complex_segments_of_exp():
    f = quadcorpus.Exponential()
    mp.prec = 140
    # vertical: 0 -> i
    res = integrate_segment(f, ComplexBall.from_int(0),
                            ComplexBall(RealBall.from_int(0), RealBall.from_int(1)),
                            _tol(100), 100)
    assert res.converged
    assert res.value.contains(mp.exp(mp.mpc(0, 1)) - 1)
    # horizontal at height i: i -> 1+i
    res = integrate_segment(f,
                            ComplexBall(RealBall.from_int(0), RealBall.from_int(1)),
                            ComplexBall(RealBall.from_int(1), RealBall.from_int(1)),
                            _tol(100), 100)
    assert res.converged
    assert res.value.contains(mp.exp(mp.mpc(1, 1)) - mp.exp(mp.mpc(0, 1)))


def test_zero_length_segment():
    f = quadcorpus.Exponential()
    res = integrate_segment(f, ComplexBall.from_int(2), ComplexBall.from_int(2),
                            _tol(64), 64)
    assert res.converged and res.evaluations == 0
    assert res.value.contains(0)
    assert res.value.re.rad == fzero


class PoleOnPath:
    """1/z: genuinely singular at the midpoint of [-1, 1]."""

    def point(self, z, prec):
        return ComplexBall.from_int(1).div(z, prec)

    def bound(self, rect, prec):
        lo = rect.mag_lower()
        if lo == fzero:
            raise SetBoundUnavailable
        from stieltjes.ball import mag_div
        from mpmath.libmp import fone
        return mag_div(fone, lo)


def test_nonconvergence_is_flagged_not_hidden():
    f = PoleOnPath()
    res = integrate_segment(f, ComplexBall.from_int(-1), ComplexBall.from_int(1),
                            _tol(64), 64, max_depth=12)
    assert not res.converged
    # sound but useless-wide output, never a confident lie
    assert res.value.is_indeterminate() or \
        res.value.re.rad[2] + res.value.re.rad[3] > -4


def test_budget_respected_with_many_leaves():
    f = quadcorpus.Oscillatory()
    z1 = ComplexBall.from_int(8)
    res = integrate_segment(f, ComplexBall.from_int(0), z1, _tol(64), 64,
                            degree_cap=16)
    assert res.converged
    assert res.leaves > 4
    mp.prec = 120
    assert res.value.contains(mp.sin(160) / 20)
    lim = from_man_exp(1, -64 + 2)
    assert mpf_le(res.value.re.rad, lim)


def test_eval_cap_closes_out_soundly():
    f = quadcorpus.Oscillatory()
    res = integrate_segment(f, ComplexBall.from_int(0), ComplexBall.from_int(8),
                            _tol(256), 256, degree_cap=8, max_evals=40)
    assert not res.converged
    mp.prec = 300
    assert res.value.is_indeterminate() or res.value.contains(mp.sin(160) / 20)

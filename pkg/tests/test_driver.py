"""Driver tests: enclosures of gamma_n(v) and zeta(s,v) against independent
oracles, the spec's algebraic invariants (recurrence, conjugation,
refinement, contour seam), and domain-error handling."""

import json
import math
from fractions import Fraction

import pytest
from mpmath import mp
from mpmath.libmp import from_int, fzero

import stieltjes.driver as drv
from stieltjes.ball import BallDomainError, ComplexBall, RealBall
from stieltjes.driver import (
    StieltjesRequest,
    as_complex_ball,
    half_line_integral,
    hurwitz_zeta,
    hurwitz_zeta_full,
    normalize_v,
    stieltjes,
    stieltjes_gamma,
    stieltjes_gamma_full,
)


def mp_ball(z) -> ComplexBall:
    """Thin ball holding an mpmath number's exact internal value."""
    z = mp.mpmathify(z)
    if hasattr(z, "_mpc_"):
        re, im = z._mpc_
        return ComplexBall(RealBall(re), RealBall(im))
    return ComplexBall(RealBall(z._mpf_), RealBall.from_int(0))


def assert_encloses(ball: ComplexBall, ref, dps: int) -> None:
    """The ball must meet the reference, padded by the oracle's own error."""
    zref = mp.mpmathify(ref)
    slack = (mp.mpf(10) ** (5 - dps)) * (abs(zref) + 1)
    padded = mp_ball(zref).add_error(slack._mpf_)
    assert ball.overlaps(padded), "%r does not meet reference %s" % (ball, zref)


def mids_agree(b1: ComplexBall, b2: ComplexBall, bits: int) -> bool:
    d = ComplexBall(RealBall(b1.re.mid), RealBall(b1.im.mid)).sub(
        ComplexBall(RealBall(b2.re.mid), RealBall(b2.im.mid)), 300)
    scale = ComplexBall(RealBall(b2.re.mid), RealBall(b2.im.mid))
    from mpmath.libmp import mpf_le, mpf_shift
    return mpf_le(d.mag_upper(), mpf_shift(scale.mag_lower(), -bits))


def thin(x, y=0.0) -> ComplexBall:
    return ComplexBall(RealBall.from_float(float(x)),
                       RealBall.from_float(float(y)))


def gval(n, v=1, p=96, **kw) -> ComplexBall:
    return stieltjes_gamma_full(n, v, p, **kw).value


class TestCoercion:
    def test_int_exact(self):
        b = as_complex_ball(3, 64)
        assert b.re.mid == from_int(3) and b.re.rad == fzero
        assert b.im.is_zero()

    def test_float_exact(self):
        b = as_complex_ball(0.5, 64)
        assert b.re.is_exact() and b.im.is_zero()

    def test_fraction(self):
        b = as_complex_ball(Fraction(1, 3), 128)
        with mp.workdps(50):
            assert_encloses(b, mp.mpf(1) / 3, 50)

    def test_decimal_string(self):
        b = as_complex_ball("2.5", 64)
        assert b.re.contains(RealBall.from_float(2.5))

    def test_complex_and_pair(self):
        b = as_complex_ball(complex(1.5, -0.5), 64)
        assert b.re.mid == RealBall.from_float(1.5).mid
        assert b.im.mid == RealBall.from_float(-0.5).mid
        c = as_complex_ball(("1.25", Fraction(1, 2)), 96)
        assert c.re.contains(RealBall.from_float(1.25))
        assert c.im.contains(RealBall.from_float(0.5))

    def test_rejects_junk(self):
        with pytest.raises(TypeError):
            as_complex_ball(object(), 64)
        with pytest.raises(TypeError):
            as_complex_ball(True, 64)


class TestDomain:
    @pytest.mark.parametrize("v", [0, -3, -2.5, complex(-3, 0)])
    def test_bad_v(self, v):
        with pytest.raises(BallDomainError):
            stieltjes_gamma(0, v, 64)

    def test_request_validation(self):
        with pytest.raises(ValueError):
            StieltjesRequest(-1, 1, 64)
        with pytest.raises(ValueError):
            StieltjesRequest(0, 1, 7)
        with pytest.raises(ValueError):
            StieltjesRequest(1.5, 1, 64)

    def test_negative_real_part_complex_v_ok(self):
        # k = 4 shifts through logs of negative-real-part points; the
        # nonzero imaginary part keeps them off the branch cut.
        g = gval(0, complex(-2.5, 1.0), 96)
        with mp.workdps(40):
            assert_encloses(g, -mp.digamma(mp.mpc(-2.5, 1.0)), 40)


class TestNormalize:
    def test_already_normalized(self):
        a, corr, k = normalize_v(0, as_complex_ball(1, 64), 80)
        assert k == 0
        assert corr.contains(ComplexBall.from_int(0)) and corr.is_exact()
        assert a.re.mid == RealBall.from_float(0.5).mid

    def test_quarter_single_step(self):
        a, corr, k = normalize_v(0, as_complex_ball(Fraction(1, 4), 64), 80)
        assert k == 1
        assert corr.contains(ComplexBall.from_int(4))
        assert a.re.contains(RealBall.from_float(0.75))
        assert corr.im.is_zero()

    def test_quarter_cubed_log(self):
        a, corr, k = normalize_v(3, as_complex_ball(0.25, 64), 120)
        assert k == 1
        with mp.workdps(40):
            assert_encloses(corr, mp.log(mp.mpf("0.25")) ** 3 * 4, 40)

    def test_multi_step_count(self):
        _, _, k = normalize_v(0, as_complex_ball(-2.5 + 1j, 64), 120)
        assert k == 4

    def test_digamma_consistency(self):
        # gamma_0(2) = euler - 1 via the digamma identity
        g = gval(0, 2, 128)
        with mp.workdps(50):
            assert_encloses(g, mp.euler - 1, 50)


class TestHalfLine:
    def test_euler_from_integral(self):
        a = as_complex_ball(0.5, 64)
        I, diag = half_line_integral(0, a, 128)
        assert diag["converged"]
        from stieltjes.ball import const_pi
        val = I.re.mul(const_pi(160), 160).neg()
        with mp.workdps(50):
            ref = mp.euler
            slack = mp.mpf(10) ** -45
            assert val.contains(RealBall(ref._mpf_)) or \
                val.add_error(slack._mpf_).contains(RealBall(ref._mpf_))

    def test_against_direct_quadrature(self):
        # independent numerical integral of the same half-line integrand
        a = as_complex_ball(0.5, 64)
        I, _ = half_line_integral(3, a, 96)
        with mp.workdps(35):
            ref = mp.quad(
                lambda x: mp.log(mp.mpf(1) / 2 + 1j * x) ** 4
                / mp.cosh(mp.pi * x) ** 2, [0, mp.inf])
            assert_encloses(I, ref, 25)

    def test_reflection_pairing(self):
        # Schwarz reflection sends the ray [0, inf) to (-inf, 0], so the
        # assembled pair I(conj a) + conj(I(a)) equals the full-line
        # integral of the conj-a integrand; check against an independent
        # quadrature of both rays.
        a = as_complex_ball(complex(1.0, 0.25), 64)
        I1, _ = half_line_integral(3, a, 96)
        I2, _ = half_line_integral(3, a.conj(), 96)
        pair = I2.add(I1.conj(), 160)
        with mp.workdps(35):
            f = lambda x: (mp.log(mp.mpc(1, -0.25) + 1j * x) ** 4
                           / mp.cosh(mp.pi * x) ** 2)
            ref = mp.quad(f, [-mp.inf, 0]) + mp.quad(f, [0, mp.inf])
            assert_encloses(pair, ref, 25)

    def test_rel_accuracy_at_128(self):
        g = gval(0, 1, 128)
        assert g.rel_accuracy_bits() >= 120

    def test_unconverged_is_sound_and_flagged(self):
        a = as_complex_ball(0.5, 64)
        wide, diag = half_line_integral(0, a, 64, max_evals=8)
        assert not diag["converged"]
        good, diag2 = half_line_integral(0, a, 64)
        assert diag2["converged"]
        assert wide.overlaps(good)
        assert wide.contains(good)


class TestStieltjesValues:
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 5, 10, 20])
    def test_v1_against_library(self, n):
        g = gval(n, 1, 96)
        assert g.im.is_zero()
        with mp.workdps(40):
            assert_encloses(g, mp.stieltjes(n), 40)
        assert g.rel_accuracy_bits() >= 60

    @pytest.mark.parametrize("n,v", [(0, 2), (1, 2), (5, 1.5), (3, 0.25),
                                     (7, 0.75), (50, 0.1)])
    def test_real_v_against_library(self, n, v):
        g = gval(n, v, 96)
        assert g.im.is_zero()
        with mp.workdps(40):
            assert_encloses(g, mp.stieltjes(n, mp.mpf(v)), 40)

    def test_large_real_v(self):
        g = gval(0, 10 ** 6, 64)
        with mp.workdps(30):
            assert_encloses(g, -mp.digamma(10 ** 6), 30)

    @pytest.mark.parametrize("v", [complex(1, 1), complex(0.25, 0.5)])
    def test_complex_v_digamma(self, v):
        g = gval(0, v, 96)
        assert not g.im.is_zero()
        with mp.workdps(40):
            assert_encloses(g, -mp.digamma(mp.mpc(v)), 40)


class TestSpecInvariants:
    @pytest.mark.parametrize("n,v", [(0, 1.5), (5, 2.0), (10, complex(1, 1))])
    def test_recurrence(self, n, v):
        g1 = gval(n, v, 96)
        vs = complex(v) + 1
        g2 = gval(n, vs.real if vs.imag == 0 else vs, 96)
        diff = g1.sub(g2, 200)
        with mp.workdps(40):
            ref = mp.log(mp.mpmathify(v)) ** n / mp.mpmathify(v)
            assert_encloses(diff, ref, 40)

    def test_conjugation(self):
        v = complex(1, 0.5)
        g1 = gval(4, v, 96)
        g2 = gval(4, complex(1, -0.5), 96)
        assert g2.overlaps(g1.conj())
        assert mids_agree(g2, g1.conj(), 50)

    @pytest.mark.parametrize("n", [0, 1, 10, 100, 1000, 10 ** 6])
    def test_refinement(self, n):
        b64 = gval(n, 1, 64)
        b256 = gval(n, 1, 256)
        assert b64.overlaps(b256)
        assert mids_agree(b64, b256, 60)

    def test_contour_seam(self):
        r1 = stieltjes_gamma_full(1000, 1, 64, force_shift=False)
        r2 = stieltjes_gamma_full(1000, 1, 64, force_shift=True)
        assert r1.plan.shifted is False and r2.plan.shifted is True
        assert r1.value.overlaps(r2.value)
        assert mids_agree(r1.value, r2.value, 55)

    @pytest.mark.parametrize("n,v", [(3, 1.5), (3, 0.25)])
    def test_real_output_exactly_real(self, n, v):
        g = gval(n, v, 80)
        assert g.im.mid == fzero and g.im.rad == fzero


class TestWarningsAndMetadata:
    def test_cancellation_warning(self):
        # gamma_2(v) has a zero near v = 1.3577434227641781...; at the
        # nearest float the value is ~ -7.4e-18, far below the absolute
        # tolerance scale, so the relative accuracy collapses.
        vstar = 1.357743422764178
        r = stieltjes_gamma_full(2, vstar, 32)
        assert any("cancellation" in w for w in r.warnings)
        with mp.workdps(30):
            assert_encloses(r.value, mp.stieltjes(2, mp.mpf(vstar)), 30)

    def test_nonconvergence_warning(self, monkeypatch):
        orig = drv.integrate_segment

        def starved(*args, **kw):
            kw["max_evals"] = 4
            return orig(*args, **kw)

        monkeypatch.setattr(drv, "integrate_segment", starved)
        r = stieltjes_gamma_full(0, 1, 64)
        assert not r.converged
        assert any("tolerance not met" in w for w in r.warnings)
        with mp.workdps(20):
            assert_encloses(r.value, mp.euler, 20)

    def test_result_fields(self):
        r = stieltjes_gamma_full(5, 1, 64)
        assert r.wp == 64 + 3 + 20
        assert r.shifted_terms == 0
        assert r.evals > 0
        assert r.seconds >= 0.0
        assert r.plan.N >= 7
        assert "StieltjesResult" in repr(r)
        assert "StieltjesRequest" in repr(StieltjesRequest(5, 1, 64))

    def test_diagnostics_json_serializable(self):
        r = stieltjes_gamma_full(1500, 1, 64)
        s = json.dumps(r.diagnostics)
        back = json.loads(s)
        assert back["shifted"] is True
        assert back["segments"] == 4
        assert back["omega"] is not None
        z = hurwitz_zeta_full(2, 1, 64)
        json.dumps(z.diagnostics)


class TestHurwitz:
    def test_basel(self):
        z = hurwitz_zeta(2, 1, 128)
        assert z.im.is_zero()
        with mp.workdps(50):
            assert_encloses(z, mp.pi ** 2 / 6, 50)
        # independent partial-series bracket: sum_{k<=K} k^-2 + [1/(K+1), 1/K]
        K = 2000
        with mp.workdps(30):
            S = mp.fsum(mp.mpf(1) / (k * k) for k in range(1, K + 1))
            lo, hi = S + mp.mpf(1) / (K + 1), S + mp.mpf(1) / K
            mid = mp.mpf(z.re.mid)
            assert lo < mid < hi

    def test_recurrence_trivial(self):
        z1 = hurwitz_zeta(2, 1.5, 96)
        z2 = hurwitz_zeta(2, 2.5, 96)
        diff = z1.sub(z2, 200)
        with mp.workdps(40):
            assert_encloses(diff, mp.mpf(1) / mp.mpf(2.25), 40)

    @pytest.mark.parametrize("v", [2, 0.75])
    def test_s_zero_identity(self, v):
        z = hurwitz_zeta(0, v, 64)
        with mp.workdps(30):
            assert_encloses(z, mp.mpf("0.5") - mp.mpf(v), 30)

    @pytest.mark.parametrize("s,v", [
        (2, 2), (0.25, 1), (-2.5, 1), (10, 0.75), (-9, 0.25),
        (complex(2, 3), 1), (2.5, complex(1, 1)),
        (complex(-0.5, 5), 2),
    ])
    def test_against_library(self, s, v):
        z = hurwitz_zeta(s, v, 96)
        with mp.workdps(40):
            assert_encloses(z, mp.zeta(mp.mpmathify(s), mp.mpmathify(v)), 40)

    def test_near_pole(self):
        eps = 2.0 ** -40
        z = hurwitz_zeta(1 + eps, 1, 96)
        with mp.workdps(50):
            assert_encloses(z, mp.zeta(mp.mpf(1) + mp.mpf(eps)), 50)

    def test_oscillatory_s(self):
        z = hurwitz_zeta(complex(1, 20), 1, 96)
        with mp.workdps(40):
            assert_encloses(z, mp.zeta(mp.mpc(1, 20)), 40)
        assert z.rel_accuracy_bits() >= 60

    def test_complex_shift_recurrence(self):
        s = complex(2, 1)
        v = complex(0.25, 0.25)
        z1 = hurwitz_zeta(s, v, 96)
        z2 = hurwitz_zeta(s, complex(1.25, 0.25), 96)
        diff = z1.sub(z2, 200)
        with mp.workdps(40):
            ref = mp.mpc(v) ** (-mp.mpc(s))
            assert_encloses(diff, ref, 40)

    def test_real_output_exactly_real(self):
        z = hurwitz_zeta(3, 1.25, 80)
        assert z.im.mid == fzero and z.im.rad == fzero

    def test_domain_errors(self):
        with pytest.raises(BallDomainError):
            hurwitz_zeta(1, 2, 64)
        with pytest.raises(BallDomainError):
            hurwitz_zeta(ComplexBall(RealBall(from_int(1),
                                              RealBall.from_float(0.25).mid),
                                     RealBall.from_int(0)), 2, 64)
        with pytest.raises(BallDomainError):
            hurwitz_zeta(1001, 2, 64)
        with pytest.raises(BallDomainError):
            hurwitz_zeta(2, 0, 64)
        with pytest.raises(ValueError):
            hurwitz_zeta(2, 1, 4)


class TestPackageEntryPoints:
    def test_lazy_exports(self):
        import stieltjes
        g = stieltjes.stieltjes_gamma(0, 1, 64)
        with mp.workdps(25):
            assert_encloses(g, mp.euler, 25)
        z = stieltjes.hurwitz_zeta(2, 1, 64)
        with mp.workdps(25):
            assert_encloses(z, mp.pi ** 2 / 6, 25)

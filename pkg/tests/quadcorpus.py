"""Integrand corpus for validated-quadrature testing.

Each entry supplies the point/bound interface the integrator consumes, a
segment, and a closed-form reference computed with mpmath (an independent
implementation) at whatever precision the test asks for.
"""

from mpmath import mp

from stieltjes.ball import ComplexBall, RealBall
from stieltjes.quadrature import SetBoundUnavailable


def _one():
    return ComplexBall.from_int(1)


class ConstantOne:
    """f = 1; the integral is just the segment endpoint difference."""

    def point(self, z, prec):
        return _one()

    def bound(self, rect, prec):
        from mpmath.libmp import fone
        return fone


class Witch:
    """f(z) = 4/(1+z^2), poles at +/-i."""

    def point(self, z, prec):
        den = z.sqr(prec).add(_one(), prec)
        return ComplexBall.from_int(4).div(den, prec)

    def bound(self, rect, prec):
        from mpmath.libmp import from_int, fzero
        den = rect.sqr(prec).add(_one(), prec)
        lo = den.mag_lower()
        if lo == fzero:
            raise SetBoundUnavailable
        from stieltjes.ball import mag_div
        return mag_div(from_int(4), lo)


class SechSquaredPi:
    """f(z) = sech^2(pi z), the kernel shape used by the main integral."""

    def _cosh(self, z, prec):
        from stieltjes.ball import const_pi
        w = z.mul_real(const_pi(prec), prec)
        E = w.exp(prec)
        return E.add(_one().div(E, prec), prec).mul_2exp(-1)

    def point(self, z, prec):
        c = self._cosh(z, prec)
        return _one().div(c.sqr(prec), prec)

    def bound(self, rect, prec):
        from mpmath.libmp import fone, fzero
        c = self._cosh(rect, prec)
        lo = c.mag_lower()
        if lo == fzero:
            raise SetBoundUnavailable
        from stieltjes.ball import mag_div, mag_mul
        return mag_div(fone, mag_mul(lo, lo))


class Exponential:
    """f(z) = e^z."""

    def point(self, z, prec):
        return z.exp(prec)

    def bound(self, rect, prec):
        return RealBall(rect.re.upper()).exp(30).mag_upper()


class Oscillatory:
    """f(z) = cos(20 z) = (e^{20iz} + e^{-20iz})/2."""

    def point(self, z, prec):
        w = z.mul_i().mul_int(20, prec)
        return w.exp(prec).add(w.neg().exp(prec), prec).mul_2exp(-1)

    def bound(self, rect, prec):
        # |cos(20 z)| <= e^{20 |Im z|}
        from stieltjes.ball import mag_mul, mag_exp
        from mpmath.libmp import from_int
        t = mag_mul(rect.im.mag_upper(), from_int(20))
        return mag_exp(t)


def _pt(re, im=0):
    return ComplexBall(RealBall.from_decimal(str(re), 80),
                       RealBall.from_decimal(str(im), 80))


def _ipt(re, im=0):
    return ComplexBall(RealBall.from_int(re), RealBall.from_int(im))


def corpus():
    """(name, integrand, z0, z1, reference callable(prec) -> mpc)."""

    def ref_const(prec):
        mp.prec = prec + 40
        return mp.mpc(1, 1)

    def ref_witch(prec):
        mp.prec = prec + 40
        return mp.mpc(mp.pi)

    def ref_sech(prec):
        mp.prec = prec + 40
        return mp.mpc(mp.tanh(5 * mp.pi) / mp.pi)

    def ref_exp(prec):
        mp.prec = prec + 40
        return mp.mpc(mp.e ** 2 - 1)

    def ref_osc(prec):
        mp.prec = prec + 40
        return mp.mpc(mp.sin(20) / 20)

    return [
        ("constant", ConstantOne(), _ipt(0), _ipt(1, 1), ref_const),
        ("rational", Witch(), _ipt(0), _ipt(1), ref_witch),
        ("sech2", SechSquaredPi(), _ipt(0), _ipt(5), ref_sech),
        ("exp", Exponential(), _ipt(0), _ipt(2), ref_exp),
        ("oscillatory", Oscillatory(), _ipt(0), _ipt(1), ref_osc),
    ]

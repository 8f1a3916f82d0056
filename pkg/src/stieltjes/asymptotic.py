"""First-order large-n asymptotic estimate of gamma_n.

gamma_n ~ (B / sqrt(n)) e^{n A} cos(a n + b), built from the unique root
beta in (0, pi/2) of  2 pi exp(beta tan beta) = n cos(beta) / beta  and
alpha = beta tan beta:

    A = log(alpha^2 + beta^2) / 2 - alpha / (alpha^2 + beta^2)
    B = 2 sqrt(2 pi (alpha^2 + beta^2)) / ((alpha+1)^2 + beta^2)^(1/4)
    a = arctan(beta/alpha) + beta / (alpha^2 + beta^2)
    b = arctan(beta/alpha) - arctan(beta/(alpha+1)) / 2

This module is deliberately non-rigorous: it returns plain high-precision
floats (no balls) and is used as an independent cross-check and magnitude
estimator, good to roughly log10(n) significant digits whenever the cosine
factor is bounded away from zero.  The root solve and all downstream
quantities are evaluated at max(64, bitlength(n) + 30) bits so that the
phase a*n + b keeps absolute accuracy even for astronomically large n,
where e^{nA} only fits in extended-exponent arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp


def _work_prec(n: int) -> int:
    return max(64, n.bit_length() + 30)


def solve_beta(n: int):
    """Root beta in (0, pi/2) of 2 pi exp(beta tan beta) = n cos(beta)/beta.

    Bisection brackets the (strictly increasing) log-residual, then a
    safeguarded Newton iteration refines to full working precision.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    prec = _work_prec(n)
    with mp.workprec(prec + 20):
        log_n = mp.log(n)
        log_two_pi = mp.log(2 * mp.pi)
        half_pi = mp.pi / 2

        def logres(b):
            # log(2 pi e^{b tan b}) - log(n cos b / b)
            return (log_two_pi + b * mp.tan(b)
                    - log_n - mp.log(mp.cos(b)) + mp.log(b))

        def dlogres(b):
            c = mp.cos(b)
            return b / (c * c) + 2 * mp.tan(b) + 1 / b

        lo = mp.mpf(2) ** -12
        if logres(lo) >= 0:
            # only possible for tiny n where the root sits very close to 0
            while logres(lo) >= 0:
                lo /= 2
        hi = half_pi * (1 - mp.mpf(2) ** -3)
        while logres(hi) <= 0:
            hi = half_pi - (half_pi - hi) / 4
        for _ in range(60):
            mid = (lo + hi) / 2
            if logres(mid) < 0:
                lo = mid
            else:
                hi = mid
        b = (lo + hi) / 2
        tol = mp.mpf(2) ** (-prec)
        for _ in range(200):
            step = logres(b) / dlogres(b)
            nb = b - step
            if not (lo < nb < hi):  # fall back to bisection inside bracket
                nb = (lo + hi) / 2
            if logres(nb) < 0:
                lo = nb
            else:
                hi = nb
            if abs(nb - b) <= tol * b:
                b = nb
                break
            b = nb
        return +b


@dataclass(frozen=True)
class KnesslCoffey:
    """Asymptotic data for one n: root, derived constants, and estimate."""

    n: int
    beta: object
    alpha: object
    A: object
    B: object
    a: object
    b: object
    estimate: object

    @property
    def decimal_exponent(self) -> int:
        """floor(log10 |estimate|); raises on a vanishing estimate."""
        if self.estimate == 0:
            raise ValueError("estimate is zero (cosine node)")
        with mp.workprec(_work_prec(self.n) + 20):
            return int(mp.floor(mp.log10(abs(self.estimate))))


def knessl_coffey(n: int) -> KnesslCoffey:
    """Estimate gamma_n ~ (B/sqrt(n)) e^{nA} cos(a n + b) with all the
    slowly varying quantities; exact big-integer n keeps the phase sound."""
    beta = solve_beta(n)
    with mp.workprec(_work_prec(n) + 20):
        alpha = beta * mp.tan(beta)
        m2 = alpha * alpha + beta * beta
        A = mp.log(m2) / 2 - alpha / m2
        B = 2 * mp.sqrt(2 * mp.pi * m2) / ((alpha + 1) ** 2 + beta**2) ** mp.mpf(
            "0.25")
        a = mp.atan2(beta, alpha) + beta / m2
        b = mp.atan2(beta, alpha) - mp.atan2(beta, alpha + 1) / 2
        phase = a * n + b
        estimate = B / mp.sqrt(n) * mp.exp(A * n) * mp.cos(phase)
        return KnesslCoffey(n=n, beta=+beta, alpha=+alpha, A=+A, B=+B,
                            a=+a, b=+b, estimate=+estimate)

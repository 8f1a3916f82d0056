"""Generalized Stieltjes constants and Hurwitz zeta with rigorous enclosures."""

from .ball import (
    BallDomainError,
    BranchCutError,
    ComplexBall,
    RealBall,
    ball_to_json,
    const_pi,
    format_ball,
)

__all__ = [
    "BallDomainError",
    "BranchCutError",
    "ComplexBall",
    "RealBall",
    "ball_to_json",
    "const_pi",
    "format_ball",
    "stieltjes_gamma",
    "hurwitz_zeta",
    "knessl_coffey",
    "solve_beta",
]
__version__ = "0.1.0"


def stieltjes_gamma(n, v=1, prec=64):
    from .driver import stieltjes_gamma as _impl
    return _impl(n, v, prec)


def hurwitz_zeta(s, v, prec=64):
    from .driver import hurwitz_zeta as _impl
    return _impl(s, v, prec)


def knessl_coffey(n):
    from .asymptotic import knessl_coffey as _impl
    return _impl(n)


def solve_beta(n):
    from .asymptotic import solve_beta as _impl
    return _impl(n)

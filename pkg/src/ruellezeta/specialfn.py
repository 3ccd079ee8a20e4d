"""Complex special functions: log-Gamma, Barnes G, continued log-sine,
Hurwitz zeta, digamma, and the cyclotomic sine products.

All logarithmic functions here are analytic continuations from the positive
real axis to the plane cut along ``(-inf, 0]``.  In particular
``log_barnes_g(s+1) - log_barnes_g(s) = log_gamma(s)`` holds exactly (not just
mod 2*pi*i) on the cut plane, and ``log_sin_pi`` is defined through the
reflection formula so that every identity proved by Gamma-function
manipulation stays branch-exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Tuple, Union

import numpy as np
from scipy.special import digamma as _scipy_digamma
from scipy.special import loggamma as _scipy_loggamma
from scipy.special import zeta as _scipy_zeta

from .factored import FactoredMagnitude

__all__ = [
    "PoleError",
    "BarnesGZeroError",
    "log_gamma",
    "log_barnes_g",
    "log_sin_pi",
    "sin_pi",
    "sine_product",
    "sine_product_integer",
    "hurwitz_zeta",
    "digamma",
]

LOG_2PI = math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)
EULER_GAMMA = 0.57721566490153286060651209008240243104215933593992

# zeta'(-1) = 1/12 - log A  (A the Glaisher-Kinkelin constant)
_ZETA_PRIME_MINUS1 = -0.16542114370045092921391966024278064276264100407098

# Asymptotic tail of log G(z+1):
#   (z^2/2) log z - 3z^2/4 + (z/2) log 2pi - (1/12) log z + zeta'(-1)
#   + sum_k B_{2k+2} / (2k (2k+2)) * z^{-2k}
_BERNOULLI_HIGH = (
    Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66),
    Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330),
)
_BARNES_COEFS = tuple(float(b / ((2 * k) * (2 * k + 2)))
                      for k, b in enumerate(_BERNOULLI_HIGH, start=1))
_BARNES_SHIFT = 18.0


class PoleError(ArithmeticError):
    """Evaluation at a pole of Gamma (nonpositive integer argument)."""

    def __init__(self, where):
        self.where = where
        super().__init__(f"pole at s = {where}")


class BarnesGZeroError(ArithmeticError):
    """Evaluation of log G at a zero of G (nonpositive integer argument)."""

    def __init__(self, where):
        self.where = where
        super().__init__(f"Barnes G vanishes at s = {where}")


def _is_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0.0 and s.real <= 0.0 and s.real == int(s.real)


def log_gamma(s: Union[complex, float]) -> complex:
    """Principal-branch log Gamma(s), continued from the positive reals."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(s)
    return complex(_scipy_loggamma(s))


def log_barnes_g(s: Union[complex, float]) -> complex:
    """log G(s) for the Barnes double-Gamma function.

    Uses G(s+1) = Gamma(s) G(s) to shift into Re(s) >= 18 and sums the
    standard asymptotic expansion there.  Analytic on the plane cut along
    (-inf, 0], real on (0, inf).
    """
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise BarnesGZeroError(s)
    shift = int(max(0, math.ceil(_BARNES_SHIFT - s.real)))
    z = s + shift - 1.0
    lz = np.log(z)
    out = (z * z / 2.0) * lz - 0.75 * z * z + (z / 2.0) * LOG_2PI - lz / 12.0 + _ZETA_PRIME_MINUS1
    zz = z * z
    t = 1.0 / zz
    for c in _BARNES_COEFS:
        out += c * t
        t /= zz
    if shift:
        args = s + np.arange(shift)
        if np.any((args.imag == 0.0) & (args.real <= 0.0) & (args.real == np.rint(args.real))):
            raise PoleError(s)
        out -= np.sum(_scipy_loggamma(args))
    return complex(out)


def log_sin_pi(z: Union[complex, float]) -> complex:
    """Analytic continuation of log sin(pi z) via the reflection formula.

    Defined as ``log pi - log_gamma(z) - log_gamma(1 - z)``; analytic off the
    real rays ``(-inf, 0]`` and ``[1, inf)``, real-valued on ``(0, 1)``.
    Using this for every fractional power of a sine keeps all the
    functional-equation identities exact, with no stray 2*pi*i jumps.
    """
    z = complex(z)
    return LOG_PI - log_gamma(z) - log_gamma(1.0 - z)


def sin_pi(t) -> float:
    """sin(pi t) with exact argument reduction, full relative accuracy near
    the zeros (plain ``sin(pi * t)`` loses digits for t near a nonzero
    integer)."""
    t = np.asarray(t, dtype=float)
    n = np.rint(t)
    return np.where(n.astype(np.int64) % 2 == 0, 1.0, -1.0) * np.sin(np.pi * (t - n))


def sine_product(nu: int, x: float) -> float:
    """``prod_{l=1..nu} sin((l - x) pi / nu)``.

    For non-integer ``x`` this equals ``2^(1-nu) sin(pi x)``.  Each factor is
    argument-reduced so the product keeps full relative accuracy even when a
    factor sits near a zero.
    """
    if nu < 2:
        raise ValueError("nu must be an integer >= 2")
    ls = np.arange(1, nu + 1, dtype=float)
    t = (ls - x) / nu
    shift = np.rint(t)
    reduced = (ls - shift * nu - x) / nu
    signs = np.where(shift.astype(np.int64) % 2 == 0, 1.0, -1.0)
    return float(np.prod(signs * np.sin(np.pi * reduced)))


def sine_product_integer(nu: int, n: int) -> Tuple[int, FactoredMagnitude]:
    """``prod_{l != n} sin((l - n) pi / nu)`` over ``l in {1..nu}``.

    Returns ``(sign, magnitude)`` with the exact structure
    ``(-1)^(n-1) * nu * 2^(1-nu)``.
    """
    if nu < 2:
        raise ValueError("nu must be an integer >= 2")
    if not 1 <= n <= nu:
        raise ValueError(f"n must lie in 1..{nu}")
    sign = -1 if (n - 1) % 2 else 1
    mag = FactoredMagnitude.from_integer(nu) * FactoredMagnitude.from_integer(2) ** (1 - nu)
    return sign, mag


def hurwitz_zeta(s: float, a: float) -> float:
    """Hurwitz zeta(s, a) for real s > 1 and a in (0, 1]."""
    if not s > 1:
        raise ValueError("hurwitz_zeta requires s > 1")
    if not 0 < a <= 1:
        raise ValueError("hurwitz_zeta requires a in (0, 1]")
    return float(_scipy_zeta(s, a))


def digamma(a: float) -> float:
    """psi(a) for real a > 0; psi(1) = -EulerGamma."""
    if not a > 0:
        raise ValueError("digamma requires a > 0")
    return float(_scipy_digamma(a))

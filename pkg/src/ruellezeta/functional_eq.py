"""Functional-equation factors for the Selberg and Ruelle zeta functions.

Three families of callables live here, all pure:

* ``log_identity_factor`` / ``log_elliptic_factor`` / ``log_parabolic_factor``
  evaluate the logs of the three regularised-determinant building blocks
  directly from their defining Gamma/Barnes-G expressions;
* ``identity_zeta_ratio`` / ``elliptic_zeta_ratio`` / ``parabolic_zeta_ratio``
  evaluate the closed forms of the same ratios f(s)/f(1-s), assembled from
  sines and Gamma factors, and ``selberg_fe_factor`` multiplies them with the
  scattering determinant;
* ``ruelle_fe_factor`` (all-integer exponents, even in s) and its reduced
  variant with the Dirichlet-series normalisation split off.

Branch policy: every fractional power is exp(q * log(.)) where the log of a
Gamma or Barnes-G factor is the analytic continuation from the positive reals
and the log of a sine factor is ``log_sin_pi`` (reflection-formula form).
Under that convention the two evaluation routes agree exactly, which the test
suite exercises at scale.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .core import CombinatorialProfile, MultiplierSystem, OrbifoldSignature
from .specialfn import LOG_2PI, log_barnes_g, log_gamma, log_sin_pi

__all__ = [
    "PoleAtError",
    "ScatteringData",
    "log_identity_factor",
    "log_elliptic_factor",
    "log_parabolic_factor",
    "identity_zeta_ratio",
    "elliptic_zeta_ratio",
    "parabolic_zeta_ratio",
    "log_identity_zeta_ratio",
    "log_elliptic_zeta_ratio",
    "log_parabolic_zeta_ratio",
    "log_selberg_fe_factor",
    "selberg_fe_factor",
    "ruelle_fe_factor",
    "reduced_fe_factor",
    "reduced_fe_constant",
]

_POLE_EPS = 1e-8
LOG2 = math.log(2.0)


class PoleAtError(ArithmeticError):
    """A factor within 1e-8 of zero was raised to a negative power."""

    def __init__(self, s, detail: str = ""):
        self.s = s
        super().__init__(f"pole encountered at s = {s}" + (f" ({detail})" if detail else ""))


@dataclass(frozen=True)
class ScatteringData:
    """Lead data of the scattering determinant at s = 0.

    ``n0`` and ``a_n0`` describe the Dirichlet-series part: it behaves like
    ``a_n0 * s^n0`` as s -> 0.  ``d1`` and ``c1`` normalise the Gamma-factor
    part.  ``half_trace_exponent`` is the integer (tr(I) - tr(Phi(1/2)))/2;
    it only flips a global sign and is genuinely unknown for most groups, so
    it is optional: ``None`` means "use 0, and do not claim a sign".
    ``phi`` is the scattering determinant itself, needed only when the
    parabolic degree of singularity is positive.
    """

    n0: int = 0
    a_n0: float = 1.0
    d1: float = 1.0
    c1: float = 0.0
    half_trace_exponent: Optional[int] = 0
    phi: Optional[Callable[[complex], complex]] = None

    def __post_init__(self):
        if self.a_n0 == 0 or self.d1 == 0:
            raise ValueError("a_n0 and d(1) must be nonzero")
        if self.half_trace_exponent is not None and self.half_trace_exponent < 0:
            raise ValueError("half_trace_exponent must be >= 0")

    @classmethod
    def compact(cls) -> "ScatteringData":
        return cls(n0=0, a_n0=1.0, d1=1.0, c1=0.0, half_trace_exponent=0, phi=None)

    @property
    def sign_exponent(self) -> int:
        return 0 if self.half_trace_exponent is None else self.half_trace_exponent

    def phi_value(self, s: complex, tau0: int) -> complex:
        if tau0 == 0 or self.phi is None:
            if tau0 > 0:
                raise ValueError("scattering determinant required when tau0 > 0")
            return 1.0 + 0.0j
        return complex(self.phi(s))


# ---------------------------------------------------------------------------
# direct evaluations of the determinant factors
# ---------------------------------------------------------------------------

def log_identity_factor(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem) -> complex:
    """log of the identity contribution, from its defining expression."""
    s = complex(s)
    k = float(ms.weight)
    c = ms.dimension * float(sig.area_over_2pi)
    return c * (s * LOG_2PI + s * (1 - s)
                + (0.5 + k) * log_gamma(s + k) + (0.5 - k) * log_gamma(s - k)
                - log_barnes_g(s + k + 1) - log_barnes_g(s - k + 1))


def log_elliptic_factor(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                        profile: CombinatorialProfile) -> complex:
    """log of the elliptic contribution, from its defining expression."""
    s = complex(s)
    k = float(ms.weight)
    m = ms.dimension
    tot = 0.0 + 0.0j
    for j, nu in enumerate(sig.elliptic_orders):
        tot += m * (1 - 1 / nu) * s * math.log(nu)
        tot += -0.5 * m * (1 - 1 / nu) * (log_gamma(s - k) + log_gamma(s + k))
        for l in range(nu):
            tot += (profile.alpha[j][l] / nu) * log_gamma((s - k + l) / nu)
            tot += (profile.alpha_tilde[j][l] / nu) * log_gamma((s + k + l) / nu)
    return tot


def log_parabolic_factor(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                         profile: CombinatorialProfile,
                         data: ScatteringData) -> complex:
    """log of the parabolic contribution, from its defining expression.

    The published display of this definition carries the last Gamma group
    upside down relative to the functional-equation form; the version here,
    (Gamma(s-k) / (Gamma(s) Gamma(s+1/2)))^tau0, is the one consistent with
    the closed-form ratio and with the N = 1 end-to-end values.
    """
    s = complex(s)
    k = float(ms.weight)
    m = ms.dimension
    tau = sig.cusp_count
    tot = -m * tau * s * LOG2
    for j in range(tau):
        tot += (m / 2 - float(profile.beta_sums[j])) * (log_gamma(s + k) - log_gamma(s - k))
        for b in ms.parabolic_angles[j][profile.fixed_dimensions[j]:]:
            tot += -s * math.log(math.sin(math.pi * float(b)))
    tot += data.sign_exponent * cmath.log(s - 0.5)
    tot += profile.tau0 * (log_gamma(s - k) - log_gamma(s) - log_gamma(s + 0.5))
    return tot


# ---------------------------------------------------------------------------
# closed-form ratios f(s) / f(1-s)
# ---------------------------------------------------------------------------

def log_identity_zeta_ratio(s: complex, sig: OrbifoldSignature,
                            ms: MultiplierSystem) -> complex:
    """log of the identity-factor ratio at s versus 1-s (closed form)."""
    s = complex(s)
    k = float(ms.weight)
    c = ms.dimension * float(sig.area_over_2pi)
    br = ((-1 + 2 * s) * LOG_2PI
          + k * (log_sin_pi(s - k) - log_sin_pi(s + k))
          - 0.5 * (log_gamma(s + k) - log_gamma(1 - s + k)
                   + log_gamma(s - k) - log_gamma(1 - s - k))
          - (log_barnes_g(s + k) + log_barnes_g(s - k)
             - log_barnes_g(1 - s + k) - log_barnes_g(1 - s - k)))
    return c * br


def log_elliptic_zeta_ratio(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                            profile: CombinatorialProfile) -> complex:
    """log of the elliptic-factor ratio (0 with no elliptic classes)."""
    if sig.elliptic_class_count == 0:
        return 0.0 + 0.0j
    s = complex(s)
    k = float(ms.weight)
    m = ms.dimension
    sum_inv = math.fsum(1.0 / nu for nu in sig.elliptic_orders)
    sum_1m = math.fsum(1.0 - 1.0 / nu for nu in sig.elliptic_orders)
    lr = m * sum_1m * LOG2
    lr += -m * sum_inv * log_sin_pi(s + k)
    lr += 0.5 * m * sum_1m * (log_sin_pi(s - k) - log_sin_pi(s + k))
    for j, nu in enumerate(sig.elliptic_orders):
        for l in range(1, nu + 1):
            e = profile.alpha[j][l % nu] / nu + profile.r[j][l % nu]
            lr += e * log_sin_pi((-s - k + l) / nu)
        for l in range(nu):
            lr += -(profile.alpha[j][l] / nu) * log_sin_pi((s - k + l) / nu)
    return lr


def log_parabolic_zeta_ratio(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                             profile: CombinatorialProfile,
                             data: ScatteringData) -> complex:
    """log of the parabolic-factor ratio; the (-1)^hte sign enters as i pi hte."""
    if sig.cusp_count == 0:
        return 0.0 + 0.0j
    s = complex(s)
    k = float(ms.weight)
    m = ms.dimension
    tau = sig.cusp_count
    lr = -m * tau * (2 * s - 1) * LOG2
    exp1 = m * tau / 2 - math.fsum(float(b) for b in profile.beta_sums)
    lr += exp1 * (log_sin_pi(s - k) - log_sin_pi(s + k))
    for j in range(tau):
        for b in ms.parabolic_angles[j][profile.fixed_dimensions[j]:]:
            lr += (1 - 2 * s) * math.log(math.sin(math.pi * float(b)))
    lr += profile.tau0 * (log_gamma(s - k) - log_gamma(1 - s - k)
                          + log_gamma(1 - s) + log_gamma(1.5 - s)
                          - log_gamma(s) - log_gamma(s + 0.5))
    return lr + 1j * math.pi * data.sign_exponent


def log_selberg_fe_factor(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                          profile: CombinatorialProfile, data: ScatteringData) -> complex:
    """log kappa(s); robust for data where kappa itself over/underflows."""
    out = (log_identity_zeta_ratio(s, sig, ms)
           + log_elliptic_zeta_ratio(s, sig, ms, profile)
           + log_parabolic_zeta_ratio(s, sig, ms, profile, data))
    phi = data.phi_value(s, profile.tau0)
    if phi != 1.0:
        out += cmath.log(phi)
    return out


def identity_zeta_ratio(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem) -> complex:
    """Closed form of the identity-factor ratio at s versus 1-s."""
    return cmath.exp(log_identity_zeta_ratio(s, sig, ms))


def elliptic_zeta_ratio(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                        profile: CombinatorialProfile) -> complex:
    """Closed form of the elliptic-factor ratio (empty product = 1)."""
    if sig.elliptic_class_count == 0:
        return 1.0 + 0.0j
    return cmath.exp(log_elliptic_zeta_ratio(s, sig, ms, profile))


def parabolic_zeta_ratio(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                         profile: CombinatorialProfile, data: ScatteringData) -> complex:
    """Closed form of the parabolic-factor ratio (empty product = 1)."""
    if sig.cusp_count == 0:
        return 1.0 + 0.0j
    return cmath.exp(log_parabolic_zeta_ratio(s, sig, ms, profile, data))


def selberg_fe_factor(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                      profile: CombinatorialProfile, data: ScatteringData) -> complex:
    """Factor kappa(s) in Z(1-s) = kappa(s) Z(s)."""
    return cmath.exp(log_selberg_fe_factor(s, sig, ms, profile, data))


# ---------------------------------------------------------------------------
# Ruelle functional-equation factors (integer exponents only)
# ---------------------------------------------------------------------------

def _int_power(base: complex, exponent: int, s, detail: str) -> complex:
    if exponent < 0 and abs(base) < _POLE_EPS:
        raise PoleAtError(s, detail)
    return base ** exponent


def _sine_pair_power(a: complex, b: complex, exponent: int, s, detail: str) -> complex:
    # pole detection per sine factor, not on the (possibly tiny) pair product
    if exponent < 0 and (abs(a) < _POLE_EPS or abs(b) < _POLE_EPS):
        raise PoleAtError(s, detail)
    return (a * b) ** exponent


def ruelle_fe_factor(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                     profile: CombinatorialProfile) -> complex:
    """The order-one factor H(s) in R(s) phi(s) = (R(-s) phi(-s))^{-1} H(s).

    Every exponent is an integer, so the expression is single-valued and
    manifestly even in s.
    """
    s = complex(s)
    k = float(ms.weight)
    m = ms.dimension
    g, rho, tau = sig.genus, sig.elliptic_class_count, sig.cusp_count
    e_id = m * (2 * g - 2 + rho + tau)
    val = 2.0 ** (2 * m * (2 * g - 2))
    val *= _sine_pair_power(cmath.sin(math.pi * (s + k)), cmath.sin(math.pi * (-s + k)),
                            e_id, s, "identity sine pair")
    for j, nu in enumerate(sig.elliptic_orders):
        for l in range(1, nu + 1):
            val *= _sine_pair_power(cmath.sin(math.pi * (-s - k + l) / nu),
                                    cmath.sin(math.pi * (s - k + l) / nu),
                                    -profile.r[j][l % nu], s, f"elliptic class {j}, l={l}")
    for j in range(tau):
        for b in ms.parabolic_angles[j][profile.fixed_dimensions[j]:]:
            val *= math.sin(math.pi * float(b)) ** (-2)
    if profile.tau0:
        num = (-s - k) * (s - k)
        den = s * (-s) * (s + 0.5) * (-s + 0.5)
        val *= _int_power(num, profile.tau0, s, "")
        val *= _int_power(den, -profile.tau0, s, "parabolic rational factor")
    return val


def reduced_fe_factor(s: complex, sig: OrbifoldSignature, ms: MultiplierSystem,
                      profile: CombinatorialProfile) -> complex:
    """The factor H1(s) of the reduced functional equation
    R(s) phit(s) = c^{-2} (R(-s) phit(-s))^{-1} H1(s)."""
    s = complex(s)
    k = float(ms.weight)
    m = ms.dimension
    g, rho, tau = sig.genus, sig.elliptic_class_count, sig.cusp_count
    e_id = m * (2 * g - 2 + rho + tau) - profile.tau0
    val = _sine_pair_power(cmath.sin(math.pi * (s + k)), cmath.sin(math.pi * (-s + k)),
                           e_id, s, "identity sine pair")
    for j, nu in enumerate(sig.elliptic_orders):
        for l in range(1, nu + 1):
            val *= _sine_pair_power(cmath.sin(math.pi * (-s - k + l) / nu),
                                    cmath.sin(math.pi * (s - k + l) / nu),
                                    -profile.r[j][l % nu], s, f"elliptic class {j}, l={l}")
    if profile.tau0:
        base = cmath.sin(math.pi * s) * cmath.cos(math.pi * s) / s
        val *= _int_power(base, profile.tau0, s, "")
    return val


def reduced_fe_constant(sig: OrbifoldSignature, ms: MultiplierSystem,
                        profile: CombinatorialProfile, data: ScatteringData):
    """The constant c = 2^{-m(2g-2)} d(1) prod sin(pi beta_jp).

    Returns (sign, magnitude): the magnitude as an exact factored value, the
    sign inherited from d(1).
    """
    from .factored import FactoredMagnitude

    m = ms.dimension
    g = sig.genus
    mag = FactoredMagnitude.from_integer(2) ** (-m * (2 * g - 2))
    mag = mag * FactoredMagnitude.from_value(data.d1)
    for j in range(sig.cusp_count):
        for b in ms.parabolic_angles[j][profile.fixed_dimensions[j]:]:
            if isinstance(b, Fraction):
                mag = mag * FactoredMagnitude.sin_pi(b)
            else:
                mag = mag * FactoredMagnitude.from_float(math.sin(math.pi * float(b)))
    sign = 1 if data.d1 > 0 else -1
    return sign, mag

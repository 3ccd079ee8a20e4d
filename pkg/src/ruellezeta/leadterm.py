"""Order and lead Laurent coefficient of the twisted Ruelle zeta at s = 0.

Orders are exact integer arithmetic; magnitudes are assembled as
:class:`~ruellezeta.factored.FactoredMagnitude` values so that equal closed
forms compare exactly.  Signs are only reported on the weight-zero path and
only when the half-trace exponent of the scattering matrix is actually known;
the remaining sign ambiguity is intrinsic and is never guessed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .core import (CombinatorialProfile, MultiplierSystem, OrbifoldSignature,
                   residue_profile)
from .factored import FactoredMagnitude
from .functional_eq import ScatteringData

__all__ = [
    "LeadTermResult",
    "ruelle_order_at_zero",
    "reduced_factor_order_at_zero",
    "reduced_factor_limit",
    "lead_coefficient",
    "lead_coefficient_weight_zero",
    "WeightContinuityReport",
    "weight_continuity_check",
]


@dataclass(frozen=True)
class LeadTermResult:
    """ord_R(0), |lim s^{-ord} R(s)| in factored form, and sign if known."""

    order: int
    magnitude: FactoredMagnitude
    sign_known: bool = False
    sign: Optional[int] = None

    def numeric(self, l_value_resolver=None) -> float:
        return self.magnitude.numeric(l_value_resolver)


def reduced_factor_order_at_zero(sig: OrbifoldSignature, ms: MultiplierSystem,
                                 profile: CombinatorialProfile) -> int:
    """Vanishing order of the reduced functional-equation factor at 0."""
    if not ms.weight_is_integer:
        return 0
    m = ms.dimension
    g, rho, tau = sig.genus, sig.elliptic_class_count, sig.cusp_count
    return 2 * (m * (2 * g - 2 + rho + tau) - profile.tau0 - profile.tilde_tau0)


def ruelle_order_at_zero(sig: OrbifoldSignature, ms: MultiplierSystem,
                         profile: CombinatorialProfile, data: ScatteringData) -> int:
    """ord_R(0) = -n0 + (1/2) ord_{H1}(0)."""
    return -data.n0 + reduced_factor_order_at_zero(sig, ms, profile) // 2


def reduced_factor_limit(sig: OrbifoldSignature, ms: MultiplierSystem,
                         profile: CombinatorialProfile) -> Tuple[int, FactoredMagnitude]:
    """Sign and magnitude of lim s^{-ord} H1(s) at s = 0, integer weight.

    The sign is (-1)^(m(2g-2-rho+tau) - tau0 + tilde_tau0), which encodes the
    parity constraint between ord_R(0) + n0 and the squared limit.
    """
    if not ms.weight_is_integer:
        raise ValueError("reduced_factor_limit requires integer weight")
    m = ms.dimension
    g, rho, tau = sig.genus, sig.elliptic_class_count, sig.cusp_count
    k = int(ms.weight)
    e_id = m * (2 * g - 2 + rho + tau) - profile.tau0
    sign = -1 if (e_id + profile.tilde_tau0) % 2 else 1
    mag = FactoredMagnitude.pi(2 * e_id + profile.tau0)
    for j, nu in enumerate(sig.elliptic_orders):
        kj = profile.weight_residue(j)
        mag = mag * FactoredMagnitude.pi(-2 * profile.r[j][kj % nu])
        mag = mag * FactoredMagnitude.from_integer(nu) ** (2 * profile.r[j][kj % nu])
        for l in range(1, nu + 1):
            if l == kj:
                continue
            q = Fraction(l - k, nu)
            mag = mag * FactoredMagnitude.sin_pi(q) ** (-2 * profile.r[j][l % nu])
    return sign, mag


def _scattering_magnitude(data: ScatteringData) -> FactoredMagnitude:
    """|a_n0|^{-1} |d(1)|^{-1} as a factored value."""
    return (FactoredMagnitude.from_value(data.a_n0)
            * FactoredMagnitude.from_value(data.d1)) ** -1


def _parabolic_sines(sig: OrbifoldSignature, ms: MultiplierSystem,
                     profile: CombinatorialProfile) -> FactoredMagnitude:
    """prod over open eigenangles of |sin(pi beta)|."""
    mag = FactoredMagnitude.one()
    for j in range(sig.cusp_count):
        for b in ms.parabolic_angles[j][profile.fixed_dimensions[j]:]:
            if isinstance(b, Fraction):
                mag = mag * FactoredMagnitude.sin_pi(b)
            else:
                mag = mag * FactoredMagnitude.from_float(math.sin(math.pi * float(b)))
    return mag


def lead_coefficient(sig: OrbifoldSignature, ms: MultiplierSystem,
                     profile: CombinatorialProfile, data: ScatteringData) -> LeadTermResult:
    """|lim s^{-ord_R(0)} R(s)| in both weight classes (sign not claimed)."""
    m = ms.dimension
    g, rho, tau = sig.genus, sig.elliptic_class_count, sig.cusp_count
    order = ruelle_order_at_zero(sig, ms, profile, data)
    inv_c = (FactoredMagnitude.from_integer(2) ** (m * (2 * g - 2))
             * FactoredMagnitude.from_value(data.d1) ** -1
             * _parabolic_sines(sig, ms, profile) ** -1)
    mag = FactoredMagnitude.from_value(data.a_n0) ** -1 * inv_c

    k = ms.weight
    if not ms.weight_is_integer:
        mag = mag * FactoredMagnitude.pi(Fraction(profile.tau0, 2))
        e_sin = m * (2 * g - 2 + rho + tau) - profile.tau0
        mag = mag * FactoredMagnitude.sin_pi(k) ** e_sin
        for j, nu in enumerate(sig.elliptic_orders):
            for l in range(1, nu + 1):
                q = (l - k) / nu
                mag = mag * FactoredMagnitude.sin_pi(q) ** (-profile.r[j][l % nu])
        return LeadTermResult(order=order, magnitude=mag)

    kk = int(k)
    h1_order = reduced_factor_order_at_zero(sig, ms, profile)
    mag = mag * FactoredMagnitude.pi(Fraction(h1_order + profile.tau0, 2))
    for j, nu in enumerate(sig.elliptic_orders):
        kj = profile.weight_residue(j)
        mag = mag * FactoredMagnitude.from_integer(nu) ** profile.r[j][kj % nu]
        for l in range(1, nu + 1):
            if l == kj:
                continue
            q = Fraction(-kk + l, nu)
            mag = mag * FactoredMagnitude.sin_pi(q) ** (-profile.r[j][l % nu])
    return LeadTermResult(order=order, magnitude=mag)


def lead_coefficient_weight_zero(sig: OrbifoldSignature, ms: MultiplierSystem,
                                 profile: CombinatorialProfile,
                                 data: ScatteringData) -> LeadTermResult:
    """Signed lead coefficient for weight zero (unitary representations).

    The sign is (-1)^(hte + tau0 + 1) times the sign of d(1) a_n0, reported
    only when the half-trace exponent was supplied.
    """
    if ms.weight != 0:
        raise ValueError("lead_coefficient_weight_zero requires weight k = 0")
    m = ms.dimension
    g, rho, tau = sig.genus, sig.elliptic_class_count, sig.cusp_count
    order = ruelle_order_at_zero(sig, ms, profile, data)

    mag = _scattering_magnitude(data)
    mag = mag * FactoredMagnitude.from_integer(2) ** (m * (2 * g - 2))
    mag = mag * FactoredMagnitude.pi(
        Fraction(m * (2 * g - 2 + rho + tau)) - Fraction(profile.tau0, 2) - profile.tilde_tau0)
    for j, nu in enumerate(sig.elliptic_orders):
        mag = mag * FactoredMagnitude.from_integer(nu) ** profile.r[j][0]
        for l in range(1, nu):
            mag = mag * FactoredMagnitude.sin_pi(Fraction(l, nu)) ** (-profile.r[j][l])
    mag = mag * _parabolic_sines(sig, ms, profile) ** -1

    if data.half_trace_exponent is None:
        return LeadTermResult(order=order, magnitude=mag, sign_known=False)
    sign = (-1) ** (data.half_trace_exponent + profile.tau0 + 1)
    if data.d1 * data.a_n0 < 0:
        sign = -sign
    return LeadTermResult(order=order, magnitude=mag, sign_known=True, sign=sign)


# ---------------------------------------------------------------------------
# regularised continuity in the weight
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightContinuityReport:
    """Result of the k -> 0 regularised-continuity check."""

    weights: Tuple[Fraction, ...]
    scaled_values: Tuple[float, ...]
    limit_value: float
    deviations: Tuple[float, ...]
    extrapolated: float
    extrapolated_deviation: float
    convergence_order: float
    converged: bool


def weight_continuity_check(sig: OrbifoldSignature, ms_zero: MultiplierSystem,
                            data: ScatteringData,
                            weights: Sequence[Fraction] = (Fraction(1, 100),
                                                           Fraction(1, 200),
                                                           Fraction(1, 400)),
                            scaling_exponent: Optional[int] = None,
                            tolerance: float = 1e-3) -> WeightContinuityReport:
    """Compare the k -> 0 limit of the non-integer-weight lead magnitude with
    the weight-zero closed form.

    ``ms_zero`` fixes the residue data; for each small k the same residues are
    used with weight k (admissibility of the deformed weight is not enforced:
    the closed forms extend to every real weight).  The scattering data are
    held fixed across the family.  The scaled quantity
    ``k^{-D} |lim s^{n0} R(s; chi_k)|`` with
    ``D = m(2g-2+rho+tau) - tau0 - tilde_tau0`` is extrapolated to k = 0 and
    compared against ``|lim s^{-ord} R(s; chi_0)|``.
    """
    if ms_zero.weight != 0:
        raise ValueError("the reference system must have weight 0")
    profile0 = residue_profile(sig, ms_zero, check_admissibility=False)
    m = ms_zero.dimension
    g, rho, tau = sig.genus, sig.elliptic_class_count, sig.cusp_count
    d_exp = (m * (2 * g - 2 + rho + tau) - profile0.tau0 - profile0.tilde_tau0
             if scaling_exponent is None else scaling_exponent)

    ref = lead_coefficient_weight_zero(sig, ms_zero, profile0, data)
    limit_value = ref.numeric()

    ks = tuple(Fraction(k) for k in weights)
    scaled = []
    for k in ks:
        ms_k = MultiplierSystem(dimension=m, weight=k,
                                elliptic_residues=ms_zero.elliptic_residues,
                                parabolic_angles=ms_zero.parabolic_angles)
        prof_k = residue_profile(sig, ms_k, check_admissibility=False)
        lead_k = lead_coefficient(sig, ms_k, prof_k, data)
        scaled.append(lead_k.numeric() * float(k) ** (-d_exp))

    deviations = tuple(abs(v / limit_value - 1.0) for v in scaled)

    # Richardson step assuming linear leading error; the weights must halve.
    extrap = scaled[-1]
    for a, b in zip(scaled[:-1], scaled[1:]):
        extrap = 2 * b - a
    extrapolated_deviation = abs(extrap / limit_value - 1.0)
    if deviations[-1] > 0 and deviations[0] > 0:
        ratio = deviations[0] / deviations[-1]
        steps = math.log(float(ks[0]) / float(ks[-1]))
        conv = math.log(ratio) / steps if steps else float("nan")
    else:
        conv = float("inf")
    converged = extrapolated_deviation <= tolerance
    return WeightContinuityReport(
        weights=ks,
        scaled_values=tuple(scaled),
        limit_value=limit_value,
        deviations=deviations,
        extrapolated=extrap,
        extrapolated_deviation=extrapolated_deviation,
        convergence_order=conv,
        converged=converged,
    )

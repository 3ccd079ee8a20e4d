"""Domain model: orbifold signatures, unitary multiplier-system data, and the
residue combinatorics every closed form downstream consumes.

A multiplier system of dimension m and weight 2k is represented purely through
its eigenvalue data: the elliptic residues ``alpha_{jp}`` (eigenvalues of the
action on the j-th elliptic generator are ``exp(-2 pi i (k + alpha_jp)/nu_j)``)
and the parabolic eigenangles ``beta_{jp}`` (eigenvalues at the j-th cusp
generator are ``exp(2 pi i beta_jp)``).  No matrices are ever constructed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

__all__ = [
    "NonHyperbolicError",
    "DimensionMismatchError",
    "AdmissibilityError",
    "OrbifoldSignature",
    "MultiplierSystem",
    "CombinatorialProfile",
    "hyperbolic_area",
    "admissibility_check",
    "residue_profile",
    "conjugate_multiplier",
]

Angle = Union[Fraction, float]


class NonHyperbolicError(ValueError):
    """Signature data whose hyperbolic area is not positive."""


class DimensionMismatchError(ValueError):
    """Multiplier data inconsistent with the signature or its own dimension."""


class AdmissibilityError(ValueError):
    """Weight outside the admissibility lattice of a compact signature."""


def _lcm_list(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


@dataclass(frozen=True)
class OrbifoldSignature:
    """Genus, cusp count and elliptic orders of a finite-area quotient."""

    genus: int
    cusp_count: int
    elliptic_orders: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elliptic_orders", tuple(int(v) for v in self.elliptic_orders))
        if self.genus < 0 or self.cusp_count < 0:
            raise NonHyperbolicError("genus and cusp count must be nonnegative")
        if any(v < 2 for v in self.elliptic_orders):
            raise NonHyperbolicError("elliptic orders must be >= 2")
        if self.area_over_2pi <= 0:
            raise NonHyperbolicError(
                f"area 2*pi*({self.area_over_2pi}) is not positive: not a hyperbolic orbifold")

    @property
    def elliptic_class_count(self) -> int:
        return len(self.elliptic_orders)

    @property
    def area_over_2pi(self) -> Fraction:
        """Exact value of area / (2 pi) = 2g - 2 + sum(1 - 1/nu_j) + tau."""
        acc = Fraction(2 * self.genus - 2 + self.cusp_count)
        for v in self.elliptic_orders:
            acc += 1 - Fraction(1, v)
        return acc

    @property
    def area(self) -> float:
        return 2.0 * math.pi * float(self.area_over_2pi)


def hyperbolic_area(sig: OrbifoldSignature) -> float:
    """Hyperbolic area 2*pi*(2g - 2 + sum(1 - 1/nu_j) + tau)."""
    return sig.area


def admissibility_check(sig: OrbifoldSignature, m: int, k: Fraction) -> bool:
    """Whether weight 2k is admissible for an m-dimensional system on sig.

    With cusps every real weight is admissible.  For compact signatures the
    admissible k form the lattice (1/m) (2 pi / area) (1/lcm nu_j) * Z, an
    exact rational-membership test here.
    """
    if sig.cusp_count >= 1:
        return True
    k = Fraction(k)
    step_inv = m * sig.area_over_2pi * _lcm_list(sig.elliptic_orders)
    return (k * step_inv).denominator == 1


def _normalize_angles(angles: Sequence[Angle]) -> Tuple[Angle, ...]:
    zeros = []
    rest = []
    for b in angles:
        bb = b if isinstance(b, Fraction) else float(b)
        if bb == 0:
            zeros.append(Fraction(0))
        else:
            if not 0 < bb < 1:
                raise DimensionMismatchError(f"parabolic angle {b} outside [0, 1)")
            rest.append(bb)
    rest.sort(key=float)
    return tuple(zeros + rest)


@dataclass(frozen=True)
class MultiplierSystem:
    """Eigenvalue data of a unitary multiplier system of dimension m, weight 2k.

    ``weight`` stores k as an exact rational; integrality branching downstream
    compares denominators, never floats.  Parabolic angles are normalised at
    construction: the zero angles come first, the rest sorted in (0, 1).
    """

    dimension: int
    weight: Fraction
    elliptic_residues: Tuple[Tuple[int, ...], ...] = ()
    parabolic_angles: Tuple[Tuple[Angle, ...], ...] = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionMismatchError("dimension must be >= 1")
        object.__setattr__(self, "weight", Fraction(self.weight))
        res = tuple(tuple(sorted(int(a) for a in klass)) for klass in self.elliptic_residues)
        object.__setattr__(self, "elliptic_residues", res)
        angles = tuple(_normalize_angles(cusp) for cusp in self.parabolic_angles)
        object.__setattr__(self, "parabolic_angles", angles)
        for klass in res:
            if len(klass) != self.dimension:
                raise DimensionMismatchError(
                    f"elliptic class carries {len(klass)} residues, expected {self.dimension}")
        for cusp in angles:
            if len(cusp) != self.dimension:
                raise DimensionMismatchError(
                    f"cusp carries {len(cusp)} angles, expected {self.dimension}")

    @property
    def weight_is_integer(self) -> bool:
        return self.weight.denominator == 1

    @property
    def fixed_dimensions(self) -> Tuple[int, ...]:
        """m_j: number of zero eigenangles at each cusp."""
        return tuple(sum(1 for b in cusp if b == 0) for cusp in self.parabolic_angles)


@dataclass(frozen=True)
class CombinatorialProfile:
    """Residue combinatorics of a (signature, multiplier system) pair.

    ``r[j][l]`` counts residues with ``alpha_jp + l = 0 mod nu_j``; it is read
    through :meth:`r_at` which wraps ``l`` periodically.  ``alpha[j][l]`` and
    ``alpha_tilde[j][l]`` are the residue sums of ``alpha_jp + l`` and
    ``-alpha_jp + l`` mod ``nu_j``.
    """

    orders: Tuple[int, ...]
    dimension: int
    weight: Fraction
    r: Tuple[Tuple[int, ...], ...]
    alpha: Tuple[Tuple[int, ...], ...]
    alpha_tilde: Tuple[Tuple[int, ...], ...]
    tau0: int
    tilde_tau0: int
    beta_sums: Tuple[Angle, ...]
    fixed_dimensions: Tuple[int, ...]

    def r_at(self, j: int, l: int) -> int:
        return self.r[j][l % self.orders[j]]

    def alpha_at(self, j: int, l: int) -> int:
        return self.alpha[j][l % self.orders[j]]

    def alpha_tilde_at(self, j: int, l: int) -> int:
        return self.alpha_tilde[j][l % self.orders[j]]

    def weight_residue(self, j: int) -> int:
        """k_j in {1, ..., nu_j} congruent to the (integer) weight k."""
        if self.weight.denominator != 1:
            raise ValueError("weight residue is defined for integer k only")
        nu = self.orders[j]
        return (int(self.weight) - 1) % nu + 1


def residue_profile(sig: OrbifoldSignature, ms: MultiplierSystem,
                    check_admissibility: bool = True) -> CombinatorialProfile:
    """Validate a (signature, multiplier) pair and compute its combinatorics."""
    rho = sig.elliptic_class_count
    tau = sig.cusp_count
    if len(ms.elliptic_residues) != rho:
        raise DimensionMismatchError(
            f"{len(ms.elliptic_residues)} elliptic residue classes for {rho} elliptic classes")
    if len(ms.parabolic_angles) != tau:
        raise DimensionMismatchError(
            f"{len(ms.parabolic_angles)} cusp angle lists for {tau} cusps")
    for nu, klass in zip(sig.elliptic_orders, ms.elliptic_residues):
        if any(not 0 <= a < nu for a in klass):
            raise DimensionMismatchError(f"residues {klass} outside 0..{nu - 1}")
    if check_admissibility and tau == 0 and not admissibility_check(sig, ms.dimension, ms.weight):
        raise AdmissibilityError(
            f"weight k={ms.weight} is not admissible for this compact signature")

    r = []
    alpha = []
    alpha_tilde = []
    for nu, klass in zip(sig.elliptic_orders, ms.elliptic_residues):
        r.append(tuple(sum(1 for a in klass if (a + l) % nu == 0) for l in range(nu)))
        alpha.append(tuple(sum((a + l) % nu for a in klass) for l in range(nu)))
        alpha_tilde.append(tuple(sum((-a + l) % nu for a in klass) for l in range(nu)))

    k = ms.weight
    if k.denominator == 1:
        kk = int(k)
        tilde_tau0 = sum(rr[kk % nu] for nu, rr in zip(sig.elliptic_orders, r))
    else:
        tilde_tau0 = 0

    m_js = ms.fixed_dimensions
    beta_sums = []
    for cusp in ms.parabolic_angles:
        if all(isinstance(b, Fraction) for b in cusp):
            beta_sums.append(sum(cusp, Fraction(0)))
        else:
            beta_sums.append(math.fsum(float(b) for b in cusp))

    return CombinatorialProfile(
        orders=sig.elliptic_orders,
        dimension=ms.dimension,
        weight=k,
        r=tuple(r),
        alpha=tuple(alpha),
        alpha_tilde=tuple(alpha_tilde),
        tau0=sum(m_js),
        tilde_tau0=tilde_tau0,
        beta_sums=tuple(beta_sums),
        fixed_dimensions=m_js,
    )


def conjugate_multiplier(sig: OrbifoldSignature, ms: MultiplierSystem) -> MultiplierSystem:
    """The conjugate system: weight -2k, residues alpha -> (nu - alpha) mod nu.

    Realises the weight-conjugation relabelling r_j(l) -> r_j(nu_j - l) used
    by the k/-k functional-equation symmetry.
    """
    conj = tuple(
        tuple((nu - a) % nu for a in klass)
        for nu, klass in zip(sig.elliptic_orders, ms.elliptic_residues)
    )
    angles = tuple(
        tuple((1 - b) % 1 if b != 0 else Fraction(0) for b in cusp)
        for cusp in ms.parabolic_angles
    )
    return MultiplierSystem(
        dimension=ms.dimension,
        weight=-ms.weight,
        elliptic_residues=conj,
        parabolic_angles=angles,
    )

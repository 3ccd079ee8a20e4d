"""Reidemeister torsion of Seifert fibered spaces and Fried-identity checks.

Two torsion closed forms are implemented: the one attached to irreducible
acyclic SL(m, C)-representations (Kitano's formula) and the higher torsion for
even-dimensional representations built from SL(2, C) data (Yamaguchi's
formula).  Each comes with a map to the eigenvalue data of a unitary
multiplier system, so the corresponding special value of the twisted Ruelle
zeta can be computed through a fully independent code path: the torsion side
multiplies over eigenvalues p, the zeta side multiplies over residue classes l.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .core import MultiplierSystem, OrbifoldSignature, residue_profile
from .factored import FactoredMagnitude
from .functional_eq import ScatteringData
from .leadterm import lead_coefficient, ruelle_order_at_zero

__all__ = [
    "SeifertIndex",
    "KitanoRep",
    "YamaguchiRep",
    "seifert_signature",
    "kitano_torsion",
    "kitano_torsion_complex",
    "yamaguchi_torsion",
    "kitano_multiplier_system",
    "yamaguchi_multiplier_system",
    "FriedReport",
    "verify_fried_kitano",
    "verify_fried_yamaguchi",
    "random_kitano_instance",
    "random_yamaguchi_instance",
]


@dataclass(frozen=True)
class SeifertIndex:
    """Seifert index {b, (o, g); (nu_1, beta_1), ..., (nu_rho, beta_rho)}.

    For each exceptional fiber the core data (mu_j, alpha_j) solve
    alpha_j nu_j - beta_j mu_j = -1 with 0 < mu_j < nu_j, which requires
    gcd(nu_j, beta_j) = 1.
    """

    b: int
    genus: int
    fibers: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple((int(n), int(b)) for n, b in self.fibers))
        if self.genus < 1:
            raise ValueError("Seifert base genus must be >= 1 here")
        for nu, beta in self.fibers:
            if nu < 2:
                raise ValueError("fiber orders must be >= 2")
            if math.gcd(nu, beta) != 1:
                raise ValueError(f"fiber ({nu}, {beta}) is not coprime")

    def core_exponents(self) -> Tuple[Tuple[int, int], ...]:
        """(mu_j, alpha_j) for each fiber."""
        out = []
        for nu, beta in self.fibers:
            mu = pow(beta, -1, nu)
            mu = mu % nu
            if mu == 0:
                mu = nu
            alpha = (beta * mu - 1) // nu
            assert alpha * nu - beta * mu == -1
            out.append((mu, alpha))
        return tuple(out)

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(nu for nu, _ in self.fibers)


@dataclass(frozen=True)
class KitanoRep:
    """Eigenvalue data of an irreducible acyclic SL(m, C) representation.

    ``unit_exponent`` is a with gcd(a, m) = 1 and a != 0 mod m, so the central
    fiber acts by the primitive root of unity exp(2 pi i a/m); ``residues``
    lists, per exceptional fiber, the m integers alpha_jp in {0..nu_j - 1}
    describing the eigenvalues exp(-2 pi i (k + alpha_jp)/nu_j) with k = a/m.
    """

    dimension: int
    unit_exponent: int
    residues: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(tuple(r) for r in self.residues))
        if self.dimension < 2:
            raise ValueError("dimension must be >= 2")
        if self.unit_exponent % self.dimension == 0:
            raise ValueError("acyclicity requires a != 0 mod m")
        if math.gcd(self.unit_exponent, self.dimension) != 1:
            raise ValueError("gcd(a, m) must be 1")
        for klass in self.residues:
            if len(klass) != self.dimension:
                raise ValueError("each fiber needs m residues")

    @property
    def weight(self) -> Fraction:
        return Fraction(self.unit_exponent, self.dimension)


@dataclass(frozen=True)
class YamaguchiRep:
    """Data of the 2N-dimensional acyclic representation: odd eta_j coprime
    to the fiber orders."""

    half_dimension: int
    eta: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(int(e) for e in self.eta))
        if self.half_dimension < 1:
            raise ValueError("half dimension N must be >= 1")
        if any(e % 2 == 0 for e in self.eta):
            raise ValueError("all eta_j must be odd")


def _validate_fibers(fibers: Sequence[Tuple[int, int]]):
    if len(fibers) < 1:
        raise ValueError("at least one exceptional fiber is required")


def seifert_signature(genus: int, fibers: Sequence[Tuple[int, int]]) -> OrbifoldSignature:
    """Base-orbifold signature of the fibration: compact, orders = fiber orders."""
    return OrbifoldSignature(genus=genus, cusp_count=0,
                             elliptic_orders=tuple(nu for nu, _ in fibers))


# ---------------------------------------------------------------------------
# torsion closed forms
# ---------------------------------------------------------------------------

def kitano_torsion(genus: int, fibers: Sequence[Tuple[int, int]],
                   rep: KitanoRep) -> FactoredMagnitude:
    """|tau(X)| = 2^{m(2-2g-rho)} |sin(pi k)|^{m(2-2g-rho)}
    prod_j prod_p 2 |sin(pi (k + alpha_jp)/nu_j)|, k = a/m."""
    _validate_fibers(fibers)
    if len(rep.residues) != len(fibers):
        raise ValueError("one residue class per fiber is required")
    m = rep.dimension
    rho = len(fibers)
    k = rep.weight
    e = m * (2 - 2 * genus - rho)
    mag = FactoredMagnitude.from_integer(2) ** e
    mag = mag * FactoredMagnitude.sin_pi(k) ** e
    for (nu, _), klass in zip(fibers, rep.residues):
        for a in klass:
            mag = mag * FactoredMagnitude.from_integer(2)
            mag = mag * FactoredMagnitude.sin_pi((k + a) / nu)
    return mag


def kitano_torsion_complex(genus: int, fibers: Sequence[Tuple[int, int]],
                           rep: KitanoRep) -> float:
    """|tau(X)| evaluated from the complex product
    (lambda - 1)^{m(2-2g-rho)} prod (exp(-2 pi i (k+alpha)/nu) - 1);
    an independent oracle for :func:`kitano_torsion`."""
    _validate_fibers(fibers)
    m = rep.dimension
    rho = len(fibers)
    lam = cmath.exp(2j * math.pi * rep.unit_exponent / m)
    k = float(rep.weight)
    val = (lam - 1.0) ** (m * (2 - 2 * genus - rho))
    for (nu, _), klass in zip(fibers, rep.residues):
        for a in klass:
            val *= cmath.exp(-2j * math.pi * (k + a) / nu) - 1.0
    return abs(val)


def yamaguchi_torsion(genus: int, fibers: Sequence[Tuple[int, int]],
                      rep: YamaguchiRep) -> FactoredMagnitude:
    """tau(X) = 2^{-2N(2-2g-rho)} prod_j prod_{l=1..N}
    (2 sin(pi (2l-1) eta_j / (2 nu_j)))^{-2}."""
    _validate_fibers(fibers)
    if len(rep.eta) != len(fibers):
        raise ValueError("one eta_j per fiber is required")
    for (nu, _), e in zip(fibers, rep.eta):
        if math.gcd(e, nu) != 1:
            raise ValueError(f"eta = {e} is not coprime to the fiber order {nu}")
    n = rep.half_dimension
    rho = len(fibers)
    mag = FactoredMagnitude.from_integer(2) ** (-2 * n * (2 - 2 * genus - rho))
    for (nu, _), e in zip(fibers, rep.eta):
        for l in range(1, n + 1):
            q = Fraction((2 * l - 1) * e, 2 * nu)
            mag = mag * (FactoredMagnitude.from_integer(2)
                         * FactoredMagnitude.sin_pi(q)) ** -2
    return mag


# ---------------------------------------------------------------------------
# induced multiplier systems
# ---------------------------------------------------------------------------

def kitano_multiplier_system(rep: KitanoRep,
                             fibers: Sequence[Tuple[int, int]]) -> MultiplierSystem:
    """Multiplier system of weight 2a/m whose elliptic eigenvalues match the
    representation on the exceptional-fiber cores (residues pass through)."""
    _validate_fibers(fibers)
    return MultiplierSystem(
        dimension=rep.dimension,
        weight=rep.weight,
        elliptic_residues=tuple(rep.residues),
        parabolic_angles=(),
    )


def yamaguchi_multiplier_system(rep: YamaguchiRep,
                                fibers: Sequence[Tuple[int, int]]) -> MultiplierSystem:
    """Weight-one system of dimension 2N: residues are the numbers
    (+-(2l-1) eta_j - 1)/2 reduced mod nu_j."""
    _validate_fibers(fibers)
    residues = []
    for (nu, _), e in zip(fibers, rep.eta):
        klass = []
        for l in range(1, rep.half_dimension + 1):
            for sgn in (1, -1):
                klass.append(((sgn * (2 * l - 1) * e - 1) // 2) % nu)
        residues.append(tuple(klass))
    return MultiplierSystem(
        dimension=2 * rep.half_dimension,
        weight=Fraction(1, 2),
        elliptic_residues=tuple(residues),
        parabolic_angles=(),
    )


# ---------------------------------------------------------------------------
# Fried-identity verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FriedReport:
    torsion_magnitude: FactoredMagnitude
    zeta_magnitude: FactoredMagnitude
    torsion_numeric: float
    zeta_numeric: float
    relative_deviation: float
    order: int
    order_ok: bool
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.order_ok and self.relative_deviation <= self.tolerance


def _zeta_lead(genus, fibers, ms) -> Tuple[int, FactoredMagnitude]:
    sig = seifert_signature(genus, fibers)
    profile = residue_profile(sig, ms)
    data = ScatteringData.compact()
    order = ruelle_order_at_zero(sig, ms, profile, data)
    lead = lead_coefficient(sig, ms, profile, data)
    return order, lead.magnitude


def verify_fried_kitano(genus: int, fibers: Sequence[Tuple[int, int]],
                        rep: KitanoRep, tolerance: float = 1e-10) -> FriedReport:
    """Check |R(0)|^{-1} == |tau(X)| through independent code paths."""
    torsion = kitano_torsion(genus, fibers, rep)
    ms = kitano_multiplier_system(rep, fibers)
    order, zeta_mag = _zeta_lead(genus, fibers, ms)
    inv = zeta_mag ** -1
    t = torsion.numeric()
    z = inv.numeric()
    return FriedReport(
        torsion_magnitude=torsion,
        zeta_magnitude=inv,
        torsion_numeric=t,
        zeta_numeric=z,
        relative_deviation=abs(t / z - 1.0),
        order=order,
        order_ok=(order == 0),
        tolerance=tolerance,
    )


def verify_fried_yamaguchi(genus: int, fibers: Sequence[Tuple[int, int]],
                           rep: YamaguchiRep, tolerance: float = 1e-10) -> FriedReport:
    """Check tau(X) == |R(0)| through independent code paths."""
    torsion = yamaguchi_torsion(genus, fibers, rep)
    ms = yamaguchi_multiplier_system(rep, fibers)
    order, zeta_mag = _zeta_lead(genus, fibers, ms)
    t = torsion.numeric()
    z = zeta_mag.numeric()
    return FriedReport(
        torsion_magnitude=torsion,
        zeta_magnitude=zeta_mag,
        torsion_numeric=t,
        zeta_numeric=z,
        relative_deviation=abs(t / z - 1.0),
        order=order,
        order_ok=(order == 0),
        tolerance=tolerance,
    )


# ---------------------------------------------------------------------------
# randomized instances (used by the fuzz suites and the CLI)
# ---------------------------------------------------------------------------

def random_kitano_instance(rng, max_genus=4, max_fibers=4, max_order=9, max_dim=5):
    g = int(rng.integers(1, max_genus + 1))
    rho = int(rng.integers(1, max_fibers + 1))
    fibers = []
    for _ in range(rho):
        nu = int(rng.integers(2, max_order + 1))
        beta = int(rng.integers(1, nu))
        while math.gcd(beta, nu) != 1:
            beta = int(rng.integers(1, nu))
        fibers.append((nu, beta))
    m = int(rng.integers(2, max_dim + 1))
    a = int(rng.integers(1, m))
    while math.gcd(a, m) != 1:
        a = int(rng.integers(1, m))
    residues = tuple(tuple(int(x) for x in rng.integers(0, nu, size=m))
                     for nu, _ in fibers)
    return g, tuple(fibers), KitanoRep(dimension=m, unit_exponent=a, residues=residues)


def random_yamaguchi_instance(rng, max_genus=4, max_fibers=4, max_order=9, max_half_dim=4):
    g = int(rng.integers(1, max_genus + 1))
    rho = int(rng.integers(1, max_fibers + 1))
    fibers = []
    eta = []
    for _ in range(rho):
        nu = int(rng.integers(2, max_order + 1))
        fibers.append((nu, nu - 1))
        e = int(rng.integers(0, nu)) * 2 + 1
        while math.gcd(e, nu) != 1:
            e = int(rng.integers(0, nu)) * 2 + 1
        eta.append(e)
    n = int(rng.integers(1, max_half_dim + 1))
    return g, tuple(fibers), YamaguchiRep(half_dimension=n, eta=tuple(eta))

"""The explicit Hecke-congruence pipeline: invariants of Gamma_0(N), cusp and
elliptic character actions, the scattering-determinant lead data, and the
fully explicit lead term of the weight-zero twisted Ruelle zeta at s = 0.

Everything is exact: magnitudes are factored values whose L-function content
stays symbolic until a resolver is applied, so that independent evaluation
paths can be compared atom by atom.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .characters import (DirichletCharacter, characters, l_value_resolver,
                         trivial_character, unit_group)
from .core import MultiplierSystem, OrbifoldSignature
from .factored import FactoredMagnitude
from .functional_eq import ScatteringData
from .leadterm import LeadTermResult

__all__ = [
    "LevelInvariants",
    "level_invariants",
    "CuspRep",
    "cusp_set",
    "parabolic_character_value",
    "is_singular_cusp",
    "singular_cusp_count",
    "tau0_closed_form",
    "EllipticAction",
    "elliptic_action",
    "order_two_points",
    "order_three_points",
    "ScatteringTriple",
    "ScatteringSets",
    "scattering_pairs",
    "ScatteringLead",
    "scattering_lead",
    "CongruenceReport",
    "ruelle_lead",
    "prime_square_lead",
    "build_phi",
    "half_trace_exponent",
    "orbifold_data",
]


def divisors(n: int) -> List[int]:
    out = [d for d in range(1, int(math.isqrt(n)) + 1) if n % d == 0]
    out += [n // d for d in reversed(out) if d * d != n]
    return out


def euler_phi(n: int) -> int:
    out = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def prime_factors(n: int) -> List[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _ord_p(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


# ---------------------------------------------------------------------------
# level invariants
# ---------------------------------------------------------------------------

def _kronecker_minus1(p: int) -> int:
    if p == 2:
        return 0
    return 1 if p % 4 == 1 else -1


def _kronecker_minus3(p: int) -> int:
    if p == 3:
        return 0
    return 1 if p % 3 == 1 else -1


def elliptic_class_counts(N: int) -> Dict[int, int]:
    """Number of conjugacy classes of elliptic points of order 2 and 3."""
    if N == 1:
        return {2: 1, 3: 1}
    e2 = 0 if N % 4 == 0 else math.prod(1 + _kronecker_minus1(p) for p in prime_factors(N))
    e3 = 0 if N % 9 == 0 else math.prod(1 + _kronecker_minus3(p) for p in prime_factors(N))
    return {2: e2, 3: e3}


def cusp_count(N: int) -> int:
    return sum(euler_phi(math.gcd(d, N // d)) for d in divisors(N))


@dataclass(frozen=True)
class LevelInvariants:
    level: int
    index: int
    rho: int
    nu_counts: Dict[int, int]
    tau: int
    genus: int
    area_over_2pi: Fraction

    @property
    def volume(self) -> float:
        return float(self.area_over_2pi) * 2.0 * math.pi

    @property
    def elliptic_orders(self) -> Tuple[int, ...]:
        return (2,) * self.nu_counts[2] + (3,) * self.nu_counts[3]

    def signature(self) -> OrbifoldSignature:
        return OrbifoldSignature(genus=self.genus, cusp_count=self.tau,
                                 elliptic_orders=self.elliptic_orders)


@lru_cache(maxsize=None)
def level_invariants(N: int) -> LevelInvariants:
    """rho, tau, index, hyperbolic area and genus of Gamma_0(N).

    The genus is solved from area/(2 pi) = index/6 = 2g - 2 + sum(1 - 1/nu) + tau
    and checked to be a nonnegative integer.
    """
    if N < 1:
        raise ValueError("level must be >= 1")
    index = N * math.prod(Fraction(p + 1, p) for p in prime_factors(N))
    assert index.denominator == 1
    index = int(index)
    counts = elliptic_class_counts(N)
    tau = cusp_count(N)
    area = Fraction(index, 6)
    excess = counts[2] * Fraction(1, 2) + counts[3] * Fraction(2, 3)
    two_g_minus_2 = area - excess - tau
    g = (two_g_minus_2 + 2) / 2
    if g.denominator != 1 or g < 0:
        raise ArithmeticError(f"genus of level {N} came out as {g}; invariants inconsistent")
    return LevelInvariants(level=N, index=index, rho=counts[2] + counts[3],
                           nu_counts=counts, tau=tau, genus=int(g), area_over_2pi=area)


# ---------------------------------------------------------------------------
# cusps and the parabolic action
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CuspRep:
    """Cusp a/c of Gamma_0(N): c | N, a coprime to c, a mod gcd(c, N/c)."""

    c: int
    a: int
    width_gcd: int  # gcd(c, N/c)


@lru_cache(maxsize=None)
def cusp_set(N: int) -> Tuple[CuspRep, ...]:
    out = []
    for c in divisors(N):
        d = math.gcd(c, N // c)
        for a0 in range(1, d + 1):
            if math.gcd(a0, d) != 1:
                continue
            a = a0
            while math.gcd(a, c) != 1:
                a += d
            out.append(CuspRep(c=c, a=a, width_gcd=d))
    return tuple(out)


def parabolic_character_value(N: int, chi: DirichletCharacter,
                              cusp: CuspRep) -> Fraction:
    """Phase of chi on the parabolic generator fixing the cusp:
    chi(S_{a/c}) = chi(1 - a N / gcd(c, N/c))."""
    arg = 1 - cusp.a * (N // cusp.width_gcd)
    t = chi.phase(arg)
    if t is None:
        raise ArithmeticError("parabolic generator entry not coprime to the level")
    return t


def is_singular_cusp(N: int, conductor: int, cusp: CuspRep) -> bool:
    return (N // cusp.width_gcd) % conductor == 0


def singular_cusp_count(N: int, chi: DirichletCharacter) -> int:
    """tau0 by direct enumeration of chi on every cusp generator."""
    return sum(1 for cusp in cusp_set(N)
               if parabolic_character_value(N, chi, cusp) == 0)


def tau0_closed_form(N: int, q: int) -> int:
    """tau0 from the divisor sum, cross-checked against the per-prime product."""
    if N % q != 0:
        raise ValueError("the conductor must divide the level")
    total = sum(euler_phi(math.gcd(c, N // c)) for c in divisors(N)
                if (N // math.gcd(c, N // c)) % q == 0)
    prod = 1
    for p in prime_factors(N):
        np_, qp = _ord_p(N, p), _ord_p(q, p)
        if np_ < 2 * qp:
            prod *= 2 * p ** (np_ - qp)
        else:
            prod *= p ** (np_ // 2) + p ** ((np_ - 1) // 2)
    if total != prod:
        raise ArithmeticError(f"tau0 forms disagree at N={N}, q={q}: {total} vs {prod}")
    return total


# ---------------------------------------------------------------------------
# elliptic action
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def order_two_points(N: int) -> Tuple[int, ...]:
    """Solutions of x^2 + 1 = 0 mod N: lower-right entries of the trace-zero
    elliptic representatives."""
    return tuple(x for x in range(N) if (x * x + 1) % N == 0)


@lru_cache(maxsize=None)
def order_three_points(N: int) -> Tuple[int, ...]:
    """Solutions of x^2 - x + 1 = 0 mod N: lower-right entries of the trace-one
    (primitive order-three) elliptic representatives."""
    return tuple(x for x in range(N) if (x * x - x + 1) % N == 0)


@dataclass(frozen=True)
class EllipticAction:
    """Character values on the elliptic class representatives."""

    tilde_tau0: int
    fixed_order2: int       # classes of order 2 with chi(R) = 1
    fixed_order3: int       # classes of order 3 with chi(R) = 1
    moved_order3: int       # classes of order 3 with chi(R) != 1
    magnitude: FactoredMagnitude
    residues: Tuple[Tuple[int, int], ...]  # (nu_j, alpha_j) per class


def elliptic_action(N: int, chi: DirichletCharacter) -> EllipticAction:
    """Evaluate chi on the elliptic classes and fold into the closed form
    2^C1 * 3^C2 * (sqrt(3)/2)^(-C3)."""
    sols2 = order_two_points(N)
    sols3 = order_three_points(N)
    counts = elliptic_class_counts(N)
    if len(sols2) != counts[2] or len(sols3) != counts[3]:
        raise ArithmeticError(f"elliptic point counts disagree at N={N}")
    c1 = c2 = c3 = 0
    residues = []
    mag = FactoredMagnitude.one()
    for x in sols2:
        t = chi.phase(x)
        if (t * 2).denominator != 1:
            raise ValueError("character value on an order-2 class is not a square root "
                             "of unity; the character must be even")
        if t == 0:
            c1 += 1
            mag = mag * FactoredMagnitude.from_integer(2)
        residues.append((2, int((-t * 2) % 2)))
    for x in sols3:
        t = chi.phase(x)
        if (t * 3).denominator != 1:
            raise ValueError("character value on an order-3 class is not a cube root "
                             "of unity; the character must be even")
        if t == 0:
            c2 += 1
            mag = mag * FactoredMagnitude.from_integer(3)
        else:
            c3 += 1
            mag = mag * FactoredMagnitude.sin_pi(Fraction(1, 3)) ** -1
        residues.append((3, int((-t * 3) % 3)))
    return EllipticAction(tilde_tau0=c1 + c2, fixed_order2=c1, fixed_order3=c2,
                          moved_order3=c3, magnitude=mag, residues=tuple(residues))


# ---------------------------------------------------------------------------
# scattering sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScatteringTriple:
    m: int
    xi1: DirichletCharacter    # primitive
    xi2: DirichletCharacter    # primitive
    product_primitive: DirichletCharacter  # (xi1 xi2)_*
    in_f0: bool

    @property
    def q1(self) -> int:
        return self.xi1.modulus

    @property
    def q2(self) -> int:
        return self.xi2.modulus

    def euler_primes(self) -> List[int]:
        """Primes p | m q1 with (xi1 xi2)_*(p) = 1."""
        return [p for p in prime_factors(self.m * self.q1)
                if self.product_primitive.phase(p) == 0]


@dataclass(frozen=True)
class ScatteringSets:
    level: int
    character: DirichletCharacter
    members: Tuple[ScatteringTriple, ...]
    g_set: Tuple[int, ...]

    @property
    def f_count(self) -> int:
        return len(self.members)

    @property
    def f0_count(self) -> int:
        return sum(1 for t in self.members if t.in_f0)


@lru_cache(maxsize=None)
def _chars_mod(N: int) -> Tuple[DirichletCharacter, ...]:
    return tuple(characters(N))


@lru_cache(maxsize=None)
def _chars_by_cond_divisor(N: int) -> Dict[int, Tuple[DirichletCharacter, ...]]:
    table = {}
    for m in divisors(N):
        table[m] = tuple(psi for psi in _chars_mod(N) if m % psi.conductor == 0)
    return table


def g_set(N: int, q: int) -> Tuple[int, ...]:
    return tuple(m for m in divisors(N)
                 if (N // math.gcd(m, N // m)) % q == 0)


def scattering_pairs(N: int, chi: DirichletCharacter) -> ScatteringSets:
    """Enumerate the scattering index set F (and F0) for level N, nebentypus chi.

    A triple (m, xi1, xi2) has m | N, primitive xi2 with cond | m, and xi1 the
    primitivisation of chi*xi2 subject to m*cond(xi1) | N; the parity condition
    holds automatically for even chi.  #F = tau0 is asserted.
    """
    if chi.modulus != N:
        raise ValueError("character modulus must equal the level")
    if not chi.is_even:
        raise ValueError("the scattering set is defined for even characters "
                         "(weight-zero multiplier systems)")
    members = []
    by_cond = _chars_by_cond_divisor(N)
    for m in divisors(N):
        for psi2 in by_cond[m]:
            psi1 = chi * psi2
            q1 = psi1.conductor
            if N % (m * q1) != 0:
                continue
            xi1 = psi1.primitivize()
            xi2 = psi2.primitivize()
            prod = psi1 * psi2
            prod_prim = prod.primitivize()
            members.append(ScatteringTriple(
                m=m, xi1=xi1, xi2=xi2, product_primitive=prod_prim,
                in_f0=prod_prim.is_trivial))
    sets = ScatteringSets(level=N, character=chi, members=tuple(members),
                          g_set=g_set(N, chi.conductor))
    tau0 = tau0_closed_form(N, chi.conductor)
    if sets.f_count != tau0:
        raise ArithmeticError(
            f"#F = {sets.f_count} differs from tau0 = {tau0} at N={N}, chi={chi}")
    return sets


@dataclass(frozen=True)
class ScatteringLead:
    """Order n0 and |a_n0 d(1)| of the Dirichlet-series scattering part."""

    n0: int
    magnitude: FactoredMagnitude
    sets: ScatteringSets

    def numeric(self) -> float:
        return self.magnitude.numeric(l_value_resolver)


def _abs_one_minus_root(t: Fraction) -> FactoredMagnitude:
    """|1 - exp(2 pi i t)| = 2 sin(pi t) for t in (0, 1)."""
    return FactoredMagnitude.from_integer(2) * FactoredMagnitude.sin_pi(t)


def scattering_lead(N: int, chi: DirichletCharacter) -> ScatteringLead:
    """n0 and the exact factored |a_n0 d(1)|."""
    sets = scattering_pairs(N, chi)
    n0 = -(sets.f_count - sets.f0_count)
    mag = FactoredMagnitude.one()
    mag = mag * FactoredMagnitude.from_integer(2) ** (-sets.f_count)
    mag = mag * FactoredMagnitude.pi(Fraction(-3 * sets.f_count, 2) + 2 * sets.f0_count)
    mag = mag * FactoredMagnitude.from_integer(3) ** (-sets.f0_count)
    for m in sets.g_set:
        d = math.gcd(m, N // m)
        mag = mag * FactoredMagnitude.from_integer(N // d) ** euler_phi(d)
    for t in sets.members:
        if t.q1 > 1:
            mag = mag * FactoredMagnitude.from_integer(t.q1)
        cond_prod = t.product_primitive.modulus
        if cond_prod > 1:
            mag = mag * FactoredMagnitude.from_integer(cond_prod) ** Fraction(-1, 2)
        for p in prime_factors(t.m * t.q1):
            tp = t.product_primitive.phase(p)
            if tp is None:
                continue  # p divides the conductor: Euler factor |1 - 0| = 1
            if tp == 0:
                n0 -= 1
                mag = mag * FactoredMagnitude.from_rational(Fraction(p * p - 1, p * p))
                mag = mag * (FactoredMagnitude.from_integer(2)
                             * FactoredMagnitude.log_integer(p)) ** -1
            elif 2 * tp == 1:
                mag = mag * FactoredMagnitude.from_rational(Fraction(p * p + 1, p * p))
                mag = mag * _abs_one_minus_root(tp) ** -1
            else:
                num = abs(1 - complex(t.product_primitive(p)) / p ** 2)
                mag = mag * FactoredMagnitude.from_float(num)
                mag = mag * _abs_one_minus_root(tp) ** -1
        if not t.in_f0:
            key = t.product_primitive.canonical_l_key()
            mag = mag * FactoredMagnitude.l_value(2, key)
            mag = mag * FactoredMagnitude.l_value(1, key) ** -1
    return ScatteringLead(n0=n0, magnitude=mag, sets=sets)


# ---------------------------------------------------------------------------
# the lead term of R(s; chi) at s = 0
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceReport:
    level: int
    character: DirichletCharacter
    invariants: LevelInvariants
    tau0: int
    tilde_tau0: int
    f_count: int
    f0_count: int
    n0: int
    lead: LeadTermResult
    elliptic: EllipticAction
    parabolic_magnitude: FactoredMagnitude
    scattering: ScatteringLead

    @property
    def order(self) -> int:
        return self.lead.order

    def numeric(self) -> float:
        return self.lead.magnitude.numeric(l_value_resolver)


def _parabolic_product(N: int, chi: DirichletCharacter) -> FactoredMagnitude:
    """P(N; chi) = prod over non-singular cusps of 2 |1 - chi(S_{a/c})|^{-1}."""
    q = chi.conductor
    mag = FactoredMagnitude.one()
    for cusp in cusp_set(N):
        if is_singular_cusp(N, q, cusp):
            continue
        t = parabolic_character_value(N, chi, cusp)
        if t == 0:
            raise ArithmeticError("non-singular cusp with trivial character value")
        mag = mag * (FactoredMagnitude.from_integer(2) * _abs_one_minus_root(t) ** -1)
    return mag


def ruelle_lead(N: int, chi: Optional[DirichletCharacter] = None) -> CongruenceReport:
    """Order and absolute lead coefficient of R(s; chi) at s = 0 for
    Gamma_0(N) with a weight-zero Dirichlet-character multiplier system."""
    if chi is None:
        chi = trivial_character(N)
    if chi.modulus != N:
        raise ValueError("character modulus must equal the level")
    if not chi.is_even:
        raise ValueError("weight-zero multiplier systems require an even character")
    inv = level_invariants(N)
    q = chi.conductor
    tau0 = tau0_closed_form(N, q)
    ell = elliptic_action(N, chi)
    lead_sc = scattering_lead(N, chi)
    n0 = lead_sc.n0
    order_frac = (inv.genus * 2 - 2 + inv.rho + inv.tau) - tau0 - ell.tilde_tau0 - n0
    parab = _parabolic_product(N, chi)

    mag = lead_sc.magnitude ** -1
    mag = mag * FactoredMagnitude.from_integer(2) ** (2 * inv.genus - 2)
    mag = mag * FactoredMagnitude.pi(
        Fraction(2 * inv.genus - 2 + inv.rho + inv.tau)
        - Fraction(tau0, 2) - ell.tilde_tau0)
    mag = mag * ell.magnitude * parab

    hte = half_trace_exponent(N, chi)
    if hte is None:
        lead = LeadTermResult(order=order_frac, magnitude=mag, sign_known=False)
    else:
        sign = (-1) ** (hte + tau0 + 1)
        lead = LeadTermResult(order=order_frac, magnitude=mag, sign_known=True, sign=sign)
    return CongruenceReport(
        level=N, character=chi, invariants=inv, tau0=tau0,
        tilde_tau0=ell.tilde_tau0, f_count=lead_sc.sets.f_count,
        f0_count=lead_sc.sets.f0_count, n0=n0, lead=lead, elliptic=ell,
        parabolic_magnitude=parab, scattering=lead_sc)


def half_trace_exponent(N: int, chi: DirichletCharacter) -> Optional[int]:
    """(tau0 - tr Phi(1/2)) / 2 where it is actually pinned down.

    Only the level-one case has tau0 = 1; there the scattering matrix is the
    scalar phi(s) and phi(1/2) = -1, so the exponent is 1.  Everywhere else it
    is left unknown rather than guessed.
    """
    if N == 1:
        return 1
    return None


# ---------------------------------------------------------------------------
# prime-square specialisation (independent path)
# ---------------------------------------------------------------------------

_RHO_MOD12 = {1: 4, 5: 2, 7: 2, 11: 0}
_GENUS_CASE_MOD12 = {1: Fraction(7, 3), 5: Fraction(1), 7: Fraction(4, 3), 11: Fraction(0)}
# rho - genus case, the combination entering the order formula
_ORDER_CASE_MOD12 = {1: Fraction(5, 3), 5: Fraction(1), 7: Fraction(2, 3), 11: Fraction(0)}
_F0_BY_B = {0: 4, 1: 2, 2: 0}
# count of vanishing Euler factors sum_F #{p | m q1 : (xi1 xi2)_*(p) = 1}:
# three for b = 0 (members (l,1,1), (l,leg,leg), (l^2,1,1)), two for b = 1
# (the two F0 members), none for b = 2.  The printed corollary says 2 - b,
# which undercounts; its own A2 factors carry the (2 log l) powers 3, 2, 0.
_SIGMA_BY_B = {0: 3, 1: 2, 2: 0}


def prime_square_lead(ell: int, b: int, chi: Optional[DirichletCharacter] = None) -> LeadTermResult:
    """Lead term at level ell^2 (prime ell >= 5) from the case-by-case
    specialisation: an independent evaluation path against :func:`ruelle_lead`.

    The published corollary display drops the cusp count ell + 1 from the
    order and undercounts the vanishing Euler factors; the constants used
    here are the corrected specialisation (the general path validates them).
    """
    if ell < 5 or len(prime_factors(ell)) != 1 or prime_factors(ell)[0] != ell:
        raise ValueError("ell must be a prime >= 5")
    if b not in (0, 1, 2):
        raise ValueError("b must be 0, 1 or 2")
    N = ell * ell
    if chi is None:
        chi = trivial_character(N)
    if chi.modulus != N or chi.conductor != ell ** b:
        raise ValueError(f"character must have modulus {N} and conductor {ell ** b}")
    if not chi.is_even:
        raise ValueError("weight-zero multiplier systems require an even character")

    tau0 = ell + 1 if b in (0, 1) else 2
    two_g_minus_2 = Fraction((ell - 6) * (ell + 1), 6) - _GENUS_CASE_MOD12[ell % 12]
    assert two_g_minus_2.denominator == 1
    c1_ell = int(two_g_minus_2)
    ell_act = elliptic_action(N, chi)
    tilde_tau0 = ell_act.tilde_tau0

    order = (Fraction((ell - 6) * (ell + 1), 6) + _ORDER_CASE_MOD12[ell % 12]
             + (ell + 1) + (_SIGMA_BY_B[b] - _F0_BY_B[b]) - tilde_tau0)
    assert order.denominator == 1
    order = int(order)

    # A1, A2, A3 of the scattering magnitude |a_n0 d(1)| = base * A1 A2 A3
    a1 = FactoredMagnitude.from_integer(ell) ** (4 + (euler_phi(ell) if b in (0, 1) else 0))
    if b == 0:
        a2 = (FactoredMagnitude.from_integer(ell) ** (1 + (ell - 3) // 2)
              * FactoredMagnitude.from_rational(Fraction(ell * ell - 1, ell * ell)) ** 3
              * (FactoredMagnitude.from_integer(2) * FactoredMagnitude.log_integer(ell)) ** -3)
    elif b == 1:
        a2 = (FactoredMagnitude.from_integer(ell) ** Fraction(ell - 1, 2)
              * FactoredMagnitude.from_rational(Fraction(ell * ell - 1, ell * ell)) ** 2
              * (FactoredMagnitude.from_integer(2) * FactoredMagnitude.log_integer(ell)) ** -2)
    else:
        a2 = FactoredMagnitude.one()

    a3 = FactoredMagnitude.one()
    if b == 0:
        for xi in characters(ell):
            sq = xi * xi
            if sq.is_trivial:
                continue
            key = sq.canonical_l_key()
            a3 = a3 * FactoredMagnitude.l_value(2, key) / FactoredMagnitude.l_value(1, key)
    elif b == 1:
        chi_star = chi.primitivize()
        key = chi_star.canonical_l_key()
        a3 = a3 * (FactoredMagnitude.l_value(2, key) / FactoredMagnitude.l_value(1, key)) ** 2
        for xi in characters(ell):
            psi = chi_star * (xi * xi)
            if psi.is_trivial:
                continue
            k2 = psi.canonical_l_key()
            a3 = a3 * FactoredMagnitude.l_value(2, k2) / FactoredMagnitude.l_value(1, k2)
    else:
        key = chi.canonical_l_key()
        a3 = a3 * (FactoredMagnitude.l_value(2, key) / FactoredMagnitude.l_value(1, key)) ** 2

    if b == 2:
        parab = FactoredMagnitude.one()
        for a in range(1, ell):
            t = chi.phase(1 - a * ell)
            parab = parab * (FactoredMagnitude.from_integer(2) * _abs_one_minus_root(t) ** -1)
    else:
        parab = FactoredMagnitude.one()

    mag = FactoredMagnitude.from_integer(2) ** (tau0 + c1_ell)
    mag = mag * FactoredMagnitude.from_integer(3) ** _F0_BY_B[b]
    mag = mag * FactoredMagnitude.pi(tau0 - (_F0_BY_B[b] + _SIGMA_BY_B[b]) + order)
    mag = mag * (a1 * a2 * a3) ** -1
    mag = mag * ell_act.magnitude * parab
    return LeadTermResult(order=order, magnitude=mag, sign_known=False)


# ---------------------------------------------------------------------------
# scattering determinant as a callable, and general-path glue
# ---------------------------------------------------------------------------

def build_phi(N: int, chi: Optional[DirichletCharacter] = None) -> Callable[[complex], complex]:
    """The scattering determinant phi(s; chi) as a complex callable.

    Assembled from the scattering set: a sign, the conductor-power and
    Gamma-factor prefactors, and the ratio of completed Dirichlet L-functions
    per member.  Uses mpmath for the Hurwitz zeta at complex arguments.
    """
    import mpmath as mp

    if chi is None:
        chi = trivial_character(N)
    sets = scattering_pairs(N, chi)
    half_diff = sets.f_count - sets.f0_count
    if half_diff % 2:
        raise ArithmeticError("#F - #F0 should be even")
    sign = (-1) ** (half_diff // 2)
    bigA = 1
    for m in sets.g_set:
        d = math.gcd(m, N // m)
        bigA *= (N // d) ** euler_phi(d)
    member_data = []
    for t in sets.members:
        prim = t.product_primitive
        eulers = [p for p in prime_factors(t.m * t.q1) if prim.phase(p) is not None]
        member_data.append((t.q1, prim, eulers))

    def l_completed(w, prim: DirichletCharacter, eulers):
        f = prim.modulus
        if f == 1:
            val = mp.zeta(w)
        else:
            val = mp.mpf(0)
            for a in range(1, f + 1):
                ph = prim.phase(a)
                if ph is None:
                    continue
                val += mp.expjpi(2 * mp.mpf(ph.numerator) / ph.denominator) * mp.zeta(w, mp.mpf(a) / f)
            val *= mp.power(f, -w)
        for p in eulers:
            ph = prim.phase(p)
            val *= 1 - mp.expjpi(2 * mp.mpf(ph.numerator) / ph.denominator) * mp.power(p, -w)
        return val

    def phi(s):
        s = mp.mpmathify(s)
        val = sign * mp.power(bigA, 1 - 2 * s)
        val *= mp.power(mp.power(mp.pi, 2 * s - 1) * mp.gamma(1 - s) / mp.gamma(s),
                        sets.f_count)
        for q1, prim, eulers in member_data:
            val *= mp.power(q1, 1 - 2 * s)
            val *= l_completed(2 - 2 * s, prim, eulers) / l_completed(2 * s, prim, eulers)
        return complex(val)

    return phi


def orbifold_data(N: int, chi: Optional[DirichletCharacter] = None,
                  include_phi: bool = False):
    """(signature, multiplier system, scattering data) of (Gamma_0(N), chi),
    for driving the general-orbifold machinery on congruence input."""
    if chi is None:
        chi = trivial_character(N)
    if not chi.is_even:
        raise ValueError("weight-zero multiplier systems require an even character")
    inv = level_invariants(N)
    ell_act = elliptic_action(N, chi)
    orders = tuple(nu for nu, _ in ell_act.residues)
    residues = tuple((alpha,) for _, alpha in ell_act.residues)
    angles = []
    q = chi.conductor
    for cusp in cusp_set(N):
        t = parabolic_character_value(N, chi, cusp)
        singular = is_singular_cusp(N, q, cusp)
        if singular != (t == 0):
            raise ArithmeticError("singularity criterion and character value disagree")
        angles.append((t,))
    sig = OrbifoldSignature(genus=inv.genus, cusp_count=inv.tau, elliptic_orders=orders)
    ms = MultiplierSystem(dimension=1, weight=Fraction(0), elliptic_residues=residues,
                          parabolic_angles=tuple(angles))
    sc = scattering_lead(N, chi)
    data = ScatteringData(
        n0=sc.n0,
        a_n0=sc.numeric(),
        d1=1.0,
        c1=0.0,
        half_trace_exponent=half_trace_exponent(N, chi),
        phi=build_phi(N, chi) if include_phi else None,
    )
    return sig, ms, data

"""Dirichlet characters with exact root-of-unity values.

A character mod N is stored as an exponent vector over a canonical generating
set of (Z/NZ)^*: one generator per odd prime power (the least primitive root,
lifted by CRT), plus the standard pair {-1, 5} at powers of two (only -1 at
modulus 4).  Values are exact phases: chi(a) = exp(2 pi i t) with t a
Fraction in [0, 1).  This keeps conductor computation, primitivisation and
products exact, and makes the canonical key (modulus, exponent vector)
reproducible bit for bit.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from .specialfn import digamma, hurwitz_zeta

__all__ = [
    "UnitGroup",
    "unit_group",
    "DirichletCharacter",
    "trivial_character",
    "characters",
    "primitive_characters",
    "character_from_key",
    "l_value",
    "l_value_resolver",
]


def _prime_power_factors(n: int) -> List[Tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _least_primitive_root(p: int) -> int:
    """Least primitive root mod an odd prime p."""
    phi = p - 1
    factors = [q for q, _ in _prime_power_factors(phi)]
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in factors):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")


def _primitive_root_prime_power(p: int, e: int) -> int:
    """Least-primitive-root-based generator of (Z/p^e)^*, p odd."""
    g = _least_primitive_root(p)
    if e == 1:
        return g
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


@dataclass(frozen=True)
class UnitGroup:
    """(Z/NZ)^* presented by a canonical generator list with orders.

    ``blocks`` records, per prime power p^e of the modulus, the indices of the
    generators belonging to it (empty at p = 2, e = 1).
    """

    modulus: int
    generators: Tuple[int, ...]
    orders: Tuple[int, ...]
    # discrete log table: unit -> exponent tuple
    logs: Dict[int, Tuple[int, ...]]
    blocks: Tuple[Tuple[int, int, Tuple[int, ...]], ...]

    @property
    def size(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out


def _crt_lift(residue: int, pk: int, modulus: int) -> int:
    """x = residue mod pk, x = 1 mod modulus/pk."""
    other = modulus // pk
    if other == 1:
        return residue % modulus
    inv = pow(other, -1, pk)
    x = (1 + other * ((residue - 1) * inv % pk)) % modulus
    return x


@lru_cache(maxsize=None)
def unit_group(modulus: int) -> UnitGroup:
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    gens: List[int] = []
    orders: List[int] = []
    blocks: List[Tuple[int, int, Tuple[int, ...]]] = []
    for p, e in _prime_power_factors(modulus):
        pk = p ** e
        idx: List[int] = []
        if p == 2:
            if e >= 2:
                idx.append(len(gens))
                gens.append(_crt_lift(pk - 1, pk, modulus))
                orders.append(2)
            if e >= 3:
                idx.append(len(gens))
                gens.append(_crt_lift(5, pk, modulus))
                orders.append(2 ** (e - 2))
        else:
            idx.append(len(gens))
            gens.append(_crt_lift(_primitive_root_prime_power(p, e), pk, modulus))
            orders.append((p - 1) * p ** (e - 1))
        blocks.append((p, e, tuple(idx)))
    logs: Dict[int, Tuple[int, ...]] = {}
    exps = [0] * len(gens)

    def fill(i: int, value: int):
        if i == len(gens):
            logs[value % modulus] = tuple(exps)
            return
        g, d = gens[i], orders[i]
        v = value
        for t in range(d):
            exps[i] = t
            fill(i + 1, v)
            v = (v * g) % modulus
    fill(0, 1)
    return UnitGroup(modulus=modulus, generators=tuple(gens), orders=tuple(orders),
                     logs=logs, blocks=tuple(blocks))


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod N given by its exponents on the canonical generators:
    chi(g_i) = exp(2 pi i e_i / d_i)."""

    modulus: int
    exponents: Tuple[int, ...]

    def __post_init__(self):
        group = unit_group(self.modulus)
        if len(self.exponents) != len(group.orders):
            raise ValueError(
                f"expected {len(group.orders)} exponents for modulus {self.modulus}")
        object.__setattr__(self, "exponents",
                           tuple(e % d for e, d in zip(self.exponents, group.orders)))

    # -- values -----------------------------------------------------------

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.modulus, self.exponents)

    def phase(self, a: int) -> Optional[Fraction]:
        """chi(a) = exp(2 pi i phase); None when gcd(a, N) > 1."""
        group = unit_group(self.modulus)
        a = a % self.modulus
        if self.modulus == 1:
            return Fraction(0)
        exps = group.logs.get(a)
        if exps is None:
            return None
        t = Fraction(0)
        for e, x, d in zip(self.exponents, exps, group.orders):
            t += Fraction(e * x, d)
        return t % 1

    def __call__(self, a: int) -> complex:
        t = self.phase(a)
        if t is None:
            return 0.0 + 0.0j
        if t == 0:
            return 1.0 + 0.0j
        return cmath.exp(2j * math.pi * float(t))

    def is_one_at(self, a: int) -> bool:
        return self.phase(a) == 0

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    @property
    def parity(self) -> int:
        """chi(-1) as +-1."""
        t = self.phase(-1)
        return 1 if t == 0 else -1

    @property
    def is_even(self) -> bool:
        return self.parity == 1

    @property
    def order(self) -> int:
        group = unit_group(self.modulus)
        out = 1
        for e, d in zip(self.exponents, group.orders):
            if e:
                out = math.lcm(out, d // math.gcd(e, d))
        return out

    # -- algebra ------------------------------------------------------------

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise ValueError("product requires equal moduli; induce first")
        return DirichletCharacter(self.modulus,
                                  tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(-e for e in self.exponents))

    # -- conductor / primitivisation ----------------------------------------

    @property
    def conductor(self) -> int:
        return _conductor(self.key)

    def primitivize(self) -> "DirichletCharacter":
        """The primitive character (mod the conductor) inducing this one."""
        q = self.conductor
        if q == self.modulus:
            return self
        return _primitivize(self.key, q)

    def induce(self, modulus: int) -> "DirichletCharacter":
        """The character mod ``modulus`` induced by this one (conductor must divide)."""
        if modulus % self.modulus and modulus % self.conductor:
            raise ValueError("can only induce to a multiple of the conductor")
        prim = self.primitivize()
        group = unit_group(modulus)
        exps = []
        for g, d in zip(group.generators, group.orders):
            a = g
            while math.gcd(a, prim.modulus) != 1:
                a += modulus
            t = prim.phase(a)
            e = t * d
            if e.denominator != 1:
                raise ValueError("induction failed: incompatible moduli")
            exps.append(int(e) % d)
        return DirichletCharacter(modulus, tuple(exps))

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def canonical_l_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Key identifying {chi, conj(chi)}: |L(s, chi)| only depends on it."""
        return min(self.key, self.conj().key)

    def __repr__(self):
        return f"chi_{self.modulus}{list(self.exponents)}"


@lru_cache(maxsize=None)
def _conductor(key: Tuple[int, Tuple[int, ...]]) -> int:
    """Conductor from the block structure: the product over prime powers of
    the local conductor of each component character."""
    modulus, exponents = key
    group = unit_group(modulus)
    cond = 1
    for p, e, idx in group.blocks:
        if not idx:
            continue
        if p == 2:
            t1 = exponents[idx[0]]
            o2 = 1
            if len(idx) == 2:
                d2 = group.orders[idx[1]]
                t2 = exponents[idx[1]]
                o2 = d2 // math.gcd(d2, t2) if t2 else 1
            if o2 > 1:
                cond *= 4 * o2
            elif t1:
                cond *= 4
        else:
            d = group.orders[idx[0]]
            t = exponents[idx[0]]
            if t:
                o = d // math.gcd(d, t)
                v = 0
                while o % p == 0:
                    o //= p
                    v += 1
                cond *= p ** (1 + v)
    return cond


def conductor_bruteforce(chi: "DirichletCharacter") -> int:
    """Conductor by definition: the least q | N with chi trivial on units
    congruent to 1 mod q.  Slow; kept as an independent oracle."""
    modulus = chi.modulus
    group = unit_group(modulus)
    for q in sorted(d for d in range(1, modulus + 1) if modulus % d == 0):
        if all(chi.phase(a) == 0 for a in group.logs if a % q == 1 % q):
            return q
    return modulus


@lru_cache(maxsize=None)
def _primitivize(key: Tuple[int, Tuple[int, ...]], conductor: int) -> DirichletCharacter:
    modulus, exponents = key
    chi = DirichletCharacter(modulus, exponents)
    group_q = unit_group(conductor)
    exps = []
    for g, d in zip(group_q.generators, group_q.orders):
        a = g
        while math.gcd(a, modulus) != 1:
            a += conductor
        t = chi.phase(a)
        e = t * d
        if e.denominator != 1:
            raise ArithmeticError("primitivisation produced a non-root-of-unity value")
        exps.append(int(e) % d)
    return DirichletCharacter(conductor, tuple(exps))


def trivial_character(modulus: int) -> DirichletCharacter:
    group = unit_group(modulus)
    return DirichletCharacter(modulus, (0,) * len(group.generators))


def characters(modulus: int, even_only: bool = False) -> Iterator[DirichletCharacter]:
    """All characters mod ``modulus`` in canonical (odometer) order."""
    group = unit_group(modulus)
    n = len(group.orders)
    exps = [0] * n
    while True:
        chi = DirichletCharacter(modulus, tuple(exps))
        if not even_only or chi.is_even:
            yield chi
        i = n - 1
        while i >= 0:
            exps[i] += 1
            if exps[i] < group.orders[i]:
                break
            exps[i] = 0
            i -= 1
        if i < 0:
            return


def primitive_characters(conductor: int) -> Iterator[DirichletCharacter]:
    for chi in characters(conductor):
        if chi.is_primitive:
            yield chi


def character_from_key(key: Tuple[int, Tuple[int, ...]]) -> DirichletCharacter:
    return DirichletCharacter(key[0], tuple(key[1]))


# ---------------------------------------------------------------------------
# special values of Dirichlet L-functions
# ---------------------------------------------------------------------------

class LValuePole(ArithmeticError):
    """L(1, trivial) requested: that is the pole of the zeta function."""


@lru_cache(maxsize=None)
def _l_value_cached(s: int, key: Tuple[int, Tuple[int, ...]]) -> complex:
    chi = character_from_key(key)
    f = chi.modulus
    if s == 2:
        acc = 0.0 + 0.0j
        for a in range(1, f + 1):
            v = chi(a)
            if v != 0:
                acc += v * hurwitz_zeta(2.0, a / f)
        return acc / f ** 2
    if s == 1:
        if chi.is_trivial:
            raise LValuePole("L(1, trivial character) diverges")
        acc = 0.0 + 0.0j
        for a in range(1, f + 1):
            v = chi(a)
            if v != 0:
                acc += v * digamma(a / f)
        return -acc / f
    raise ValueError("only s in {1, 2} is supported")


def l_value(s: int, chi: DirichletCharacter) -> complex:
    """L(s, chi) for primitive chi and s in {1, 2}.

    s = 2 uses the finite Hurwitz-zeta combination, s = 1 the finite digamma
    combination; both are exact finite formulas evaluated in double precision.
    """
    if not chi.is_primitive:
        raise ValueError("l_value expects a primitive character")
    return _l_value_cached(s, chi.key)


def l_value_resolver(s: int, char_key: Tuple[int, Tuple[int, ...]]) -> float:
    """|L(s, chi)| resolver for FactoredMagnitude L-value atoms."""
    return abs(_l_value_cached(s, char_key))

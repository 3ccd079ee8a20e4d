"""Exact positive magnitudes as products of atomic factors with rational exponents.

A :class:`FactoredMagnitude` represents a positive real number as a finite
product ``prod atom^exponent`` with exact :class:`~fractions.Fraction`
exponents.  The atoms are deliberately restricted to the shapes that occur in
closed-form lead coefficients: prime integers, pi, sines of rational angles,
logarithms of integers, Dirichlet L-values kept as opaque references, and a
catch-all positive numeric residue.

Exactness rules:

* integers are split into prime powers, so ``from_integer(12)`` carries the
  atoms ``2^2 * 3``;
* ``sin(pi*q)`` is normalised to ``q in (0, 1/2]`` and the classical exact
  values (q = 1/2, 1/3, 1/4, 1/6) are resolved into prime/pi atoms, so that
  algebraically equal products compare equal;
* multiplication adds exponents and powers scale them, both exactly.

Signs never live here; callers carry them separately.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Union

__all__ = [
    "Atom",
    "IntegerBase",
    "Pi",
    "SinPiRational",
    "LogInteger",
    "LValueRef",
    "NumericResidue",
    "FactoredMagnitude",
]


@dataclass(frozen=True)
class IntegerBase:
    """A prime base ``n >= 2``."""

    n: int


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class SinPiRational:
    """``sin(pi*q)`` for rational ``q`` in ``(0, 1/2]`` (canonicalised)."""

    q: Fraction


@dataclass(frozen=True)
class LogInteger:
    """``log n`` for an integer ``n >= 2``."""

    n: int


@dataclass(frozen=True)
class LValueRef:
    """``|L(s, chi)|`` kept symbolic; ``char`` is a canonical character key."""

    s: int
    char: tuple


@dataclass(frozen=True)
class NumericResidue:
    """A positive real with no nicer factorisation."""

    value: float


Atom = Union[IntegerBase, Pi, SinPiRational, LogInteger, LValueRef, NumericResidue]

_KIND_ORDER = {IntegerBase: 0, Pi: 1, SinPiRational: 2, LogInteger: 3, LValueRef: 4, NumericResidue: 5}


def _atom_sort_key(atom: Atom):
    if isinstance(atom, IntegerBase):
        return (0, atom.n)
    if isinstance(atom, Pi):
        return (1,)
    if isinstance(atom, SinPiRational):
        return (2, atom.q.denominator, atom.q.numerator)
    if isinstance(atom, LogInteger):
        return (3, atom.n)
    if isinstance(atom, LValueRef):
        return (4, atom.s, atom.char)
    return (5, atom.value)


def _prime_factors(n: int) -> dict:
    out: dict = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FactoredMagnitude:
    """Immutable product of atoms with exact rational exponents."""

    __slots__ = ("_atoms",)

    def __init__(self, atoms: Optional[Mapping[Atom, Fraction]] = None):
        cleaned = {}
        if atoms:
            for a, e in atoms.items():
                e = Fraction(e)
                if e != 0:
                    cleaned[a] = e
        self._atoms = cleaned

    # -- constructors -------------------------------------------------

    @classmethod
    def one(cls) -> "FactoredMagnitude":
        return cls()

    @classmethod
    def from_integer(cls, n: int) -> "FactoredMagnitude":
        if n <= 0:
            raise ValueError(f"magnitudes are positive; got {n}")
        return cls({IntegerBase(p): Fraction(e) for p, e in _prime_factors(n).items()})

    @classmethod
    def from_rational(cls, q) -> "FactoredMagnitude":
        q = Fraction(q)
        if q <= 0:
            raise ValueError(f"magnitudes are positive; got {q}")
        return cls.from_integer(q.numerator) / cls.from_integer(q.denominator)

    @classmethod
    def pi(cls, exponent=1) -> "FactoredMagnitude":
        return cls({Pi(): Fraction(exponent)})

    @classmethod
    def sin_pi(cls, q) -> "FactoredMagnitude":
        """``|sin(pi*q)|`` for rational ``q`` not an integer, canonicalised."""
        q = Fraction(q) % 1
        if q == 0:
            raise ValueError("sin(pi*q) vanishes for integer q")
        if q > Fraction(1, 2):
            q = 1 - q
        if q == Fraction(1, 2):
            return cls.one()
        if q == Fraction(1, 4):
            return cls({IntegerBase(2): Fraction(-1, 2)})
        if q == Fraction(1, 6):
            return cls({IntegerBase(2): Fraction(-1)})
        if q == Fraction(1, 3):
            return cls({IntegerBase(3): Fraction(1, 2), IntegerBase(2): Fraction(-1)})
        return cls({SinPiRational(q): Fraction(1)})

    @classmethod
    def log_integer(cls, n: int, exponent=1) -> "FactoredMagnitude":
        if n < 2:
            raise ValueError("log_integer needs n >= 2")
        return cls({LogInteger(n): Fraction(exponent)})

    @classmethod
    def l_value(cls, s: int, char_key: tuple, exponent=1) -> "FactoredMagnitude":
        return cls({LValueRef(s, char_key): Fraction(exponent)})

    @classmethod
    def from_float(cls, x: float) -> "FactoredMagnitude":
        """Wrap a positive float; exact if it is tiny-denominator rational."""
        if x <= 0:
            raise ValueError(f"magnitudes are positive; got {x}")
        frac = Fraction(x).limit_denominator(1 << 16)
        if float(frac) == x:
            return cls.from_rational(frac)
        return cls({NumericResidue(x): Fraction(1)})

    @classmethod
    def from_value(cls, x) -> "FactoredMagnitude":
        if isinstance(x, FactoredMagnitude):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.from_rational(abs(Fraction(x)))
        return cls.from_float(abs(float(x)))

    # -- algebra --------------------------------------------------------

    @property
    def atoms(self) -> Mapping[Atom, Fraction]:
        return dict(self._atoms)

    def __mul__(self, other: "FactoredMagnitude") -> "FactoredMagnitude":
        merged = dict(self._atoms)
        for a, e in other._atoms.items():
            merged[a] = merged.get(a, Fraction(0)) + e
        return FactoredMagnitude(merged)

    def __truediv__(self, other: "FactoredMagnitude") -> "FactoredMagnitude":
        return self * other ** -1

    def __pow__(self, exponent) -> "FactoredMagnitude":
        e = Fraction(exponent)
        return FactoredMagnitude({a: x * e for a, x in self._atoms.items()})

    def sqrt(self) -> "FactoredMagnitude":
        return self ** Fraction(1, 2)

    def __eq__(self, other) -> bool:
        return isinstance(other, FactoredMagnitude) and self._atoms == other._atoms

    def __hash__(self):
        return hash(frozenset(self._atoms.items()))

    def is_one(self) -> bool:
        return not self._atoms

    def has_l_values(self) -> bool:
        return any(isinstance(a, LValueRef) for a in self._atoms)

    # -- evaluation -------------------------------------------------------

    def log_numeric(self, l_value_resolver: Optional[Callable[[int, tuple], float]] = None) -> float:
        terms = []
        for a, e in self._atoms.items():
            if isinstance(a, IntegerBase):
                la = math.log(a.n)
            elif isinstance(a, Pi):
                la = math.log(math.pi)
            elif isinstance(a, SinPiRational):
                la = math.log(math.sin(math.pi * float(a.q)))
            elif isinstance(a, LogInteger):
                la = math.log(math.log(a.n))
            elif isinstance(a, LValueRef):
                if l_value_resolver is None:
                    raise ValueError(f"cannot evaluate {a} without an L-value resolver")
                la = math.log(l_value_resolver(a.s, a.char))
            else:
                la = math.log(a.value)
            terms.append(float(e) * la)
        return math.fsum(terms)

    def numeric(self, l_value_resolver: Optional[Callable[[int, tuple], float]] = None) -> float:
        return math.exp(self.log_numeric(l_value_resolver))

    # -- presentation -------------------------------------------------------

    @staticmethod
    def _atom_str(atom: Atom) -> str:
        if isinstance(atom, IntegerBase):
            return str(atom.n)
        if isinstance(atom, Pi):
            return "pi"
        if isinstance(atom, SinPiRational):
            return f"sin(pi*{atom.q})"
        if isinstance(atom, LogInteger):
            return f"log({atom.n})"
        if isinstance(atom, LValueRef):
            mod, exps = atom.char
            return f"|L({atom.s},chi_{mod}{list(exps)})|"
        return f"{atom.value:.12g}"

    def describe(self) -> str:
        if not self._atoms:
            return "1"
        parts = []
        for a in sorted(self._atoms, key=_atom_sort_key):
            e = self._atoms[a]
            base = self._atom_str(a)
            parts.append(base if e == 1 else f"{base}^({e})")
        return " * ".join(parts)

    def as_json(self) -> list:
        out = []
        for a in sorted(self._atoms, key=_atom_sort_key):
            e = self._atoms[a]
            if isinstance(a, IntegerBase):
                d = {"atom": "integer", "n": a.n}
            elif isinstance(a, Pi):
                d = {"atom": "pi"}
            elif isinstance(a, SinPiRational):
                d = {"atom": "sin_pi", "q": str(a.q)}
            elif isinstance(a, LogInteger):
                d = {"atom": "log", "n": a.n}
            elif isinstance(a, LValueRef):
                d = {"atom": "l_value", "s": a.s, "modulus": a.char[0], "exponents": list(a.char[1])}
            else:
                d = {"atom": "numeric", "value": a.value}
            d["exponent"] = str(e)
            out.append(d)
        return out

    def __repr__(self):
        return f"FactoredMagnitude({self.describe()})"

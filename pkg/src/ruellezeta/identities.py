"""Self-check suites: every closed-form identity the library relies on,
evaluated through two independent routes on seeded random instances.

Each suite returns an :class:`IdentityReport` with the worst relative
deviation observed; the suites are deterministic given the seed and are
surfaced both by the test suite and by the command line.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .core import (MultiplierSystem, OrbifoldSignature, conjugate_multiplier,
                   residue_profile)
from .factored import FactoredMagnitude
from .functional_eq import (ScatteringData, elliptic_zeta_ratio,
                            identity_zeta_ratio, log_elliptic_factor,
                            log_identity_factor, log_parabolic_factor,
                            log_selberg_fe_factor, parabolic_zeta_ratio,
                            ruelle_fe_factor, selberg_fe_factor)
from .specialfn import log_sin_pi, sine_product, sine_product_integer

__all__ = [
    "IdentityReport",
    "random_orbifold_instance",
    "random_complex_points",
    "sine_identity_suite",
    "factor_duality_suite",
    "h_symmetry_suite",
    "partition_identity_suite",
    "run_all_suites",
]


@dataclass(frozen=True)
class IdentityReport:
    family: str
    samples: int
    worst_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.worst_deviation <= self.tolerance


def random_complex_points(rng: np.random.Generator, count: int,
                          re_range=(0.05, 0.95), im_range=(0.1, 5.0)) -> np.ndarray:
    re = rng.uniform(*re_range, size=count)
    im = rng.uniform(*im_range, size=count) * rng.choice([-1.0, 1.0], size=count)
    return re + 1j * im


def random_orbifold_instance(rng: np.random.Generator,
                             compact: Optional[bool] = None,
                             integer_weight: Optional[bool] = None,
                             max_dim: int = 3):
    """A random (signature, multiplier, profile, scattering data) tuple.

    Weights are rationals a/m, always admissible.  Noncompact instances get
    random eigenangles; the scattering data stays trivial (phi enters none of
    the factor-duality identities).
    """
    while True:
        g = int(rng.integers(0, 4))
        if compact is True:
            tau = 0
        elif compact is False:
            tau = int(rng.integers(1, 3))
        else:
            tau = int(rng.integers(0, 3))
        rho = int(rng.integers(0, 4))
        orders = tuple(int(v) for v in rng.integers(2, 8, size=rho))
        try:
            sig = OrbifoldSignature(genus=g, cusp_count=tau, elliptic_orders=orders)
            break
        except ValueError:
            continue
    m = int(rng.integers(1, max_dim + 1))
    if integer_weight is None:
        k = Fraction(int(rng.integers(-2 * m, 2 * m + 1)), m)
    elif integer_weight:
        k = Fraction(int(rng.integers(-2, 3)))
    else:
        while True:
            k = Fraction(int(rng.integers(-2 * m, 2 * m + 1)), m)
            if k.denominator > 1:
                break
            if m == 1:
                k = Fraction(1, 2)
                break
    residues = tuple(tuple(int(a) for a in rng.integers(0, nu, size=m)) for nu in orders)
    angles = []
    for _ in range(sig.cusp_count):
        mj = int(rng.integers(0, m + 1))
        rest = [Fraction(int(x), 64) for x in rng.integers(1, 64, size=m - mj)]
        angles.append(tuple([Fraction(0)] * mj + rest))
    ms = MultiplierSystem(dimension=m, weight=k, elliptic_residues=residues,
                          parabolic_angles=tuple(angles))
    profile = residue_profile(sig, ms)
    data = ScatteringData(half_trace_exponent=int(rng.integers(0, profile.tau0 + 1)))
    return sig, ms, profile, data


# ---------------------------------------------------------------------------
# suite 1: cyclotomic sine products
# ---------------------------------------------------------------------------

def sine_identity_suite(seed: int = 0, nu_max: int = 60, samples_per_nu: int = 100,
                        tolerance: float = 1e-12) -> IdentityReport:
    """Direct products versus the 2^(1-nu) sin(pi x) and (-1)^(n-1) nu 2^(1-nu)
    closed forms."""
    from .specialfn import sin_pi

    rng = np.random.default_rng(seed)
    worst = 0.0
    total = 0
    for nu in range(2, nu_max + 1):
        xs = rng.uniform(-3.0, 3.0, size=samples_per_nu)
        xs = xs[np.abs(xs - np.round(xs)) > 1e-3]
        direct = np.array([sine_product(nu, x) for x in xs])
        closed = 2.0 ** (1 - nu) * sin_pi(xs)
        worst = max(worst, float(np.max(np.abs(direct / closed - 1.0))))
        total += xs.size
        for n in range(1, nu + 1):
            sign, mag = sine_product_integer(nu, n)
            direct_int = np.prod([sin_pi((l - n) / nu)
                                  for l in range(1, nu + 1) if l != n])
            worst = max(worst, abs(direct_int / (sign * mag.numeric()) - 1.0))
            total += 1
    return IdentityReport("sine-products", total, worst, tolerance)


# ---------------------------------------------------------------------------
# suite 2: factor duality (Gamma/Barnes-G assembly vs sine closed forms)
# ---------------------------------------------------------------------------

def factor_duality_suite(seed: int = 0, instances: int = 3, samples: int = 200,
                         tolerance: float = 1e-9) -> IdentityReport:
    """The three determinant-factor combinations
    f(1+s) f(1-s) / (f(s) f(-s)) against their sine closed forms."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    total = 0
    for _ in range(instances):
        sig, ms, profile, data = random_orbifold_instance(rng)
        k = float(ms.weight)
        m = ms.dimension
        c = m * float(sig.area_over_2pi)
        for s in random_complex_points(rng, samples):
            lhs = cmath.exp(log_identity_factor(1 + s, sig, ms)
                            + log_identity_factor(1 - s, sig, ms)
                            - log_identity_factor(s, sig, ms)
                            - log_identity_factor(-s, sig, ms))
            rhs = cmath.exp(c * (math.log(4.0) + log_sin_pi(s + k) + log_sin_pi(-s + k)))
            worst = max(worst, abs(lhs / rhs - 1.0))
            total += 1
            if sig.elliptic_class_count:
                lhs = cmath.exp(log_elliptic_factor(1 + s, sig, ms, profile)
                                + log_elliptic_factor(1 - s, sig, ms, profile)
                                - log_elliptic_factor(s, sig, ms, profile)
                                - log_elliptic_factor(-s, sig, ms, profile))
                sum_inv = math.fsum(1.0 / nu for nu in sig.elliptic_orders)
                sum_1m = math.fsum(1.0 - 1.0 / nu for nu in sig.elliptic_orders)
                rhs = cmath.exp(-2 * m * sum_1m * math.log(2.0)
                                + m * sum_inv * (log_sin_pi(s + k) + log_sin_pi(-s + k)))
                for j, nu in enumerate(sig.elliptic_orders):
                    for l in range(1, nu + 1):
                        pair = (cmath.sin(math.pi * (-s - k + l) / nu)
                                * cmath.sin(math.pi * (s - k + l) / nu))
                        rhs *= pair ** (-profile.r[j][l % nu])
                worst = max(worst, abs(lhs / rhs - 1.0))
                total += 1
            if sig.cusp_count:
                lhs = cmath.exp(log_parabolic_factor(1 + s, sig, ms, profile, data)
                                + log_parabolic_factor(1 - s, sig, ms, profile, data)
                                - log_parabolic_factor(s, sig, ms, profile, data)
                                - log_parabolic_factor(-s, sig, ms, profile, data))
                rhs = 2.0 ** (-2 * m * sig.cusp_count)
                for j in range(sig.cusp_count):
                    for b in ms.parabolic_angles[j][profile.fixed_dimensions[j]:]:
                        rhs *= math.sin(math.pi * float(b)) ** (-2)
                rhs *= ((-s - k) * (s - k) / (s * (-s) * (s + 0.5) * (-s + 0.5))) ** profile.tau0
                worst = max(worst, abs(lhs / rhs - 1.0))
                total += 1
    return IdentityReport("factor-duality", total, worst, tolerance)


# ---------------------------------------------------------------------------
# suite 3: symmetry and assembly of the Ruelle factor
# ---------------------------------------------------------------------------

def h_symmetry_suite(seed: int = 0, instances: int = 4, samples: int = 50,
                     tolerance: float = 1e-9) -> IdentityReport:
    """H(s) = H(-s); H under weight conjugation; H against the
    kappa(s+1)/kappa(s) assembly (trivial scattering instances)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    total = 0
    for _ in range(instances):
        sig, ms, profile, data = random_orbifold_instance(rng)
        ms_conj = conjugate_multiplier(sig, ms)
        profile_conj = residue_profile(sig, ms_conj)
        for s in random_complex_points(rng, samples):
            h = ruelle_fe_factor(s, sig, ms, profile)
            worst = max(worst, abs(ruelle_fe_factor(-s, sig, ms, profile) / h - 1.0))
            worst = max(worst,
                        abs(ruelle_fe_factor(s, sig, ms_conj, profile_conj) / h - 1.0))
            total += 2
            if profile.tau0 == 0:
                kappa_ratio = cmath.exp(
                    log_selberg_fe_factor(1 + s, sig, ms, profile, data)
                    - log_selberg_fe_factor(s, sig, ms, profile, data))
                worst = max(worst, abs(kappa_ratio / h - 1.0))
                kappa_inv = cmath.exp(
                    log_selberg_fe_factor(s, sig, ms, profile, data)
                    + log_selberg_fe_factor(1 - s, sig, ms, profile, data))
                worst = max(worst, abs(kappa_inv - 1.0))
                total += 2
    return IdentityReport("h-symmetry", total, worst, tolerance)


# ---------------------------------------------------------------------------
# suite 4: eigenvalue/residue-class partition identities
# ---------------------------------------------------------------------------

def partition_identity_suite(seed: int = 0, samples: int = 200,
                             tolerance: float = 1e-12) -> IdentityReport:
    """prod_l |sin(pi(-k+l)/nu)|^{-r(l)} = prod_p |sin(pi(k+alpha_p)/nu)|^{-1}
    over random residue multisets, plus the odd-eta folding identity."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    total = 0
    for _ in range(samples):
        nu = int(rng.integers(2, 10))
        m = int(rng.integers(1, 6))
        a = int(rng.integers(1, 4 * m))
        denom = int(rng.integers(2, 4 * m))
        k = Fraction(a, denom)
        if ((k % 1) == 0):
            k += Fraction(1, 2)
        alphas = [int(x) for x in rng.integers(0, nu, size=m)]
        lhs = FactoredMagnitude.one()
        for l in range(1, nu + 1):
            r = sum(1 for al in alphas if (al + l) % nu == 0)
            lhs = lhs * FactoredMagnitude.sin_pi((l - k) / nu) ** (-r)
        rhs = FactoredMagnitude.one()
        for al in alphas:
            rhs = rhs * FactoredMagnitude.sin_pi((k + al) / nu) ** -1
        if lhs != rhs:
            worst = max(worst, abs(lhs.numeric() / rhs.numeric() - 1.0) + 1e-6)
        total += 1
    for _ in range(samples // 2):
        nu = int(rng.integers(2, 10))
        n = int(rng.integers(1, 5))
        eta = int(rng.integers(0, nu)) * 2 + 1
        while math.gcd(eta, nu) != 1:
            eta = int(rng.integers(0, nu)) * 2 + 1
        members = [((sgn * (2 * l - 1) * eta - 1) // 2) % nu
                   for l in range(1, n + 1) for sgn in (1, -1)]
        counted = 0
        for l in range(1, nu + 1):
            in_class = [x for x in members if (x + l) % nu == 0]
            counted += len(in_class)
            target = abs(math.sin(math.pi * (2 * l - 1) / (2 * nu)))
            for x in in_class:
                got = abs(math.sin(math.pi * (2 * x + 1) / (2 * nu)))
                worst = max(worst, abs(got / target - 1.0))
                total += 1
        if counted != 2 * n:
            worst = max(worst, 1.0)
    return IdentityReport("partition-identities", total, worst, tolerance)


def run_all_suites(seed: int = 0, samples_scale: float = 1.0,
                   tolerance: float = 1e-9) -> List[IdentityReport]:
    sc = lambda n: max(4, int(n * samples_scale))
    return [
        sine_identity_suite(seed, samples_per_nu=sc(100), tolerance=min(tolerance, 1e-12)),
        factor_duality_suite(seed + 1, samples=sc(200), tolerance=tolerance),
        h_symmetry_suite(seed + 2, samples=sc(50), tolerance=tolerance),
        partition_identity_suite(seed + 3, samples=sc(200), tolerance=min(tolerance, 1e-12)),
    ]

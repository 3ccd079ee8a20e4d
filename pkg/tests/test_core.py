import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruellezeta.core import (AdmissibilityError, DimensionMismatchError,
                             MultiplierSystem, NonHyperbolicError,
                             OrbifoldSignature, admissibility_check,
                             conjugate_multiplier, hyperbolic_area,
                             residue_profile)


class TestSignature:
    def test_modular_like_area(self):
        sig = OrbifoldSignature(genus=0, cusp_count=1, elliptic_orders=(2, 3))
        assert hyperbolic_area(sig) == pytest.approx(math.pi / 3, rel=1e-15)
        assert sig.area_over_2pi == Fraction(1, 6)

    def test_genus_two_area(self):
        sig = OrbifoldSignature(genus=2, cusp_count=0)
        assert hyperbolic_area(sig) == pytest.approx(4 * math.pi, rel=1e-15)

    def test_sphere_rejected(self):
        with pytest.raises(NonHyperbolicError):
            OrbifoldSignature(genus=0, cusp_count=0)
        with pytest.raises(NonHyperbolicError):
            OrbifoldSignature(genus=0, cusp_count=2)
        with pytest.raises(NonHyperbolicError):
            OrbifoldSignature(genus=1, cusp_count=0, elliptic_orders=(1,))


class TestAdmissibility:
    def test_cusped_always_admissible(self):
        sig = OrbifoldSignature(genus=0, cusp_count=1, elliptic_orders=(2, 3))
        for k in (Fraction(0), Fraction(1, 7), Fraction(113, 31)):
            assert admissibility_check(sig, 1, k)

    def test_compact_a_over_m(self):
        sig = OrbifoldSignature(genus=2, cusp_count=0, elliptic_orders=(2, 5))
        for m in (1, 2, 3):
            for a in range(-4, 5):
                assert admissibility_check(sig, m, Fraction(a, m))

    def test_compact_off_lattice(self):
        # area/(2 pi) = 2 for g = 2 bare: lattice is (1/2) Z, so 2/3 misses
        sig = OrbifoldSignature(genus=2, cusp_count=0)
        assert not admissibility_check(sig, 1, Fraction(2, 3))
        assert admissibility_check(sig, 1, Fraction(3, 2))

    def test_construction_time_rejection(self):
        sig = OrbifoldSignature(genus=2, cusp_count=0)
        ms = MultiplierSystem(dimension=1, weight=Fraction(2, 3))
        with pytest.raises(AdmissibilityError):
            residue_profile(sig, ms)
        residue_profile(sig, ms, check_admissibility=False)


class TestResidueProfile:
    def test_one_residue_per_class(self):
        sig = OrbifoldSignature(genus=1, cusp_count=0, elliptic_orders=(3,))
        ms = MultiplierSystem(dimension=3, weight=Fraction(0),
                              elliptic_residues=((0, 1, 2),))
        prof = residue_profile(sig, ms)
        assert prof.r[0] == (1, 1, 1)

    def test_counted_example(self):
        sig = OrbifoldSignature(genus=1, cusp_count=0, elliptic_orders=(4,))
        ms = MultiplierSystem(dimension=3, weight=Fraction(0),
                              elliptic_residues=((1, 1, 3),))
        prof = residue_profile(sig, ms)
        # r(l) = #{alpha : alpha + l = 0 mod 4}, indexed mod 4
        assert prof.r_at(0, 1) == 1
        assert prof.r_at(0, 2) == 0
        assert prof.r_at(0, 3) == 2
        assert prof.r_at(0, 4) == 0

    def test_fractional_weight_kills_tilde_tau0(self):
        sig = OrbifoldSignature(genus=1, cusp_count=0, elliptic_orders=(2,))
        ms = MultiplierSystem(dimension=2, weight=Fraction(1, 2),
                              elliptic_residues=((0, 1),))
        assert residue_profile(sig, ms).tilde_tau0 == 0

    def test_dimension_mismatch(self):
        sig = OrbifoldSignature(genus=1, cusp_count=1, elliptic_orders=(2,))
        ms = MultiplierSystem(dimension=1, weight=Fraction(0),
                              elliptic_residues=((0,), (1,)),
                              parabolic_angles=((Fraction(0),),))
        with pytest.raises(DimensionMismatchError):
            residue_profile(sig, ms)

    def test_angle_normalisation(self):
        ms = MultiplierSystem(dimension=3, weight=Fraction(0),
                              parabolic_angles=((0.75, Fraction(0), Fraction(1, 4)),))
        assert ms.parabolic_angles[0][0] == 0
        assert ms.fixed_dimensions == (1,)

    def test_tau0_and_beta_sums(self):
        sig = OrbifoldSignature(genus=0, cusp_count=2, elliptic_orders=(2,))
        ms = MultiplierSystem(
            dimension=2, weight=Fraction(0),
            elliptic_residues=((0, 1),),
            parabolic_angles=((Fraction(0), Fraction(1, 3)), (Fraction(0), Fraction(0))))
        prof = residue_profile(sig, ms)
        assert prof.tau0 == 3
        assert prof.beta_sums == (Fraction(1, 3), Fraction(0))


@st.composite
def residue_class(draw):
    nu = draw(st.integers(min_value=2, max_value=12))
    m = draw(st.integers(min_value=1, max_value=6))
    alphas = draw(st.lists(st.integers(min_value=0, max_value=nu - 1),
                           min_size=m, max_size=m))
    return nu, tuple(alphas)


@settings(max_examples=200, deadline=None)
@given(residue_class())
def test_r_counts_sum_to_dimension(data):
    nu, alphas = data
    sig = OrbifoldSignature(genus=2, cusp_count=0, elliptic_orders=(nu,))
    ms = MultiplierSystem(dimension=len(alphas), weight=Fraction(0),
                          elliptic_residues=(alphas,))
    prof = residue_profile(sig, ms)
    assert sum(prof.r[0]) == len(alphas)
    # periodicity through the accessor
    for l in range(2 * nu):
        assert prof.r_at(0, l) == prof.r_at(0, l + nu)


@settings(max_examples=200, deadline=None)
@given(residue_class())
def test_alpha_difference_identity(data):
    # alpha(l) - alpha(l-1) = m - nu * r(l), exactly in integers
    nu, alphas = data
    m = len(alphas)
    sig = OrbifoldSignature(genus=2, cusp_count=0, elliptic_orders=(nu,))
    ms = MultiplierSystem(dimension=m, weight=Fraction(0), elliptic_residues=(alphas,))
    prof = residue_profile(sig, ms)
    for l in range(1, nu + 1):
        lhs = prof.alpha_at(0, l) - prof.alpha_at(0, l - 1)
        assert lhs == m - nu * prof.r_at(0, l)


@settings(max_examples=150, deadline=None)
@given(residue_class(), st.integers(min_value=-6, max_value=6))
def test_tilde_tau0_matches_bruteforce(data, k):
    nu, alphas = data
    m = len(alphas)
    sig = OrbifoldSignature(genus=2, cusp_count=0, elliptic_orders=(nu,))
    ms = MultiplierSystem(dimension=m, weight=Fraction(k), elliptic_residues=(alphas,))
    prof = residue_profile(sig, ms)
    brute = sum(1 for a in alphas if (a + k) % nu == 0)
    assert prof.tilde_tau0 == brute


@settings(max_examples=150, deadline=None)
@given(residue_class())
def test_conjugation_relabels_r(data):
    nu, alphas = data
    m = len(alphas)
    sig = OrbifoldSignature(genus=2, cusp_count=0, elliptic_orders=(nu,))
    ms = MultiplierSystem(dimension=m, weight=Fraction(1, 1) / m if m > 1 else Fraction(1),
                          elliptic_residues=(alphas,))
    prof = residue_profile(sig, ms, check_admissibility=False)
    conj = conjugate_multiplier(sig, ms)
    prof_c = residue_profile(sig, conj, check_admissibility=False)
    assert conj.weight == -ms.weight
    for l in range(nu):
        assert prof.r_at(0, l) == prof_c.r_at(0, nu - l)

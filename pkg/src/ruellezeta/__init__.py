"""ruellezeta: special values of twisted Ruelle zeta functions at s = 0.

The library computes, for finite-volume hyperbolic Riemann orbifolds with
unitary multiplier systems given by their eigenvalue data:

* the functional-equation factors of the Selberg and Ruelle zeta functions,
  each evaluable through two independent routes (Gamma/Barnes-G assembly and
  sine closed forms);
* the divisor order and the absolute lead Laurent coefficient of the Ruelle
  zeta at s = 0, in exact factored form;
* Reidemeister-torsion closed forms for Seifert fibered spaces together with
  Fried-identity verifiers that compare both sides through independent code;
* the fully explicit Hecke congruence case, including Dirichlet characters,
  scattering data and L-function special values.
"""
from .core import (AdmissibilityError, CombinatorialProfile, DimensionMismatchError,
                   MultiplierSystem, NonHyperbolicError, OrbifoldSignature,
                   admissibility_check, conjugate_multiplier, hyperbolic_area,
                   residue_profile)
from .factored import FactoredMagnitude
from .functional_eq import (PoleAtError, ScatteringData, elliptic_zeta_ratio,
                            identity_zeta_ratio, parabolic_zeta_ratio,
                            reduced_fe_constant, reduced_fe_factor,
                            ruelle_fe_factor, selberg_fe_factor)
from .leadterm import (LeadTermResult, WeightContinuityReport, lead_coefficient,
                       lead_coefficient_weight_zero, ruelle_order_at_zero,
                       weight_continuity_check)
from .specialfn import (BarnesGZeroError, PoleError, digamma, hurwitz_zeta,
                        log_barnes_g, log_gamma, log_sin_pi, sine_product,
                        sine_product_integer)
from .torsion import (FriedReport, KitanoRep, SeifertIndex, YamaguchiRep,
                      kitano_multiplier_system, kitano_torsion,
                      verify_fried_kitano, verify_fried_yamaguchi,
                      yamaguchi_multiplier_system, yamaguchi_torsion)
from .characters import (DirichletCharacter, characters, l_value,
                         l_value_resolver, primitive_characters,
                         trivial_character)
from .congruence import (CongruenceReport, build_phi, cusp_set, elliptic_action,
                         level_invariants, prime_square_lead, ruelle_lead,
                         scattering_lead, scattering_pairs, tau0_closed_form)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

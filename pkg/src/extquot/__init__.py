"""Exact commutative algebra over F_p[x1..xr]: Groebner kernel, finitely
presented modules, Chern-class invariants, and exterior-quotient
certificates."""

__version__ = "0.1.0"

from .errors import (EngineError, HypothesisViolation, InputError, Limits,
                     ResourceLimitError)
from .ring import Polynomial, Ring, RingAutomorphism, format_poly, parse_poly
from .ideals import (Ideal, gcd_many, ideal_ops, normal_form, poly_gcd,
                     reduced_groebner)
from .modules import (FreeResolution, ModuleMap, PolyMatrix, PresentedModule,
                      cokernel, ext, exterior_power, exterior_power_map,
                      fitting_ideal, free_resolution, image, kernel_map,
                      prune, syzygy_matrix, tensor_quotient)
from .invariants import (ChernClass, PrimeCertificate, annihilator,
                         char_class_c1, chern_t2, is_free_at, is_pseudo_null,
                         localization_length, pseudo_null_part, reflexive_hull,
                         support_codim, torsion_free_quotient,
                         torsion_submodule)
from .exterior import (ExteriorQuotientReport, ExteriorScenario,
                       evaluate_theorem_A, random_corollary_scenario,
                       run_corollary, run_lemma_sequence,
                       vanishing_equivalence, verify_theorem_B,
                       verify_theorem_C)
from .scenario import Scenario
from .harness import Certificate, run_scenario

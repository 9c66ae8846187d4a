"""Exact-arithmetic toolkit for the series identities relating Donaldson
and Seiberg-Witten invariants of smooth 4-manifolds.

Everything is computed over exact rationals: intersection-lattice
arithmetic, degree-truncated formal series, the series formulas and their
congruences, SO(3)-monopole level bookkeeping, and linear solves for
universal structure-formula coefficients.
"""

from .errors import (DimensionMismatch, InadmissibleDeltaError, LevelError,
                     LoadError, NonCharacteristicError, NonIntegralError,
                     TruncationError, UnimodularityError, WittenformError)
from .invariants import (HypothesisReport, KMData, KMFitResult, ManifoldData,
                         SimpleTypeCheck, SpincEntry, Verdict,
                         characteristic_number, check_km_simple_type_relation,
                         check_theorem_hypotheses, expected_sw_dimension,
                         fit_km_coefficients, km_series, mmp_vanishing_check,
                         point_evaluate, sign_exponent, sw_dimension_warnings,
                         sw_series, witten_rhs)
from .lattice import (IntersectionForm, Sublattice, bounded_vectors,
                      characteristic_base, congruent_mod2, diagonal_form,
                      direct_sum, e8_form, find_hyperbolic_pair,
                      find_vector_with_square, hyperbolic_plane,
                      integer_kernel, orthogonal_complement)
from .monopole_levels import (Contribution, ContributionTable,
                              LevelDescriptor, SpinuData, check_delta_window,
                              delta_admissible, enumerate_contributions,
                              i_lambda, level_index, uhlenbeck_level)
from .series import (FormalSeries, HomogeneousPolynomial, exp_linear,
                     exp_quadratic, first_difference, linear_series,
                     quadratic_series)
from .universal_fit import (AssembledRhs, CoefficientTemplate, FitProblem,
                            Observation, Unknown, UniversalFitReport,
                            assemble_rough_rhs, build_template,
                            solve_coefficients, validate_solution)

__version__ = "0.1.0"

__all__ = [
    "AssembledRhs", "CoefficientTemplate", "Contribution",
    "ContributionTable", "DimensionMismatch", "FitProblem", "FormalSeries",
    "HomogeneousPolynomial", "HypothesisReport", "InadmissibleDeltaError",
    "IntersectionForm", "KMData", "KMFitResult", "LevelDescriptor",
    "LevelError", "LoadError", "ManifoldData", "NonCharacteristicError",
    "NonIntegralError", "Observation", "SimpleTypeCheck", "SpincEntry",
    "SpinuData", "Sublattice", "TruncationError", "UnimodularityError",
    "Unknown", "UniversalFitReport", "Verdict", "WittenformError",
    "assemble_rough_rhs", "bounded_vectors", "build_template",
    "characteristic_base", "characteristic_number",
    "check_delta_window", "check_km_simple_type_relation",
    "check_theorem_hypotheses", "congruent_mod2", "delta_admissible",
    "diagonal_form", "direct_sum", "e8_form", "enumerate_contributions",
    "exp_linear", "exp_quadratic", "expected_sw_dimension",
    "find_hyperbolic_pair", "find_vector_with_square", "first_difference",
    "fit_km_coefficients", "hyperbolic_plane", "i_lambda", "integer_kernel",
    "km_series", "level_index", "linear_series", "mmp_vanishing_check",
    "orthogonal_complement", "point_evaluate", "quadratic_series",
    "sign_exponent", "solve_coefficients", "sw_dimension_warnings",
    "sw_series", "uhlenbeck_level", "validate_solution", "witten_rhs",
]

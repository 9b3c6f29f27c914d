"""Exact elimination in the Anderson ring K[T]{t}.

Fields, twisted polynomials, column determinants of affine systems, motive
families, truncated solvers and holonomic closure.
"""

from .errors import (AndersonError, EmptyIntersection, FieldError, HeadSingular, InconsistentLevel,
                     MathDegenerate, MultidimensionalKernel, NoCommonRoot, NoExtension, NonterminatingReduction,
                     NoSolution, NotAQthPower, ParseError, PrecisionExhausted, QthRootUnavailable,
                     RamificationRequired, ResidueFieldTooSmall, TruncationTooSmall, UnsupportedShape,
                     VerificationFailed, ZeroKernel)
from .gf import GF, FiniteField, FFElem, finite_field
from .polynomial import Poly, poly_ring
from .ratfunc import Fq_theta, RationalFunctionField, RatFunc, rational_function_field
from .laurent import LaurentField, LaurentElem, laurent_field
from .fieldspec import FieldSpec, field_make, parse_field_spec, spec_of
from .ore import (AffineSystem, AndersonPoly, AndersonRing, OrePoly, OreRing, anderson_ring, left_divmod,
                  ore_ring, p_resultant, right_gcd)
from .elimination import (EliminationProblem, apply_change, build_M, det_column, elementary_transform,
                          equal_up_to_scalar, inverse_script, minor_cofactors, normalize_vector, scalar_ratio,
                          solve_cofactors)
from .additive import AdditivePoly, additive_roots, additive_roots_laurent, newton_polygon, solve_laurent
from .motives import (carlitz_twist, carlitz_xi_equation, drinfeld, drinfeld_affine_equation,
                      drinfeld_h_1_equation, dual_drinfeld, dual_drinfeld_affine_equation, elementary,
                      elementary_expected_dets, elementary_reduced_h1, elementary_reduced_h_1,
                      elementary_reduction_script, h1_system, h_1_system, q_matrix, tail_reduce, tate_system,
                      zero_dual)
from .solver import (change_ring, decompose, combine, head_rank, projection_contained, reduction_check,
                     residual_vanishes, small_rank, solution_space, solve_truncated, tate_small_rank,
                     valuation_profiles)
from .holonomic import (ClosurePlan, HolonomicWitness, Shape, extend_sequence, plan_dimensions,
                        random_witness, sum_annihilator, sum_closure)
from .grammar import canonical, parse_anderson, parse_ore, render

__version__ = "0.1.0"

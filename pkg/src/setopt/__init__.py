"""Solvers for set optimization under the lower set less relation.

The library computes exact solution sets of finite and polytope-valued
instances (weakly minimal, type-one, type-two, and their shifted
variants), the projected solution sets of the vectorized budget-p
multiobjective problems, smallest sufficient budgets, covering-based
budget bounds, and ships a property-suite verifier plus a CLI.
"""

from .arith import DEFAULT_TOL
from .cone import Cone, in_dual_cone, margin, r_epsilon, validate_cone
from .errors import (CapExceeded, ConeError, DimMismatch, DuplicateLabel,
                     EmptyImage, IterationCapExceeded, NotInterior,
                     NotPointed, ParseError, SetoptError, ValidationError,
                     WeightNotInDualCone, ZeroRow)
from .imagesets import (CoveringResult, ImageSet, covering_number_internal,
                        domination_check, finite_set, hausdorff,
                        hausdorff_sq, min_elements, minimal_vertices,
                        point_margin, polytope, prune_to_extreme)
from .instance import (Decision, Instance, build_instance, discretize_map,
                       instance_distance, load, make_example, save)
from .lp import (Feasibility, LinearProgram, Outcome, check_point,
                 lp_feasible, lp_maximize)
from .setrelations import (LOWER, LOWER_STRICT, LOWER_STRONG,
                           RelationCertificate, set_margin, set_relation,
                           verify_certificate)
from .solver_direct import (CONCEPTS, TYPE_ONE, TYPE_TWO, WEAK,
                            SolutionReport, solve_direct, weak_threshold)
from .vectorizer import (VP_KINDS, VP_MIN, VP_WEAK, MinimalPResult,
                         TupleCertificate, VpReport, brute_force_vp,
                         candidate_pool, covering_p_bound,
                         covering_p_bound_global, membership_vp,
                         min_hitting_set, minimal_p, solve_weighted_sum)
from .verifier import (ConvexExperimentConfig, SuiteConfig, SuiteReport,
                       convex_experiment, run_suite)

__version__ = "0.1.0"

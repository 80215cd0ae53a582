"""Heights, logarithmic gcd and local curve analysis for points on plane curves."""

from .arith import BivarPoly, IntPoly, X, Y, min_poly_of_root, resultant_y, squarefree_part
from .bounds import (
    AuxPolynomial,
    DichotomyReport,
    InequalityReport,
    build_aux_poly,
    check_coeff_vs_roots,
    check_eval_bounds,
    check_root_height,
    check_schmidt,
    check_system_bound,
    main_lemma_rhs,
    main_theorem_check,
)
from .cli import parse_polynomial
from .curve import (
    BranchSummary,
    CurveError,
    PuiseuxBranch,
    PuiseuxExponent,
    check_pfs,
    expand_branch,
    measure_eisenstein,
    puiseux_branches,
    puiseux_exponents,
    vanishing_order,
)
from .experiments import ExperimentConfig, run_experiment, sample_points
from .heights import (
    AlgebraicNumber,
    HeightBreakdown,
    height,
    height_algebraic,
    height_poly,
    height_rational,
    height_vector,
    lgcd,
)
from .places import complex_roots, padic_newton_polygon, relevant_primes
from .reals import PrecisionExhausted
from .siegel import orthogonal_complement, small_kernel_vector, subspace_height

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber",
    "AuxPolynomial",
    "BivarPoly",
    "BranchSummary",
    "CurveError",
    "DichotomyReport",
    "ExperimentConfig",
    "HeightBreakdown",
    "InequalityReport",
    "IntPoly",
    "PrecisionExhausted",
    "PuiseuxBranch",
    "PuiseuxExponent",
    "X",
    "Y",
    "build_aux_poly",
    "check_coeff_vs_roots",
    "check_eval_bounds",
    "check_pfs",
    "check_root_height",
    "check_schmidt",
    "check_system_bound",
    "complex_roots",
    "expand_branch",
    "height",
    "height_algebraic",
    "height_poly",
    "height_rational",
    "height_vector",
    "lgcd",
    "main_lemma_rhs",
    "main_theorem_check",
    "measure_eisenstein",
    "min_poly_of_root",
    "orthogonal_complement",
    "padic_newton_polygon",
    "parse_polynomial",
    "puiseux_branches",
    "puiseux_exponents",
    "relevant_primes",
    "resultant_y",
    "run_experiment",
    "sample_points",
    "small_kernel_vector",
    "squarefree_part",
    "subspace_height",
    "vanishing_order",
]

"""Seminorm, numerical radius and inequality checks for weighted
semi-inner products on finite-dimensional complex spaces.

A positive semidefinite weight A induces [x, y] = <Ax, y>.  This
package computes the induced operator seminorm, numerical radius,
Crawford number and minimum modulus through an exact reduction to an
ordinary matrix problem on the range of A, and verifies a catalog of
two-sided bounds between those quantities on random ensembles.
"""

from . import backend
from .context import (
    AQuantities,
    MembershipResult,
    SemiHilbertContext,
    a_inner,
    a_norm_vec,
    a_quantities,
    cartesian_parts,
    in_ba,
    is_a_positive,
    is_a_selfadjoint,
    make_context,
    membership,
    seminorm,
    sharp,
    tilde,
)
from .ensembles import (
    EnsembleSpec,
    Witness,
    derive_rng,
    gen_a_selfadjoint,
    gen_operator_in_ba,
    gen_psd,
    gen_special,
    tightness_search,
)
from .errors import (
    ConditionNotMet,
    ConvergenceFailure,
    DegenerateSample,
    DimensionMismatch,
    NotHermitian,
    NotInBA,
    NotPSD,
    SemiHilbertError,
    UnknownKind,
    ZeroOperator,
)
from .inequalities import (
    ALL_BUNDLES,
    ALL_REPORT_IDS,
    InequalityReport,
    SuiteResult,
    TrialRecord,
    check_base_11,
    check_base_12,
    check_cor22,
    check_equality_condition,
    check_thm21,
    check_thm23,
    check_thm25,
    check_thm27,
    check_thm28,
    check_thm29,
    check_thm210,
    reports_for,
    run_suite,
)
from .linalg import DEFAULT_TOL, MAX_DIM, Tolerances
from .numrange import (
    DEFAULT_SWEEP,
    SweepOptions,
    crawford_number,
    numerical_radius,
    radius_and_support,
    range_boundary,
    rotated_real_part,
)
from .oracles import (
    OracleEstimate,
    sample_c_upper,
    sample_norm_lower,
    sample_w_lower,
)

__version__ = "0.1.0"

__all__ = [
    "AQuantities",
    "ALL_BUNDLES",
    "ALL_REPORT_IDS",
    "ConditionNotMet",
    "ConvergenceFailure",
    "DEFAULT_SWEEP",
    "DEFAULT_TOL",
    "DegenerateSample",
    "DimensionMismatch",
    "EnsembleSpec",
    "InequalityReport",
    "MAX_DIM",
    "MembershipResult",
    "NotHermitian",
    "NotInBA",
    "NotPSD",
    "OracleEstimate",
    "SemiHilbertContext",
    "SemiHilbertError",
    "SuiteResult",
    "SweepOptions",
    "Tolerances",
    "TrialRecord",
    "UnknownKind",
    "Witness",
    "ZeroOperator",
    "a_inner",
    "a_norm_vec",
    "a_quantities",
    "backend",
    "cartesian_parts",
    "check_base_11",
    "check_base_12",
    "check_cor22",
    "check_equality_condition",
    "check_thm21",
    "check_thm23",
    "check_thm25",
    "check_thm27",
    "check_thm28",
    "check_thm29",
    "check_thm210",
    "crawford_number",
    "derive_rng",
    "gen_a_selfadjoint",
    "gen_operator_in_ba",
    "gen_psd",
    "gen_special",
    "in_ba",
    "is_a_positive",
    "is_a_selfadjoint",
    "make_context",
    "membership",
    "numerical_radius",
    "radius_and_support",
    "range_boundary",
    "reports_for",
    "rotated_real_part",
    "run_suite",
    "sample_c_upper",
    "sample_norm_lower",
    "sample_w_lower",
    "seminorm",
    "sharp",
    "tightness_search",
    "tilde",
]

"""Deterministic-LOCC comparison of pure bipartite states from their Schmidt vectors."""

from .errors import *  # noqa: F401,F403
from .schmidt_core import (
    DEFAULT_CONFIG,
    SUM_EPS,
    ZERO_EPS,
    SchmidtVector,
    SearchConfig,
    binary_entropy,
    entropy,
    make_schmidt,
)
from .locc_order import (
    ComparisonResult,
    EpsilonProfile,
    Variant,
    classify,
    convertible,
    epsilon_profile,
    incomparable_rank3_fast,
    partial_sums,
)
from .schur_analysis import (
    GapReport,
    SchurWitness,
    entropy_gap_decomposition,
    gradient_check,
    schur_witness,
    verify_theorem1,
    verify_theorem2,
)
from .equal_entropy import (
    FamilyRecord,
    PartnerResult,
    differing_count,
    family_sweep,
    find_partner,
    lift,
    max_entropy_given_top,
    reduce_shared,
    solve_tail,
)

__version__ = "0.1.0"

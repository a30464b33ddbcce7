"""Exact sphere and ball cardinalities in symmetric groups under
right-invariant metrics, cross-validated against a brute-force oracle."""

from .enumeration import (
    BetaTable,
    CountReport,
    alpha,
    beta,
    connected_beta,
    count_report,
    iterate_group,
    oracle_ball,
    oracle_sphere,
    pipeline_ball,
    pipeline_sphere,
)
from .growth import (
    NOT_COVERED,
    BinomialPoly,
    RationalPoly,
    ball_polynomial,
    closed_form_beta,
    eval_guarded,
    hamming_sphere,
    leading_term_check,
    q_polynomial,
    r_polynomial,
    series_coefficients,
    sphere_polynomial,
    to_rational,
)
from .metrics import (
    CAYLEY,
    HAMMING,
    KENDALL,
    L1,
    LINF,
    MetricId,
    distance,
    distance_to_identity,
    lp,
    max_distance,
)
from .perm import (
    Permutation,
    SplitDecomposition,
    SplitType,
    concatenate,
    count_embeddings,
    guarded_binom,
    parse,
)

__all__ = [
    "BetaTable",
    "BinomialPoly",
    "CountReport",
    "MetricId",
    "NOT_COVERED",
    "Permutation",
    "RationalPoly",
    "SplitDecomposition",
    "SplitType",
    "alpha",
    "ball_polynomial",
    "beta",
    "closed_form_beta",
    "concatenate",
    "connected_beta",
    "count_embeddings",
    "count_report",
    "distance",
    "distance_to_identity",
    "eval_guarded",
    "guarded_binom",
    "hamming_sphere",
    "iterate_group",
    "leading_term_check",
    "lp",
    "max_distance",
    "oracle_ball",
    "oracle_sphere",
    "parse",
    "pipeline_ball",
    "pipeline_sphere",
    "q_polynomial",
    "r_polynomial",
    "series_coefficients",
    "sphere_polynomial",
    "to_rational",
    "CAYLEY",
    "HAMMING",
    "KENDALL",
    "L1",
    "LINF",
]

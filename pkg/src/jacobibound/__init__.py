"""Jacobi's bound toolkit: tropical determinants, canons, covers and matchings,
with their application to the structural analysis of differential systems."""

from .errors import (
    Infeasible,
    InfeasibleCanon,
    JacobiError,
    NegativeCycle,
    NoSuchCanon,
    NotACanon,
    NotACover,
    NotMaximalFamily,
    NotMinimal,
    ParseError,
)
from .trop_core import (
    NEG_INF,
    OrderMatrix,
    format_matrix,
    parse_matrix,
    partition_identity_check,
    square_complete,
    subdet,
    trop_mul,
    tropdet,
)
from .canon import (
    Cover,
    canon_from_maxima,
    canon_of_cover,
    canon_with_prescribed,
    constrained_canon,
    cover_of_canon,
    cover_shift,
    is_canon,
    jacobi_cover,
    minimal_canon,
    minimize_canon,
    path_relation,
)
from .matching import extremal_cover, koenig, match_hk, match_naive
from .analysis import analyze, jacobi_bound, profile, reduction_plan

__all__ = [
    "Infeasible",
    "InfeasibleCanon",
    "JacobiError",
    "NegativeCycle",
    "NoSuchCanon",
    "NotACanon",
    "NotACover",
    "NotMaximalFamily",
    "NotMinimal",
    "ParseError",
    "NEG_INF",
    "OrderMatrix",
    "format_matrix",
    "parse_matrix",
    "partition_identity_check",
    "square_complete",
    "subdet",
    "trop_mul",
    "tropdet",
    "Cover",
    "canon_from_maxima",
    "canon_of_cover",
    "canon_with_prescribed",
    "constrained_canon",
    "cover_of_canon",
    "cover_shift",
    "is_canon",
    "jacobi_cover",
    "minimal_canon",
    "minimize_canon",
    "path_relation",
    "extremal_cover",
    "koenig",
    "match_hk",
    "match_naive",
    "analyze",
    "jacobi_bound",
    "profile",
    "reduction_plan",
]

__version__ = "0.1.0"

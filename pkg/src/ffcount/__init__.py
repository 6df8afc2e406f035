"""Exact counts, symbolic main terms, and certified error bounds for special
classes of polynomials over finite fields, with a brute-force oracle."""

from .qrat import QPoly, SymRat, qpow, qvar
from .series import TruncSeries, compositions, divisors, moebius
from .ff import (
    BudgetExceeded,
    Embedding,
    FieldCtx,
    FqElem,
    MvPoly,
    UniPoly,
    enumerate_monic_mv,
    enumerate_monic_uni,
    field_embed,
    field_from_q,
    field_make,
)
from .mv_counts import (
    CountReport,
    absirr_exact,
    curve_bounds,
    exact_count,
    irr_exact,
    mv_decomp_approx,
    p_count,
    powerful_approx,
    powerful_exact,
    powerfree_exact,
    red_approx,
    red_exact,
    relirr_approx,
    relirr_exact,
)
from .uv_counts import (
    Bracket,
    alpha_n,
    d_n_bracket,
    d_p2_exact,
    nu,
    tame_intersection,
    wild_intersection_bounds,
)
from .uv_families import (
    CollisionFamily,
    Decomposition,
    classify_p2,
    dickson,
    frobenius_family,
    m_family,
    original_shift,
    ritt_family_first,
    ritt_family_second,
    s_family,
)
from .oracle import CensusReport, oracle_count, oracle_decomp_census, oracle_mv_decomp

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

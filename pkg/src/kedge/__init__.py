"""Exact-rational K-polystability engine for blown-up ruled surfaces.

Decides existence of Kaehler-Einstein edge metrics for the log pairs
(S, (1-beta1) C1tilde + (1-beta2) C2tilde), where S is a Hirzebruch
surface blown up at m points of the positive section, by computing the
stability threshold (delta-invariant) two independent ways — a
Zariski-decomposition volume sweep and complexity-one torus
combinatorics — entirely in rational arithmetic, and cross-checking the
routes against each other on every verdict.
"""

from .picard import (
    Angles,
    C1TILDE,
    C2TILDE,
    CurveId,
    DivisorClass,
    Ei,
    FiTilde,
    GENERIC_FIBER,
    OutsideAmpleRange,
    PULLBACK_C2,
    SurfaceModel,
    SurfaceParams,
    as_model,
    make_surface,
    parse_curve_id,
)
from .ratmath import Rat, RatParseError, format_rat, parse_rat, rat, sign
from .tvariety import (
    DeltaReport,
    ValuationTerm,
    delta_tvariety,
    futaki_vanishes,
)
from .verdict import (
    ConditionBracket,
    InconsistencyError,
    KPOLYSTABLE,
    NOT_KPOLYSTABLE,
    NotFound,
    OUTSIDE_AMPLE_RANGE,
    Verdict,
    condition_sign,
    delta_upper_bound,
    k_polystable,
    rational_condition_point,
)
from .volumes import (
    IrrationalThreshold,
    PiecewiseQuadratic,
    QuadraticPiece,
    expected_vanishing_order,
    log_discrepancy,
    threshold,
    volume_curve,
)
from .zariski import (
    NotPseudoeffective,
    ZariskiDecomposition,
    is_negative_definite,
    volume,
    zariski_decompose,
    zariski_decompose_bruteforce,
)

__version__ = "0.1.0"

__all__ = [
    "Angles",
    "C1TILDE",
    "C2TILDE",
    "ConditionBracket",
    "CurveId",
    "DeltaReport",
    "DivisorClass",
    "Ei",
    "FiTilde",
    "GENERIC_FIBER",
    "InconsistencyError",
    "IrrationalThreshold",
    "KPOLYSTABLE",
    "NOT_KPOLYSTABLE",
    "NotFound",
    "NotPseudoeffective",
    "OUTSIDE_AMPLE_RANGE",
    "OutsideAmpleRange",
    "PULLBACK_C2",
    "PiecewiseQuadratic",
    "QuadraticPiece",
    "Rat",
    "RatParseError",
    "SurfaceModel",
    "SurfaceParams",
    "ValuationTerm",
    "Verdict",
    "ZariskiDecomposition",
    "as_model",
    "condition_sign",
    "delta_tvariety",
    "delta_upper_bound",
    "expected_vanishing_order",
    "format_rat",
    "futaki_vanishes",
    "is_negative_definite",
    "k_polystable",
    "log_discrepancy",
    "make_surface",
    "parse_curve_id",
    "parse_rat",
    "rat",
    "rational_condition_point",
    "sign",
    "threshold",
    "volume",
    "volume_curve",
    "zariski_decompose",
    "zariski_decompose_bruteforce",
    "__version__",
]

"""Coherence analysis and core extraction for finite unit-norm frames."""

from .constructions import (
    AngleCatalogEntry,
    angle_catalog,
    catalog_consistency,
    circular_frame,
    double,
    mub_r2,
    naimark_complement,
    simplex_etf,
    six_in_r4,
    tight_completion,
)
from .coreanalysis import (
    CoreTrace,
    VectorVerdict,
    classify_n_plus_2,
    classify_vector,
    core,
    eigen_span_diagnostic,
    isolable_set,
    perturb_replace,
    replace_all_isolable,
    tight_grassmannian_diagnostic,
    validate_core,
)
from .frames import (
    BoundsCard,
    GramMatrix,
    NeighborSet,
    UnitVectorSystem,
    bounds_card,
    frame_operator,
    gram,
    is_equiangular,
    is_etf,
    neighbor_count_report,
    neighbors,
    reconstruct,
    spans,
    spectral_data,
    tightness,
    welch_bound,
)
from .frameio import emit_frame, parse_frame
from .numerics import (
    ConeResult,
    SpectralData,
    Tolerances,
    min_norm_point,
    nnls_cone_feasible,
    orthonormal_complement,
    rank_of,
    sym_eig,
)
from .report import build_analysis_report, emit_report

__version__ = "0.1.0"

__all__ = [
    "AngleCatalogEntry",
    "BoundsCard",
    "ConeResult",
    "CoreTrace",
    "GramMatrix",
    "NeighborSet",
    "SpectralData",
    "Tolerances",
    "UnitVectorSystem",
    "VectorVerdict",
    "angle_catalog",
    "bounds_card",
    "build_analysis_report",
    "catalog_consistency",
    "circular_frame",
    "classify_n_plus_2",
    "classify_vector",
    "core",
    "double",
    "eigen_span_diagnostic",
    "emit_frame",
    "emit_report",
    "frame_operator",
    "gram",
    "is_equiangular",
    "is_etf",
    "isolable_set",
    "min_norm_point",
    "mub_r2",
    "naimark_complement",
    "neighbor_count_report",
    "neighbors",
    "nnls_cone_feasible",
    "orthonormal_complement",
    "parse_frame",
    "perturb_replace",
    "rank_of",
    "reconstruct",
    "replace_all_isolable",
    "simplex_etf",
    "six_in_r4",
    "spans",
    "spectral_data",
    "sym_eig",
    "tight_completion",
    "tight_grassmannian_diagnostic",
    "tightness",
    "validate_core",
    "welch_bound",
]

"""Exact normalization of tetrahedra and longest-edge bisection orbits."""
from .shape import (
    DegenerateInput,
    LabelingInconsistency,
    NormalizedPoint,
    ShapeKey,
    SquaredLengths,
    canonical_labelings,
    key_to_lengths,
    key_to_point,
    normalize,
    normalize_vertices,
    squared_edge_lengths,
    validate_key,
)
from .leb import ChildPair, bisect_lengths, children, phi_left, phi_right
from .orbit import (
    DedupMode,
    Exact,
    InvalidPerturbation,
    NotReachable,
    OrbitGraph,
    Rounded,
    explore,
    find_word,
    frontier_counts,
    orbit_length,
    sweep,
)
from .metrics import (
    QualityReport,
    cluster_mean_distance,
    h2_distance,
    h3_distance,
    orbit_quality_series,
    product_distance,
    quality,
)

__version__ = "0.1.0"

"""Higher-rank numerical ranges of complex matrices.

The generic engine intersects the half-planes Re(e^{-it} z) <= lambda_k(t)
over a uniform angle grid; closed forms cover block matrices with scalar
diagonal blocks.
"""

from ._core import (
    ArgumentError,
    CapacityError,
    ClosedForm,
    ConvergenceError,
    ConvexRegion,
    DimensionError,
    EllipseDisc,
    EmptinessCertificate,
    EmptyRegionError,
    Error,
    FitError,
    HypothesisError,
    NoClosedFormError,
    RangeResult,
    StructureError,
    UnboundedRegionError,
    all_rank_k_ranges,
    boundary_points,
    classify,
    closed_form_ranges,
    discretization_bound,
    ellipse_2x2,
    ellipse_fit,
    hausdorff_distance,
    hermitian_range,
    membership,
    membership_margin,
    normal_range,
    range_scale,
    rank_k_range,
    shift_matrix,
    support_spectrum,
    two_toeplitz_singular_values,
)

__all__ = [name for name in dir() if not name.startswith("_")]

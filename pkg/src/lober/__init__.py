"""Set-difference areas and lobes of two closed planar polylines."""
from .classes import (
    EquivalenceClass,
    LobeReport,
    SuccessorMap,
    adjacency,
    class_integral,
    gamma_matrix,
    lobe_areas,
    partition,
    signed_adjacency,
    successor_map,
)
from .densify import DensifyConfig, densify
from .estimator import CurveDensifier, LobeAreaEstimator
from .exceptions import (
    AdvectionError,
    DegenerateCurveError,
    DegenerateSegmentError,
    InvalidCurveError,
    LensConfigurationError,
    LoberError,
    OnBoundaryError,
    ResourceError,
    SingularityError,
    TecplotFormatError,
    TopologyError,
    TransversalityError,
)
from .geometry import ClosedCurve, Orientation, Segment, contour_integral, enclosed_area, orientation, reverse, tangent_at
from .intersect import (
    IntersectionPoint,
    IntersectionSet,
    find_intersections,
    intersection_point,
    may_intersect,
    orientation_sign,
    segments_intersect,
)
from .io import read_curve, write_artifacts, write_curve, write_result
from .winding import QTriple, WindingResult, interior_indicator, q_integrals, set_difference_areas, winding_integral

__version__ = "0.1.0"

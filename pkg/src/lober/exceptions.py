"""Exception hierarchy shared by every lober module."""


class LoberError(Exception):
    """Base class for all errors raised by lober."""


class InvalidCurveError(LoberError, ValueError):
    """Curve data violates the closed-polyline contract (too few vertices, NaN, ...)."""


class DegenerateCurveError(InvalidCurveError):
    """Curve encloses zero signed area."""


class DegenerateSegmentError(LoberError, ValueError):
    """Segment has zero length."""


class TransversalityError(LoberError):
    """Two curves meet non-transversally (tangency, collinear overlap).

    ``pair`` holds the offending ``(segment_on_c1, segment_on_c2)`` indices
    when known.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class TopologyError(LoberError):
    """Intersection structure is inconsistent with two simple closed curves."""


class OnBoundaryError(LoberError, ValueError):
    """Query point lies on the curve, so the interior indicator is undefined."""


class SingularityError(LoberError, ValueError):
    """Vector field evaluated at a singular point."""


class AdvectionError(LoberError):
    """A trajectory entered the neighbourhood of a field singularity."""


class ResourceError(LoberError):
    """Densification would exceed the configured vertex budget."""


class TecplotFormatError(LoberError, ValueError):
    """Malformed Tecplot ASCII input; ``lineno`` is 1-based."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class LensConfigurationError(LoberError, ValueError):
    """Two circles do not form a lens (``kind`` is 'disjoint' or 'contained')."""

    def __init__(self, message, kind):
        super().__init__(message)
        self.kind = kind

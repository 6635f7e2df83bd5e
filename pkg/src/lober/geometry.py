"""Closed polylines, exact contour integrals and orientation utilities.

Curves are stored without the repeated closing vertex; every contour sum
wraps the index. The raw contour integral keeps the ``y dx - x dy``
convention, so a counter-clockwise curve gives a *negative* value. Anything
user facing goes through :func:`enclosed_area`, which is always positive.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .exceptions import DegenerateCurveError, DegenerateSegmentError, InvalidCurveError

Point2 = Tuple[float, float]

#: Consecutive vertices closer than this fraction of the bounding-box
#: diagonal are treated as duplicates.
DEDUP_RTOL = 1e-12


class Orientation(enum.Enum):
    CCW = 1
    CW = -1

    def flipped(self) -> "Orientation":
        return Orientation.CW if self is Orientation.CCW else Orientation.CCW


@dataclass(frozen=True)
class Segment:
    a: Point2
    b: Point2

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        if not all(np.isfinite(a + b)):
            raise InvalidCurveError("segment endpoints must be finite")
        if a == b:
            raise DegenerateSegmentError(f"zero-length segment at {a}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def direction(self) -> np.ndarray:
        return np.subtract(self.b, self.a)

    def evaluate(self, t: float) -> np.ndarray:
        return np.asarray(self.a) + t * self.direction


def _dedup(xy: np.ndarray) -> np.ndarray:
    diag = float(np.hypot(*np.ptp(xy, axis=0)))
    tol = DEDUP_RTOL * diag
    keep = np.ones(len(xy), dtype=bool)
    step = np.hypot(*(np.diff(xy, axis=0).T))
    keep[1:] = step > tol
    xy = xy[keep]
    # closing duplicate: last point repeating the first
    while len(xy) > 1 and np.hypot(*(xy[-1] - xy[0])) <= tol:
        xy = xy[:-1]
    return xy


class ClosedCurve:
    """Implicitly closed polyline with cached signed area and orientation.

    Parameters
    ----------
    vertices : array-like of shape (n, 2)
        Ordered vertices. A trailing copy of the first vertex and runs of
        duplicated consecutive vertices are dropped.
    """

    __slots__ = ("_xy", "_signed_area", "_diag")

    def __init__(self, vertices):
        xy = np.array(vertices, dtype=float)
        if xy.ndim != 2 or xy.shape[1] != 2:
            raise InvalidCurveError(f"expected an (n, 2) vertex array, got shape {xy.shape}")
        if len(xy) < 3:
            raise InvalidCurveError(f"a closed curve needs at least 3 vertices, got {len(xy)}")
        if not np.isfinite(xy).all():
            raise InvalidCurveError("vertex coordinates must be finite")
        xy = _dedup(xy)
        if len(xy) < 3:
            raise InvalidCurveError("fewer than 3 distinct vertices after removing duplicates")
        xy.setflags(write=False)
        self._xy = xy
        self._diag = float(np.hypot(*np.ptp(xy, axis=0)))
        self._signed_area = 0.5 * float(np.sum(shoelace_terms(xy)))
        if self._signed_area == 0.0:
            raise DegenerateCurveError("curve encloses zero area")

    @property
    def vertices(self) -> np.ndarray:
        return self._xy

    @property
    def x(self) -> np.ndarray:
        return self._xy[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self._xy[:, 1]

    def __len__(self) -> int:
        return len(self._xy)

    def __repr__(self) -> str:
        return f"ClosedCurve(n={len(self)}, area={abs(self._signed_area):.6g}, {self.orientation.name})"

    @property
    def signed_area(self) -> float:
        """Conventional shoelace area, positive for counter-clockwise curves."""
        return self._signed_area

    @property
    def orientation(self) -> Orientation:
        return Orientation.CCW if self._signed_area > 0 else Orientation.CW

    @property
    def diagonal(self) -> float:
        """Length of the bounding-box diagonal."""
        return self._diag

    @property
    def bbox(self) -> np.ndarray:
        return np.array([self._xy.min(axis=0), self._xy.max(axis=0)])

    def segment(self, i: int) -> Segment:
        n = len(self._xy)
        return Segment(self._xy[i % n], self._xy[(i + 1) % n])

    def segment_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """Start and end points of every segment, each of shape (n, 2)."""
        return self._xy, np.roll(self._xy, -1, axis=0)

    def oriented(self, orientation: Orientation) -> "ClosedCurve":
        return self if self.orientation is orientation else reverse(self)


CurveLike = Union[ClosedCurve, np.ndarray]


def as_curve(curve) -> ClosedCurve:
    return curve if isinstance(curve, ClosedCurve) else ClosedCurve(curve)


def shoelace_terms(xy: np.ndarray) -> np.ndarray:
    """Per-segment ``x_i y_{i+1} - x_{i+1} y_i`` for an implicitly closed ring."""
    x, y = xy[:, 0], xy[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return x * yn - xn * y


def contour_terms(xy: np.ndarray) -> np.ndarray:
    """Per-segment ``y_i x_{i+1} - x_i y_{i+1}``, the exact segment value of ``y dx - x dy``."""
    x, y = xy[:, 0], xy[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return y * xn - x * yn


def contour_integral(curve: CurveLike) -> float:
    """Half the closed contour integral of ``y dx - x dy`` over a polygon.

    Evaluated exactly, term by term. Counter-clockwise curves give the
    negated area.
    """
    curve = as_curve(curve)
    return 0.5 * float(np.sum(contour_terms(curve.vertices)))


def enclosed_area(curve: CurveLike) -> float:
    return abs(contour_integral(curve))


def orientation(curve: CurveLike) -> Orientation:
    curve = as_curve(curve)
    s = float(np.sum(shoelace_terms(curve.vertices)))
    if s == 0.0:
        raise DegenerateCurveError("orientation undefined for zero-area curve")
    return Orientation.CCW if s > 0 else Orientation.CW


def reverse(curve: CurveLike) -> ClosedCurve:
    curve = as_curve(curve)
    return ClosedCurve(curve.vertices[::-1])


def tangent_at(curve: CurveLike, segment_index: int) -> np.ndarray:
    """Unit tangent of segment ``segment_index`` in the stored traversal direction."""
    curve = as_curve(curve)
    n = len(curve)
    if not -n <= segment_index < n:
        raise IndexError(f"segment index {segment_index} out of range for {n} segments")
    a = curve.vertices[segment_index % n]
    b = curve.vertices[(segment_index + 1) % n]
    d = b - a
    norm = float(np.hypot(d[0], d[1]))
    if norm == 0.0:
        raise DegenerateSegmentError(f"segment {segment_index} has zero length")
    return d / norm

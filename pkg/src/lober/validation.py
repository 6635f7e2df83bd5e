"""Input checks shared by the estimator layer."""
from __future__ import annotations

import numpy as np

from .exceptions import InvalidCurveError
from .geometry import ClosedCurve


def check_curve(curve, name: str = "curve") -> ClosedCurve:
    """Coerce an (n, 2) array-like or a ClosedCurve into a validated ClosedCurve."""
    if isinstance(curve, ClosedCurve):
        return curve
    try:
        xy = np.asarray(curve, dtype=float)
    except (TypeError, ValueError) as e:
        raise InvalidCurveError(f"{name}: not a numeric array ({e})") from None
    if xy.ndim != 2 or xy.shape[1] != 2:
        raise InvalidCurveError(f"{name}: expected shape (n, 2), got {xy.shape}")
    try:
        return ClosedCurve(xy)
    except InvalidCurveError as e:
        raise type(e)(f"{name}: {e}") from None


def check_points(points, name: str = "points") -> np.ndarray:
    xy = np.asarray(points, dtype=float)
    if xy.ndim == 1 and xy.shape[0] == 2:
        xy = xy[None]
    if xy.ndim != 2 or xy.shape[1] != 2:
        raise ValueError(f"{name}: expected shape (m, 2), got {xy.shape}")
    if not np.isfinite(xy).all():
        raise ValueError(f"{name}: coordinates must be finite")
    return xy

"""scikit-learn style wrappers: parameters in ``__init__``, work in ``fit``."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classes import lobe_areas
from .densify import DensifyConfig, densify
from .validation import check_curve, check_points
from .winding import interior_indicators, set_difference_areas

OUTSIDE, ONLY_C1, ONLY_C2, BOTH = 0, 1, 2, 3


class LobeAreaEstimator(BaseEstimator):
    """Set-difference areas of two closed curves.

    Parameters
    ----------
    method : {"transverse", "light"}
        Class method (transverse crossings only) or winding method.
    n_pass, n_dens : int
        Densifier passes and split factor applied before measuring; ``n_pass=0`` skips it.
    window : int
        Segments refined on each side of a crossing.
    cross_check : bool
        With the class method, also run the winding method and record the discrepancy.
    n_jobs : int
        Threads for the segment-pair tests.

    Attributes
    ----------
    report_ : LobeReport
    a1_minus_a2_, a2_minus_a1_ : float
    intersections_ : IntersectionSet
    classes_ : list of EquivalenceClass
    """

    def __init__(self, method="transverse", n_pass=0, n_dens=10, window=2, cross_check=True, n_jobs=1):
        self.method = method
        self.n_pass = n_pass
        self.n_dens = n_dens
        self.window = window
        self.cross_check = cross_check
        self.n_jobs = n_jobs

    def fit(self, c1, c2):
        if self.method not in ("transverse", "light"):
            raise ValueError(f"method must be 'transverse' or 'light', got {self.method!r}")
        c1, c2 = check_curve(c1, "c1"), check_curve(c2, "c2")
        if self.n_pass:
            c1, c2 = densify(c1, c2, DensifyConfig(self.n_pass, self.n_dens, self.window), n_jobs=self.n_jobs)
        if self.method == "light":
            rep = set_difference_areas(c1, c2, n_jobs=self.n_jobs)
        else:
            rep = lobe_areas(c1, c2, cross_check=self.cross_check, n_jobs=self.n_jobs)
        self.c1_, self.c2_ = c1, c2
        self.report_ = rep
        self.intersections_ = rep.intersections
        self.classes_ = rep.classes
        self.a1_minus_a2_ = rep.a1_minus_a2
        self.a2_minus_a1_ = rep.a2_minus_a1
        return self

    def predict(self, points):
        """Region label per point: 0 outside both, 1 only in C1, 2 only in C2, 3 in both."""
        check_is_fitted(self, "report_")
        xy = check_points(points)
        in1 = interior_indicators(self.c1_, xy) == -1
        in2 = interior_indicators(self.c2_, xy) == -1
        return (in1.astype(np.int64) + 2 * in2.astype(np.int64)).astype(np.int64)

    def score(self, c1=None, c2=None):
        """Negative relative error bar of the fitted A1\\A2 (0 is best)."""
        check_is_fitted(self, "report_")
        return -float(self.report_.relative_errors[0])


class CurveDensifier(TransformerMixin, BaseEstimator):
    """Refines a curve pair near its crossings; ``transform`` takes and returns the pair."""

    def __init__(self, n_pass=3, n_dens=10, window=2, interpolation="cubic", n_jobs=1):
        self.n_pass = n_pass
        self.n_dens = n_dens
        self.window = window
        self.interpolation = interpolation
        self.n_jobs = n_jobs

    def fit(self, curves, y=None):
        self.config_ = DensifyConfig(self.n_pass, self.n_dens, self.window, self.interpolation)
        return self

    def transform(self, curves):
        check_is_fitted(self, "config_")
        c1, c2 = curves
        return densify(check_curve(c1, "c1"), check_curve(c2, "c2"), self.config_, n_jobs=self.n_jobs)

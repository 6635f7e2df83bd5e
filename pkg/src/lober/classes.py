"""Equivalence classes of crossings and lobe areas from arc integrals.

Each crossing gets one successor: the next crossing along C1 or along C2,
the curve and direction being picked by the crossing's orientation sign.
The cycles of that successor map are the classes; closing the arcs between
the members of one class traces the boundary of one lobe.

Both curves are normalised internally (C1 counter-clockwise, C2 clockwise)
before anything is ranked or integrated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .exceptions import TopologyError
from .geometry import ClosedCurve, Orientation, as_curve, contour_terms, enclosed_area
from .intersect import IntersectionSet, find_intersections, is_simple

# the two signed-adjacency variants: which (curve, sense) each sign of rho follows
VARIANTS = {
    # C1 forward for rho=+1, C2 clockwise for rho=-1
    "c1_plus": {1: ("C1", "+"), -1: ("C2", "-")},
    # the mirrored choice
    "c1_minus": {1: ("C1", "-"), -1: ("C2", "+")},
}
# with C1 counter-clockwise and C2 clockwise, c1_minus closes the lobes of
# A1 \ A2 and c1_plus those of A2 \ A1
DIFFERENCE_VARIANT = {"a1_minus_a2": "c1_minus", "a2_minus_a1": "c1_plus"}


def _curve_arrays(points: IntersectionSet, which: str):
    if which == "C1":
        return points.order_c1, points.c1_orientation
    if which == "C2":
        return points.order_c2, points.c2_orientation
    raise ValueError(f"which_curve must be 'C1' or 'C2', got {which!r}")


def _forward(sense: str, orient: Orientation) -> bool:
    if sense not in ("+", "-"):
        raise ValueError(f"sense must be '+' or '-', got {sense!r}")
    return (sense == "+") == (orient is Orientation.CCW)


def _neighbour(points: IntersectionSet, which: str, sense: str) -> np.ndarray:
    """Index of the next crossing from each crossing along ``which`` in ``sense`` (+ is counter-clockwise)."""
    rank, orient = _curve_arrays(points, which)
    m = len(rank)
    by_rank = np.empty(m, dtype=np.int64)
    by_rank[rank] = np.arange(m)
    step = 1 if _forward(sense, orient) else -1
    return by_rank[(rank + step) % m]


def adjacency(points: IntersectionSet, which_curve: str, sense: str, i: int, j: int) -> int:
    """1 when no other crossing lies on the open arc from ``i`` to ``j`` along ``which_curve`` in ``sense``."""
    if i == j:
        raise ValueError("adjacency needs two distinct crossings")
    rank, orient = _curve_arrays(points, which_curve)
    m = len(rank)
    step = 1 if _forward(sense, orient) else -1
    return int((rank[i] + step) % m == rank[j])


def adjacency_matrix(points: IntersectionSet, which_curve: str, sense: str) -> np.ndarray:
    m = points.count
    out = np.zeros((m, m), dtype=np.int64)
    if m > 1:
        out[np.arange(m), _neighbour(points, which_curve, sense)] = 1
    return out


def signed_adjacency(points: IntersectionSet, i: int, j: int, variant: str = "c1_plus") -> int:
    which, sense = VARIANTS[variant][int(points.rho[i])]
    return adjacency(points, which, sense, i, j)


def gamma_matrix(points: IntersectionSet, variant: str = "c1_plus") -> np.ndarray:
    """Full signed-adjacency matrix, row ``i`` chosen by the sign of crossing ``i``."""
    rows = {s: adjacency_matrix(points, *VARIANTS[variant][s]) for s in (1, -1)}
    pos = points.rho[:, None] == 1
    return np.where(pos, rows[1], rows[-1])


@dataclass(frozen=True)
class SuccessorMap:
    sigma: np.ndarray
    variant: str

    def __call__(self, k: int) -> int:
        return int(self.sigma[k])

    def __len__(self) -> int:
        return len(self.sigma)

    def inverse(self) -> np.ndarray:
        inv = np.empty_like(self.sigma)
        inv[self.sigma] = np.arange(len(self.sigma))
        return inv


def successor_map(points: IntersectionSet, variant: str = "c1_plus") -> SuccessorMap:
    """The unique successor of every crossing under the signed adjacency.

    Raises :class:`TopologyError` when the result is not a bijection or a
    crossing has no orientation sign, which means a crossing was missed or
    a curve is not simple.
    """
    m = points.count
    if m == 0:
        return SuccessorMap(np.zeros(0, dtype=np.int64), variant)
    if m % 2:
        raise TopologyError(f"odd number of crossings ({m})")
    if not np.all(np.abs(points.rho) == 1):
        raise TopologyError("a crossing has no orientation sign (tangential contact)")
    cand = {s: _neighbour(points, *VARIANTS[variant][s]) for s in (1, -1)}
    sigma = np.where(points.rho == 1, cand[1], cand[-1])
    if len(np.unique(sigma)) != m:
        raise TopologyError("successor map is not a bijection: the curves are not simple or a crossing was missed")
    if np.any(points.rho[sigma] == points.rho):
        raise TopologyError("orientation signs do not alternate along the successor map")
    return SuccessorMap(sigma, variant)


@dataclass(frozen=True)
class EquivalenceClass:
    members: Tuple[int, ...]
    lobe_area: float = 0.0
    variant: str = "c1_plus"

    def __len__(self) -> int:
        return len(self.members)


def partition(points: IntersectionSet, variant: str = "c1_plus", sigma: Optional[SuccessorMap] = None) -> List[EquivalenceClass]:
    """Cycles of the successor map, each starting at its lowest index."""
    sigma = successor_map(points, variant) if sigma is None else sigma
    seen = np.zeros(len(sigma), dtype=bool)
    out = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = sigma(k)
        out.append(EquivalenceClass(tuple(cyc), variant=sigma.variant))
    return out


# ---------------------------------------------------------------------------
# arc integrals


def _term(p, q) -> float:
    return float(p[1] * q[0] - p[0] * q[1])


def _at(xy, seg, t):
    n = len(xy)
    a = xy[seg % n]
    return a + t * (xy[(seg + 1) % n] - a)


def forward_arc_sum(xy: np.ndarray, terms: np.ndarray, start: Tuple[int, float], stop: Tuple[int, float]) -> float:
    """Sum of ``y dx - x dy`` terms (not halved) along the stored traversal from ``start`` to ``stop``.

    Positions are ``(segment, t)``. The end segments are cut at their exact
    parameters. Equal positions give the full loop.
    """
    n = len(xy)
    (sa, ta), (sb, tb) = start, stop
    p, q = _at(xy, sa, ta), _at(xy, sb, tb)
    if sa == sb and tb > ta:
        return _term(p, q)
    head = _term(p, xy[(sa + 1) % n])
    tail = _term(xy[sb], q)
    lo, hi = sa + 1, sb
    if hi >= lo:
        mid = float(np.sum(terms[lo:hi]))
    else:
        mid = float(np.sum(terms[lo:])) + float(np.sum(terms[:hi]))
    return head + mid + tail


def arc_points(xy: np.ndarray, start: Tuple[int, float], stop: Tuple[int, float], forward: bool = True) -> np.ndarray:
    """Polyline of the arc between two positions, ends included."""
    if not forward:
        return arc_points(xy, stop, start, True)[::-1]
    n = len(xy)
    (sa, ta), (sb, tb) = start, stop
    p, q = _at(xy, sa, ta), _at(xy, sb, tb)
    if sa == sb and tb > ta:
        return np.array([p, q])
    idx = np.arange(sa + 1, sb + 1 if sb >= sa + 1 else sb + n + 1) % n
    mid = xy[idx]
    if tb == 0.0 and len(mid):
        mid = mid[:-1]
    return np.vstack([p[None], mid, q[None]])


def _arc_for(points: IntersectionSet, k: int, target: int, variant: str):
    which, sense = VARIANTS[variant][int(points.rho[k])]
    if which == "C1":
        pos = lambda i: (int(points.seg_c1[i]), float(points.t_c1[i]))  # noqa: E731
        orient = points.c1_orientation
    else:
        pos = lambda i: (int(points.seg_c2[i]), float(points.t_c2[i]))  # noqa: E731
        orient = points.c2_orientation
    return which, pos(k), pos(target), _forward(sense, orient)


def class_integral(k: int, sigma: SuccessorMap, points: IntersectionSet, c1, c2) -> float:
    """Half the ``y dx - x dy`` integral from crossing ``k`` to its successor along the selected arc.

    ``points`` must have been computed on ``c1`` and ``c2`` as given.
    """
    c1, c2 = as_curve(c1), as_curve(c2)
    which, start, stop, fwd = _arc_for(points, k, sigma(k), sigma.variant)
    xy = c1.vertices if which == "C1" else c2.vertices
    terms = contour_terms(xy)
    if fwd:
        return 0.5 * forward_arc_sum(xy, terms, start, stop)
    return -0.5 * forward_arc_sum(xy, terms, stop, start)


def lobe_polygon(cls: EquivalenceClass, sigma: SuccessorMap, points: IntersectionSet, c1, c2) -> np.ndarray:
    """Closed boundary of one lobe as an (m, 2) array, arcs joined in cycle order."""
    c1, c2 = as_curve(c1), as_curve(c2)
    parts = []
    for k in cls.members:
        which, start, stop, fwd = _arc_for(points, k, sigma(k), sigma.variant)
        xy = c1.vertices if which == "C1" else c2.vertices
        pts = arc_points(xy, start, stop) if fwd else arc_points(xy, stop, start)[::-1]
        parts.append(pts[:-1])
    return np.vstack(parts)


# ---------------------------------------------------------------------------
# report


@dataclass
class LobeReport:
    """Set-difference areas of two curves.

    ``classes`` holds the lobes of A1 \\ A2 and ``classes_a2_minus_a1`` those of
    A2 \\ A1 (class method only). ``discrepancy`` is the absolute difference
    to the other method when a cross-check ran.
    """

    classes: List[EquivalenceClass]
    a1_minus_a2: float
    a2_minus_a1: float
    method: str
    error_estimate: float = 0.0
    classes_a2_minus_a1: List[EquivalenceClass] = field(default_factory=list)
    area_c1: float = 0.0
    area_c2: float = 0.0
    discrepancy: Optional[float] = None
    q: Optional[Tuple[float, float, float]] = None
    intersections: Optional[IntersectionSet] = None
    diagnostics: List[str] = field(default_factory=list)

    @property
    def relative_errors(self) -> Tuple[float, float]:
        """Error bar divided by each area (0 for a zero area)."""
        err = self.error_estimate
        if self.method == "transverse":
            err = self.discrepancy or 0.0
        return tuple(err / a if a > 0 else 0.0 for a in (self.a1_minus_a2, self.a2_minus_a1))


def _containment(c1: ClosedCurve, c2: ClosedCurve) -> str:
    from .winding import interior_indicator_safe

    if interior_indicator_safe(c1, c2) == -1:
        return "c2_in_c1"
    if interior_indicator_safe(c2, c1) == -1:
        return "c1_in_c2"
    return "disjoint"


def disjoint_or_nested(c1: ClosedCurve, c2: ClosedCurve, method: str) -> LobeReport:
    """Areas for two curves that do not cross."""
    a1, a2 = enclosed_area(c1), enclosed_area(c2)
    kind = _containment(c1, c2)
    if kind == "c2_in_c1":
        d1, d2 = a1 - a2, 0.0
    elif kind == "c1_in_c2":
        d1, d2 = 0.0, a2 - a1
    else:
        d1, d2 = a1, a2
    return LobeReport([], d1, d2, method, area_c1=a1, area_c2=a2, diagnostics=[f"no crossings ({kind})"])


def lobe_areas(c1, c2, *, cross_check: bool = True, check_simple: bool = True, n_jobs: int = 1) -> LobeReport:
    """Set-difference areas from the per-class arc integrals.

    Needs simple curves with transverse crossings only; otherwise raises
    :class:`TransversalityError` (use the winding method) or
    :class:`TopologyError`. With ``cross_check`` the winding method runs too
    and ``discrepancy`` records the larger disagreement of the two totals.
    """
    c1 = as_curve(c1).oriented(Orientation.CCW)
    c2 = as_curve(c2).oriented(Orientation.CW)
    if check_simple:
        for name, c in (("C1", c1), ("C2", c2)):
            if not is_simple(c):
                raise TopologyError(f"{name} intersects itself; the class method needs simple curves")
    pts = find_intersections(c1, c2, n_jobs=n_jobs)
    if pts.count == 0:
        rep = disjoint_or_nested(c1, c2, "transverse")
    else:
        totals = {}
        lobes = {}
        for key, variant in DIFFERENCE_VARIANT.items():
            sigma = successor_map(pts, variant)
            classes = []
            for cls in partition(pts, variant, sigma):
                s = sum(class_integral(k, sigma, pts, c1, c2) for k in cls.members)
                classes.append(EquivalenceClass(cls.members, abs(s), variant))
            lobes[key] = classes
            totals[key] = float(np.sum([c.lobe_area for c in classes]))
        rep = LobeReport(
            lobes["a1_minus_a2"],
            totals["a1_minus_a2"],
            totals["a2_minus_a1"],
            "transverse",
            classes_a2_minus_a1=lobes["a2_minus_a1"],
            area_c1=enclosed_area(c1),
            area_c2=enclosed_area(c2),
            intersections=pts,
            diagnostics=list(pts.diagnostics),
        )
    if cross_check:
        from .winding import set_difference_areas

        other = set_difference_areas(c1, c2, n_jobs=n_jobs)
        rep.discrepancy = max(abs(rep.a1_minus_a2 - other.a1_minus_a2), abs(rep.a2_minus_a1 - other.a2_minus_a1))
        rep.error_estimate = 0.0
        rep.q = other.q
    return rep

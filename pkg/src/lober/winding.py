"""Winding-number interior test and the redundant union/intersection integrals.

Areas here need no transversality: each curve is cut into arcs at every
crossing and shared stretch found in tolerant mode, the other curve's
interior indicator is evaluated once per arc, and the weighted contour sums
give the symmetric difference, union and intersection areas.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .classes import LobeReport, arc_points, forward_arc_sum
from .exceptions import OnBoundaryError, TopologyError
from .geometry import ClosedCurve, Orientation, as_curve, enclosed_area, shoelace_terms
from .intersect import IntersectionSet, find_intersections

#: points closer than this fraction of the curve's bbox diagonal count as on it
BOUNDARY_RTOL = 1e-9
_MAX_BISECT = 8
_BLOCK = 1 << 21


@dataclass(frozen=True)
class WindingResult:
    j_value: float
    indicator: int


@dataclass(frozen=True)
class QTriple:
    q1: float
    q2: float
    q3: float


def _angles_and_dist(xy: np.ndarray, pts: np.ndarray):
    """Total subtended angle and distance to the curve for each query point."""
    a = xy
    d = np.roll(xy, -1, axis=0) - xy
    dd = np.einsum("ij,ij->i", d, d)
    lo = np.minimum(a, a + d)
    hi = np.maximum(a, a + d)
    m = len(pts)
    step = max(1, _BLOCK // len(xy))
    j_out = np.empty(m)
    dist_out = np.full(m, np.inf)
    for s in range(0, m, step):
        p = pts[s : s + step]
        ux = a[None, :, 0] - p[:, 0, None]
        uy = a[None, :, 1] - p[:, 1, None]
        wx = ux + d[None, :, 0]
        wy = uy + d[None, :, 1]
        ang = np.arctan2(ux * wy - uy * wx, ux * wx + uy * wy)
        j_out[s : s + step] = ang.sum(axis=1)
        # exact distance only for segments whose box is near the point
        near = np.argwhere(
            (lo[None, :, 0] - p[:, 0, None] <= _tol_box(xy))
            & (p[:, 0, None] - hi[None, :, 0] <= _tol_box(xy))
            & (lo[None, :, 1] - p[:, 1, None] <= _tol_box(xy))
            & (p[:, 1, None] - hi[None, :, 1] <= _tol_box(xy))
        )
        if len(near):
            r, c = near[:, 0], near[:, 1]
            rel = p[r] - a[c]
            s_ = np.clip(np.einsum("ij,ij->i", rel, d[c]) / dd[c], 0.0, 1.0)
            gap = np.hypot(*(rel - s_[:, None] * d[c]).T)
            np.minimum.at(dist_out[s : s + step], r, gap)
    return j_out, dist_out


def _tol_box(xy: np.ndarray) -> float:
    return 1e-6 * float(np.hypot(*np.ptp(xy, axis=0)))


def _boundary_tol(curve: ClosedCurve) -> float:
    return BOUNDARY_RTOL * curve.diagonal


def winding_integrals(curve, points, *, check_boundary: bool = True) -> np.ndarray:
    """Subtended angle of ``curve`` about each row of ``points``.

    Each segment contributes the signed angle between the rays to its two
    ends; segments whose line passes through the query point contribute 0.
    """
    curve = as_curve(curve)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    j, dist = _angles_and_dist(curve.vertices, pts)
    if check_boundary:
        bad = np.flatnonzero(dist <= _boundary_tol(curve))
        if len(bad):
            raise OnBoundaryError(f"point {tuple(pts[bad[0]])} lies on the curve; interior indicator undefined")
    return j


def winding_integral(curve, p0) -> float:
    return float(winding_integrals(curve, np.asarray(p0, dtype=float)[None])[0])


def _indicator_from_j(j: np.ndarray) -> np.ndarray:
    aj = np.abs(j)
    if np.any(aj > 3 * np.pi):
        raise TopologyError("winding number beyond one turn: the curve is not simple")
    return np.where(aj >= np.pi, -1, 1)


def interior_indicators(curve, points) -> np.ndarray:
    """-1 for points inside ``curve``, +1 outside, either orientation."""
    return _indicator_from_j(winding_integrals(curve, points))


def interior_indicator(curve, p0) -> int:
    return int(interior_indicators(curve, np.asarray(p0, dtype=float)[None])[0])


def winding(curve, p0) -> WindingResult:
    j = winding_integral(curve, p0)
    return WindingResult(j, int(_indicator_from_j(np.array([j]))[0]))


def interior_indicator_safe(container, curve) -> int:
    """Indicator of ``container`` at the first vertex of ``curve`` that is not on it."""
    container, curve = as_curve(container), as_curve(curve)
    xy = curve.vertices
    probe = np.unique(np.linspace(0, len(xy) - 1, min(len(xy), 64)).astype(int))
    j, dist = _angles_and_dist(container.vertices, xy[probe])
    off = np.flatnonzero(dist > _boundary_tol(container))
    if len(off) == 0:
        raise OnBoundaryError("every probed vertex lies on the other curve")
    return int(_indicator_from_j(j[off[:1]])[0])


# ---------------------------------------------------------------------------
# arcs


@dataclass(frozen=True)
class Arc:
    """Piece of one curve between consecutive cut positions, with the other curve's indicator."""

    start: Tuple[int, float]
    stop: Tuple[int, float]
    indicator: int
    term_sum: float  # shoelace terms, counter-clockwise positive, not halved
    shared: bool = False


def _cuts(n: int, seg: np.ndarray, t: np.ndarray):
    seg = np.asarray(seg, dtype=np.int64)
    t = np.asarray(t, dtype=float)
    wrap = t >= 1.0
    seg = np.where(wrap, (seg + 1) % n, seg)
    t = np.where(wrap, 0.0, t)
    pos = np.unique(np.column_stack([seg, t]), axis=0)
    return [(int(s), float(u)) for s, u in pos]


def _shared_lookup(overlaps, which: int, n: int) -> Dict[int, List[Tuple[float, float, int]]]:
    """Per segment: parameter ranges shared with the other curve and the indicator they get.

    Shared stretches running the same way bound both the union and the
    intersection: C1 keeps its copy for the union (+1) and C2 its copy for
    the intersection (-1). Opposite stretches bound neither region, so both
    copies go to the union, where they cancel.
    """
    out: Dict[int, List[Tuple[float, float, int]]] = {}
    for ov in overlaps:
        seg, u0, u1 = ov.on_c1 if which == 0 else ov.on_c2
        ind = 1 if (which == 0 or not ov.same_direction) else -1
        out.setdefault(int(seg) % n, []).append((min(u0, u1), max(u0, u1), ind))
    return out


def _segment_midpoint_param(start, stop, n):
    (sa, ta), (sb, tb) = start, stop
    if sa == sb and tb > ta:
        return sa, 0.5 * (ta + tb)
    if (sa + 1) % n == sb and tb == 0.0:
        return sa, 0.5 * (ta + 1.0)
    return None


def _probe_points(poly: np.ndarray) -> np.ndarray:
    """Candidate sample points along an arc polyline, best first.

    The midpoint of the middle piece, then bisection points of that piece
    down to 8 levels, then midpoints of the other pieces.
    """
    k = (len(poly) - 2) // 2
    a, b = poly[k], poly[k + 1]
    fr = [0.5]
    for level in range(2, _MAX_BISECT + 1):
        den = 2**level
        fr.extend(np.arange(1, den, 2) / den)
    fr = np.array(fr[: 2 * _MAX_BISECT])
    cands = [a + fr[:, None] * (b - a)]
    others = 0.5 * (poly[:-1] + poly[1:])
    if len(others) > 1:
        sel = np.unique(np.linspace(0, len(others) - 1, min(len(others), 16)).astype(int))
        cands.append(others[sel])
    return np.vstack(cands)


def curve_arcs(curve: ClosedCurve, other: ClosedCurve, cuts, shared, sampling: str = "arc", diagnostics=None) -> List[Arc]:
    """Cut ``curve`` at ``cuts`` and label each piece with ``other``'s indicator."""
    xy = curve.vertices
    n = len(xy)
    if sampling == "segment":
        cuts = sorted(set(cuts) | {(i, 0.0) for i in range(n)})
    elif sampling != "arc":
        raise ValueError(f"sampling must be 'arc' or 'segment', got {sampling!r}")
    if not cuts:
        cuts = [(0, 0.0)]
    terms = shoelace_terms(xy)
    # shoelace = -(y dx - x dy): reuse the arc summation with negated terms
    neg = -terms
    bounds = list(zip(cuts, cuts[1:] + cuts[:1]))

    arcs: List[Arc] = []
    pending = []  # (index into arcs, polyline)
    for start, stop in bounds:
        if len(cuts) == 1:
            total = float(np.sum(terms))
        else:
            total = -forward_arc_sum(xy, neg, start, stop)
        mp = _segment_midpoint_param(start, stop, n)
        ind = 0
        is_shared = False
        if mp is not None and mp[0] in shared:
            for lo, hi, v in shared[mp[0]]:
                if lo - 1e-12 <= mp[1] <= hi + 1e-12:
                    ind, is_shared = v, True
                    break
        arcs.append(Arc(start, stop, ind, total, is_shared))
        if not is_shared:
            pending.append((len(arcs) - 1, arc_points(xy, start, stop)))

    if pending:
        probes = [_probe_points(poly) for _, poly in pending]
        first = np.array([p[0] for p in probes])
        j, dist = _angles_and_dist(other.vertices, first)
        tol = _boundary_tol(other)
        for (k, _), pr, jk, dk in zip(pending, probes, j, dist):
            if dk <= tol:
                jr, dr = _angles_and_dist(other.vertices, pr[1:])
                ok = np.flatnonzero(dr > tol)
                if len(ok):
                    jk = jr[ok[0]]
                else:
                    jk = 0.0
                    if diagnostics is not None:
                        diagnostics.append(f"arc {k} lies on the other curve at every probe; treated as outside")
            a = arcs[k]
            arcs[k] = Arc(a.start, a.stop, int(_indicator_from_j(np.array([jk]))[0]), a.term_sum, False)
    return arcs


def split_curves(c1, c2, *, sampling: str = "arc", n_jobs: int = 1, intersections: IntersectionSet = None):
    """Both curves counter-clockwise, cut into labelled arcs.

    Returns ``(c1, c2, arcs1, arcs2, intersections, diagnostics)``.
    """
    c1 = as_curve(c1).oriented(Orientation.CCW)
    c2 = as_curve(c2).oriented(Orientation.CCW)
    pts = find_intersections(c1, c2, tolerant=True, n_jobs=n_jobs) if intersections is None else intersections
    diagnostics = list(pts.diagnostics)
    seg1 = [pts.seg_c1]
    t1 = [pts.t_c1]
    seg2 = [pts.seg_c2]
    t2 = [pts.t_c2]
    for ov in pts.overlaps:
        s, u0, u1 = ov.on_c1
        seg1.append([s, s])
        t1.append([u0, u1])
        s, u0, u1 = ov.on_c2
        seg2.append([s, s])
        t2.append([u0, u1])
    cuts1 = _cuts(len(c1), np.concatenate(seg1), np.concatenate(t1))
    cuts2 = _cuts(len(c2), np.concatenate(seg2), np.concatenate(t2))
    arcs1 = curve_arcs(c1, c2, cuts1, _shared_lookup(pts.overlaps, 0, len(c1)), sampling, diagnostics)
    arcs2 = curve_arcs(c2, c1, cuts2, _shared_lookup(pts.overlaps, 1, len(c2)), sampling, diagnostics)
    return c1, c2, arcs1, arcs2, pts, diagnostics


def _weighted(arcs: List[Arc]):
    t = np.array([a.term_sum for a in arcs])
    i = np.array([a.indicator for a in arcs])
    out = 0.5 * float(np.sum(t[i == 1]))
    ins = 0.5 * float(np.sum(t[i == -1]))
    return out, ins


def _q_from_arcs(arcs1, arcs2) -> QTriple:
    o1, i1 = _weighted(arcs1)
    o2, i2 = _weighted(arcs2)
    q1 = (o1 - i1) + (o2 - i2)
    q2 = o1 + o2
    q3 = i1 + i2
    return QTriple(q1, q2, q3)


def q_integrals(c1, c2, *, sampling: str = "arc", n_jobs: int = 1) -> QTriple:
    """Symmetric-difference, union and intersection areas as indicator-weighted contour sums.

    ``q1`` weights each piece by the other curve's indicator, ``q2`` keeps the
    pieces outside the other curve and ``q3`` those inside.
    """
    _, _, arcs1, arcs2, _, _ = split_curves(c1, c2, sampling=sampling, n_jobs=n_jobs)
    return _q_from_arcs(arcs1, arcs2)


def set_difference_areas(c1, c2, *, sampling: str = "arc", n_jobs: int = 1) -> LobeReport:
    """Both set differences with the built-in error estimate, valid for non-transverse input."""
    c1, c2, arcs1, arcs2, pts, diagnostics = split_curves(c1, c2, sampling=sampling, n_jobs=n_jobs)
    q = _q_from_arcs(arcs1, arcs2)
    a1, a2 = enclosed_area(c1), enclosed_area(c2)
    common = 0.25 * (q.q1 + q.q2 - q.q3)
    d1 = 0.5 * (a1 - a2) + common
    d2 = 0.5 * (a2 - a1) + common
    delta = 0.25 * abs(q.q2 - q.q3 - q.q1)
    for name, v in (("A1\\A2", d1), ("A2\\A1", d2)):
        if v < -delta:
            diagnostics.append(f"{name} came out negative ({v:.3e}) beyond the error estimate; clamped to 0")
    return LobeReport(
        [],
        max(d1, 0.0),
        max(d2, 0.0),
        "winding",
        error_estimate=delta,
        area_c1=a1,
        area_c2=a2,
        q=(q.q1, q.q2, q.q3),
        intersections=pts,
        diagnostics=diagnostics,
    )


def boundary_pieces(c1, c2, *, n_jobs: int = 1) -> Dict[str, np.ndarray]:
    """Curve points grouped by the other curve's indicator.

    Keys ``c11``/``c22`` hold the parts of C1/C2 inside the other curve,
    ``c12``/``c21`` the parts outside. Cut points appear at both ends of
    every piece.
    """
    c1, c2, arcs1, arcs2, _, _ = split_curves(c1, c2, n_jobs=n_jobs)
    out = {}
    for curve, arcs, inside, outside in ((c1, arcs1, "c11", "c12"), (c2, arcs2, "c22", "c21")):
        for key, want in ((inside, -1), (outside, 1)):
            parts = [arc_points(curve.vertices, a.start, a.stop) for a in arcs if a.indicator == want]
            if len(arcs) == 1 and parts:
                parts = [curve.vertices]
            out[key] = np.vstack(parts) if parts else np.zeros((0, 2))
    return out

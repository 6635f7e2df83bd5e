"""Segment intersection predicates and curve-curve crossing detection.

Candidate segment pairs are pruned with a uniform grid over segment pieces,
then screened with the one-sided line test (:func:`may_intersect`) before
the two-sided test and the 2x2 solve. Everything after candidate generation
is vectorised over pairs.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import TopologyError, TransversalityError
from .geometry import Orientation, Point2, Segment, as_curve, tangent_at

#: |v1 x v2| below this fraction of |v1||v2| counts as parallel.
TRANSVERSALITY_RTOL = 1e-10
#: Crossings closer than this fraction of the joint bbox diagonal are merged.
MERGE_RTOL = 1e-9
_CHUNK = 1 << 19


# ---------------------------------------------------------------------------
# scalar predicates


def _line_value(p1, p2, q):
    """Line equation through p1, p2 evaluated at q (zero on the line)."""
    (x1, y1), (x2, y2) = p1, p2
    return (y2 - y1) * q[0] - (x2 - x1) * q[1] - x1 * y2 + y1 * x2


def _as_segment(s) -> Segment:
    return s if isinstance(s, Segment) else Segment(*s)


def may_intersect(s1, s2) -> bool:
    """Necessary condition: the endpoints of ``s2`` do not lie strictly on one side of the line through ``s1``.

    ``False`` guarantees the segments are disjoint. ``True`` does not guarantee
    an intersection (e.g. disjoint collinear segments pass).
    """
    s1, s2 = _as_segment(s1), _as_segment(s2)
    return _line_value(s1.a, s1.b, s2.a) * _line_value(s1.a, s1.b, s2.b) <= 0


def _collinear_overlap(s1: Segment, s2: Segment) -> bool:
    d = s1.direction
    dd = float(d @ d)
    sa = float((np.subtract(s2.a, s1.a)) @ d) / dd
    sb = float((np.subtract(s2.b, s1.a)) @ d) / dd
    return max(min(sa, sb), 0.0) <= min(max(sa, sb), 1.0)


def segments_intersect(s1, s2) -> bool:
    """Two-sided product test: each segment's endpoints straddle (or touch) the other's line.

    Endpoint contacts count as intersections. When all four endpoints are
    collinear the product test is vacuous, so the 1-D overlap of the
    projections decides instead.
    """
    s1, s2 = _as_segment(s1), _as_segment(s2)
    f1a, f1b = _line_value(s1.a, s1.b, s2.a), _line_value(s1.a, s1.b, s2.b)
    if f1a * f1b > 0:
        return False
    f2a, f2b = _line_value(s2.a, s2.b, s1.a), _line_value(s2.a, s2.b, s1.b)
    if f2a * f2b > 0:
        return False
    if (f1a == 0 and f1b == 0) or (f2a == 0 and f2b == 0):
        return _collinear_overlap(s1, s2)
    return True


def intersection_point(s1, s2) -> Optional[Tuple[np.ndarray, float, float]]:
    """Solve ``a1 + t1 d1 = a2 + t2 d2``; returns ``(point, t1, t2)`` or None.

    None is returned when the solution falls outside the unit square, i.e.
    the segments do not meet. Near-parallel pairs raise
    :class:`TransversalityError`.
    """
    s1, s2 = _as_segment(s1), _as_segment(s2)
    d1, d2 = s1.direction, s2.direction
    det = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(det) < TRANSVERSALITY_RTOL * np.hypot(*d1) * np.hypot(*d2):
        raise TransversalityError("near-parallel segments: intersection is not transverse")
    r = np.subtract(s2.a, s1.a)
    t1 = (r[0] * d2[1] - r[1] * d2[0]) / det
    t2 = (r[0] * d1[1] - r[1] * d1[0]) / det
    eps = 1e-12
    if not (-eps <= t1 <= 1 + eps and -eps <= t2 <= 1 + eps):
        return None
    t1, t2 = min(max(t1, 0.0), 1.0), min(max(t2, 0.0), 1.0)
    return s1.evaluate(t1), float(t1), float(t2)


def tangent_sign(t1, t2) -> int:
    """Sign of the z component of ``t1 x t2``.

    Raises :class:`TransversalityError` when the vectors are (nearly) parallel.
    """
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    cross = t1[0] * t2[1] - t1[1] * t2[0]
    if abs(cross) < TRANSVERSALITY_RTOL * np.hypot(*t1) * np.hypot(*t2):
        raise TransversalityError("tangents are parallel: orientation undefined")
    return 1 if cross > 0 else -1


def orientation_sign(ip: "IntersectionPoint", c1, c2) -> int:
    """+1 when C2 crosses C1 from right to left (seen along C1), else -1.

    Uses the unit tangents of the host segments in each curve's stored
    traversal direction.
    """
    return tangent_sign(tangent_at(c1, ip.on_c1[0]), tangent_at(c2, ip.on_c2[0]))


# ---------------------------------------------------------------------------
# containers


@dataclass(frozen=True)
class IntersectionPoint:
    point: Point2
    on_c1: Tuple[int, float]
    on_c2: Tuple[int, float]
    rho: int
    arc_order_c1: int
    arc_order_c2: int


@dataclass(frozen=True)
class Overlap:
    """A collinear stretch shared by both curves (tolerant mode only).

    ``on_c1`` is ``(segment, s_start, s_end)`` with ``s_start < s_end``;
    ``on_c2`` gives the C2 segment and the C2 parameters of the same two
    points, so it is decreasing when the curves run in opposite directions.
    """

    on_c1: Tuple[int, float, float]
    on_c2: Tuple[int, float, float]
    same_direction: bool


def _ranks(seg: np.ndarray, t: np.ndarray) -> np.ndarray:
    order = np.lexsort((t, seg))
    ranks = np.empty(len(seg), dtype=np.int64)
    ranks[order] = np.arange(len(seg))
    return ranks


class IntersectionSet:
    """All crossings of two curves, ranked along each curve.

    Arrays are parallel: entry ``k`` is the ``k``-th crossing. ``order_c1`` and
    ``order_c2`` are permutations of ``0..count-1`` giving each crossing's rank
    along the stored traversal of C1 and C2.
    """

    def __init__(
        self,
        xy,
        seg_c1,
        t_c1,
        seg_c2,
        t_c2,
        rho,
        c1_orientation: Orientation = Orientation.CCW,
        c2_orientation: Orientation = Orientation.CW,
        *,
        order_c1=None,
        order_c2=None,
        overlaps: Sequence[Overlap] = (),
        diagnostics: Sequence[str] = (),
    ):
        self.xy = np.asarray(xy, dtype=float).reshape(-1, 2)
        self.seg_c1 = np.asarray(seg_c1, dtype=np.int64)
        self.t_c1 = np.asarray(t_c1, dtype=float)
        self.seg_c2 = np.asarray(seg_c2, dtype=np.int64)
        self.t_c2 = np.asarray(t_c2, dtype=float)
        self.rho = np.asarray(rho, dtype=np.int64)
        self.c1_orientation = c1_orientation
        self.c2_orientation = c2_orientation
        self.order_c1 = (
            _ranks(self.seg_c1, self.t_c1) if order_c1 is None else np.asarray(order_c1, dtype=np.int64)
        )
        self.order_c2 = (
            _ranks(self.seg_c2, self.t_c2) if order_c2 is None else np.asarray(order_c2, dtype=np.int64)
        )
        self.overlaps = tuple(overlaps)
        self.diagnostics = list(diagnostics)
        n = len(self.rho)
        for name in ("xy", "seg_c1", "t_c1", "seg_c2", "t_c2", "order_c1", "order_c2"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} has length {len(getattr(self, name))}, expected {n}")

    @classmethod
    def from_orders(cls, rho, order_c1, order_c2, c1_orientation=Orientation.CCW, c2_orientation=Orientation.CW):
        """Purely combinatorial set: ranks and orientation signs, no geometry."""
        n = len(rho)
        return cls(
            np.zeros((n, 2)),
            np.asarray(order_c1),
            np.zeros(n),
            np.asarray(order_c2),
            np.zeros(n),
            rho,
            c1_orientation,
            c2_orientation,
            order_c1=order_c1,
            order_c2=order_c2,
        )

    @property
    def count(self) -> int:
        return len(self.rho)

    def __len__(self) -> int:
        return self.count

    def __getitem__(self, k: int) -> IntersectionPoint:
        return IntersectionPoint(
            point=(float(self.xy[k, 0]), float(self.xy[k, 1])),
            on_c1=(int(self.seg_c1[k]), float(self.t_c1[k])),
            on_c2=(int(self.seg_c2[k]), float(self.t_c2[k])),
            rho=int(self.rho[k]),
            arc_order_c1=int(self.order_c1[k]),
            arc_order_c2=int(self.order_c2[k]),
        )

    def __iter__(self):
        return (self[k] for k in range(self.count))

    @property
    def points(self) -> List[IntersectionPoint]:
        return list(self)

    def by_order_c1(self) -> np.ndarray:
        """Crossing indices sorted along C1."""
        return np.argsort(self.order_c1, kind="stable")

    def by_order_c2(self) -> np.ndarray:
        return np.argsort(self.order_c2, kind="stable")


# ---------------------------------------------------------------------------
# candidate pairs


def _bboxes(a: np.ndarray, b: np.ndarray):
    return np.minimum(a, b), np.maximum(a, b)


def _expand_cells(i0: np.ndarray, i1: np.ndarray, ids: np.ndarray, ny: int):
    """Every (cell key, segment id) covered by each box of cell ranges."""
    w = i1[:, 0] - i0[:, 0] + 1
    h = i1[:, 1] - i0[:, 1] + 1
    counts = w * h
    total = int(counts.sum())
    owner = np.repeat(np.arange(len(ids)), counts)
    starts = np.cumsum(counts) - counts
    local = np.arange(total, dtype=np.int64) - starts[owner]
    cx = i0[owner, 0] + local % w[owner]
    cy = i0[owner, 1] + local // w[owner]
    return cx * ny + cy, ids[owner]


def _piece_cells(a, b, act, glo, h, pad):
    """Cell ranges covering each segment, cut into pieces no longer than one cell."""
    d = b[act] - a[act]
    k = np.maximum(1, np.ceil(np.abs(d).max(axis=1) / h).astype(np.int64))
    owner = np.repeat(np.arange(len(act)), k)
    m = np.arange(int(k.sum()), dtype=np.int64) - np.repeat(np.cumsum(k) - k, k)
    f0 = (m / k[owner])[:, None]
    f1 = ((m + 1) / k[owner])[:, None]
    p0 = a[act][owner] + f0 * d[owner]
    p1 = a[act][owner] + f1 * d[owner]
    lo = np.minimum(p0, p1) - pad
    hi = np.maximum(p0, p1) + pad
    i0 = np.floor((lo - glo) / h).astype(np.int64)
    i1 = np.floor((hi - glo) / h).astype(np.int64)
    return i0, i1, act[owner]


def candidate_pairs(a1, b1, a2, b2, *, exclude_adjacent: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """Segment index pairs (i on the first set, j on the second) that may touch.

    Segments are binned into a uniform grid after being cut into pieces no
    longer than a cell, so long segments cost in proportion to their length.
    Every touching pair is reported, and every reported pair has overlapping
    bounding boxes; pairs whose boxes overlap away from the segments may be
    left out.
    Sorted by ``(i, j)``. With ``exclude_adjacent`` both sets must be the
    same closed ring; identical and neighbouring segments are dropped and
    each unordered pair is reported once with ``i < j``.
    """
    lo1, hi1 = _bboxes(a1, b1)
    lo2, hi2 = _bboxes(a2, b2)
    n1, n2 = len(a1), len(a2)
    empty = np.empty(0, np.int64), np.empty(0, np.int64)
    glo = np.maximum(lo1.min(axis=0), lo2.min(axis=0))
    ghi = np.minimum(hi1.max(axis=0), hi2.max(axis=0))
    if np.any(glo > ghi):
        return empty
    act1 = np.flatnonzero(np.all((hi1 >= glo) & (lo1 <= ghi), axis=1))
    act2 = np.flatnonzero(np.all((hi2 >= glo) & (lo2 <= ghi), axis=1))
    if len(act1) == 0 or len(act2) == 0:
        return empty

    ext = np.concatenate([(hi1 - lo1)[act1], (hi2 - lo2)[act2]]).max(axis=1)
    span = float(np.max(ghi - glo))
    # median for uniform curves; the mean bounds the piece count when resolutions are mixed
    h = max(2.0 * float(np.median(ext)), float(np.mean(ext)))
    if not h > 0:
        h = span / max(np.sqrt(len(ext)), 1.0) if span > 0 else 1.0
    # keep the number of cells per axis (and the int64 key) bounded
    h = max(h, span / 2.0e6)
    pad = 1e-9 * max(span, h)
    glo = glo - 2 * pad
    ny = int(np.floor((ghi[1] - glo[1] + 2 * pad) / h)) + 2

    c10, c11, o1 = _piece_cells(a1, b1, act1, glo, h, pad)
    c20, c21, o2 = _piece_cells(a2, b2, act2, glo, h, pad)
    k1, s1 = _expand_cells(c10, c11, o1, ny)
    k2, s2 = _expand_cells(c20, c21, o2, ny)
    o = np.argsort(k2, kind="stable")
    k2, s2 = k2[o], s2[o]
    left = np.searchsorted(k2, k1, side="left")
    right = np.searchsorted(k2, k1, side="right")
    csum = np.cumsum(right - left)
    # expand cell matches in blocks so crowded cells cannot blow up memory
    keys = []
    start, done = 0, 0
    while start < len(k1):
        stop = max(int(np.searchsorted(csum, done + 8 * _CHUNK, side="right")), start + 1)
        cnt = right[start:stop] - left[start:stop]
        rep = np.repeat(np.arange(start, stop), cnt)
        off = np.arange(int(cnt.sum()), dtype=np.int64) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        pi, pj = s1[rep], s2[left[rep] + off]
        # exact test on the whole-segment boxes
        keep = np.all((lo1[pi] <= hi2[pj]) & (lo2[pj] <= hi1[pi]), axis=1)
        if exclude_adjacent:
            d = np.abs(pi - pj)
            keep &= (pi < pj) & (d > 1) & (d != n1 - 1)
        keys.append(np.unique(pi[keep] * np.int64(n2) + pj[keep]))
        start, done = stop, int(csum[stop - 1])
    pair_key = np.unique(np.concatenate(keys)) if keys else np.empty(0, np.int64)
    return pair_key // n2, pair_key % n2


# ---------------------------------------------------------------------------
# vectorised pair tests


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _line_values(p, q, r):
    """Line through p, q evaluated at r, vectorised over rows."""
    x1, y1 = p[:, 0], p[:, 1]
    x2, y2 = q[:, 0], q[:, 1]
    return (y2 - y1) * r[:, 0] - (x2 - x1) * r[:, 1] - x1 * y2 + y1 * x2


def _snap(f, tol):
    return np.where(np.abs(f) <= tol, 0.0, f)


@dataclass
class _PairHits:
    i: np.ndarray
    j: np.ndarray
    t1: np.ndarray
    t2: np.ndarray
    sin: np.ndarray  # signed sine of the crossing angle
    collinear: np.ndarray  # bool


def _test_pairs(a1, b1, a2, b2, pi, pj, tol_len) -> _PairHits:
    p1, q1 = a1[pi], b1[pi]
    p2, q2 = a2[pj], b2[pj]
    d1 = q1 - p1
    d2 = q2 - p2
    n1 = np.hypot(d1[:, 0], d1[:, 1])
    n2 = np.hypot(d2[:, 0], d2[:, 1])
    # one-sided screen first; values within rounding of the line count as on it
    fa = _snap(_line_values(p1, q1, p2), tol_len * n1)
    fb = _snap(_line_values(p1, q1, q2), tol_len * n1)
    m = fa * fb <= 0
    p1, q1, p2, q2, fa, fb, pi, pj = p1[m], q1[m], p2[m], q2[m], fa[m], fb[m], pi[m], pj[m]
    d1, d2, n1, n2 = d1[m], d2[m], n1[m], n2[m]
    ga = _snap(_line_values(p2, q2, p1), tol_len * n2)
    gb = _snap(_line_values(p2, q2, q1), tol_len * n2)
    m = ga * gb <= 0
    p1, q1, p2, q2, fa, fb, pi, pj = p1[m], q1[m], p2[m], q2[m], fa[m], fb[m], pi[m], pj[m]
    d1, d2, n1, n2 = d1[m], d2[m], n1[m], n2[m]

    det = _cross(d1[:, 0], d1[:, 1], d2[:, 0], d2[:, 1])
    sin = det / (n1 * n2)
    near_par = np.abs(sin) < TRANSVERSALITY_RTOL
    # distance of the C2 endpoints to the C1 line
    collinear = near_par & (np.abs(fa) <= tol_len * n1) & (np.abs(fb) <= tol_len * n1)

    r = p2 - p1
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = _cross(r[:, 0], r[:, 1], d2[:, 0], d2[:, 1]) / det
        t2 = _cross(r[:, 0], r[:, 1], d1[:, 0], d1[:, 1]) / det
    solvable = (det != 0) & ~collinear
    ok = collinear | (solvable & (t1 >= -1e-9) & (t1 <= 1 + 1e-9) & (t2 >= -1e-9) & (t2 <= 1 + 1e-9))
    t1 = np.where(solvable, np.clip(t1, 0.0, 1.0), np.nan)
    t2 = np.where(solvable, np.clip(t2, 0.0, 1.0), np.nan)
    return _PairHits(pi[ok], pj[ok], t1[ok], t2[ok], sin[ok], collinear[ok])


def _run_pairs(a1, b1, a2, b2, pi, pj, tol_len, n_jobs) -> _PairHits:
    chunks = [(s, min(s + _CHUNK, len(pi))) for s in range(0, len(pi), _CHUNK)] or [(0, 0)]

    def work(bounds):
        s, e = bounds
        return _test_pairs(a1, b1, a2, b2, pi[s:e], pj[s:e], tol_len)

    if n_jobs and n_jobs > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as ex:
            parts = list(ex.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    return _PairHits(*(np.concatenate([getattr(p, f) for p in parts]) for f in ("i", "j", "t1", "t2", "sin", "collinear")))


def _collinear_extent(a1, b1, a2, b2, i, j):
    """Length of the shared stretch of collinear segment pairs (negative when disjoint)."""
    p, d = a1[i], b1[i] - a1[i]
    dd = np.einsum("ij,ij->i", d, d)
    sa = np.einsum("ij,ij->i", a2[j] - p, d) / dd
    sb = np.einsum("ij,ij->i", b2[j] - p, d) / dd
    s0 = np.maximum(np.minimum(sa, sb), 0.0)
    s1 = np.minimum(np.maximum(sa, sb), 1.0)
    return (s1 - s0) * np.sqrt(dd)


def _overlap_of(a1, b1, a2, b2, i, j, tol_len) -> Optional[Overlap]:
    p, q = a1[i], b1[i]
    d = q - p
    dd = float(d @ d)
    sa = float((a2[j] - p) @ d) / dd
    sb = float((b2[j] - p) @ d) / dd
    s0, s1 = max(min(sa, sb), 0.0), min(max(sa, sb), 1.0)
    if (s1 - s0) * np.sqrt(dd) <= tol_len:
        return None
    e = b2[j] - a2[j]
    ee = float(e @ e)

    def u_of(s):
        return float((p + s * d - a2[j]) @ e) / ee

    return Overlap((int(i), s0, s1), (int(j), u_of(s0), u_of(s1)), bool(d @ e > 0))


def _normalise_params(seg, t, n):
    """Map t == 1 onto the start of the next segment."""
    wrap = t >= 1.0
    seg = np.where(wrap, (seg + 1) % n, seg)
    t = np.where(wrap, 0.0, t)
    return seg, t


def _merge_close(xy, seg1, t1, seg2, t2, sin, n1, tol):
    """Drop crossings that coincide (within ``tol``) with their predecessor along C1."""
    if len(xy) == 0:
        return np.zeros(0, dtype=bool)
    order = np.lexsort((t1, seg1))
    keep = np.ones(len(xy), dtype=bool)
    last = None
    for k in order:
        if last is not None and np.hypot(*(xy[k] - xy[last])) <= tol:
            keep[k] = False
            continue
        last = k
    # wrap-around: last kept vs first kept
    kept = order[keep[order]]
    if len(kept) > 1 and np.hypot(*(xy[kept[-1]] - xy[kept[0]])) <= tol:
        keep[kept[-1]] = False
    return keep


def find_intersections(
    c1, c2, *, tolerant: bool = False, n_jobs: int = 1, check_parity: bool = True
) -> IntersectionSet:
    """All crossings of two closed curves, ranked along both.

    Parameters
    ----------
    c1, c2 : ClosedCurve or (n, 2) array
    tolerant : bool
        Strict mode (default) raises :class:`TransversalityError` on any
        tangential or collinear contact and :class:`TopologyError` on an odd
        crossing count. Tolerant mode instead records collinear stretches in
        ``overlaps``, keeps near-parallel crossings and reports problems in
        ``diagnostics``.
    n_jobs : int
        Worker threads for the pair tests. The result does not depend on it.
    """
    c1, c2 = as_curve(c1), as_curve(c2)
    a1, b1 = c1.segment_arrays()
    a2, b2 = c2.segment_arrays()
    both = np.vstack([c1.vertices, c2.vertices])
    diag = float(np.hypot(*np.ptp(both, axis=0)))
    tol = MERGE_RTOL * diag
    pi, pj = candidate_pairs(a1, b1, a2, b2)
    hits = _run_pairs(a1, b1, a2, b2, pi, pj, tol, n_jobs)

    diagnostics = []
    overlaps = []
    coll = hits.collinear
    if coll.any():
        ext = np.full(len(coll), np.inf)
        ext[coll] = _collinear_extent(a1, b1, a2, b2, hits.i[coll], hits.j[coll])
        real = ~coll | (ext >= -tol)
        hits = _PairHits(*(getattr(hits, f)[real] for f in ("i", "j", "t1", "t2", "sin", "collinear")))
        coll = hits.collinear
    if coll.any():
        if not tolerant:
            i, j = int(hits.i[coll][0]), int(hits.j[coll][0])
            raise TransversalityError(
                f"collinear overlap between C1 segment {i} and C2 segment {j}; use the winding (-light) method",
                pair=(i, j),
            )
        for i, j in zip(hits.i[coll], hits.j[coll]):
            ov = _overlap_of(a1, b1, a2, b2, i, j, tol)
            if ov is not None:
                overlaps.append(ov)
        diagnostics.append(f"{len(overlaps)} collinear overlap(s) between the curves")

    pt = ~coll & np.isfinite(hits.t1)
    i, j = hits.i[pt], hits.j[pt]
    t1, t2, sin = hits.t1[pt], hits.t2[pt], hits.sin[pt]
    bad = np.abs(sin) < TRANSVERSALITY_RTOL
    if bad.any() and not tolerant:
        k = int(np.flatnonzero(bad)[0])
        raise TransversalityError(
            f"non-transverse crossing between C1 segment {int(i[k])} and C2 segment {int(j[k])}",
            pair=(int(i[k]), int(j[k])),
        )
    xy = a1[i] + t1[:, None] * (b1[i] - a1[i])
    seg1, t1 = _normalise_params(i, t1, len(c1))
    seg2, t2 = _normalise_params(j, t2, len(c2))
    keep = _merge_close(xy, seg1, t1, seg2, t2, sin, len(c1), tol)
    if (~keep).any():
        diagnostics.append(f"merged {int((~keep).sum())} coincident crossing report(s)")
    xy, seg1, t1, seg2, t2, sin = xy[keep], seg1[keep], t1[keep], seg2[keep], t2[keep], sin[keep]
    vertex_hits = int(np.count_nonzero((t1 == 0.0) | (t2 == 0.0)))
    if vertex_hits:
        diagnostics.append(f"{vertex_hits} crossing(s) pass exactly through a vertex")
    rho = np.where(sin > 0, 1, -1)
    rho[sin == 0] = 0

    if check_parity and len(xy) % 2 == 1:
        msg = f"odd number of crossings ({len(xy)}): a crossing was missed or spurious; densify the curves"
        if not tolerant:
            raise TopologyError(msg)
        diagnostics.append(msg)
    return IntersectionSet(
        xy,
        seg1,
        t1,
        seg2,
        t2,
        rho,
        c1.orientation,
        c2.orientation,
        overlaps=overlaps,
        diagnostics=diagnostics,
    )


def is_simple(curve) -> bool:
    """True when no two non-adjacent segments of the curve touch."""
    curve = as_curve(curve)
    a, b = curve.segment_arrays()
    pi, pj = candidate_pairs(a, b, a, b, exclude_adjacent=True)
    if len(pi) == 0:
        return True
    tol = MERGE_RTOL * curve.diagonal
    hits = _run_pairs(a, b, a, b, pi, pj, tol, 1)
    coll = hits.collinear
    if coll.any():
        ext = _collinear_extent(a, b, a, b, hits.i[coll], hits.j[coll])
        if np.any(ext >= -tol):
            return False
    return not np.any(~coll)

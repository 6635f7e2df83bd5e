"""Local refinement of two curves around their crossings.

Every pass finds the crossings (tolerant mode), then splits each segment
within ``window`` segments of a crossing into ``n_dens`` pieces. New points
follow a local cubic fitted to the discrete curvature at the two segment
ends, so refining actually moves the crossings towards those of the smooth
curves the polygons sample. ``interpolation="linear"`` only splits the
chords and leaves the point set unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ResourceError
from .geometry import ClosedCurve, as_curve
from .intersect import find_intersections

# beyond this |curvature * segment length| the cubic is not trusted
_MAX_BEND = 0.5


@dataclass(frozen=True)
class DensifyConfig:
    n_pass: int = 3
    n_dens: int = 10
    window: int = 2
    interpolation: str = "cubic"
    max_vertices: int = 10_000_000

    def __post_init__(self):
        for name in ("n_pass", "window"):
            if int(getattr(self, name)) != getattr(self, name) or getattr(self, name) < 0:
                raise ValueError(f"{name} must be a non-negative integer")
        if int(self.n_dens) != self.n_dens or self.n_dens < 1:
            raise ValueError("n_dens must be a positive integer")
        if self.interpolation not in ("cubic", "linear"):
            raise ValueError("interpolation must be 'cubic' or 'linear'")

    @property
    def precision_factor(self) -> int:
        return self.n_dens**self.n_pass


def menger_curvature(xy: np.ndarray) -> np.ndarray:
    """Signed curvature at each vertex of a closed ring: inverse radius of the circle through it and its neighbours."""
    a = xy - np.roll(xy, 1, axis=0)
    b = np.roll(xy, -1, axis=0) - xy
    c = a + b
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    den = np.hypot(*a.T) * np.hypot(*b.T) * np.hypot(*c.T)
    with np.errstate(divide="ignore", invalid="ignore"):
        k = np.where(den > 0, 2.0 * cross / den, 0.0)
    return k


def _interpolate(xy: np.ndarray, segs: np.ndarray, p: np.ndarray, cubic: bool) -> np.ndarray:
    """Points at fractions ``p`` (shape (m, k)) along segments ``segs`` (shape (m,))."""
    n = len(xy)
    a = xy[segs]
    t = xy[(segs + 1) % n] - a
    pts = a[:, None, :] + p[..., None] * t[:, None, :]
    if not cubic:
        return pts
    kap = menger_curvature(xy)
    k0, k1 = kap[segs], kap[(segs + 1) % n]
    d = np.hypot(*t.T)
    ok = (np.abs(k0 * d) <= _MAX_BEND) & (np.abs(k1 * d) <= _MAX_BEND)
    k0, k1 = np.where(ok, k0, 0.0), np.where(ok, k1, 0.0)
    c1 = -(k0 / 3.0 + k1 / 6.0)
    c2 = k0 / 2.0
    c3 = (k1 - k0) / 6.0
    eta = d[:, None] * p * (c1[:, None] + p * (c2[:, None] + p * c3[:, None]))
    normal = np.column_stack([-t[:, 1], t[:, 0]])
    return pts + eta[..., None] * normal[:, None, :]


def _refine(curve: ClosedCurve, marked: np.ndarray, n_dens: int, cubic: bool):
    """Split the marked segments; returns the new curve and the mask of segments descended from them."""
    xy = curve.vertices
    segs = np.flatnonzero(marked)
    if len(segs) == 0 or n_dens == 1:
        return curve, marked.copy()
    p = np.broadcast_to(np.arange(1, n_dens) / n_dens, (len(segs), n_dens - 1))
    new = _interpolate(xy, segs, p, cubic)
    counts = np.ones(len(xy), dtype=np.int64)
    counts[segs] += n_dens - 1
    out = np.empty((int(counts.sum()), 2))
    starts = np.cumsum(counts) - counts
    out[starts] = xy
    idx = (starts[segs][:, None] + np.arange(1, n_dens)[None, :]).ravel()
    out[idx] = new.reshape(-1, 2)
    children = np.repeat(marked, counts)
    refined = ClosedCurve(out)
    if len(refined) != len(out):
        # duplicates were dropped; lineage no longer lines up
        children = np.zeros(len(refined), dtype=bool)
    return refined, children


def _window_mask(n: int, segs: np.ndarray, window: int) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    if len(segs):
        off = np.arange(-window, window + 1)
        mask[(segs[:, None] + off[None, :]).ravel() % n] = True
    return mask


def _crossing_segments(pts, n1: int, n2: int):
    """Host segments of the crossings, leaving out shared stretches and crossings at their ends.

    Splitting a collinear stretch cannot sharpen anything.
    """
    shared1 = np.zeros(n1, dtype=bool)
    shared2 = np.zeros(n2, dtype=bool)
    for o in pts.overlaps:
        shared1[o.on_c1[0] % n1] = True
        shared2[o.on_c2[0] % n2] = True
    s1, s2 = pts.seg_c1, pts.seg_c2
    touch = shared1[s1] | shared1[(s1 - 1) % n1] | shared2[s2] | shared2[(s2 - 1) % n2]
    return s1[~touch], s2[~touch]


def densify(c1, c2, cfg: DensifyConfig = DensifyConfig(), *, n_jobs: int = 1):
    """Refine both curves near their crossings; returns the new pair.

    The window is set by the crossings each pass sees, and everything split
    in an earlier pass is split again, so a region found in the first pass
    ends up ``n_dens ** n_pass`` times finer whatever the split of passes.

    Raises :class:`ResourceError` when a curve would exceed
    ``cfg.max_vertices``.
    """
    c1, c2 = as_curve(c1), as_curve(c2)
    cubic = cfg.interpolation == "cubic"
    keep1 = np.zeros(len(c1), dtype=bool)
    keep2 = np.zeros(len(c2), dtype=bool)
    for k in range(cfg.n_pass):
        pts = find_intersections(c1, c2, tolerant=True, check_parity=False, n_jobs=n_jobs)
        seg1, seg2 = _crossing_segments(pts, len(c1), len(c2))
        # segments split in earlier passes stay in the refined region
        m1 = _window_mask(len(c1), seg1, cfg.window) | keep1
        m2 = _window_mask(len(c2), seg2, cfg.window) | keep2
        for name, c, m in (("C1", c1, m1), ("C2", c2, m2)):
            size = len(c) + int(m.sum()) * (cfg.n_dens - 1)
            if size > cfg.max_vertices:
                raise ResourceError(
                    f"densify pass {k + 1} would grow {name} to {size} vertices (cap {cfg.max_vertices})"
                )
        c1, keep1 = _refine(c1, m1, cfg.n_dens, cubic)
        c2, keep2 = _refine(c2, m2, cfg.n_dens, cubic)
    return c1, c2

"""Test-curve generators, independent oracles and the phase-space flow fields.

Nothing in here depends on the winding or class modules: the ray-casting
membership test and the Monte-Carlo estimator are deliberately separate
implementations used to cross-check them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Sequence, Tuple

import numpy as np

from .exceptions import AdvectionError, LensConfigurationError, SingularityError
from .geometry import ClosedCurve, as_curve

# ---------------------------------------------------------------------------
# analytic curves


def circle(center=(0.0, 0.0), r: float = 1.0, n: int = 4096, phase: float = 0.0) -> ClosedCurve:
    """Regular counter-clockwise n-gon inscribed in a circle."""
    if r <= 0 or n < 3:
        raise ValueError("need r > 0 and n >= 3")
    th = phase + 2.0 * np.pi * np.arange(n) / n
    return ClosedCurve(np.column_stack([center[0] + r * np.cos(th), center[1] + r * np.sin(th)]))


def ellipse(center=(0.0, 0.0), a: float = 1.0, b: float = 1.0, phase: float = 0.0, n: int = 4096,
            rotation: float = 0.0) -> ClosedCurve:
    """Counter-clockwise ellipse sampled at ``phase + 2 pi k / n``; ``rotation`` turns the axes."""
    if a <= 0 or b <= 0 or n < 3:
        raise ValueError("need a, b > 0 and n >= 3")
    th = phase + 2.0 * np.pi * np.arange(n) / n
    x, y = a * np.cos(th), b * np.sin(th)
    c, s = np.cos(rotation), np.sin(rotation)
    return ClosedCurve(np.column_stack([center[0] + c * x - s * y, center[1] + s * x + c * y]))


def rectangle(x0, y0, x1, y1) -> ClosedCurve:
    return ClosedCurve([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])


def lens_area(r1: float, r2: float, d: float) -> float:
    """Area of the intersection of two discs with radii r1, r2 and centre distance d."""
    if d >= r1 + r2:
        raise LensConfigurationError(f"discs are disjoint (d={d} >= {r1 + r2})", "disjoint")
    if d <= abs(r1 - r2):
        raise LensConfigurationError(f"one disc contains the other (d={d} <= {abs(r1 - r2)})", "contained")
    a1 = r1 * r1 * np.arccos((d * d + r1 * r1 - r2 * r2) / (2 * d * r1))
    a2 = r2 * r2 * np.arccos((d * d + r2 * r2 - r1 * r1) / (2 * d * r2))
    k = 0.5 * np.sqrt((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2))
    return float(a1 + a2 - k)


# ---------------------------------------------------------------------------
# ray-casting oracle


def points_in_polygon(vertices, points, block: int = 4_000_000) -> np.ndarray:
    """Even-odd ray casting (ray towards +x), vectorised over points.

    Edges use the half-open rule ``min(y) <= py < max(y)``. Returns a bool
    array. Independent of the winding-number code path.
    """
    xy = np.asarray(vertices.vertices if isinstance(vertices, ClosedCurve) else vertices, dtype=float)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    ax, ay = xy[:, 0], xy[:, 1]
    bx, by = np.roll(ax, -1), np.roll(ay, -1)
    ylo, yhi = np.minimum(ay, by), np.maximum(ay, by)
    order = np.argsort(pts[:, 1], kind="stable")
    ys = pts[order, 1]
    lo = np.searchsorted(ys, ylo, side="left")
    hi = np.searchsorted(ys, yhi, side="left")
    cnt = hi - lo
    parity = np.zeros(len(pts), dtype=np.int64)
    csum = np.cumsum(cnt)
    start = 0
    while start < len(xy):
        base = csum[start - 1] if start else 0
        stop = int(np.searchsorted(csum, base + block, side="right"))
        stop = max(stop, start + 1)
        e_idx = np.arange(start, stop)
        c = cnt[e_idx]
        e = np.repeat(e_idx, c)
        k = lo[e] + (np.arange(int(c.sum())) - np.repeat(np.cumsum(c) - c, c))
        p = order[k]
        py = pts[p, 1]
        xint = ax[e] + (py - ay[e]) * (bx[e] - ax[e]) / (by[e] - ay[e])
        hit = pts[p, 0] < xint
        parity += np.bincount(p[hit], minlength=len(pts))
        start = stop
    return parity % 2 == 1


@dataclass(frozen=True)
class OracleEstimate:
    value: float
    std_error: float
    samples: int
    seed: int


_MC_BLOCK = 1 << 18


def montecarlo_diff_area(c1, c2, n_samples: int = 1_000_000, seed: int = 0) -> OracleEstimate:
    """Monte-Carlo estimate of the area of ``A1 \\ A2``.

    Samples are uniform over the joint bounding box, drawn from PCG64 streams
    spawned per block of 2**18 samples from ``SeedSequence(seed)``, so the
    estimate is reproducible bit for bit.
    """
    if n_samples < 1000:
        raise ValueError("n_samples must be at least 1000")
    c1, c2 = as_curve(c1), as_curve(c2)
    both = np.vstack([c1.vertices, c2.vertices])
    lo, hi = both.min(axis=0), both.max(axis=0)
    box = float(np.prod(hi - lo))
    nblocks = -(-n_samples // _MC_BLOCK)
    streams = np.random.SeedSequence(seed).spawn(nblocks)
    hits = 0
    remaining = n_samples
    for ss in streams:
        m = min(_MC_BLOCK, remaining)
        remaining -= m
        rng = np.random.Generator(np.random.PCG64(ss))
        pts = lo + rng.random((m, 2)) * (hi - lo)
        hits += int(np.count_nonzero(points_in_polygon(c1, pts) & ~points_in_polygon(c2, pts)))
    p = hits / n_samples
    return OracleEstimate(box * p, box * np.sqrt(p * (1 - p) / n_samples), n_samples, seed)


# ---------------------------------------------------------------------------
# vector fields


@dataclass(frozen=True)
class VectorField:
    """Planar, possibly time dependent velocity field ``(x, y, t) -> (vx, vy)``.

    ``singularities`` lists points the field blows up at; advection refuses
    to carry a trajectory closer than ``guard`` to any of them.
    """

    eval: Callable[[np.ndarray, np.ndarray, float], Tuple[np.ndarray, np.ndarray]]
    params: Dict[str, float] = field(default_factory=dict)
    singularities: Tuple[Tuple[float, float], ...] = ()
    guard: float = 1e-3

    def __call__(self, x, y, t=0.0):
        return self.eval(x, y, t)


def ovp_velocity(x, y, t, gamma: float, eps: float):
    """Oscillating vortex pair velocity in the co-moving frame, first order in ``eps``.

    Vortices sit at (0, +1) and (0, -1). Returns ``(vx, vy)`` with
    ``vx = f1 + eps g1`` and ``vy = f2 - eps g2``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    im = x * x + (y - 1.0) ** 2
    ip = x * x + (y + 1.0) ** 2
    if np.any(im == 0) or np.any(ip == 0):
        raise SingularityError("OVP field evaluated at a vortex centre")
    f1 = -(y - 1.0) / im + (y + 1.0) / ip - 0.5
    f2 = x / im - x / ip
    if eps == 0:
        return f1, f2
    ph = t / gamma
    c1 = np.cos(ph) - 1.0
    sn = np.sin(ph)
    im2, ip2 = im * im, ip * ip
    g1 = (
        c1 * (1.0 / im + 1.0 / ip - 2.0 * (y - 1.0) ** 2 / im2 - 2.0 * (y + 1.0) ** 2 / ip2)
        + (x / gamma) * sn * (gamma**2 * ((y - 1.0) / im2 - (y + 1.0) / ip2) + 1.0)
        - 0.5
    )
    g2 = 2.0 * x * c1 * ((y - 1.0) / im2 + (y + 1.0) / ip2) + (1.0 / gamma) * sn * (
        0.5 * gamma**2 * (1.0 / im - 1.0 / ip) - x * x * gamma**2 * (1.0 / im2 - 1.0 / ip2) - y
    )
    return f1 + eps * g1, f2 - eps * g2


def ovp_field(gamma: float = 0.5, eps: float = 0.1) -> VectorField:
    return VectorField(
        lambda x, y, t: ovp_velocity(x, y, t, gamma, eps),
        {"gamma": gamma, "eps": eps},
        singularities=((0.0, 1.0), (0.0, -1.0)),
    )


def capsize_field(x, y, vx, vy, R: float):
    """Right-hand side of the roll-pitch capsize equations as a first-order system."""
    r2 = R * R
    return (
        np.asarray(vx, dtype=float),
        np.asarray(vy, dtype=float),
        -x + 2.0 * x * y,
        -r2 * y + 0.5 * r2 * x * x,
    )


def capsize_energy(x, y, vx, vy, R: float):
    return 0.5 * vx * vx + vy * vy / (R * R) + 0.5 * x * x + y * y - x * x * y


def rk4(rhs, state, t0: float, t1: float, steps: int):
    """Fixed-step classical Runge-Kutta; ``rhs(t, state)`` returns a tuple like ``state``."""
    h = (t1 - t0) / steps
    s = tuple(np.asarray(v, dtype=float) for v in state)
    t = t0
    for _ in range(steps):
        k1 = rhs(t, s)
        k2 = rhs(t + 0.5 * h, tuple(a + 0.5 * h * b for a, b in zip(s, k1)))
        k3 = rhs(t + 0.5 * h, tuple(a + 0.5 * h * b for a, b in zip(s, k2)))
        k4 = rhs(t + h, tuple(a + h * b for a, b in zip(s, k3)))
        s = tuple(a + (h / 6.0) * (p + 2 * q + 2 * r + w) for a, p, q, r, w in zip(s, k1, k2, k3, k4))
        t = t0 + (t1 - t0) * (_ + 1) / steps
    return s


def integrate_capsize(state0: Sequence[float], R: float = 1.6, t1: float = 50.0, dt: float = 1e-3,
                      record_every: int = 0):
    """RK4 trajectory of the capsize system from ``state0 = (x, y, vx, vy)``.

    Returns the final state, or with ``record_every > 0`` an array of states
    sampled every that many steps (first and last included).
    """
    steps = int(round(t1 / dt))
    rhs = lambda t, s: capsize_field(*s, R)  # noqa: E731
    s = tuple(np.float64(v) for v in state0)
    if not record_every:
        return np.array(rk4(rhs, s, 0.0, t1, steps))
    out = [np.array(s)]
    done = 0
    while done < steps:
        m = min(record_every, steps - done)
        s = rk4(rhs, s, done * dt, (done + m) * dt, m)
        done += m
        out.append(np.array(s))
    return np.array(out)


def advect_curve(curve, vfield: VectorField, t0: float, t1: float, steps: int) -> ClosedCurve:
    """Carry every vertex through the flow with fixed-step RK4; connectivity is kept."""
    curve = as_curve(curve)
    x, y = curve.x.copy(), curve.y.copy()
    h = (t1 - t0) / steps
    sing = np.asarray(vfield.singularities, dtype=float).reshape(-1, 2)

    def check(px, py):
        for sx, sy in sing:
            if np.any(np.hypot(px - sx, py - sy) < vfield.guard):
                raise AdvectionError(f"trajectory entered the singular neighbourhood of ({sx}, {sy})")

    for k in range(steps):
        t = t0 + k * h
        check(x, y)
        k1 = vfield(x, y, t)
        k2 = vfield(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1], t + 0.5 * h)
        k3 = vfield(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1], t + 0.5 * h)
        k4 = vfield(x + h * k3[0], y + h * k3[1], t + h)
        x = x + (h / 6.0) * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y = y + (h / 6.0) * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    check(x, y)
    return ClosedCurve(np.column_stack([x, y]))


def ovp_folded_pair(n: int = 4096, gamma: float = 0.5, eps: float = 0.1, center=(0.0, 1.5),
                    r: float = 0.3, periods: float = 1.0, steps_per_period: int = 2000):
    """A material circle and its image after ``periods`` forcing periods of the OVP flow."""
    seed = circle(center, r, n)
    period = 2.0 * np.pi * gamma
    steps = max(1, int(round(steps_per_period * periods)))
    return seed, advect_curve(seed, ovp_field(gamma, eps), 0.0, periods * period, steps)


def upsample(curve, factor: int) -> ClosedCurve:
    """Split every segment into ``factor`` pieces along the local cubic (see :mod:`lober.densify`)."""
    from .densify import _refine

    curve = as_curve(curve)
    out, _ = _refine(curve, np.ones(len(curve), dtype=bool), factor, True)
    return out


def horseshoe_pair():
    """A bar crossed by a U-shaped band: one class of four crossings and two of two."""
    c1 = rectangle(0.0, 0.0, 4.0, 1.0)
    c2 = ClosedCurve([(1, -1), (1.5, -1), (1.5, 2), (2.5, 2), (2.5, -1), (3, -1), (3, 2.5), (1, 2.5)])
    return c1, c2


def named_fixture(name: str, n: int = 4096):
    """Curve pairs by name; see ``FIXTURES`` for the list."""
    if name == "two-circles":
        return circle((0, 0), 1, n), circle((1, 0), 1, n)
    if name == "ellipses":
        return ellipse(a=1, b=2, n=n), ellipse(a=2, b=1, n=n)
    if name == "squares":
        return rectangle(0, 0, 1, 1), rectangle(0.5, -0.25, 1.5, 1.25)
    if name == "squares-shared-edges":
        return rectangle(0, 0, 1, 1), rectangle(0.5, 0, 1.5, 1)
    if name == "identical":
        c = circle((0, 0), 1, n)
        return c, c
    if name == "disjoint":
        return rectangle(0, 0, 1, 1), rectangle(2, 0, 3, 1)
    if name == "nested":
        return circle((0, 0), 1, n), circle((0.1, 0.05), 0.5, n)
    if name == "near-tangent":
        return circle((0, 0), 1, n), circle((1.999, 0), 1, n)
    if name == "horseshoe":
        return horseshoe_pair()
    if name == "ovp":
        return ovp_folded_pair(n=n)
    raise ValueError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")


FIXTURES = (
    "two-circles",
    "ellipses",
    "squares",
    "squares-shared-edges",
    "identical",
    "disjoint",
    "nested",
    "near-tangent",
    "horseshoe",
    "ovp",
)


def random_fixture(seed: int, n: int = 4096):
    """A seeded transverse pair: two circles, two ellipses, or a circle and its OVP image.

    Returns ``(kind, c1, c2)``. Parameters are drawn so the curves cross at
    a clear angle; OVP images that fold onto themselves are redrawn.
    """
    from .intersect import is_simple

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    kind = ("circles", "ellipses", "ovp")[seed % 3]
    if kind == "circles":
        r1, r2 = rng.uniform(0.6, 1.4, 2)
        d = rng.uniform(abs(r1 - r2) + 0.2, r1 + r2 - 0.2)
        ang = rng.uniform(0, 2 * np.pi)
        c1 = circle((0.0, 0.0), r1, n, phase=rng.uniform(0, 1))
        c2 = circle((d * np.cos(ang), d * np.sin(ang)), r2, n, phase=rng.uniform(0, 1))
        return kind, c1, c2
    if kind == "ellipses":
        a1, b1 = rng.uniform(0.5, 1.5, 2)
        a2, b2 = rng.uniform(0.5, 1.5, 2)
        c1 = ellipse(a=a1, b=b1, n=n, phase=rng.uniform(0, 1), rotation=rng.uniform(0, np.pi))
        c2 = ellipse(rng.uniform(-0.4, 0.4, 2), a2, b2, phase=rng.uniform(0, 1), n=n, rotation=rng.uniform(0, np.pi))
        return kind, c1, c2
    for _ in range(20):
        eps = rng.uniform(0.05, 0.1)
        center = (rng.uniform(-0.05, 0.05), rng.uniform(1.5, 1.6))
        try:
            seed_c, image = ovp_folded_pair(n=n, eps=eps, center=center, r=rng.uniform(0.25, 0.3), steps_per_period=1000)
        except AdvectionError:
            continue
        if is_simple(image):
            return kind, seed_c, image
    raise AdvectionError(f"no simple OVP image found for seed {seed}")

"""End-to-end acceptance checks, one test per criterion.

Each test prints a ``PASS``/``FAIL criterion N`` line, collected again in the
terminal summary, and then asserts the same verdict.
"""
import json
import subprocess
import sys
import time

import numpy as np
from scipy.spatial import cKDTree

from lober.classes import lobe_areas, partition, successor_map
from lober.cli import run
from lober.densify import DensifyConfig, densify
from lober.fixtures import (
    capsize_energy,
    capsize_field,
    circle,
    ellipse,
    integrate_capsize,
    lens_area,
    montecarlo_diff_area,
    named_fixture,
    ovp_folded_pair,
    points_in_polygon,
    random_fixture,
)
from lober.geometry import ClosedCurve, enclosed_area
from lober.intersect import IntersectionSet, find_intersections
from lober.io import parse_tecplot, read_curve, write_curve
from lober.winding import interior_indicators, set_difference_areas

from oracles import point_in_polygon

LENS_DIFF = np.pi - lens_area(1, 1, 1)
ARTIFACTS = ("rslt", "c10.dat", "c20.dat", "c11.dat", "c22.dat", "c12.dat", "c21.dat")


def test_two_circle_lens(criterion):
    c1, c2 = named_fixture("two-circles", 2**12)
    lobe_areas(*named_fixture("two-circles", 64), cross_check=False)  # warm caches
    t = time.perf_counter()
    cls = lobe_areas(c1, c2, cross_check=False)
    t_cls = time.perf_counter() - t
    t = time.perf_counter()
    win = set_difference_areas(c1, c2)
    t_win = time.perf_counter() - t
    e_cls, e_win = abs(cls.a1_minus_a2 - LENS_DIFF), abs(win.a1_minus_a2 - LENS_DIFF)
    ok = max(e_cls, e_win) < 1e-4 and win.error_estimate < 1e-3 and max(t_cls, t_win) < 1.0
    detail = (
        f"class err {e_cls:.2e}, winding err {e_win:.2e}, delta {win.error_estimate:.1e}, "
        f"times {t_cls:.3f}s / {t_win:.3f}s"
    )
    assert criterion(1, ok, detail), detail


def test_q_identity_and_inclusion_exclusion(criterion):
    identity_ok, incl_ok, worst = True, 0, []
    for seed in range(20):
        _, c1, c2 = random_fixture(seed)
        rep = set_difference_areas(c1, c2)
        q1, q2, q3 = rep.q
        four_delta = 4 * rep.error_estimate
        identity_ok &= abs(q1 - (q2 - q3)) == four_delta
        resid = abs(q2 + q3 - rep.area_c1 - rep.area_c2)
        incl_ok += resid < four_delta
        worst.append((resid, four_delta))
    ok = identity_ok and incl_ok == 20
    r, d = max(worst)
    detail = (
        f"|Q1-(Q2-Q3)| == 4 delta on all seeds: {identity_ok}; "
        f"|Q2+Q3-A1-A2| < 4 delta on {incl_ok}/20 seeds (largest residual {r:.1e} vs 4 delta {d:.1e})"
    )
    assert criterion(2, ok, detail), detail


def test_oracle_triangle(criterion):
    t = time.perf_counter()
    bad = []
    for seed in range(20):
        kind, c1, c2 = random_fixture(seed)
        cls = lobe_areas(c1, c2, cross_check=False)
        win = set_difference_areas(c1, c2)
        mc = montecarlo_diff_area(c1, c2, 1_000_000, seed=seed)
        a, b = cls.a1_minus_a2, win.a1_minus_a2
        if abs(a - b) > max(1e-4 * b, 10 * win.error_estimate):
            bad.append(f"seed {seed} methods {a:.6g} vs {b:.6g}")
        for name, v in (("class", a), ("winding", b)):
            if abs(v - mc.value) > 3 * mc.std_error:
                bad.append(f"seed {seed} ({kind}) {name} {v:.6g} vs MC {mc.value:.6g} +/- {mc.std_error:.1g}")
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < 60
    detail = f"20 fixtures in {elapsed:.1f}s, {len(bad)} disagreement(s)" + (f": {bad}" if bad else "")
    assert criterion(3, ok, detail), detail


def test_table_configuration(criterion):
    pts = IntersectionSet.from_orders([1, -1, 1, -1, 1, -1], range(6), [0, 5, 2, 3, 4, 1])
    sigma = [int(s) for s in successor_map(pts).sigma]
    sizes = sorted(len(c) for c in partition(pts))
    ok = sigma == [1, 0, 3, 4, 5, 2] and sizes == [2, 4]
    detail = f"successor {sigma}, class sizes {sizes}"
    assert criterion(4, ok, detail), detail


def test_intersection_exactness(criterion):
    c1, c2 = named_fixture("two-circles", 2**12)
    want = np.array([[0.5, -np.sqrt(3) / 2], [0.5, np.sqrt(3) / 2]])

    def crossing_err(a, b):
        xy = find_intersections(a, b).xy
        return np.abs(xy[np.argsort(xy[:, 1])] - want).max()

    raw = crossing_err(c1, c2)
    dens = crossing_err(*densify(c1, c2, DensifyConfig(3, 10)))

    n1, n2 = named_fixture("near-tangent", 512)
    near = lens_area(1, 1, 1.999)

    def lens_err(a, b):
        rep = lobe_areas(a, b, cross_check=False)
        return abs(rep.area_c1 - rep.a1_minus_a2 - near)

    # one point per segment is the raw sampling
    errs = {1: lens_err(n1, n2)}
    for ir in (10, 1000, 100_000):
        errs[ir] = lens_err(*densify(n1, n2, DensifyConfig(1, ir)))
    decreasing = errs[1] > errs[10] > errs[1000]
    plateau = errs[100_000] > 0.5 * errs[1000]
    ok = raw < 1e-5 and dens < 1e-7 and decreasing and plateau
    detail = (
        f"crossings raw {raw:.1e}, after -DENS 3 10 {dens:.1e}; near-tangent lens errors "
        + ", ".join(f"i_r={k}: {v:.2e}" for k, v in errs.items())
    )
    assert criterion(5, ok, detail), detail


def off_boundary(curve, n, seed, gap=1e-6):
    """Uniform points around ``curve`` kept only when farther than ``gap`` from every segment."""
    rng = np.random.default_rng(seed)
    lo, hi = curve.bbox
    pad = 0.1 * (hi - lo)
    pts = rng.uniform(lo - pad, hi + pad, size=(n, 2))
    a = curve.vertices
    b = np.roll(a, -1, axis=0)
    d = b - a
    dd = np.einsum("ij,ij->i", d, d)
    # a segment within gap of p has its midpoint within half its length plus gap
    reach = 0.5 * np.sqrt(dd.max()) + gap
    near = cKDTree(0.5 * (a + b)).query_ball_point(pts, reach)
    keep = np.ones(n, dtype=bool)
    for k, segs in enumerate(near):
        if segs:
            s = np.asarray(segs)
            rel = pts[k] - a[s]
            t = np.clip(np.einsum("ij,ij->i", rel, d[s]) / dd[s], 0, 1)
            keep[k] = np.hypot(*(rel - t[:, None] * d[s]).T).min() > gap
    return pts[keep]


def test_winding_matches_ray_casting(criterion):
    curves = {
        "circle": circle(n=4096),
        "ellipse": ellipse((0.2, -0.1), 2.0, 0.5, n=4096, rotation=0.3),
        "ovp image": ovp_folded_pair(n=4096)[1],
    }
    parts = []
    total = 0
    for k, (name, c) in enumerate(curves.items()):
        pts = off_boundary(c, 100_000, k)
        ours = interior_indicators(c, pts) == -1
        theirs = points_in_polygon(c, pts)
        sub = np.array([point_in_polygon(c.vertices, p) for p in pts[:2000]])
        wrong = int(np.count_nonzero(ours != theirs)) + int(np.count_nonzero(ours[:2000] != sub))
        total += wrong
        parts.append(f"{name} {len(pts)} pts {wrong} off")
    detail = "; ".join(parts)
    assert criterion(6, total == 0, detail), detail


def test_identical_curves(criterion, tmp_path):
    c, _ = named_fixture("identical", 4096)
    write_curve(tmp_path / "c1.dat", c)
    write_curve(tmp_path / "c2.dat", c)
    code_light = run(["-light", str(tmp_path / "c1.dat"), str(tmp_path / "c2.dat"), str(tmp_path / "rslt")])
    a12, a21 = (float(v) for v in (tmp_path / "rslt").read_text().split()[:2])
    rep = set_difference_areas(read_curve(tmp_path / "c1.dat"), read_curve(tmp_path / "c2.dat"))
    delta, area = rep.error_estimate, rep.area_c1
    code_t = run([str(tmp_path / "c1.dat"), str(tmp_path / "c2.dat"), str(tmp_path / "out" / "rslt")])
    ok = code_light == 0 and max(a12, a21) <= delta and delta < 1e-6 * area and code_t == 3
    detail = f"-light exit {code_light}, areas {a12:g} {a21:g}, delta {delta:.1e}; transverse exit {code_t}"
    assert criterion(7, ok, detail), detail


SCALE_SCRIPT = r"""
import json, sys, time
from lober.fixtures import ovp_folded_pair, upsample
from lober.winding import set_difference_areas

_, c1 = ovp_folded_pair(n=2**14, eps=0.1)
_, c2 = ovp_folded_pair(n=2**14, eps=0.08, r=0.31)
c1, c2 = upsample(c1, 61), upsample(c2, 61)
out = {"n": [len(c1), len(c2)], "runs": {}}
for jobs in (1, 4, 8):
    t = time.perf_counter()
    rep = set_difference_areas(c1, c2, n_jobs=jobs)
    out["runs"][jobs] = {
        "seconds": time.perf_counter() - t,
        "result": [rep.a1_minus_a2, rep.a2_minus_a1, rep.error_estimate],
        "xy": rep.intersections.xy.tolist(),
    }
# the peak of this process image; ru_maxrss would include the forking parent
hwm = [l for l in open("/proc/self/status") if l.startswith("VmHWM")][0]
out["maxrss_mb"] = int(hwm.split()[1]) / 1024
json.dump(out, sys.stdout)
"""


def test_million_vertex_curves(criterion):
    proc = subprocess.run([sys.executable, "-c", SCALE_SCRIPT], capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    out = json.loads(proc.stdout)
    runs = out["runs"]
    slowest = max(r["seconds"] for r in runs.values())
    same = all(r["result"] == runs["1"]["result"] and r["xy"] == runs["1"]["xy"] for r in runs.values())
    ok = min(out["n"]) >= 999_000 and slowest < 60 and out["maxrss_mb"] < 4096 and same
    detail = (
        f"{out['n'][0]} + {out['n'][1]} vertices, {len(runs['1']['xy'])} crossings, "
        f"slowest of jobs 1/4/8 {slowest:.1f}s, peak {out['maxrss_mb']:.0f} MB, identical across workers: {same}"
    )
    assert criterion(8, ok, detail), detail


def run_cli(args):
    return subprocess.run(["lober", *map(str, args)], capture_output=True, text=True).returncode


def test_cli_and_io_contract(criterion, tmp_path):
    fx = tmp_path / "fx"
    problems = []
    if run(["fixture", "ovp", str(fx), "--n", "2048"]) != 0:
        problems.append("fixture command")
    c1, c2 = fx / "c1.dat", fx / "c2.dat"

    def outputs(flags, tag):
        for rep in range(2):
            d = tmp_path / f"{tag}{rep}"
            d.mkdir()
            if run([*flags, str(c1), str(c2), str(d / "rslt")]) != 0:
                problems.append(f"{tag} run {rep} failed")
        return [[(tmp_path / f"{tag}{rep}" / f).read_bytes() for f in ARTIFACTS] for rep in range(2)]

    for flags, tag in (([], "class"), (["-light"], "light"), (["-DENS", "2", "10", "--jobs", "4"], "dens")):
        first, second = outputs(flags, tag)
        if first != second:
            problems.append(f"{tag} outputs differ between runs")

    rng = np.random.default_rng(9)
    th = np.sort(rng.uniform(0, 2 * np.pi, 100_000))
    r = rng.uniform(0.5, 1.0, th.size) * 10.0 ** rng.uniform(-8, 8)
    curve = ClosedCurve(np.column_stack([r * np.cos(th) - 0.1, r * np.sin(th) + 3e-7]))
    write_curve(tmp_path / "big.dat", curve)
    if not np.array_equal(read_curve(tmp_path / "big.dat").vertices, curve.vertices):
        problems.append("round trip")

    grammar = {
        ("-light", c1, c2, tmp_path / "g1" / "rslt"): 0,
        (c1, c2, tmp_path / "g2" / "rslt", "-light"): 0,
        (c1, "-DENS", 1, 5, c2, tmp_path / "g3" / "rslt"): 0,
        (c1, c2, tmp_path / "g4" / "rslt", "-DENS", 0, 10): 0,
        (c1, c2): 2,
        (c1, c2, tmp_path / "rslt", "-DENS"): 2,
        (c1, c2, tmp_path / "rslt", "-DENS", "x", 10): 2,
        (tmp_path / "missing.dat", c2, tmp_path / "rslt"): 1,
    }
    for k in range(1, 5):
        (tmp_path / f"g{k}").mkdir()
    for args, want in grammar.items():
        got = run_cli(args)
        if got != want:
            problems.append(f"{' '.join(map(str, args))} exit {got} != {want}")
    g1 = parse_tecplot((tmp_path / "g1" / "c12.dat").read_text()).rows
    if len(g1) == 0:
        problems.append("-light artifacts empty")

    detail = "repeat runs byte-identical, round trip exact, grammar honoured" if not problems else "; ".join(problems)
    assert criterion(9, not problems, detail), detail


def test_physics_fixtures(criterion):
    seed, image = ovp_folded_pair(n=2**14, eps=0.0)
    a0, a1 = enclosed_area(seed), enclosed_area(image)
    area_drift = abs(a1 - a0) / a0

    state0 = (0.3, 0.1, 0.0, 0.2)
    R = 1.6
    traj = integrate_capsize(state0, R=R, t1=50.0, dt=1e-3, record_every=1000)
    e = capsize_energy(*traj.T, R)
    energy_drift = np.max(np.abs(e - e[0]))

    residual = max(abs(v) for x in (1.0, -1.0) for v in capsize_field(x, 0.5, 0.0, 0.0, R))
    ok = area_drift < 1e-4 and energy_drift < 1e-8 and residual == 0.0
    detail = (
        f"OVP area drift {area_drift:.1e} (relative), capsize energy drift {energy_drift:.1e}, "
        f"field at saddles {residual}"
    )
    assert criterion(10, ok, detail), detail

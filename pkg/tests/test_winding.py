import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lober.classes import lobe_areas
from lober.exceptions import OnBoundaryError, TopologyError
from lober.fixtures import circle, lens_area, named_fixture, points_in_polygon, random_fixture, rectangle
from lober.geometry import ClosedCurve, enclosed_area, reverse
from lober.winding import (
    boundary_pieces,
    interior_indicator,
    interior_indicators,
    q_integrals,
    set_difference_areas,
    winding,
    winding_integral,
    winding_integrals,
)

from oracles import point_in_polygon

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
LENS = lens_area(1, 1, 1)


def off_boundary_points(curve, n, seed, gap=1e-6):
    rng = np.random.default_rng(seed)
    lo, hi = curve.bbox
    pad = 0.1 * (hi - lo)
    pts = rng.uniform(lo - pad, hi + pad, size=(n, 2))
    a = curve.vertices
    d = np.roll(a, -1, axis=0) - a
    dd = np.einsum("ij,ij->i", d, d)
    keep = np.ones(n, dtype=bool)
    for s in range(0, n, 256):
        p = pts[s : s + 256]
        rel = p[:, None, :] - a[None]
        t = np.clip(np.einsum("pij,ij->pi", rel, d) / dd, 0, 1)
        gap_ = np.hypot(*(rel - t[..., None] * d[None]).transpose(2, 0, 1)).min(axis=1)
        keep[s : s + 256] = gap_ > gap
    return pts[keep]


def test_winding_integral_examples():
    assert abs(winding_integral(SQUARE, (0.5, 0.5))) == pytest.approx(2 * np.pi, abs=1e-12)
    assert winding_integral(SQUARE, (10, 10)) == pytest.approx(0, abs=1e-12)
    c = circle(n=4096)
    assert winding_integral(c, (0.5, 0.5)) == pytest.approx(2 * np.pi, abs=1e-10)
    assert winding_integral(reverse(c), (0.5, 0.5)) == pytest.approx(-2 * np.pi, abs=1e-10)


def test_indicator_examples():
    c = circle(n=4096)
    assert interior_indicator(c, (0, 0)) == -1
    assert interior_indicator(c, (50, -3)) == 1
    w = winding(c, (0.1, 0.2))
    assert w.indicator == -1 and w.j_value == pytest.approx(2 * np.pi, abs=1e-10)


def test_collinear_segment_contributes_nothing():
    # query point on the extension of the bottom edge
    j = winding_integrals(SQUARE, [(2.0, 0.0)])
    assert j[0] == pytest.approx(0, abs=1e-15)


def test_on_boundary_raises():
    with pytest.raises(OnBoundaryError):
        winding_integral(SQUARE, (0.5, 0.0))
    with pytest.raises(OnBoundaryError):
        interior_indicator(circle(n=64), circle(n=64).vertices[5])


def test_multiple_turns_rejected():
    th = np.linspace(0, 4 * np.pi, 200, endpoint=False)
    r = 1 + 0.3 * np.cos(th / 2)
    twice = ClosedCurve(np.column_stack([r * np.cos(th), r * np.sin(th)]))
    with pytest.raises(TopologyError):
        interior_indicator(twice, (0, 0))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(3, 120))
def test_j_is_exact_on_polygons(seed, n):
    rng = np.random.default_rng(seed)
    th = np.sort(rng.uniform(0, 2 * np.pi, n))
    r = rng.uniform(0.3, 1.0, n)
    c = ClosedCurve(np.column_stack([r * np.cos(th), r * np.sin(th)]))
    pts = off_boundary_points(c, 200, seed)
    j = np.abs(winding_integrals(c, pts))
    assert np.all(np.minimum(j, np.abs(j - 2 * np.pi)) < 1e-9)


def test_indicator_matches_ray_casting_on_circle():
    c = circle(n=4096)
    pts = off_boundary_points(c, 10_000, 1)
    ours = interior_indicators(c, pts) == -1
    assert np.array_equal(ours, points_in_polygon(c, pts))
    sub = pts[:500]
    assert np.array_equal(ours[:500], [point_in_polygon(c.vertices, p) for p in sub])


def test_indicator_matches_ray_casting_on_folded_curve():
    _, image = named_fixture("ovp", 4096)
    pts = off_boundary_points(image, 10_000, 2)
    assert len(pts) > 9_900
    ours = interior_indicators(image, pts) == -1
    assert np.array_equal(ours, points_in_polygon(image, pts))


def test_q_two_circles():
    q = q_integrals(*named_fixture("two-circles", 4096))
    assert q.q2 == pytest.approx(2 * np.pi - LENS, abs=1e-4)
    assert q.q3 == pytest.approx(LENS, abs=1e-4)
    assert q.q1 == pytest.approx(q.q2 - q.q3, abs=1e-4)


def test_q_identical_curves():
    c, _ = named_fixture("identical", 4096)
    q = q_integrals(c, c)
    a = enclosed_area(c)
    assert q.q2 == pytest.approx(a, rel=1e-6)
    assert q.q3 == pytest.approx(a, rel=1e-6)
    assert abs(q.q1) < 1e-6 * a


def test_q_disjoint():
    c1, c2 = named_fixture("disjoint")
    q = q_integrals(c1, c2)
    assert q.q3 == 0 and q.q2 == 2.0 and q.q1 == q.q2


def test_set_difference_examples():
    c, _ = named_fixture("identical", 4096)
    rep = set_difference_areas(c, c)
    assert rep.a1_minus_a2 <= rep.error_estimate and rep.a2_minus_a1 <= rep.error_estimate
    assert rep.error_estimate < 1e-6 * enclosed_area(c)
    rep = set_difference_areas(*named_fixture("two-circles", 4096))
    assert rep.a1_minus_a2 == pytest.approx(np.pi - LENS, abs=1e-4)
    assert rep.a2_minus_a1 == pytest.approx(np.pi - LENS, abs=1e-4)
    assert rep.error_estimate < 1e-3
    big, small = circle(r=2.0, n=4096), circle((0.3, 0.1), 0.5, 4096)
    rep = set_difference_areas(big, small)
    assert rep.a1_minus_a2 == pytest.approx(enclosed_area(big) - enclosed_area(small), abs=max(rep.error_estimate, 1e-12))
    assert rep.a2_minus_a1 == pytest.approx(0, abs=max(rep.error_estimate, 1e-12))


def test_shared_edges():
    rep = set_difference_areas(*named_fixture("squares-shared-edges"))
    assert rep.a1_minus_a2 == pytest.approx(0.5, abs=1e-12)
    assert rep.a2_minus_a1 == pytest.approx(0.5, abs=1e-12)
    # shared edge running the opposite way
    c1 = rectangle(0, 0, 1, 1)
    c2 = rectangle(1, 0, 2, 1)
    rep = set_difference_areas(c1, c2)
    assert (rep.a1_minus_a2, rep.a2_minus_a1) == pytest.approx((1.0, 1.0), abs=1e-12)


def test_q_identity_and_bounds():
    for seed in range(6):
        _, c1, c2 = random_fixture(seed, 4096)
        rep = set_difference_areas(c1, c2)
        q1, q2, q3 = rep.q
        assert abs(q1 - (q2 - q3)) == pytest.approx(4 * rep.error_estimate, abs=1e-15)
        assert q2 >= q3 >= 0
        assert rep.error_estimate < 1e-3 * max(rep.area_c1, rep.area_c2)


def test_methods_agree():
    for name in ("two-circles", "ellipses", "squares", "horseshoe", "ovp", "nested", "disjoint"):
        c1, c2 = named_fixture(name, 4096)
        w = set_difference_areas(c1, c2)
        t = lobe_areas(c1, c2, cross_check=False)
        for a, b in ((w.a1_minus_a2, t.a1_minus_a2), (w.a2_minus_a1, t.a2_minus_a1)):
            assert abs(a - b) <= max(1e-4 * b, 10 * w.error_estimate, 1e-12)


def test_orientation_invariance():
    c1, c2 = named_fixture("ovp", 4096)
    base = set_difference_areas(c1, c2)
    for x1, x2 in ((reverse(c1), c2), (c1, reverse(c2)), (reverse(c1), reverse(c2))):
        rep = set_difference_areas(x1, x2)
        assert rep.a1_minus_a2 == pytest.approx(base.a1_minus_a2, abs=1e-9)
        assert rep.a2_minus_a1 == pytest.approx(base.a2_minus_a1, abs=1e-9)


def test_segment_sampling_agrees_with_arc_sampling():
    for name in ("two-circles", "ovp", "squares-shared-edges"):
        c1, c2 = named_fixture(name, 2048)
        a = set_difference_areas(c1, c2, sampling="arc")
        b = set_difference_areas(c1, c2, sampling="segment")
        assert a.a1_minus_a2 == pytest.approx(b.a1_minus_a2, abs=1e-12)
        assert a.a2_minus_a1 == pytest.approx(b.a2_minus_a1, abs=1e-12)


def test_boundary_pieces_split_by_side():
    c1, c2 = named_fixture("two-circles", 512)
    pieces = boundary_pieces(c1, c2)
    assert set(pieces) == {"c11", "c12", "c22", "c21"}
    # C1 inside C2 sits on the right of x = 0.5, outside on the left
    assert np.all(pieces["c11"][:, 0] >= 0.5 - 1e-12)
    assert np.all(pieces["c12"][:, 0] <= 0.5 + 1e-12)
    assert np.all(pieces["c22"][:, 0] <= 0.5 + 1e-12)
    assert np.all(pieces["c21"][:, 0] >= 0.5 - 1e-12)

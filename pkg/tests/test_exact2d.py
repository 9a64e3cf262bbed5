"""Planar kernel: closed-form oracles, invariants, serialization, SVG."""

import json
import math

import numpy as np
import pytest

from ballbodies.core import HullEmptyError, PointSet
from ballbodies import exact2d
from ballbodies.exact2d import (
    ArcPolygon2D,
    area,
    boundary_points,
    bounds,
    disk_intersection,
    hausdorff_distance,
    perimeter,
    region_distance,
    render_svg,
    spindle_hull_2d,
    support_value,
    v1_2d,
)

LENS = PointSet(np.array([[-0.5, 0.0], [0.5, 0.0]]))


# ---------------------------------------------------------------- lens oracle


def test_lens_area_closed_form():
    # two unit disks, centers 1 apart: area = 2 pi / 3 - sqrt(3) / 2
    A = disk_intersection(LENS, 1.0)
    assert area(A) == pytest.approx(2.0 * math.pi / 3.0 - math.sqrt(3.0) / 2.0, rel=1e-12)


def test_lens_perimeter_closed_form():
    A = disk_intersection(LENS, 1.0)
    assert perimeter(A) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-12)
    assert v1_2d(A) == pytest.approx(2.0 * math.pi / 3.0, rel=1e-12)


def test_lens_vertices():
    A = disk_intersection(LENS, 1.0)
    verts = A.vertices()
    assert verts.shape == (2, 2)
    ys = np.sort(verts[:, 1])
    h = math.sqrt(3.0) / 2.0
    assert ys == pytest.approx([-h, h], abs=1e-12)
    assert verts[:, 0] == pytest.approx([0.0, 0.0], abs=1e-12)


def test_lens_area_monte_carlo_oracle():
    A = disk_intersection(LENS, 1.0)
    rng = np.random.default_rng(42)
    pts = rng.uniform(-1.0, 1.0, size=(400000, 2))
    d1 = np.linalg.norm(pts - LENS.points[0], axis=1)
    d2 = np.linalg.norm(pts - LENS.points[1], axis=1)
    frac = np.mean((d1 <= 1.0) & (d2 <= 1.0))
    mc = 4.0 * frac
    se = 4.0 * math.sqrt(frac * (1 - frac) / pts.shape[0])
    assert abs(mc - area(A)) < 4.0 * se


def test_three_disk_area_against_inclusion_exclusion():
    # equilateral generators 1 apart, r = 1: the Reuleaux triangle
    pts = PointSet(np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]]))
    A = disk_intersection(pts, 1.0)
    assert area(A) == pytest.approx((math.pi - math.sqrt(3.0)) / 2.0, rel=1e-12)
    assert perimeter(A) == pytest.approx(math.pi, rel=1e-12)
    assert len(A.arcs) == 3


def test_single_disk():
    X = PointSet(np.array([[0.5, -0.25]]))
    A = disk_intersection(X, 2.0)
    assert area(A) == pytest.approx(4.0 * math.pi, rel=1e-13)
    assert perimeter(A) == pytest.approx(4.0 * math.pi, rel=1e-13)
    assert len(A.arcs) == 1


def test_duplicate_generators_collapse():
    X = PointSet(np.array([[0.0, 0.0], [0.0, 0.0], [1e-18, 0.0]]))
    A = disk_intersection(X, 1.0)
    assert area(A) == pytest.approx(math.pi, rel=1e-12)


def test_empty_and_point_regions():
    far = PointSet(np.array([[-2.0, 0.0], [2.0, 0.0]]))
    A = disk_intersection(far, 1.0)
    assert A.is_empty
    assert area(A) == 0.0 and perimeter(A) == 0.0

    touching = PointSet(np.array([[-1.0, 0.0], [1.0, 0.0]]))
    B = disk_intersection(touching, 1.0)
    assert B.is_point
    assert np.allclose(B.point, [0.0, 0.0], atol=1e-9)
    assert area(B) == 0.0


def test_redundant_far_generator_ignored():
    # a third center whose disk contains the lens changes nothing
    with_far = PointSet(np.array([[-0.5, 0.0], [0.5, 0.0], [0.0, 0.05]]))
    A = disk_intersection(LENS, 1.0)
    B = disk_intersection(with_far, 1.0)
    assert area(B) == pytest.approx(area(A), rel=1e-12)
    assert len(B.arcs) == 2


def test_validate_accepts_kernel_output():
    rng = np.random.default_rng(9)
    for _ in range(25):
        pts = PointSet(rng.uniform(-0.6, 0.6, size=(rng.integers(1, 7), 2)))
        A = disk_intersection(pts, 1.0)
        A.validate()


# ---------------------------------------------------------------- hull


def test_spindle_hull_of_lens_generators():
    H = spindle_hull_2d(LENS, 1.0)
    # hull arcs are centered at the lens vertices and pass through the
    # generators, which become the hull's own vertices
    centers = np.sort(np.array([a.center for a in H.arcs]), axis=0)
    h = math.sqrt(3.0) / 2.0
    assert centers == pytest.approx(np.array([[0.0, -h], [0.0, h]]), abs=1e-12)
    verts = np.sort(H.vertices(), axis=0)
    assert verts == pytest.approx(np.array([[-0.5, 0.0], [0.5, 0.0]]), abs=1e-9)


def test_spindle_hull_single_point():
    H = spindle_hull_2d(PointSet(np.array([[0.3, 0.4]])), 1.0)
    assert H.is_point
    assert np.allclose(H.point, [0.3, 0.4])


def test_spindle_hull_antipodal_pair_is_disk():
    # circumradius exactly r: the dual is a point, the hull a full disk
    X = PointSet(np.array([[-1.0, 0.0], [1.0, 0.0]]))
    H = spindle_hull_2d(X, 1.0)
    assert area(H) == pytest.approx(math.pi, rel=1e-9)


def test_spindle_hull_uncoverable_raises():
    X = PointSet(np.array([[-1.5, 0.0], [1.5, 0.0]]))
    with pytest.raises(HullEmptyError):
        spindle_hull_2d(X, 1.0)


def test_hull_contains_generators_and_segments():
    rng = np.random.default_rng(21)
    pts = PointSet(rng.uniform(-0.5, 0.5, size=(5, 2)))
    H = spindle_hull_2d(pts, 1.0)
    for p in pts.points:
        assert H.contains(p, tol=1e-9)
    # spindle convex implies ordinary convex
    for _ in range(40):
        i, j = rng.integers(0, 5, 2)
        t = rng.uniform()
        assert H.contains(t * pts.points[i] + (1 - t) * pts.points[j], tol=1e-9)


def test_width_of_body_plus_hull_is_constant():
    rng = np.random.default_rng(33)
    pts = PointSet(rng.uniform(-0.55, 0.55, size=(4, 2)))
    A = disk_intersection(pts, 1.0)
    H = spindle_hull_2d(pts, 1.0)
    # summed support of body and hull is the width of a 2r-ball pair
    for ang in np.linspace(0.0, math.pi, 37):
        u = np.array([math.cos(ang), math.sin(ang)])
        total = (
            support_value(A, u) + support_value(A, -u)
            + support_value(H, u) + support_value(H, -u)
        )
        assert total == pytest.approx(2.0, abs=1e-9)


def test_perimeter_sum_identity():
    # with constant joint width 2r, perimeters add to 2 pi r
    rng = np.random.default_rng(35)
    for _ in range(10):
        pts = PointSet(rng.uniform(-0.5, 0.5, size=(rng.integers(2, 6), 2)))
        A = disk_intersection(pts, 1.0)
        H = spindle_hull_2d(pts, 1.0)
        assert perimeter(A) + perimeter(H) == pytest.approx(2.0 * math.pi, rel=1e-9)


# ---------------------------------------------------------------- queries


def test_support_value_lens():
    A = disk_intersection(LENS, 1.0)
    assert support_value(A, np.array([0.0, 1.0])) == pytest.approx(math.sqrt(3.0) / 2.0, rel=1e-12)
    assert support_value(A, np.array([1.0, 0.0])) == pytest.approx(0.5, rel=1e-12)


def test_support_value_against_boundary_sampling():
    rng = np.random.default_rng(55)
    pts = PointSet(rng.uniform(-0.5, 0.5, size=(4, 2)))
    A = disk_intersection(pts, 1.0)
    # vertices included: sampling alone misses corner maxima by O(spacing)
    samples = np.vstack([boundary_points(A, 4000), A.vertices()])
    for ang in rng.uniform(0.0, 2.0 * math.pi, 12):
        u = np.array([math.cos(ang), math.sin(ang)])
        sampled = (samples @ u).max()
        exact = support_value(A, u)
        assert sampled <= exact + 1e-12
        assert exact - sampled < 1e-6


def test_support_requires_unit_vector():
    A = disk_intersection(LENS, 1.0)
    with pytest.raises(ValueError):
        support_value(A, np.array([1.0, 1.0]))


def test_region_distance_inside_and_outside():
    A = disk_intersection(LENS, 1.0)
    assert region_distance(A, np.array([0.0, 0.0])) == 0.0
    h = math.sqrt(3.0) / 2.0
    assert region_distance(A, np.array([0.0, h + 0.5])) == pytest.approx(0.5, rel=1e-9)
    # left of the lens, nearest point is on the right generator's circle
    assert region_distance(A, np.array([-1.0, 0.0])) == pytest.approx(0.5, rel=1e-9)


def test_boundary_points_lie_on_boundary():
    A = disk_intersection(LENS, 1.0)
    pts = boundary_points(A, 500)
    assert pts.shape == (500, 2)
    d1 = np.linalg.norm(pts - LENS.points[0], axis=1)
    d2 = np.linalg.norm(pts - LENS.points[1], axis=1)
    assert np.maximum(d1, d2).max() <= 1.0 + 1e-12
    assert np.abs(np.maximum(d1, d2) - 1.0).max() < 1e-9


def test_hausdorff_distance_shifted_disks():
    A = disk_intersection(PointSet(np.array([[0.0, 0.0]])), 1.0)
    B = disk_intersection(PointSet(np.array([[0.3, 0.0]])), 1.0)
    assert hausdorff_distance(A, B) == pytest.approx(0.3, abs=2e-3)
    assert hausdorff_distance(A, A) < 1e-9


def test_bounds_of_lens():
    A = disk_intersection(LENS, 1.0)
    xmin, ymin, xmax, ymax = bounds(A)
    h = math.sqrt(3.0) / 2.0
    assert (xmin, xmax) == pytest.approx((-0.5, 0.5), abs=1e-12)
    assert (ymin, ymax) == pytest.approx((-h, h), abs=1e-12)


# ---------------------------------------------------------------- io


def test_arc_polygon_json_roundtrip():
    A = disk_intersection(LENS, 1.0)
    B = ArcPolygon2D.from_json(A.to_json())
    assert len(B.arcs) == len(A.arcs)
    assert area(B) == pytest.approx(area(A), rel=1e-13)

    E = ArcPolygon2D.from_json(ArcPolygon2D.empty().to_json())
    assert E.is_empty

    P = ArcPolygon2D.from_json(ArcPolygon2D.single_point(np.array([1.0, 2.0])).to_json())
    assert P.is_point and np.allclose(P.point, [1.0, 2.0])


def test_render_svg_deterministic_and_wellformed():
    A = disk_intersection(LENS, 1.0)
    svg1 = render_svg(A)
    svg2 = render_svg(A)
    assert svg1 == svg2
    assert svg1.startswith("<svg") and svg1.rstrip().endswith("</svg>")
    assert "<path" in svg1

    disk = disk_intersection(PointSet(np.array([[0.0, 0.0]])), 1.0)
    assert "<circle" in render_svg(disk)

    empty = ArcPolygon2D.empty()
    assert "empty" in render_svg(empty)


def test_render_svg_accepts_style():
    A = disk_intersection(LENS, 1.0)
    svg = render_svg(A, style={"fill": "#123456"})
    assert "#123456" in svg

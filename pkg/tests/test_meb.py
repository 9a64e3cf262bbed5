import itertools

import numpy as np
import pytest

from ballbodies.meb import minimum_enclosing_ball


def _ball_of_subset(subset: np.ndarray) -> tuple[np.ndarray, float] | None:
    """Circumscribed ball with all subset points on the boundary.

    Solves the classical linear system in the offsets from the first
    point, a deliberately different route than the production code.
    """
    p0 = subset[0]
    if subset.shape[0] == 1:
        return p0.copy(), 0.0
    A = 2.0 * (subset[1:] - p0)
    b = np.einsum("ij,ij->i", subset[1:] - p0, subset[1:] - p0)
    sol, residual, rank, _ = np.linalg.lstsq(A, b, rcond=None)
    if rank < A.shape[0]:
        return None
    if not np.allclose(A @ sol, b, atol=1e-9):
        return None
    center = p0 + sol
    return center, float(np.linalg.norm(center - p0))


def _brute_force_meb(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Smallest ball over all boundary subsets of size <= d + 1."""
    n, d = points.shape
    best = None
    for size in range(1, min(n, d + 1) + 1):
        for idx in itertools.combinations(range(n), size):
            got = _ball_of_subset(points[list(idx)])
            if got is None:
                continue
            center, radius = got
            if np.linalg.norm(points - center, axis=1).max() <= radius * (1 + 1e-9) + 1e-12:
                if best is None or radius < best[1]:
                    best = (center, radius)
    assert best is not None
    return best


def test_single_point():
    center, radius = minimum_enclosing_ball(np.array([[3.0, -1.0]]))
    assert radius == 0.0
    assert np.allclose(center, [3.0, -1.0])


def test_two_points_diameter():
    center, radius = minimum_enclosing_ball(np.array([[0.0, 0.0], [2.0, 0.0]]))
    assert radius == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(center, [1.0, 0.0], atol=1e-12)


def test_equilateral_triangle():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2]])
    center, radius = minimum_enclosing_ball(pts)
    assert radius == pytest.approx(1.0 / np.sqrt(3), rel=1e-10)
    assert np.allclose(center, [0.5, np.sqrt(3) / 6], atol=1e-9)


def test_obtuse_triangle_uses_diameter():
    # the circumcircle of an obtuse triangle is not minimal
    pts = np.array([[0.0, 0.0], [4.0, 0.0], [2.0, 0.1]])
    _, radius = minimum_enclosing_ball(pts)
    assert radius == pytest.approx(2.0, rel=1e-10)


def test_duplicated_points():
    pts = np.array([[1.0, 1.0], [1.0, 1.0], [1.0, 1.0], [2.0, 1.0]])
    center, radius = minimum_enclosing_ball(pts)
    assert radius == pytest.approx(0.5, rel=1e-10)


def test_collinear_points():
    pts = np.array([[float(i), 2.0 * i, -i] for i in range(7)])
    _, radius = minimum_enclosing_ball(pts)
    assert radius == pytest.approx(3.0 * np.sqrt(6.0), rel=1e-9)


def test_deterministic_given_seed():
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(40, 3))
    c1, r1 = minimum_enclosing_ball(pts, seed=5)
    c2, r2 = minimum_enclosing_ball(pts, seed=5)
    assert r1 == r2
    assert np.array_equal(c1, c2)


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_against_brute_force(dim):
    rng = np.random.default_rng(100 + dim)
    for trial in range(60):
        n = int(rng.integers(2, 9))
        pts = rng.normal(size=(n, dim)) * rng.uniform(0.5, 3.0)
        center, radius = minimum_enclosing_ball(pts, seed=trial)
        ref_center, ref_radius = _brute_force_meb(pts)
        assert radius == pytest.approx(ref_radius, rel=1e-8, abs=1e-10)
        assert np.linalg.norm(center - ref_center) < 1e-7 * max(1.0, ref_radius)
        # enclosure is not optional
        assert np.linalg.norm(pts - center, axis=1).max() <= radius * (1 + 1e-9) + 1e-12


def test_cocircular_points():
    # all points exactly on a circle; the optimum is that circle
    angles = np.linspace(0.0, 2.0 * np.pi, 12, endpoint=False)
    pts = np.c_[np.cos(angles), np.sin(angles)] * 2.5 + np.array([1.0, -2.0])
    center, radius = minimum_enclosing_ball(pts)
    assert radius == pytest.approx(2.5, rel=1e-9)
    assert np.allclose(center, [1.0, -2.0], atol=1e-8)


def test_high_dimension_simplex():
    d = 6
    pts = np.eye(d)
    center, radius = minimum_enclosing_ball(pts, seed=1)
    # regular simplex: center at the centroid
    assert np.allclose(center, np.full(d, 1.0 / d), atol=1e-8)
    assert radius == pytest.approx(np.sqrt(1.0 - 1.0 / d), rel=1e-9)

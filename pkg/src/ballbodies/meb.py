"""Minimum enclosing ball (circumradius) in arbitrary dimension.

Randomized Welzl-style algorithm with a move-to-front heuristic: expected
linear time in the number of points for fixed dimension.  The ball is
determined by a support set of at most ``d + 1`` points; recursion depth
is bounded by the support size, so large inputs cannot exhaust the stack.

The result is deterministic given the input order and the shuffle seed.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["minimum_enclosing_ball"]

# Relative slack on squared-distance containment checks.  Keeps exactly
# cocircular / duplicated points from pushing the boundary set past d + 1
# on float noise, while staying far below any genuine violation.
_REL_SLACK = 1e-12
_ABS_SLACK = 1e-30


def _circumsphere(boundary: list[np.ndarray]) -> tuple[np.ndarray, float]:
    """Ball with every point of ``boundary`` on its sphere.

    The center is taken in the affine hull of the boundary points (which
    is what makes the ball minimal for that boundary).  Degenerate
    boundary sets fall back to a least-squares solve.
    """
    s0 = boundary[0]
    if len(boundary) == 1:
        return s0.copy(), 0.0
    a = np.vstack(boundary[1:]) - s0
    b = 0.5 * np.einsum("ij,ij->i", a, a)
    gram = a @ a.T
    try:
        x = np.linalg.solve(gram, b)
    except np.linalg.LinAlgError:
        x = np.linalg.lstsq(gram, b, rcond=None)[0]
    offset = x @ a
    return s0 + offset, float(offset @ offset)


def _mb(work: np.ndarray, m: int, boundary: list[np.ndarray], dim: int) -> tuple[np.ndarray, float]:
    """Smallest ball of ``work[:m]`` with ``boundary`` forced onto the sphere."""
    if boundary:
        center, r2 = _circumsphere(boundary)
    else:
        center, r2 = None, -1.0
    if len(boundary) >= dim + 1:
        return center, r2
    i = 0
    while i < m:
        block = work[i:m]
        d2 = np.einsum("ij,ij->i", block - center, block - center) if center is not None else None
        if d2 is not None:
            bad = np.nonzero(d2 > r2 * (1.0 + _REL_SLACK) + _ABS_SLACK)[0]
            if bad.size == 0:
                break
            j = i + int(bad[0])
        else:
            j = i
        center, r2 = _mb(work, j, boundary + [work[j].copy()], dim)
        # move-to-front: the violator tends to be a support point, so put
        # it where later scans meet it first
        work[: j + 1] = np.roll(work[: j + 1], 1, axis=0)
        i = j + 1
    return center, r2


def minimum_enclosing_ball(points, seed: int = 0) -> tuple[np.ndarray, float]:
    """Center and radius of the smallest ball containing all points.

    Parameters
    ----------
    points : array_like
        Shape ``(n, d)`` with ``n >= 1``.
    seed : int
        Seed for the initial shuffle.  Any seed gives the same ball (it
        is unique); the seed only fixes the arithmetic path.

    Returns
    -------
    center : numpy.ndarray
        Shape ``(d,)``.
    radius : float
    """
    pts = np.ascontiguousarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ValueError("points must be a nonempty (n, d) array")
    n, dim = pts.shape
    if n == 1:
        return pts[0].copy(), 0.0
    if n == 2:
        center = 0.5 * (pts[0] + pts[1])
        return center, 0.5 * math.dist(pts[0], pts[1])
    rng = np.random.default_rng(seed)
    work = pts[rng.permutation(n)]
    center, r2 = _mb(work, n, [], dim)
    return center, math.sqrt(max(r2, 0.0))

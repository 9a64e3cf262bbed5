"""Point sets and ball bodies.

A *ball body* at radius ``r`` is the intersection of congruent closed
balls of radius ``r`` centered at a finite generator set,

    body(X, r) = ∩_{x in X} B[x, r].

Taking the body of a set is the *dual* operator; applying it twice gives
the ball hull (spindle hull) of the generators.  The status of a body is
a trichotomy decided by the circumradius ``cr`` of the generators:
empty (``cr > r``), a single point (``cr = r``, the circumcenter), or
full-dimensional (``cr < r``).
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .meb import minimum_enclosing_ball

__all__ = [
    "PointSet",
    "BodyStatus",
    "BallBody",
    "HullEmptyError",
    "dual",
    "membership",
    "circumradius",
    "dual_of_ball_union",
    "ball_hull_membership",
    "HullMembership",
]

# |cr - r| band inside which a body counts as a single point.
POINT_STATUS_RTOL = 1e-12


class HullEmptyError(ValueError):
    """Raised when a ball hull is requested but the dual body is empty."""


@dataclass(frozen=True)
class PointSet:
    """Immutable finite point set in d-dimensional Euclidean space.

    Parameters
    ----------
    points : array_like
        Shape ``(n, d)`` with ``n >= 1``, ``d >= 1``; all coordinates
        finite.  The array is copied and frozen.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float, copy=True)
        if pts.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got shape {pts.shape}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"need at least one point in at least one dimension, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must have finite coordinates")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim, "points": self.points.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "PointSet":
        data = json.loads(text)
        pts = np.asarray(data["points"], dtype=float)
        if pts.ndim != 2 or pts.shape[1] != int(data["dim"]):
            raise ValueError("point list does not match declared dimension")
        return cls(pts)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"x{i + 1}" for i in range(self.dim)])
        writer.writerows(self.points.tolist())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "PointSet":
        rows = list(csv.reader(io.StringIO(text)))
        if len(rows) < 2:
            raise ValueError("CSV must have a header row and at least one point")
        header = rows[0]
        expected = [f"x{i + 1}" for i in range(len(header))]
        if header != expected:
            raise ValueError(f"CSV header must be {expected}, got {header}")
        return cls(np.asarray([[float(v) for v in row] for row in rows[1:] if row], dtype=float))

    @classmethod
    def from_file(cls, path) -> "PointSet":
        """Load from a .csv or .json file (sniffed by extension)."""
        text = open(path, "r", encoding="utf-8").read()
        if str(path).lower().endswith(".json"):
            return cls.from_json(text)
        return cls.from_csv(text)


class BodyStatus(Enum):
    EMPTY = "Empty"
    POINT = "Point"
    FULL_DIM = "FullDim"


@dataclass(frozen=True)
class BallBody:
    """Intersection of congruent balls around a finite generator set.

    ``radius`` is normally positive; :func:`dual_of_ball_union` may
    produce a nonpositive radius, which simply means the body is empty
    (or, at exactly zero, a single point when the generators coincide).
    Status and the circumcenter are computed lazily and cached.
    """

    generators: PointSet
    radius: float

    @property
    def dim(self) -> int:
        return self.generators.dim

    @cached_property
    def _meb(self) -> tuple[np.ndarray, float]:
        center, cr = minimum_enclosing_ball(self.generators.points)
        return center, cr

    @property
    def circumcenter(self) -> np.ndarray:
        return self._meb[0]

    @property
    def circumradius(self) -> float:
        return self._meb[1]

    @cached_property
    def status(self) -> BodyStatus:
        cr = self.circumradius
        tol = POINT_STATUS_RTOL * max(1.0, abs(self.radius))
        if abs(cr - self.radius) <= tol:
            return BodyStatus.POINT
        if cr > self.radius:
            return BodyStatus.EMPTY
        return BodyStatus.FULL_DIM

    @property
    def witness(self) -> np.ndarray | None:
        """The single member when status is Point, else None."""
        if self.status is BodyStatus.POINT:
            return self.circumcenter
        return None

    def contains(self, q) -> bool:
        return membership(self, q)

    def contains_many(self, qs: np.ndarray) -> np.ndarray:
        """Vectorized membership for an (m, d) array of query points."""
        qs = np.asarray(qs, dtype=float)
        if self.radius < 0:
            return np.zeros(qs.shape[0], dtype=bool)
        pts = self.generators.points
        d2 = ((qs[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        return d2.max(axis=1) <= self.radius * self.radius

    def to_json(self) -> str:
        return json.dumps(
            {
                "dim": self.dim,
                "points": self.generators.points.tolist(),
                "radius": self.radius,
                "status": self.status.value,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "BallBody":
        data = json.loads(text)
        return cls(PointSet(np.asarray(data["points"], dtype=float)), float(data["radius"]))


def dual(X: PointSet, r: float) -> BallBody:
    """The ball body ``∩_{x in X} B[x, r]``.

    Parameters
    ----------
    X : PointSet
    r : float
        Ball radius, must be positive.
    """
    if not isinstance(X, PointSet):
        X = PointSet(np.asarray(X, dtype=float))
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    return BallBody(X, float(r))


def membership(B: BallBody, q) -> bool:
    """Exact membership test: max squared distance to a generator vs r^2."""
    q = np.asarray(q, dtype=float)
    if q.shape != (B.dim,):
        raise ValueError(f"query point must have shape ({B.dim},), got {q.shape}")
    if B.radius < 0:
        return False
    diffs = B.generators.points - q
    return bool(np.einsum("ij,ij->i", diffs, diffs).max() <= B.radius * B.radius)


def circumradius(X, seed: int = 0) -> tuple[float, np.ndarray]:
    """Circumradius and circumcenter (minimum-enclosing-ball) of a point set."""
    pts = X.points if isinstance(X, PointSet) else np.asarray(X, dtype=float)
    center, r = minimum_enclosing_ball(pts, seed=seed)
    return r, center


def dual_of_ball_union(X: PointSet, rho: float, R: float) -> BallBody:
    """Dual, at radius ``R``, of the union of rho-balls around ``X``.

    The set of centers of R-balls containing every B[x_i, rho] is exactly
    the ball body of ``X`` at radius ``R - rho``: a closed-form reduction
    that lets unions of congruent balls reuse all ball-body machinery.
    When ``R <= rho`` no R-ball can contain a rho-ball around a distinct
    center; the result is an empty body (flagged by a warning) rather
    than an error.
    """
    if not isinstance(X, PointSet):
        X = PointSet(np.asarray(X, dtype=float))
    if rho < 0:
        raise ValueError(f"rho must be nonnegative, got {rho}")
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    if R <= rho:
        warnings.warn(
            f"dual of a union of balls with R = {R} <= rho = {rho} is empty",
            RuntimeWarning,
            stacklevel=2,
        )
    return BallBody(X, float(R - rho))


@dataclass(frozen=True)
class HullMembership:
    """Outcome of a ball-hull membership query.

    ``inside`` is True when no separating witness was found (inside up to
    the search's confidence); when False, ``certificate`` is a verified
    member z of the dual body with ``|z - q| > r``, proving q lies
    outside the hull.
    """

    inside: bool
    certificate: np.ndarray | None
    distance: float


def ball_hull_membership(P: PointSet, r: float, q, config=None) -> HullMembership:
    """Test whether ``q`` lies in the ball hull (spindle hull) of ``P``.

    A point is outside the hull iff some member of the dual body
    ``body(P, r)`` is farther than ``r`` from it.  The search maximizes
    the distance from ``q`` over the dual body by multi-start projected
    gradient ascent; any maximizer beyond ``r`` is a certificate.

    Parameters
    ----------
    P : PointSet
    r : float
        Hull radius; the hull exists only when ``circumradius(P) <= r``.
    q : array_like
        Query point.
    config : EstimatorConfig, optional
        Supplies the projection tolerances and the seed.

    Raises
    ------
    HullEmptyError
        If the dual body is empty (circumradius beyond ``r``).
    """
    from .estimators import EstimatorConfig, _dykstra_balls

    if not isinstance(P, PointSet):
        P = PointSet(np.asarray(P, dtype=float))
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    cfg = config if config is not None else EstimatorConfig()
    q = np.asarray(q, dtype=float)
    if q.shape != (P.dim,):
        raise ValueError(f"query point must have shape ({P.dim},), got {q.shape}")

    body = BallBody(P, float(r))
    if body.status is BodyStatus.EMPTY:
        raise HullEmptyError(f"circumradius {body.circumradius} exceeds r = {r}: the hull is undefined")
    if body.status is BodyStatus.POINT:
        # the dual is a single point z; q is outside the hull iff |z - q| > r
        z = body.witness
        dist = float(np.linalg.norm(z - q))
        if dist > r * (1.0 + 1e-9):
            return HullMembership(False, z.copy(), dist)
        return HullMembership(True, None, dist)

    center = body.circumcenter
    rng = np.random.default_rng((cfg.seed, 0x48554C4C))
    n_starts = 8
    dirs = rng.standard_normal((n_starts, P.dim))
    away = q - center
    if np.linalg.norm(away) > 0:
        dirs[0] = -away  # start opposite the query: usually the far side
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    starts = center + r * dirs

    z = _dykstra_balls(body, starts, cfg)
    best = np.full(n_starts, -np.inf)
    for _ in range(cfg.max_projection_iters):
        gaps = z - q
        norms = np.linalg.norm(gaps, axis=1)
        norms[norms == 0] = 1.0
        step = r * gaps / norms[:, None]
        z = _dykstra_balls(body, z + step, cfg)
        vals = np.linalg.norm(z - q, axis=1)
        if np.max(vals - best) < cfg.feasibility_tolerance:
            best = np.maximum(best, vals)
            break
        best = np.maximum(best, vals)

    i = int(np.argmax(np.linalg.norm(z - q, axis=1)))
    zi = z[i]
    # pull strictly inside so the certificate passes the exact membership
    # test despite the projector's small feasibility slack
    shrink = 1.0 - 4.0 * cfg.feasibility_tolerance / max(1.0, r)
    zi = center + shrink * (zi - center)
    dist = float(np.linalg.norm(zi - q))
    if dist > r * (1.0 + 1e-9) and membership(body, zi):
        return HullMembership(False, zi, dist)
    return HullMembership(True, None, dist)

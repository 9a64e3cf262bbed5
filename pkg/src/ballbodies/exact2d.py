"""Exact planar kernel for intersections of congruent disks.

A full-dimensional intersection of radius-r disks is a convex region
bounded by circular arcs, one arc per non-redundant generator circle.
This module represents such regions exactly (up to float arithmetic) as
cyclic arc lists, computes areas, perimeters and support values in
closed form, builds ball hulls (spindle hulls), and renders SVG.

Geometry of the clipping step: on the circle around generator ``x_i``,
the points inside the disk around ``x_j`` (at distance ``d``) form the
cap of half-width ``arccos(d / 2r)`` centered on the direction from
``x_i`` to ``x_j``.  Every such cap is strictly narrower than a
half-circle, so intersecting them reduces to interval arithmetic on a
single branch anchored at the tightest cap, which keeps the whole
O(N^2) clipping vectorized.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .core import BallBody, BodyStatus, HullEmptyError, PointSet, POINT_STATUS_RTOL

__all__ = [
    "Arc",
    "ArcPolygon2D",
    "disk_intersection",
    "area",
    "perimeter",
    "v1_2d",
    "spindle_hull_2d",
    "support_value",
    "region_distance",
    "boundary_points",
    "hausdorff_distance",
    "bounds",
    "render_svg",
]

TWO_PI = 2.0 * math.pi
# arcs shorter than this (radians) are dropped during clipping
MIN_ARC = 1e-12
# relative tolerance for vertex coincidence between consecutive arcs
VERTEX_RTOL = 1e-9


@dataclass(frozen=True)
class Arc:
    """Circular arc: center, radius, and ccw angular interval.

    ``start`` lies in [0, 2 pi); ``end`` in (start, start + 2 pi], so the
    extent ``end - start`` is positive and a full circle is (0, 2 pi).
    """

    center: tuple[float, float]
    radius: float
    start: float
    end: float

    @property
    def extent(self) -> float:
        return self.end - self.start

    def point_at(self, angle: float) -> np.ndarray:
        return np.array(
            [self.center[0] + self.radius * math.cos(angle), self.center[1] + self.radius * math.sin(angle)]
        )

    @property
    def start_point(self) -> np.ndarray:
        return self.point_at(self.start)

    @property
    def end_point(self) -> np.ndarray:
        return self.point_at(self.end)

    @property
    def midpoint(self) -> np.ndarray:
        return self.point_at(0.5 * (self.start + self.end))


@dataclass(frozen=True)
class ArcPolygon2D:
    """Convex region bounded by congruent circular arcs, or a degenerate.

    Exactly one of the following holds: ``arcs`` is nonempty (a full
    dimensional region, arcs in ccw cyclic order), ``point`` is set (a
    single-point region), or neither (the empty region).  For regions
    built by this module the set equals the intersection of the radius-r
    disks around the arc centers, which is what ``contains`` uses.
    """

    arcs: tuple[Arc, ...] = ()
    point: np.ndarray | None = None

    @classmethod
    def empty(cls) -> "ArcPolygon2D":
        return cls(arcs=())

    @classmethod
    def single_point(cls, p) -> "ArcPolygon2D":
        return cls(arcs=(), point=np.asarray(p, dtype=float))

    @property
    def is_empty(self) -> bool:
        return not self.arcs and self.point is None

    @property
    def is_point(self) -> bool:
        return self.point is not None

    @property
    def radius(self) -> float:
        if not self.arcs:
            raise ValueError("degenerate region has no arc radius")
        return self.arcs[0].radius

    def vertices(self) -> np.ndarray:
        """Arc start points in cyclic order; shape (m, 2)."""
        if self.is_point:
            return self.point.reshape(1, 2)
        if not self.arcs:
            return np.empty((0, 2))
        return np.vstack([a.start_point for a in self.arcs])

    def contains(self, q, tol: float = 0.0) -> bool:
        q = np.asarray(q, dtype=float)
        if self.is_point:
            return bool(np.linalg.norm(q - self.point) <= tol)
        if not self.arcs:
            return False
        r = self.radius + tol
        centers = np.asarray([a.center for a in self.arcs])
        d2 = ((centers - q) ** 2).sum(axis=1)
        return bool(d2.max() <= r * r)

    def validate(self) -> None:
        """Check structural invariants; raises ValueError on failure."""
        if self.arcs and self.point is not None:
            raise ValueError("region cannot be both full-dimensional and a point")
        if not self.arcs:
            return
        r = self.radius
        tol = VERTEX_RTOL * max(1.0, r)
        for arc in self.arcs:
            if not (0.0 <= arc.start < TWO_PI):
                raise ValueError(f"arc start {arc.start} outside [0, 2pi)")
            if not (MIN_ARC / 2 < arc.extent <= TWO_PI + 1e-15):
                raise ValueError(f"arc extent {arc.extent} out of range")
            if abs(arc.radius - r) > tol:
                raise ValueError("arcs must share one radius")
        for a, b in zip(self.arcs, self.arcs[1:] + self.arcs[:1]):
            gap = np.linalg.norm(a.end_point - b.start_point)
            if gap > tol:
                raise ValueError(f"consecutive arc endpoints differ by {gap}")

    def to_json(self) -> str:
        if self.is_point:
            return json.dumps({"kind": "point", "point": self.point.tolist()})
        if not self.arcs:
            return json.dumps({"kind": "empty"})
        return json.dumps(
            {
                "kind": "arcs",
                "arcs": [
                    {"center": list(a.center), "radius": a.radius, "start": a.start, "end": a.end}
                    for a in self.arcs
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ArcPolygon2D":
        data = json.loads(text)
        if data["kind"] == "empty":
            return cls.empty()
        if data["kind"] == "point":
            return cls.single_point(data["point"])
        arcs = tuple(
            Arc(center=(a["center"][0], a["center"][1]), radius=a["radius"], start=a["start"], end=a["end"])
            for a in data["arcs"]
        )
        return cls(arcs=arcs)


def _as_points(X) -> np.ndarray:
    pts = X.points if isinstance(X, PointSet) else np.asarray(X, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point array, got shape {pts.shape}")
    return pts


def _clip_circle(i: int, centers: np.ndarray, r: float) -> tuple[float, float] | None:
    """Surviving [start, extent] of circle ``i`` inside all other disks."""
    x = centers[i]
    rel = np.delete(centers, i, axis=0) - x
    d = np.linalg.norm(rel, axis=1)
    phi = np.arctan2(rel[:, 1], rel[:, 0])
    alpha = np.arccos(np.clip(d / (2.0 * r), -1.0, 1.0))
    j = int(np.argmin(alpha))
    delta = np.mod(phi - phi[j] + math.pi, TWO_PI) - math.pi
    lo = float(np.max(delta - alpha))
    hi = float(np.min(delta + alpha))
    if hi - lo <= MIN_ARC:
        return None
    start = math.fmod(phi[j] + lo, TWO_PI)
    if start < 0.0:
        start += TWO_PI
    return start, hi - lo


def disk_intersection(X, r: float) -> ArcPolygon2D:
    """Arc-polygon representation of the radius-r ball body of ``X``.

    Parameters
    ----------
    X : PointSet or array_like
        Generators, shape (n, 2).
    r : float
        Disk radius, positive.

    Returns
    -------
    ArcPolygon2D
        Empty when the circumradius of ``X`` exceeds ``r``; the
        circumcenter alone when it equals ``r`` (within tolerance);
        otherwise the bounded region with one ccw arc per contributing
        generator circle.
    """
    pts = _as_points(X)
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    body = BallBody(PointSet(pts), float(r))
    if body.status is BodyStatus.EMPTY:
        return ArcPolygon2D.empty()
    if body.status is BodyStatus.POINT:
        return ArcPolygon2D.single_point(body.circumcenter)

    centers = np.unique(pts, axis=0)
    if centers.shape[0] == 1:
        c = centers[0]
        return ArcPolygon2D(arcs=(Arc(center=(c[0], c[1]), radius=float(r), start=0.0, end=TWO_PI),))

    arcs = []
    for i in range(centers.shape[0]):
        clipped = _clip_circle(i, centers, r)
        if clipped is None:
            continue
        start, extent = clipped
        c = centers[i]
        arcs.append(Arc(center=(float(c[0]), float(c[1])), radius=float(r), start=start, end=start + extent))
    if not arcs:
        raise RuntimeError("no boundary arcs for a full-dimensional intersection; degenerate input")

    interior = body.circumcenter
    mids = np.vstack([a.midpoint for a in arcs]) - interior
    order = np.argsort(np.arctan2(mids[:, 1], mids[:, 0]))
    return ArcPolygon2D(arcs=tuple(arcs[k] for k in order))


def area(A: ArcPolygon2D) -> float:
    """Enclosed area: chord-polygon shoelace plus circular segments."""
    if A.is_empty or A.is_point:
        return 0.0
    verts = A.vertices()
    x, y = verts[:, 0], verts[:, 1]
    shoelace = 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
    segments = sum(0.5 * a.radius**2 * (a.extent - math.sin(a.extent)) for a in A.arcs)
    return shoelace + segments


def perimeter(A: ArcPolygon2D) -> float:
    """Boundary length: sum of r * extent over the arcs."""
    if A.is_empty or A.is_point:
        return 0.0
    return sum(a.radius * a.extent for a in A.arcs)


def v1_2d(A: ArcPolygon2D) -> float:
    """First intrinsic volume of a planar convex region: perimeter / 2."""
    return 0.5 * perimeter(A)


def spindle_hull_2d(P, r: float) -> ArcPolygon2D:
    """Ball hull of ``P`` at radius ``r`` (intersection of all r-disks containing P).

    The hull is the double dual: its boundary arcs are centered at the
    vertices of ``disk_intersection(P, r)``.  Degenerate cases: a single
    generator hulls to itself; when the circumradius equals ``r`` the
    hull is the full disk around the circumcenter.

    Raises
    ------
    HullEmptyError
        If ``circumradius(P) > r`` (no r-disk contains P).
    """
    pts = _as_points(P)
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    body = BallBody(PointSet(pts), float(r))
    if body.status is BodyStatus.EMPTY:
        raise HullEmptyError(f"circumradius {body.circumradius} exceeds r = {r}: the hull is undefined")
    if body.status is BodyStatus.POINT:
        c = body.circumcenter
        return ArcPolygon2D(arcs=(Arc(center=(float(c[0]), float(c[1])), radius=float(r), start=0.0, end=TWO_PI),))
    centers = np.unique(pts, axis=0)
    if centers.shape[0] == 1:
        return ArcPolygon2D.single_point(centers[0])
    dual_region = disk_intersection(PointSet(pts), r)
    return disk_intersection(PointSet(dual_region.vertices()), r)


def support_value(A: ArcPolygon2D, u) -> float:
    """Support function of the region in the unit direction ``u`` (exact)."""
    u = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - 1.0) > 1e-9:
        raise ValueError("direction must be a unit vector")
    if A.is_empty:
        raise ValueError("empty region has no support function")
    if A.is_point:
        return float(u @ A.point)
    psi = math.atan2(u[1], u[0])
    best = -math.inf
    for a in A.arcs:
        rel = math.fmod(psi - a.start, TWO_PI)
        if rel < 0.0:
            rel += TWO_PI
        if rel <= a.extent:
            val = u[0] * a.center[0] + u[1] * a.center[1] + a.radius
        else:
            val = max(float(u @ a.start_point), float(u @ a.end_point))
        best = max(best, val)
    return best


def region_distance(A: ArcPolygon2D, q) -> float:
    """Euclidean distance from ``q`` to the region (0 when inside)."""
    q = np.asarray(q, dtype=float)
    if A.is_empty:
        raise ValueError("distance to the empty region is undefined")
    if A.is_point:
        return float(np.linalg.norm(q - A.point))
    if A.contains(q):
        return 0.0
    best = math.inf
    for a in A.arcs:
        c = np.asarray(a.center)
        v = q - c
        nv = float(np.linalg.norm(v))
        psi = math.atan2(v[1], v[0])
        rel = math.fmod(psi - a.start, TWO_PI)
        if rel < 0.0:
            rel += TWO_PI
        if rel <= a.extent:
            cand = abs(nv - a.radius)
        else:
            cand = min(float(np.linalg.norm(q - a.start_point)), float(np.linalg.norm(q - a.end_point)))
        best = min(best, cand)
    return best


def boundary_points(A: ArcPolygon2D, n: int) -> np.ndarray:
    """``n`` points spread uniformly by arc length along the boundary."""
    if n < 1:
        raise ValueError("need at least one sample")
    if A.is_point:
        return np.tile(A.point, (n, 1))
    if A.is_empty:
        return np.empty((0, 2))
    lengths = np.asarray([a.radius * a.extent for a in A.arcs])
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    total = cum[-1]
    t = (np.arange(n) + 0.5) * (total / n)
    idx = np.clip(np.searchsorted(cum, t, side="right") - 1, 0, len(A.arcs) - 1)
    out = np.empty((n, 2))
    for i, a in enumerate(A.arcs):
        mask = idx == i
        if not mask.any():
            continue
        local = (t[mask] - cum[i]) / a.radius
        ang = a.start + local
        out[mask, 0] = a.center[0] + a.radius * np.cos(ang)
        out[mask, 1] = a.center[1] + a.radius * np.sin(ang)
    return out


def hausdorff_distance(A: ArcPolygon2D, B: ArcPolygon2D, samples: int = 4096) -> float:
    """Hausdorff distance via dense boundary sampling (exact point-to-region)."""
    if A.is_empty or B.is_empty:
        raise ValueError("Hausdorff distance needs nonempty regions")
    d_ab = max((region_distance(B, p) for p in boundary_points(A, samples)), default=0.0)
    d_ba = max((region_distance(A, p) for p in boundary_points(B, samples)), default=0.0)
    return max(d_ab, d_ba)


def bounds(A: ArcPolygon2D) -> tuple[float, float, float, float]:
    """Tight axis-aligned bounding box (minx, miny, maxx, maxy)."""
    if A.is_empty:
        raise ValueError("empty region has no bounding box")
    if A.is_point:
        x, y = float(A.point[0]), float(A.point[1])
        return x, y, x, y
    pts = [A.vertices()]
    for a in A.arcs:
        for axis_angle in (0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi):
            rel = math.fmod(axis_angle - a.start, TWO_PI)
            if rel < 0.0:
                rel += TWO_PI
            if rel <= a.extent:
                pts.append(a.point_at(axis_angle).reshape(1, 2))
    allpts = np.vstack(pts)
    return (
        float(allpts[:, 0].min()),
        float(allpts[:, 1].min()),
        float(allpts[:, 0].max()),
        float(allpts[:, 1].max()),
    )


_SVG_STYLE = {
    "stroke": "#1f6feb",
    "fill": "#cfe3ff",
    "stroke_width_frac": 0.01,
    "margin_frac": 0.12,
}


def render_svg(A: ArcPolygon2D, style: dict | None = None) -> str:
    """Deterministic SVG 1.1 rendering of the region.

    Coordinates are emitted in world units with the y axis flipped into
    SVG screen orientation; the viewBox is the padded bounding box.
    Degenerate regions render as an annotated dot or an "empty body"
    label.
    """
    st = dict(_SVG_STYLE)
    if style:
        st.update(style)

    def fmt(v: float) -> str:
        return f"{v:.6f}"

    if A.is_empty:
        return (
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 100 40">\n'
            '  <text x="50" y="24" text-anchor="middle" font-size="12">empty body</text>\n'
            "</svg>\n"
        )

    minx, miny, maxx, maxy = bounds(A)
    span = max(maxx - minx, maxy - miny, 1e-6)
    m = st["margin_frac"] * span
    vb = f"{fmt(minx - m)} {fmt(-(maxy + m))} {fmt(maxx - minx + 2 * m)} {fmt(maxy - miny + 2 * m)}"
    sw = fmt(st["stroke_width_frac"] * span)
    head = f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vb}">\n'
    tail = "</svg>\n"

    if A.is_point:
        x, y = float(A.point[0]), float(A.point[1])
        dot = st["stroke_width_frac"] * span * 2.0
        return (
            head
            + f'  <circle cx="{fmt(x)}" cy="{fmt(-y)}" r="{fmt(dot)}" fill="{st["stroke"]}"/>\n'
            + tail
        )

    if len(A.arcs) == 1 and A.arcs[0].extent >= TWO_PI - 1e-9:
        a = A.arcs[0]
        body = (
            f'  <circle cx="{fmt(a.center[0])}" cy="{fmt(-a.center[1])}" r="{fmt(a.radius)}" '
            f'fill="{st["fill"]}" stroke="{st["stroke"]}" stroke-width="{sw}"/>\n'
        )
        return head + body + tail

    first = A.arcs[0].start_point
    parts = [f"M {fmt(first[0])} {fmt(-first[1])}"]
    for a in A.arcs:
        end = a.end_point
        large = 1 if a.extent > math.pi else 0
        # ccw in world coordinates is sweep=0 once y is flipped
        parts.append(f"A {fmt(a.radius)} {fmt(a.radius)} 0 {large} 0 {fmt(end[0])} {fmt(-end[1])}")
    parts.append("Z")
    path = " ".join(parts)
    body = f'  <path d="{path}" fill="{st["fill"]}" stroke="{st["stroke"]}" stroke-width="{sw}"/>\n'
    return head + body + tail

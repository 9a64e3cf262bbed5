"""Randomized estimators for ball bodies in arbitrary dimension.

Three estimation routes, all seeded and deterministic:

* volume by rejection sampling inside the enclosing ball of radius r
  around the circumcenter of the generators (every member is within r of
  each generator, hence of any point of their convex hull);
* first intrinsic volume via mean width: support values in antithetic
  random directions, computed by projected gradient ascent where each
  projection is Dykstra's algorithm over the constituent balls;
* intermediate intrinsic volumes via Kubota's formula: average k-volume
  of projections onto random k-subspaces, each projection measured by
  rejection sampling with fiber feasibility decided by alternating
  projections.

Estimates carry a standard error.  For iterative routes the reported
error includes a small allowance for the stopping tolerance (and a
float-roundoff floor), so that confidence gating at a few standard
errors stays meaningful on symmetric bodies where the statistical
variance collapses to zero.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from math import comb

import numpy as np

from .constants import unit_ball_volume, v1_factor
from .core import BallBody, BodyStatus

__all__ = [
    "EstimatorConfig",
    "Estimate",
    "NoConvergenceError",
    "project_onto",
    "support_function",
    "mc_volume",
    "v1_estimate",
    "vk_estimate",
    "uniform_in_ball",
]

# rng stream tags so each estimator draws from an independent stream
_STREAM_MC = 101
_STREAM_V1 = 102
_STREAM_VK = 103

_CHUNK = 1 << 16


class NoConvergenceError(RuntimeError):
    """An iterative routine hit its iteration cap before converging."""


@dataclass(frozen=True)
class EstimatorConfig:
    """Knobs shared by the estimation routines.

    samples: total sample budget for rejection-sampling estimators.
    seed: base seed; every internal stream derives from (seed, tag).
    confidence_z: how many combined standard errors separate "noise"
        from "violation" in downstream comparisons.
    feasibility_tolerance: convergence tolerance of the projection /
        feasibility iterations (membership is then verified within ten
        times this).
    max_projection_iters: iteration cap; hitting it raises
        NoConvergenceError rather than silently truncating.
    directions: number of random directions (mean width) or random
        subspaces (Kubota averaging).
    """

    samples: int = 20000
    seed: int = 0
    confidence_z: float = 3.0
    feasibility_tolerance: float = 1e-9
    max_projection_iters: int = 10_000
    directions: int = 256

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be positive, got {self.samples}")
        if not self.feasibility_tolerance > 0:
            raise ValueError("feasibility_tolerance must be positive")
        if self.max_projection_iters < 1:
            raise ValueError("max_projection_iters must be positive")
        if self.directions < 1:
            raise ValueError(f"directions must be positive, got {self.directions}")
        if not self.confidence_z > 0:
            raise ValueError("confidence_z must be positive")


@dataclass(frozen=True)
class Estimate:
    """A numerical estimate with its uncertainty.

    ``std_error`` is zero only for exact closed-form evaluations (for
    example the volume of an empty body); randomized or iterative
    methods always report a positive uncertainty.
    """

    value: float
    std_error: float
    samples_used: int
    method: str
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "value": self.value,
                "std_error": self.std_error,
                "samples": self.samples_used,
                "method": self.method,
                "seed": self.seed,
            }
        )


def uniform_in_ball(rng: np.random.Generator, n: int, dim: int, radius: float, center=None) -> np.ndarray:
    """``n`` points uniform in the closed ball of the given radius."""
    g = rng.standard_normal((n, dim))
    norms = np.linalg.norm(g, axis=1)
    norms[norms == 0] = 1.0
    radii = radius * rng.random(n) ** (1.0 / dim)
    pts = g * (radii / norms)[:, None]
    if center is not None:
        pts += np.asarray(center, dtype=float)
    return pts


def _max_sq_dist(points: np.ndarray, generators: np.ndarray) -> np.ndarray:
    """Row-wise max squared distance from ``points`` to the generators."""
    out = np.full(points.shape[0], -np.inf)
    for g in generators:
        diff = points - g
        np.maximum(out, np.einsum("ij,ij->i", diff, diff), out=out)
    return out


def _dykstra_balls(body: BallBody, z0: np.ndarray, cfg: EstimatorConfig) -> np.ndarray:
    """Nearest points of the body to each row of ``z0`` (Dykstra).

    Cyclic projections onto the constituent balls with the usual
    correction increments; converges to the true metric projection onto
    the intersection.  Raises NoConvergenceError at the iteration cap or
    if the result violates membership beyond ten times the tolerance.
    """
    z = np.array(z0, dtype=float)
    single = z.ndim == 1
    if single:
        z = z[None, :]
    gens = body.generators.points
    r = body.radius
    inc = np.zeros((gens.shape[0], z.shape[0], z.shape[1]))
    tol = cfg.feasibility_tolerance
    # rows drop out of the cycle individually once they stop moving,
    # so a few slow corners do not drag the whole batch along
    active = np.arange(z.shape[0])
    for _ in range(cfg.max_projection_iters):
        za = z[active]
        z_prev = za.copy()
        for i, c in enumerate(gens):
            y = za + inc[i, active]
            delta = y - c
            dist = np.sqrt(np.einsum("ij,ij->i", delta, delta))
            factor = np.minimum(1.0, r / np.maximum(dist, 1e-300))
            za = c + delta * factor[:, None]
            inc[i, active] = y - za
        z[active] = za
        moved = za - z_prev
        still = np.einsum("ij,ij->i", moved, moved) >= tol * tol
        if not still.all():
            # a row may stall tangentially before it is actually inside;
            # only freeze rows that also verify membership
            settled = np.flatnonzero(~still)
            viol2 = _max_sq_dist(za[settled], gens)
            bad = viol2 > (r + tol) * (r + tol)
            still[settled[bad]] = True
        active = active[still]
        if active.size == 0:
            break
    else:
        raise NoConvergenceError(
            f"Dykstra projection did not converge within {cfg.max_projection_iters} cycles"
        )
    viol = np.sqrt(_max_sq_dist(z, gens)) - r
    if viol.max() > 10.0 * tol:
        raise NoConvergenceError(f"projection violates membership by {viol.max():.3e}")
    return z[0] if single else z


def project_onto(body: BallBody, q, config: EstimatorConfig | None = None) -> np.ndarray | None:
    """Nearest point of the body to ``q``, or None if the body is empty.

    Members project to themselves; a point body projects everything to
    its witness.  Otherwise Dykstra's algorithm runs over the
    constituent balls at the configured tolerance.
    """
    cfg = config if config is not None else EstimatorConfig()
    q = np.asarray(q, dtype=float)
    if q.shape != (body.dim,):
        raise ValueError(f"query point must have shape ({body.dim},), got {q.shape}")
    if body.status is BodyStatus.EMPTY:
        return None
    if body.status is BodyStatus.POINT:
        return body.witness.copy()
    if body.contains(q):
        return q.copy()
    return _dykstra_balls(body, q, cfg)


def _support_batch(body: BallBody, U: np.ndarray, cfg: EstimatorConfig) -> np.ndarray:
    """Support values in each unit row-direction of ``U`` by projected ascent."""
    r = body.radius
    c = body.circumcenter
    z = _dykstra_balls(body, c + r * U, cfg)
    vals = np.einsum("ij,ij->i", U, z)
    for _ in range(cfg.max_projection_iters):
        z = _dykstra_balls(body, z + r * U, cfg)
        new_vals = np.einsum("ij,ij->i", U, z)
        improvement = new_vals - vals
        vals = np.maximum(vals, new_vals)
        if improvement.max() < cfg.feasibility_tolerance:
            return vals
    raise NoConvergenceError("support ascent did not converge within the iteration cap")


def support_function(body: BallBody, u, config: EstimatorConfig | None = None) -> float:
    """Support function ``max { <u, z> : z in body }`` for a unit vector u."""
    cfg = config if config is not None else EstimatorConfig()
    u = np.asarray(u, dtype=float)
    if u.shape != (body.dim,):
        raise ValueError(f"direction must have shape ({body.dim},), got {u.shape}")
    if abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise ValueError("direction must be a unit vector (within 1e-12)")
    if body.status is BodyStatus.EMPTY:
        raise ValueError("empty body has no support function")
    if body.status is BodyStatus.POINT:
        return float(u @ body.witness)
    return float(_support_batch(body, u[None, :], cfg)[0])


def mc_volume(body: BallBody, config: EstimatorConfig | None = None) -> Estimate:
    """Volume estimate by rejection sampling in the enclosing r-ball.

    Samples uniformly in the ball of radius r around the circumcenter of
    the generators and counts members.  Empty and point bodies return an
    exact zero.
    """
    cfg = config if config is not None else EstimatorConfig()
    if body.status in (BodyStatus.EMPTY, BodyStatus.POINT):
        return Estimate(0.0, 0.0, 0, "exact-degenerate", cfg.seed)
    d = body.dim
    r = body.radius
    center = body.circumcenter
    gens = body.generators.points
    enc_vol = unit_ball_volume(d) * r**d
    rng = np.random.default_rng((cfg.seed, _STREAM_MC))
    n = cfg.samples
    hits = 0
    done = 0
    while done < n:
        m = min(_CHUNK, n - done)
        pts = uniform_in_ball(rng, m, d, r, center)
        hits += int((_max_sq_dist(pts, gens) <= r * r).sum())
        done += m
    frac = hits / n
    value = enc_vol * frac
    se = enc_vol * math.sqrt(max(frac * (1.0 - frac), 0.0) / n)
    se = max(se, 1e-12 * abs(value))
    return Estimate(value, se, n, "mc-rejection", cfg.seed)


def v1_estimate(body: BallBody, config: EstimatorConfig | None = None) -> Estimate:
    """First intrinsic volume via mean width over random directions.

    Widths are support sums in antithetic direction pairs; the constant
    d omega_d / (2 omega_{d-1}) converts mean width to V_1.  The
    reported error combines the direction-sampling scatter with a
    stopping-tolerance allowance for the support ascent.
    """
    cfg = config if config is not None else EstimatorConfig()
    if body.status in (BodyStatus.EMPTY, BodyStatus.POINT):
        return Estimate(0.0, 0.0, 0, "exact-degenerate", cfg.seed)
    d = body.dim
    m = cfg.directions
    rng = np.random.default_rng((cfg.seed, _STREAM_V1))
    U = rng.standard_normal((m, d))
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    h = _support_batch(body, np.vstack([U, -U]), cfg)
    widths = h[:m] + h[m:]
    factor = v1_factor(d)
    value = factor * float(widths.mean())
    se_stat = factor * float(widths.std(ddof=1)) / math.sqrt(m) if m > 1 else 0.0
    se_stop = factor * cfg.feasibility_tolerance
    se = math.hypot(se_stat, se_stop)
    return Estimate(value, se, m, "mean-width-support", cfg.seed)


def _orthonormal_frame(rng: np.random.Generator, d: int, k: int) -> np.ndarray:
    """Random (d, k) orthonormal frame, uniform over the Grassmannian."""
    g = rng.standard_normal((d, k))
    q, rr = np.linalg.qr(g)
    signs = np.sign(np.diag(rr))
    signs[signs == 0] = 1.0
    return q * signs[None, :]


def _line_fiber_feasible(
    gens: np.ndarray, r: float, Q: np.ndarray, ys: np.ndarray, c: np.ndarray
) -> np.ndarray:
    """Exact feasibility when the fibers are lines (k = d - 1).

    Each ball cuts the fiber in a t-interval solved from a quadratic;
    the fiber meets the body iff the intervals overlap.
    """
    w = np.linalg.qr(Q, mode="complete")[0][:, -1]
    zy = c + (ys - (Q.T @ c)) @ Q.T
    n = zy.shape[0]
    lo = np.full(n, -np.inf)
    hi = np.full(n, np.inf)
    ok = np.ones(n, dtype=bool)
    for g in gens:
        diff = zy - g
        b = diff @ w
        cquad = np.einsum("ij,ij->i", diff, diff) - r * r
        disc = b * b - cquad
        ok &= disc >= 0.0
        root = np.sqrt(np.maximum(disc, 0.0))
        np.maximum(lo, -b - root, out=lo)
        np.minimum(hi, -b + root, out=hi)
    return ok & (lo <= hi)


def _fiber_feasible(
    body: BallBody, Q: np.ndarray, ys: np.ndarray, cfg: EstimatorConfig
) -> tuple[np.ndarray, int]:
    """For each row y of ``ys``: does the fiber {z : Q^T z = y} meet the body?

    Line fibers (k = d - 1) are decided exactly.  Otherwise plain
    alternating projections between the balls and the affine fiber run
    the binary decision at a coarser tolerance than the projections
    themselves: probes within about 1e-7 of the shadow boundary perturb
    the Kubota average by far less than its statistical error, while
    iterating every tangent fiber down to the projection tolerance would
    dominate the estimator's runtime.  Probes still moving when the
    budget runs out are classified by their final violation; only the
    genuinely ambiguous ones are flagged.
    """
    gens = body.generators.points
    r = body.radius
    c = body.circumcenter
    if Q.shape[1] == Q.shape[0] - 1:
        return _line_fiber_feasible(gens, r, Q, ys, c), 0
    dec = max(1e-7 * max(1.0, r), 10.0 * cfg.feasibility_tolerance)
    freeze2 = (0.02 * dec) ** 2
    budget = min(400, cfg.max_projection_iters)
    z = c + (ys - (Q.T @ c)) @ Q.T
    n = z.shape[0]
    verdict = np.full(n, -1, dtype=np.int8)  # 1 feasible, 0 infeasible

    def sweep(rows: np.ndarray, iters: int) -> np.ndarray:
        for _ in range(iters):
            if rows.size == 0:
                break
            za = z[rows]
            z_prev = za.copy()
            for g in gens:
                delta = za - g
                dist = np.sqrt(np.einsum("ij,ij->i", delta, delta))
                outside = dist > r
                if outside.any():
                    za[outside] = g + delta[outside] * (r / dist[outside])[:, None]
            za += (ys[rows] - za @ Q) @ Q.T
            viol = np.sqrt(_max_sq_dist(za, gens)) - r
            moved = za - z_prev
            settled = np.einsum("ij,ij->i", moved, moved) < freeze2
            z[rows] = za
            done = (viol <= dec) | settled
            verdict[rows[done]] = (viol[done] <= dec).astype(np.int8)
            rows = rows[~done]
        return rows

    remaining = sweep(np.arange(n), budget)
    if remaining.size:
        # one retry with a doubled budget for the undecided stragglers
        remaining = sweep(remaining, 2 * budget)
    flagged = 0
    if remaining.size:
        viol = np.sqrt(_max_sq_dist(z[remaining], gens)) - r
        flagged = int(np.count_nonzero((viol > 0.1 * dec) & (viol <= 10.0 * dec)))
        verdict[remaining] = (viol <= dec).astype(np.int8)
    return verdict == 1, flagged


def vk_estimate(body: BallBody, k: int, config: EstimatorConfig | None = None) -> Estimate:
    """k-th intrinsic volume via Kubota projection averaging.

    Averages the k-volume of the body's shadow on random k-subspaces and
    rescales by C(d,k) omega_d / (omega_k omega_{d-k}).  Shadows are
    measured by rejection sampling in the projected enclosing ball, with
    per-sample fiber feasibility decided exactly for line fibers and by
    alternating projections otherwise.  ``k = d`` delegates to
    :func:`mc_volume`, ``k = 1`` to :func:`v1_estimate`.
    """
    cfg = config if config is not None else EstimatorConfig()
    d = body.dim
    if not 1 <= k <= d:
        raise ValueError(f"k must lie in 1..{d}, got {k}")
    if k == d:
        return mc_volume(body, cfg)
    if k == 1:
        return v1_estimate(body, cfg)
    if body.status in (BodyStatus.EMPTY, BodyStatus.POINT):
        return Estimate(0.0, 0.0, 0, "exact-degenerate", cfg.seed)

    r = body.radius
    c = body.circumcenter
    n_sub = cfg.directions
    n_s = max(16, cfg.samples // n_sub)
    rng = np.random.default_rng((cfg.seed, _STREAM_VK, k))
    cap_vol = unit_ball_volume(k) * r**k
    per_subspace = np.empty(n_sub)
    flagged_total = 0
    for s in range(n_sub):
        Q = _orthonormal_frame(rng, d, k)
        yc = Q.T @ c
        ys = yc + uniform_in_ball(rng, n_s, k, r)
        feasible, flagged = _fiber_feasible(body, Q, ys, cfg)
        flagged_total += flagged
        per_subspace[s] = cap_vol * feasible.mean()
    if flagged_total:
        warnings.warn(
            f"{flagged_total} fiber feasibility probes did not converge and were "
            "classified by their final constraint violation",
            RuntimeWarning,
            stacklevel=2,
        )
    kubota = comb(d, k) * unit_ball_volume(d) / (unit_ball_volume(k) * unit_ball_volume(d - k))
    value = kubota * float(per_subspace.mean())
    se_stat = kubota * float(per_subspace.std(ddof=1)) / math.sqrt(n_sub) if n_sub > 1 else 0.0
    se = max(se_stat, 1e-12 * abs(value))
    return Estimate(value, se, n_sub * n_s, "kubota-projection", cfg.seed)

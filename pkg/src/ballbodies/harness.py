"""Randomized verification harness.

Four reproducible experiment drivers:

* ``run_bsz_check``: among bodies of equal volume, the ball's dual has
  the largest intrinsic volumes: compare V_k of the dual of a union of
  congruent small balls against the dual of the equal-volume ball.
* ``run_kp_check``: uniform-contraction monotonicity: V_k of the
  separated side's body never exceeds the clustered side's, with the
  closed-form bound chain recorded as certification where it applies.
* ``run_identity_suite``: exact structural identities of the dual
  operator (union splitting, anti-monotonicity, the union-of-balls
  reduction, hull idempotence, constant width of body + dual).
* ``run_threshold_sweep``: threshold table and classification coverage
  map over a lambda/r grid.

Verdicts: a comparison "lhs <= rhs" *holds* when the margin is
nonnegative; estimator-backed comparisons may come out
*holds_within_noise* when the deficit stays within ``confidence_z``
combined standard errors; anything worse is a *violation*.  Exact-kernel
comparisons have no noise band, only a float-roundoff floor, and can
only hold or violate.  Every random draw derives from the experiment
seed, so records are byte-for-byte reproducible.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import ball_intrinsic_volume
from .contraction import (
    InstanceCase,
    bound_chain,
    classify_instance,
    sample_clustered,
    sample_separated,
    threshold_n,
)
from .core import BallBody, BodyStatus, PointSet, dual, dual_of_ball_union, membership
from .estimators import Estimate, EstimatorConfig, mc_volume, uniform_in_ball, v1_estimate, vk_estimate
from . import exact2d

__all__ = [
    "ExperimentSpec",
    "TrialRecord",
    "run_bsz_check",
    "run_kp_check",
    "run_identity_suite",
    "run_threshold_sweep",
    "SweepResult",
    "records_to_json",
    "records_to_csv",
    "any_violation",
]

# float-noise floor for comparisons of exact (zero-std-error) quantities
EXACT_NOISE_RTOL = 1e-9

HOLDS = "holds"
HOLDS_WITHIN_NOISE = "holds_within_noise"
VIOLATION = "violation"

_DEFAULT_LAM_GRID = tuple(round(0.1 * i, 10) for i in range(1, 15))


@dataclass(frozen=True)
class ExperimentSpec:
    """Parameters of one reproducible experiment run."""

    kind: str = "bsz"
    dims: tuple[int, ...] = (2, 3)
    k_values: tuple[int, ...] = (1, 2)
    trials: int = 50
    seed: int = 0
    estimator: EstimatorConfig = field(default_factory=EstimatorConfig)
    radius: float = 1.0
    lam: float | None = None
    n_points: int | None = None
    lam_grid: tuple[float, ...] = _DEFAULT_LAM_GRID

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if any(d < 2 for d in self.dims):
            raise ValueError(f"all dimensions must be at least 2, got {self.dims}")
        if any(k < 1 for k in self.k_values):
            raise ValueError(f"k values must be positive, got {self.k_values}")
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class TrialRecord:
    """One comparison with its estimates, margin and verdict."""

    kind: str
    index: int
    k: int
    descriptor: dict
    lhs: Estimate
    rhs: Estimate
    margin: float
    verdict: str
    certified: bool | None = None
    observational: bool = False

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "index": self.index,
            "k": self.k,
            "descriptor": self.descriptor,
            "lhs": json.loads(self.lhs.to_json()),
            "rhs": json.loads(self.rhs.to_json()),
            "margin": self.margin,
            "verdict": self.verdict,
            "certified": self.certified,
            "observational": self.observational,
        }


def _compare(lhs: Estimate, rhs: Estimate, z: float) -> tuple[float, str]:
    """Margin and verdict for the claim ``lhs.value <= rhs.value``."""
    margin = rhs.value - lhs.value
    if margin >= 0:
        return margin, HOLDS
    se = math.hypot(lhs.std_error, rhs.std_error)
    if se == 0.0:
        scale = max(1.0, abs(lhs.value), abs(rhs.value))
        return margin, HOLDS if -margin <= EXACT_NOISE_RTOL * scale else VIOLATION
    return margin, HOLDS_WITHIN_NOISE if -margin <= z * se else VIOLATION


def _body_vk(body: BallBody, k: int, cfg: EstimatorConfig, exact_planar: bool) -> Estimate:
    """V_k estimate of a ball body, exact at d = 2, randomized above."""
    if body.status is BodyStatus.EMPTY:
        return Estimate(0.0, 0.0, 0, "exact-degenerate", cfg.seed)
    d = body.dim
    if exact_planar and d == 2 and k in (1, 2):
        region = exact2d.disk_intersection(body.generators, body.radius)
        value = exact2d.area(region) if k == 2 else exact2d.v1_2d(region)
        return Estimate(value, 0.0, 0, "exact2d", None)
    if k == d:
        return mc_volume(body, cfg)
    if k == 1:
        return v1_estimate(body, cfg)
    return vk_estimate(body, k, cfg)


def _separated_centers(rng, dim: int, n: int, min_sep: float, halfwidth: float) -> np.ndarray:
    """n points pairwise >= min_sep apart in [-halfwidth, halfwidth]^dim."""
    hw = halfwidth
    while True:
        pts = np.empty((n, dim))
        count = 0
        budget = 400 * n
        while count < n and budget > 0:
            cand = rng.uniform(-hw, hw, dim)
            budget -= 1
            if count == 0 or np.linalg.norm(pts[:count] - cand, axis=1).min() >= min_sep:
                pts[count] = cand
                count += 1
        if count == n:
            return pts
        hw *= 1.4


def run_bsz_check(spec: ExperimentSpec) -> list[TrialRecord]:
    """Equal-volume comparison against the ball, trial by trial.

    Each trial takes A = a union of n disjoint rho-balls, whose dual at
    radius r is a ball body in closed form, and B = the ball of equal
    volume (radius n^(1/d) rho).  Then V_k(dual A) <= V_k(dual B) for
    every k; the first trial per dimension uses n = 1, the exact
    equality case.
    """
    records = []
    index = 0
    for d in spec.dims:
        for t in range(spec.trials):
            rng = np.random.default_rng((spec.seed, 7001, d, t))
            r = spec.radius
            n_balls = 1 if t == 0 else int(rng.integers(1, 7))
            rho = r * rng.uniform(0.05, 0.15)
            centers = _separated_centers(rng, d, n_balls, 2.1 * rho, 0.35 * r)
            X = PointSet(centers)
            body = dual_of_ball_union(X, rho, r)
            rho_b = n_balls ** (1.0 / d) * rho
            rhs_radius = max(0.0, r - rho_b)
            cfg = replace(spec.estimator, seed=int(rng.integers(2**31)))
            descriptor = {
                "dim": d,
                "trial": t,
                "n_balls": n_balls,
                "rho": rho,
                "r": r,
                "equal_ball_radius": rho_b,
            }
            for k in spec.k_values:
                if k > d:
                    continue
                lhs = _body_vk(body, k, cfg, exact_planar=True)
                rhs = Estimate(ball_intrinsic_volume(d, k, rhs_radius), 0.0, 0, "closed-form", None)
                margin, verdict = _compare(lhs, rhs, cfg.confidence_z)
                records.append(
                    TrialRecord("bsz", index, k, descriptor, lhs, rhs, margin, verdict)
                )
                index += 1
    return records


def _separated_in_ball(rng, dim: int, n: int, lam: float, R: float) -> PointSet:
    """n points pairwise >= lam apart inside the ball of radius R."""
    grow = R
    while True:
        pts = np.empty((n, dim))
        count = 0
        budget = 500 * n
        while count < n and budget > 0:
            cand = uniform_in_ball(rng, 1, dim, grow)[0]
            budget -= 1
            if count == 0 or np.linalg.norm(pts[:count] - cand, axis=1).min() >= lam:
                pts[count] = cand
                count += 1
        if count == n:
            return PointSet(pts)
        grow *= 1.2


def run_kp_check(spec: ExperimentSpec) -> list[TrialRecord]:
    """Uniform-contraction monotonicity checks.

    Separated configurations are drawn at or above the applicable
    threshold (with periodic sub-threshold rows marked observational and
    a trivial slot with lambda > 2r); clustered partners are drawn in a
    lam/2-ball.  The bound chain certifies every covered row, and on the
    empty paths the separated body's emptiness is asserted outright.
    """
    records = []
    index = 0
    for d in spec.dims:
        main_mode = "main_i" if d < 42 else "main_ii"
        n_min = threshold_n(d, main_mode).n_min
        for t in range(spec.trials):
            rng = np.random.default_rng((spec.seed, 7002, d, t))
            r = spec.radius
            slot = t % 8
            observational = False
            if spec.lam is not None:
                lam = spec.lam
            elif slot == 6:
                lam = 2.5 * r
            elif slot == 7:
                lam = 0.25 * r
            else:
                lam = r * rng.uniform(0.3, 1.3)
            if spec.n_points is not None:
                n = spec.n_points
            elif slot == 7:
                n = max(2, n_min - int(rng.integers(1, 4)))
                observational = True
            else:
                n = n_min + int(rng.integers(0, 3))
            if observational:
                P = _separated_in_ball(rng, d, n, lam, 0.8 * r)
            else:
                P = sample_separated(d, n, lam, seed=int(rng.integers(2**31)))
            Q = sample_clustered(d, n, lam, seed=int(rng.integers(2**31)))
            cls = classify_instance(d, n, lam, r)
            certified = cls.case is not InstanceCase.NOT_COVERED
            body_p = dual(P, r)
            body_q = dual(Q, r)
            if cls.case in (InstanceCase.TRIVIAL_EMPTY, InstanceCase.PACKING_EMPTY):
                if body_p.status is BodyStatus.FULL_DIM:
                    raise RuntimeError(
                        f"classification {cls.case.value} but the separated body is "
                        f"full-dimensional (d={d}, n={n}, lam={lam}, r={r})"
                    )
            cfg = replace(spec.estimator, seed=int(rng.integers(2**31)))
            for k in spec.k_values:
                if k > d:
                    continue
                report = bound_chain(d, n, lam, r, k)
                descriptor = {
                    "dim": d,
                    "trial": t,
                    "n": n,
                    "lam": lam,
                    "r": r,
                    "case": report.case.value,
                    "rule": report.rule,
                    "f_lower": report.f_lower,
                    "g_upper": report.g_upper,
                }
                lhs = _body_vk(body_p, k, cfg, exact_planar=True)
                rhs = _body_vk(body_q, k, cfg, exact_planar=True)
                margin, verdict = _compare(lhs, rhs, cfg.confidence_z)
                records.append(
                    TrialRecord(
                        "kp", index, k, descriptor, lhs, rhs, margin, verdict,
                        certified=certified, observational=observational,
                    )
                )
                index += 1
    return records


def _identity_record(kind: str, index: int, descriptor: dict, deviation: float, tolerance: float) -> TrialRecord:
    lhs = Estimate(deviation, 0.0, 0, "exact", None)
    rhs = Estimate(tolerance, 0.0, 0, "tolerance", None)
    verdict = HOLDS if deviation <= tolerance else VIOLATION
    return TrialRecord(kind, index, 0, descriptor, lhs, rhs, tolerance - deviation, verdict)


def _random_pointset(rng, dim: int, n: int, radius: float) -> PointSet:
    return PointSet(uniform_in_ball(rng, n, dim, radius))


def run_identity_suite(spec: ExperimentSpec) -> list[TrialRecord]:
    """Exact structural identities of the dual operator, randomized.

    The case budget splits across five families: union splitting (the
    body of a union is the intersection of the bodies), anti-monotonicity
    (bigger generator sets give smaller bodies), the union-of-balls
    reduction (membership agreement), constant width of body + hull at
    d = 2, and hull idempotence at d = 2 measured in Hausdorff distance
    against the dual of a dense boundary sampling of the hull.
    """
    total = spec.trials
    n_union = max(1, (total * 40) // 100)
    n_anti = max(1, (total * 30) // 100)
    n_eq = max(1, (total * 20) // 100)
    n_width = max(1, (total * 8) // 100)
    n_idem = max(1, total - n_union - n_anti - n_eq - n_width)
    records = []
    index = 0

    for t in range(n_union):
        rng = np.random.default_rng((spec.seed, 7003, 1, t))
        d = spec.dims[t % len(spec.dims)]
        r = spec.radius * rng.uniform(0.8, 1.5)
        X = _random_pointset(rng, d, int(rng.integers(1, 6)), 0.5 * r)
        Y = _random_pointset(rng, d, int(rng.integers(1, 6)), 0.5 * r)
        XY = PointSet(np.vstack([X.points, Y.points]))
        bx, by, bxy = dual(X, r), dual(Y, r), dual(XY, r)
        probes = uniform_in_ball(rng, 32, d, r, bxy.circumcenter)
        bad = sum(
            1
            for q in probes
            if membership(bxy, q) != (membership(bx, q) and membership(by, q))
        )
        records.append(
            _identity_record("identity-union", index, {"dim": d, "trial": t}, float(bad), 0.0)
        )
        index += 1

    for t in range(n_anti):
        rng = np.random.default_rng((spec.seed, 7003, 2, t))
        d = spec.dims[t % len(spec.dims)]
        r = spec.radius * rng.uniform(0.8, 1.5)
        X = _random_pointset(rng, d, int(rng.integers(1, 5)), 0.5 * r)
        extra = _random_pointset(rng, d, int(rng.integers(1, 4)), 0.5 * r)
        Y = PointSet(np.vstack([X.points, extra.points]))
        bx, by = dual(X, r), dual(Y, r)
        probes = uniform_in_ball(rng, 64, d, r, by.circumcenter)
        bad = sum(1 for q in probes if membership(by, q) and not membership(bx, q))
        records.append(
            _identity_record("identity-antimono", index, {"dim": d, "trial": t}, float(bad), 0.0)
        )
        index += 1

    for t in range(n_eq):
        rng = np.random.default_rng((spec.seed, 7003, 3, t))
        d = spec.dims[t % len(spec.dims)]
        r = spec.radius * rng.uniform(0.8, 1.5)
        rho = r * rng.uniform(0.1, 0.5)
        X = _random_pointset(rng, d, int(rng.integers(1, 6)), 0.5 * r)
        via_union = dual_of_ball_union(X, rho, r + rho)
        direct = dual(X, r)
        probes = uniform_in_ball(rng, 32, d, 1.2 * r, direct.circumcenter)
        bad = sum(1 for q in probes if membership(via_union, q) != membership(direct, q))
        records.append(
            _identity_record("identity-ball-union", index, {"dim": d, "trial": t}, float(bad), 0.0)
        )
        index += 1

    for t in range(n_width):
        rng = np.random.default_rng((spec.seed, 7003, 4, t))
        r = spec.radius
        P = _random_pointset(rng, 2, int(rng.integers(1, 6)), 0.8 * r)
        body_region = exact2d.disk_intersection(P, r)
        hull_region = exact2d.spindle_hull_2d(P, r)
        worst = 0.0
        offset = rng.uniform(0.0, math.pi)
        for j in range(64):
            ang = offset + math.pi * j / 64.0
            u = np.array([math.cos(ang), math.sin(ang)])
            width = (
                exact2d.support_value(body_region, u)
                + exact2d.support_value(body_region, -u)
                + exact2d.support_value(hull_region, u)
                + exact2d.support_value(hull_region, -u)
            )
            worst = max(worst, abs(width - 2.0 * r))
        records.append(
            _identity_record(
                "identity-constant-width", index, {"dim": 2, "trial": t, "n": P.n}, worst, 1e-7 * r
            )
        )
        index += 1

    for t in range(n_idem):
        rng = np.random.default_rng((spec.seed, 7003, 5, t))
        r = spec.radius
        P = _random_pointset(rng, 2, int(rng.integers(2, 7)), 0.8 * r)
        deviation = _idempotence_deviation(P, r)
        records.append(
            _identity_record(
                "identity-idempotence", index, {"dim": 2, "trial": t, "n": P.n}, deviation, 1e-6 * r
            )
        )
        index += 1

    return records


def _idempotence_deviation(P: PointSet, r: float, boundary_n: int = 8000, probe_n: int = 4096) -> float:
    """Hausdorff gap between dual(P, r) and the dual of a sampled hull boundary.

    The sampled dual contains the true one exactly (fewer constraints),
    so the gap is measured one-sided from its boundary into dual(P, r),
    plus the worst membership violation in the reverse direction.
    """
    hull_region = exact2d.spindle_hull_2d(P, r)
    target = exact2d.disk_intersection(P, r)
    if hull_region.is_point or target.is_point or target.is_empty:
        return 0.0
    # hull vertices must be sample points: between-sample slack is
    # quadratic in the spacing along an arc but linear across a corner
    samples = np.vstack([exact2d.boundary_points(hull_region, boundary_n), hull_region.vertices()])
    sampled_dual = exact2d.disk_intersection(PointSet(samples), r)
    probes = exact2d.boundary_points(sampled_dual, probe_n)
    d_forward = max(exact2d.region_distance(target, q) for q in probes)
    back = exact2d.boundary_points(target, probe_n)
    worst = 0.0
    for g in samples:
        dist = np.linalg.norm(back - g, axis=1)
        worst = max(worst, float(dist.max()))
    d_back = max(0.0, worst - r)
    return max(d_forward, d_back)


@dataclass(frozen=True)
class SweepResult:
    """Threshold table plus classification coverage map."""

    threshold_rows: list[dict]
    coverage_rows: list[dict]

    def thresholds_csv(self) -> str:
        fields = [
            "dim",
            "main_i_value",
            "main_i_n",
            "main_ii_value",
            "main_ii_n",
            "jung_b_value",
            "jung_b_n",
            "refined_b_value",
            "refined_b_n",
            "ratio_ii_over_i",
        ]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.threshold_rows)
        return buf.getvalue()

    def coverage_csv(self) -> str:
        fields = ["dim", "lam_over_r", "n", "case", "rule"]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.coverage_rows)
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"thresholds": self.threshold_rows, "coverage": self.coverage_rows})


def run_threshold_sweep(spec: ExperimentSpec) -> SweepResult:
    """Tabulate thresholds per dimension and classify a lambda/r grid.

    High-dimensional refinements are blank below the dimension where
    they are proven.  The coverage map classifies each lambda/r cell at
    the minimal covered point count; no covered cell may come out
    NotCovered.
    """
    threshold_rows = []
    coverage_rows = []
    for d in sorted(set(spec.dims)):
        main_i = threshold_n(d, "main_i")
        jung_b = threshold_n(d, "jung_b")
        row: dict = {
            "dim": d,
            "main_i_value": main_i.value,
            "main_i_n": main_i.n_min,
            "jung_b_value": jung_b.value,
            "jung_b_n": jung_b.n_min,
        }
        if d >= 42:
            main_ii = threshold_n(d, "main_ii")
            refined_b = threshold_n(d, "refined_b")
            row.update(
                {
                    "main_ii_value": main_ii.value,
                    "main_ii_n": main_ii.n_min,
                    "refined_b_value": refined_b.value,
                    "refined_b_n": refined_b.n_min,
                    "ratio_ii_over_i": main_ii.value / main_i.value,
                }
            )
        else:
            row.update(
                {
                    "main_ii_value": "",
                    "main_ii_n": "",
                    "refined_b_value": "",
                    "refined_b_n": "",
                    "ratio_ii_over_i": "",
                }
            )
        threshold_rows.append(row)
        n_cov = threshold_n(d, "main_i" if d < 42 else "main_ii").n_min
        for lam_over_r in spec.lam_grid:
            cls = classify_instance(d, n_cov, lam_over_r * spec.radius, spec.radius)
            coverage_rows.append(
                {
                    "dim": d,
                    "lam_over_r": lam_over_r,
                    "n": n_cov,
                    "case": cls.case.value,
                    "rule": cls.rule,
                }
            )
    return SweepResult(threshold_rows, coverage_rows)


def records_to_json(records: list[TrialRecord]) -> str:
    return json.dumps([rec.to_dict() for rec in records], indent=2)


def records_to_csv(records: list[TrialRecord]) -> str:
    fields = [
        "kind",
        "index",
        "k",
        "lhs_value",
        "lhs_std_error",
        "rhs_value",
        "rhs_std_error",
        "margin",
        "verdict",
        "certified",
        "observational",
        "descriptor",
    ]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(
            {
                "kind": rec.kind,
                "index": rec.index,
                "k": rec.k,
                "lhs_value": rec.lhs.value,
                "lhs_std_error": rec.lhs.std_error,
                "rhs_value": rec.rhs.value,
                "rhs_std_error": rec.rhs.std_error,
                "margin": rec.margin,
                "verdict": rec.verdict,
                "certified": rec.certified,
                "observational": rec.observational,
                "descriptor": json.dumps(rec.descriptor, sort_keys=True),
            }
        )
    return buf.getvalue()


def any_violation(records: list[TrialRecord], include_observational: bool = False) -> bool:
    return any(
        rec.verdict == VIOLATION
        for rec in records
        if include_observational or not rec.observational
    )

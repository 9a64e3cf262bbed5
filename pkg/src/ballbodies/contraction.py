"""Uniform contractions and closed-form intrinsic-volume bound chains.

A configuration Q is a *uniform contraction* of P with separating value
lambda when every distance within Q is at most lambda and every distance
within P is at least lambda.  For enough points the intrinsic volumes of
the radius-r ball bodies then satisfy V_k(body(P, r)) <= V_k(body(Q, r)):
either the separated side is outright empty (a packing argument) or a
chain through Jung's theorem and an equivalent-volume ball pins
V_k(body(Q, r)) above a ball that still dominates the separated side.

This module provides the predicates, instance samplers, every radius and
bound in the chain, the point-count thresholds under which each argument
fires, and a per-instance report.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.spatial.distance import pdist

from .constants import ball_intrinsic_volume, unit_ball_volume
from .core import PointSet
from .estimators import uniform_in_ball

__all__ = [
    "is_contraction",
    "is_uniform_contraction",
    "ContractionInstance",
    "sample_separated",
    "sample_clustered",
    "jung_radius",
    "equivalent_radius_mu",
    "sausage_volume_lower_bound",
    "modified_sausage_lower_bound",
    "kappa_ratio_check",
    "KappaRatio",
    "threshold_n",
    "Threshold",
    "THRESHOLD_MODES",
    "minimal_integer",
    "InstanceCase",
    "Classification",
    "classify_instance",
    "BoundReport",
    "bound_chain",
]

# dimension from which the sausage-based refinements are proven
SAUSAGE_DIM = 42


def _pdist2(X: PointSet) -> np.ndarray:
    return pdist(X.points, "sqeuclidean")


def is_contraction(P: PointSet, Q: PointSet) -> bool:
    """True when every pairwise distance in Q is at most the matching one in P."""
    if P.n != Q.n or P.dim != Q.dim:
        raise ValueError("P and Q must have the same size and dimension")
    if P.n == 1:
        return True
    return bool(np.all(_pdist2(Q) <= _pdist2(P)))


def is_uniform_contraction(P: PointSet, Q: PointSet, lam: float) -> bool:
    """True when lambda separates the configurations: diam(Q) <= lam <= min-gap(P)."""
    if P.n != Q.n or P.dim != Q.dim:
        raise ValueError("P and Q must have the same size and dimension")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if P.n == 1:
        return True
    lam2 = lam * lam
    return bool(np.all(_pdist2(Q) <= lam2) and np.all(_pdist2(P) >= lam2))


@dataclass(frozen=True)
class ContractionInstance:
    """A configuration pair with its separating value and body radius."""

    P: PointSet
    Q: PointSet
    lam: float
    r: float

    def __post_init__(self):
        if self.P.n != self.Q.n or self.P.dim != self.Q.dim:
            raise ValueError("P and Q must have the same size and dimension")
        if not self.lam > 0 or not self.r > 0:
            raise ValueError("lambda and r must be positive")

    @property
    def n(self) -> int:
        return self.P.n

    @property
    def dim(self) -> int:
        return self.P.dim

    @property
    def uniform(self) -> bool:
        return is_uniform_contraction(self.P, self.Q, self.lam)


def sample_separated(dim: int, n: int, lam: float, seed: int = 0) -> PointSet:
    """``n`` points with all pairwise distances at least ``lam``.

    Sequential rejection inside a cube whose side scales like
    ``lam * n^(1/d)``; if a round of rejections exhausts its attempt
    budget the cube grows and sampling restarts, so termination is
    guaranteed.
    """
    if dim < 1 or n < 1:
        raise ValueError("dimension and point count must be positive")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    rng = np.random.default_rng(seed)
    if n == 1:
        return PointSet(rng.random((1, dim)) * lam)
    side = 2.0 * lam * n ** (1.0 / dim)
    lam2 = lam * lam
    while True:
        accepted = np.empty((n, dim))
        count = 0
        budget = 200 * n
        while count < n and budget > 0:
            cand = rng.random(dim) * side
            budget -= 1
            if count == 0:
                accepted[0] = cand
                count = 1
                continue
            diff = accepted[:count] - cand
            if np.einsum("ij,ij->i", diff, diff).min() >= lam2:
                accepted[count] = cand
                count += 1
        if count == n:
            return PointSet(accepted)
        side *= 1.5


def sample_clustered(dim: int, n: int, lam: float, seed: int = 0) -> PointSet:
    """``n`` points of diameter at most ``lam`` (uniform in a lam/2-ball)."""
    if dim < 1 or n < 1:
        raise ValueError("dimension and point count must be positive")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    rng = np.random.default_rng(seed)
    return PointSet(uniform_in_ball(rng, n, dim, 0.5 * lam))


def jung_radius(dim: int, lam: float) -> float:
    """Jung's bound: circumradius of any diameter-lam set is at most this.

    Equals ``sqrt(2 d / (d + 1)) * lam / 2``; attained by the regular
    simplex.
    """
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return math.sqrt(2.0 * dim / (dim + 1.0)) * lam / 2.0


def equivalent_radius_mu(dim: int, n: int, lam: float) -> float:
    """Radius of the ball whose volume equals n disjoint lam/2-balls: n^(1/d) lam / 2."""
    if dim < 1 or n < 1:
        raise ValueError("dimension and point count must be positive")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return 0.5 * n ** (1.0 / dim) * lam


def sausage_volume_lower_bound(dim: int, n: int, lam: float) -> float:
    """Sausage volume: convex hull of n collinear lam/2-balls at spacing lam.

    (n-1) lam (lam/2)^(d-1) omega_{d-1} + (lam/2)^d omega_d.  This is a
    lower bound for the hull volume of any n lam-separated lam/2-balls
    only in high dimension (see SAUSAGE_DIM); the formula itself is
    evaluated for every d and callers mark validity.
    """
    if dim < 1 or n < 1:
        raise ValueError("dimension and point count must be positive")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    half = 0.5 * lam
    return (n - 1) * lam * half ** (dim - 1) * unit_ball_volume(dim - 1) + half**dim * unit_ball_volume(dim)


def modified_sausage_lower_bound(dim: int, n: int, lam: float) -> float:
    """Weaker, algebraically convenient form: ((n-1) sqrt(2d/pi) + 1) (lam/2)^d omega_d."""
    if dim < 1 or n < 1:
        raise ValueError("dimension and point count must be positive")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    half = 0.5 * lam
    return ((n - 1) * math.sqrt(2.0 * dim / math.pi) + 1.0) * half**dim * unit_ball_volume(dim)


class KappaRatio(NamedTuple):
    ratio: float
    bound: float
    ok: bool


def kappa_ratio_check(dim: int) -> KappaRatio:
    """Check omega_{d-1}/omega_d > sqrt(d / (2 pi)).

    This is the inequality that lets the sausage bound be weakened to
    its modified form; it holds for every d >= 1.
    """
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    # omega_{d-1}/omega_d = Gamma(1 + d/2) / (sqrt(pi) Gamma(1/2 + d/2));
    # go through lgamma so large d does not overflow
    ratio = math.exp(math.lgamma(1.0 + dim / 2.0) - math.lgamma(0.5 + dim / 2.0)) / math.sqrt(math.pi)
    bound = math.sqrt(dim / (2.0 * math.pi))
    return KappaRatio(ratio=ratio, bound=bound, ok=ratio > bound)


def minimal_integer(x: float, rtol: float = 1e-9) -> int:
    """Smallest integer >= x, snapping to whole numbers within rtol."""
    nearest = round(x)
    if abs(x - nearest) <= rtol * max(1.0, abs(x)):
        return int(nearest)
    return int(math.ceil(x))


THRESHOLD_MODES = ("main_i", "main_ii", "packing", "jung_b", "refined_a", "refined_b")


class Threshold(NamedTuple):
    value: float
    n_min: int


def threshold_n(dim: int, mode: str, r: float | None = None, lam: float | None = None) -> Threshold:
    """Point-count threshold for one of the contraction arguments.

    Modes
    -----
    ``main_i``     (1 + sqrt2)^d, the headline threshold.
    ``main_ii``    sqrt(pi/(2d)) (1 + sqrt2)^d + 1, a high-dimensional
                   refinement (proven from SAUSAGE_DIM upward).
    ``packing``    (1 + 2r/lam)^d, separated side empty outright.
    ``jung_b``     (1 + sqrt(2d/(d+1)))^d, the Jung-chain side.
    ``refined_a``  sqrt(pi/(2d)) (1 + 2r/lam)^d + 1.
    ``refined_b``  sqrt(pi/(2d)) (1 + sqrt(2d/(d+1)))^d + 1.

    ``packing`` and ``refined_a`` need ``r`` and ``lam``.  Returns the
    real threshold value and the minimal integer point count meeting it.
    """
    if dim < 2:
        raise ValueError(f"dimension must be at least 2, got {dim}")
    if mode not in THRESHOLD_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {THRESHOLD_MODES}")
    if mode in ("packing", "refined_a"):
        if r is None or lam is None:
            raise ValueError(f"mode {mode!r} requires r and lam")
        if not r > 0 or not lam > 0:
            raise ValueError("r and lam must be positive")
    prefactor = math.sqrt(math.pi / (2.0 * dim))
    if mode == "main_i":
        value = (1.0 + math.sqrt(2.0)) ** dim
    elif mode == "main_ii":
        value = prefactor * (1.0 + math.sqrt(2.0)) ** dim + 1.0
    elif mode == "packing":
        value = (1.0 + 2.0 * r / lam) ** dim
    elif mode == "jung_b":
        value = (1.0 + math.sqrt(2.0 * dim / (dim + 1.0))) ** dim
    elif mode == "refined_a":
        value = prefactor * (1.0 + 2.0 * r / lam) ** dim + 1.0
    else:  # refined_b
        value = prefactor * (1.0 + math.sqrt(2.0 * dim / (dim + 1.0))) ** dim + 1.0
    return Threshold(value=value, n_min=minimal_integer(value))


def mode_applicable(dim: int, mode: str) -> bool:
    """Whether a threshold mode's argument is proven at this dimension."""
    if mode in ("main_ii", "refined_a", "refined_b"):
        return dim >= SAUSAGE_DIM
    return True


class InstanceCase(Enum):
    TRIVIAL_EMPTY = "TrivialEmpty"
    PACKING_EMPTY = "PackingEmpty"
    JUNG_CHAIN = "JungChain"
    NOT_COVERED = "NotCovered"


class Classification(NamedTuple):
    case: InstanceCase
    rule: str  # "", "naive", "sausage", "refined"


def _meets(n: int, value: float) -> bool:
    return n >= value - 1e-9 * max(1.0, abs(value))


def classify_instance(dim: int, n: int, lam: float, r: float) -> Classification:
    """Which argument certifies V_k monotonicity for these parameters.

    Dispatch order: lambda > 2r makes the separated body empty outright
    (TrivialEmpty); then the packing test (sausage-refined from
    SAUSAGE_DIM up, naive below); then the Jung chain, which needs
    lambda <= sqrt2 r; otherwise NotCovered.  The pairwise reasoning
    behind the empty cases presumes n >= 2 (a single point has no pairs
    and its body is never empty).
    """
    if dim < 2:
        raise ValueError(f"dimension must be at least 2, got {dim}")
    if n < 1:
        raise ValueError(f"point count must be positive, got {n}")
    if not lam > 0 or not r > 0:
        raise ValueError("lambda and r must be positive")
    if lam > 2.0 * r:
        return Classification(InstanceCase.TRIVIAL_EMPTY, "")
    if dim >= SAUSAGE_DIM:
        if _meets(n, threshold_n(dim, "refined_a", r=r, lam=lam).value):
            return Classification(InstanceCase.PACKING_EMPTY, "sausage")
    elif _meets(n, threshold_n(dim, "packing", r=r, lam=lam).value):
        return Classification(InstanceCase.PACKING_EMPTY, "naive")
    if lam <= math.sqrt(2.0) * r:
        if dim >= SAUSAGE_DIM:
            if _meets(n, threshold_n(dim, "refined_b").value):
                return Classification(InstanceCase.JUNG_CHAIN, "refined")
        elif _meets(n, threshold_n(dim, "jung_b").value):
            return Classification(InstanceCase.JUNG_CHAIN, "naive")
    return Classification(InstanceCase.NOT_COVERED, "")


_CSV_FIELDS = (
    "dim",
    "n",
    "lam",
    "r",
    "k",
    "case",
    "rule",
    "jung_radius",
    "inner_radius",
    "equiv_radius_mu",
    "naive_outer_radius",
    "refined_outer_radius",
    "f_lower",
    "g_upper",
)


@dataclass(frozen=True)
class BoundReport:
    """Every radius and closed-form bound in the contraction chain.

    ``f_lower`` bounds the clustered side from below (ball of radius
    r minus the Jung radius); ``g_upper`` bounds the separated side from
    above (zero on the empty paths, otherwise a ball of the applicable
    outer radius).  On the JungChain path ``g_upper < f_lower`` is the
    certified separation.
    """

    dim: int
    n: int
    lam: float
    r: float
    k: int
    case: InstanceCase
    rule: str
    jung_radius: float
    inner_radius: float
    equiv_radius_mu: float
    naive_outer_radius: float
    refined_outer_radius: float
    f_lower: float
    g_upper: float

    def to_json(self) -> str:
        data = {f: getattr(self, f) for f in _CSV_FIELDS if f not in ("case",)}
        data["case"] = self.case.value
        return json.dumps(data)

    @staticmethod
    def csv_header() -> str:
        return ",".join(_CSV_FIELDS)

    def csv_row(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="")
        writer.writerow(
            [self.case.value if f == "case" else getattr(self, f) for f in _CSV_FIELDS]
        )
        return buf.getvalue()


def bound_chain(dim: int, n: int, lam: float, r: float, k: int) -> BoundReport:
    """Assemble the closed-form bound chain for one parameter tuple.

    The inner radius is ``r`` minus the Jung radius (positive whenever
    lambda <= sqrt2 r); the outer radius subtracts the packing growth
    term, in its naive form below SAUSAGE_DIM and its sausage-refined
    form from there up.  Negative radii clamp to empty (bound zero).
    """
    if not 1 <= k <= dim:
        raise ValueError(f"k must lie in 1..{dim}, got {k}")
    cls = classify_instance(dim, n, lam, r)
    jung = jung_radius(dim, lam)
    inner = r - jung
    mu = equivalent_radius_mu(dim, n, lam)
    naive_outer = r - (n ** (1.0 / dim) - 1.0) * lam / 2.0
    refined_outer = r - (((n - 1) * math.sqrt(2.0 * dim / math.pi) + 1.0) ** (1.0 / dim) - 1.0) * lam / 2.0
    outer = refined_outer if dim >= SAUSAGE_DIM else naive_outer
    f_lower = ball_intrinsic_volume(dim, k, max(0.0, inner))
    if cls.case in (InstanceCase.TRIVIAL_EMPTY, InstanceCase.PACKING_EMPTY):
        g_upper = 0.0
    else:
        g_upper = ball_intrinsic_volume(dim, k, max(0.0, outer))
    if cls.case is InstanceCase.JUNG_CHAIN:
        assert g_upper < f_lower, (
            f"Jung chain failed to separate: g_upper={g_upper} >= f_lower={f_lower} "
            f"at dim={dim}, n={n}, lam={lam}, r={r}, k={k}"
        )
    return BoundReport(
        dim=dim,
        n=n,
        lam=lam,
        r=r,
        k=k,
        case=cls.case,
        rule=cls.rule,
        jung_radius=jung,
        inner_radius=inner,
        equiv_radius_mu=mu,
        naive_outer_radius=naive_outer,
        refined_outer_radius=refined_outer,
        f_lower=f_lower,
        g_upper=g_upper,
    )

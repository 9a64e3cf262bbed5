"""Closed-form constants for Euclidean balls.

The volume of the unit ball in ``d`` dimensions,

    omega_d = pi^(d/2) / Gamma(1 + d/2),

shows up everywhere in this package: as the normalization of intrinsic
volumes, in mean-width conversions and in packing thresholds.  The same
quantity is written ``kappa_d`` in parts of the convex-geometry
literature; this module is the single home for it under either name.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

__all__ = [
    "unit_ball_volume",
    "ball_volume",
    "ball_intrinsic_volume",
    "mean_width_factor",
    "v1_factor",
    "UnitBallConstants",
]


def unit_ball_volume(dim: int) -> float:
    """Volume ``omega_dim`` of the unit ball in ``dim`` dimensions.

    Parameters
    ----------
    dim : int
        Dimension, ``dim >= 0``.  ``omega_0 = 1``, ``omega_1 = 2``,
        ``omega_2 = pi``, ``omega_3 = 4 pi / 3``.

    Returns
    -------
    float
    """
    if dim < 0:
        raise ValueError(f"dimension must be nonnegative, got {dim}")
    return math.pi ** (dim / 2.0) / math.gamma(1.0 + dim / 2.0)


def ball_volume(dim: int, radius: float) -> float:
    """Volume of a ball of the given radius in ``dim`` dimensions."""
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    return unit_ball_volume(dim) * radius**dim


def ball_intrinsic_volume(dim: int, k: int, radius: float) -> float:
    """k-th intrinsic volume of a ball of the given radius.

    V_k(B) = C(dim, k) * omega_dim / omega_{dim-k} * radius^k.  With
    ``k = dim`` this is the ordinary volume; ``k = dim - 1`` is half the
    surface area; ``k = 1`` is proportional to the mean width.

    Parameters
    ----------
    dim : int
        Ambient dimension, ``dim >= 1``.
    k : int
        Intrinsic-volume index, ``1 <= k <= dim``.
    radius : float
        Ball radius, ``radius >= 0``.  A radius of zero (a point, or the
        convention for an empty body) gives 0.

    Returns
    -------
    float
    """
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    if not 1 <= k <= dim:
        raise ValueError(f"k must lie in 1..{dim}, got {k}")
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    return comb(dim, k) * unit_ball_volume(dim) / unit_ball_volume(dim - k) * radius**k


def mean_width_factor(dim: int) -> float:
    """Factor ``2 omega_{d-1} / (d omega_d)`` turning V_1 into mean width."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    return 2.0 * unit_ball_volume(dim - 1) / (dim * unit_ball_volume(dim))


def v1_factor(dim: int) -> float:
    """Factor ``d omega_d / (2 omega_{d-1})`` turning mean width into V_1."""
    return 1.0 / mean_width_factor(dim)


@dataclass(frozen=True)
class UnitBallConstants:
    """Unit-ball volume bundled with its dimension.

    Convenience record for code that passes the constant around; the
    ``omega`` field equals :func:`unit_ball_volume` of ``dim``.
    """

    dim: int
    omega: float

    @classmethod
    def for_dim(cls, dim: int) -> "UnitBallConstants":
        return cls(dim=dim, omega=unit_ball_volume(dim))

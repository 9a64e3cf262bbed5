import math

import numpy as np
import pytest
from scipy.special import gamma

from ballbodies.constants import (
    UnitBallConstants,
    ball_intrinsic_volume,
    ball_volume,
    mean_width_factor,
    unit_ball_volume,
    v1_factor,
)


@pytest.mark.parametrize(
    "dim,expected",
    [
        (0, 1.0),
        (1, 2.0),
        (2, math.pi),
        (3, 4.0 * math.pi / 3.0),
        (4, math.pi**2 / 2.0),
    ],
)
def test_unit_ball_volume_known_values(dim, expected):
    assert unit_ball_volume(dim) == pytest.approx(expected, rel=1e-14)


def test_unit_ball_volume_matches_gamma_formula():
    # independent evaluation through scipy's gamma
    for d in range(0, 25):
        ref = math.pi ** (d / 2.0) / float(gamma(1.0 + d / 2.0))
        assert unit_ball_volume(d) == pytest.approx(ref, rel=1e-13)


def test_unit_ball_volume_recurrence():
    # omega_d = omega_{d-2} * 2 pi / d
    for d in range(2, 20):
        assert unit_ball_volume(d) == pytest.approx(
            unit_ball_volume(d - 2) * 2.0 * math.pi / d, rel=1e-13
        )


def test_ball_volume_scaling():
    assert ball_volume(3, 2.0) == pytest.approx(8.0 * unit_ball_volume(3), rel=1e-14)
    assert ball_volume(2, 0.0) == 0.0


@pytest.mark.parametrize(
    "dim,k,radius,expected",
    [
        (3, 1, 1.0, 4.0),
        (3, 2, 1.0, 2.0 * math.pi),
        (3, 3, 1.0, 4.0 * math.pi / 3.0),
        (2, 1, 1.0, math.pi),
        (2, 2, 1.0, math.pi),
        (3, 1, 2.5, 10.0),
    ],
)
def test_ball_intrinsic_volume_known_values(dim, k, radius, expected):
    assert ball_intrinsic_volume(dim, k, radius) == pytest.approx(expected, rel=1e-13)


def test_ball_intrinsic_volume_steiner_identity():
    # vol(B_R + t B_1) = sum_k t^(d-k) omega_{d-k} V_k(B_R), the Steiner
    # expansion; checking it at several t values pins the whole V_k table
    rng = np.random.default_rng(7)
    for d in (2, 3, 4, 6):
        R = float(rng.uniform(0.5, 2.0))
        for t in rng.uniform(0.1, 3.0, 4):
            total = unit_ball_volume(d) * (R + t) ** d
            expansion = sum(
                t ** (d - k) * unit_ball_volume(d - k) * ball_intrinsic_volume(d, k, R)
                for k in range(1, d + 1)
            ) + t**d * unit_ball_volume(d)
            assert expansion == pytest.approx(total, rel=1e-12)


def test_ball_intrinsic_volume_homogeneity():
    for d, k in ((3, 2), (4, 1), (5, 3)):
        base = ball_intrinsic_volume(d, k, 1.0)
        assert ball_intrinsic_volume(d, k, 1.7) == pytest.approx(base * 1.7**k, rel=1e-13)


def test_ball_intrinsic_volume_validation():
    with pytest.raises(ValueError):
        ball_intrinsic_volume(3, 0, 1.0)
    with pytest.raises(ValueError):
        ball_intrinsic_volume(3, 4, 1.0)
    with pytest.raises(ValueError):
        ball_intrinsic_volume(3, 1, -0.5)


def test_v1_factor_inverts_mean_width_factor():
    for d in range(1, 12):
        assert v1_factor(d) * mean_width_factor(d) == pytest.approx(1.0, rel=1e-14)


def test_v1_factor_three_dimensions():
    # V_1 = 2 * (mean width) at d = 3, so a ball of radius R has V_1 = 4R
    assert v1_factor(3) == pytest.approx(2.0, rel=1e-14)
    assert v1_factor(3) * 2.0 == pytest.approx(ball_intrinsic_volume(3, 1, 1.0), rel=1e-14)


def test_unit_ball_constants_container():
    c = UnitBallConstants.for_dim(4)
    assert c.dim == 4
    assert c.omega == pytest.approx(unit_ball_volume(4), rel=1e-15)

"""Estimator sanity tour: Monte Carlo, mean width, Kubota averaging.

Runs each estimator on a 3D body with known brackets (the lens of two
unit balls) and on a plain ball where every intrinsic volume has a
closed form, printing value +- standard error next to the truth.
"""

import argparse

import numpy as np

from ballbodies import (
    EstimatorConfig,
    PointSet,
    ball_intrinsic_volume,
    dual,
    mc_volume,
    v1_estimate,
    vk_estimate,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=200_000)
    args = ap.parse_args()

    cfg = EstimatorConfig(samples=args.samples, directions=256, seed=args.seed)

    ball = dual(PointSet(np.zeros((1, 3))), 0.9)
    print("ball of radius 0.9 in R^3")
    for k, est in ((1, v1_estimate(ball, cfg)), (2, vk_estimate(ball, 2, cfg)), (3, mc_volume(ball, cfg))):
        truth = ball_intrinsic_volume(3, k, 0.9)
        print(f"  V_{k}: {est.value:.6f} +- {est.std_error:.2e}   truth {truth:.6f}   [{est.method}]")

    lens = dual(PointSet(np.array([[0.0, 0.0, 0.0], [0.8, 0.0, 0.0]])), 1.0)
    print("lens of two unit balls 0.8 apart")
    for k in (1, 2, 3):
        est = vk_estimate(lens, k, cfg) if k < 3 else mc_volume(lens, cfg)
        lo = ball_intrinsic_volume(3, k, 0.6)          # inscribed ball
        hi = ball_intrinsic_volume(3, k, 0.84 ** 0.5)  # circumscribed ball
        print(f"  V_{k}: {est.value:.6f} +- {est.std_error:.2e}   bracket [{lo:.4f}, {hi:.4f}]")


if __name__ == "__main__":
    main()

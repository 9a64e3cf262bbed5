"""Command line front end.

Subcommands::

    ballbody dual        body of a point set at radius r (JSON)
    ballbody hull        spindle hull at d = 2, or a membership query in any d
    ballbody ivol        intrinsic volume V_k of a body (exact at d = 2)
    ballbody check-bsz   equal-volume comparisons against the ball
    ballbody check-kp    uniform-contraction monotonicity checks
    ballbody identities  exact structural identity suite
    ballbody thresholds  threshold table and coverage map
    ballbody render      SVG of a planar body or hull

Exit codes: 0 success, 1 at least one violation, 2 invalid input,
3 estimator non-convergence.  ``BALLBODY_SEED`` sets the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .core import BallBody, PointSet, ball_hull_membership, dual
from .estimators import EstimatorConfig, NoConvergenceError, uniform_in_ball
from .harness import (
    ExperimentSpec,
    any_violation,
    records_to_csv,
    records_to_json,
    run_bsz_check,
    run_identity_suite,
    run_kp_check,
    run_threshold_sweep,
)
from . import exact2d

__all__ = ["main"]


def _default_seed() -> int:
    try:
        return int(os.environ.get("BALLBODY_SEED", "0"))
    except ValueError:
        return 0


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _load_points(args) -> PointSet:
    if args.points is not None:
        return PointSet.from_file(args.points)
    if args.n_points is None or args.dim is None:
        raise ValueError("either --points or both --random (--n-points) and --dim are required")
    rng = np.random.default_rng((args.seed, 9001))
    return PointSet(uniform_in_ball(rng, args.n_points, args.dim[0], 0.8 * args.radius))


def _add_common(sub, *, radius=True, points=False, seed=True, out=True):
    if points:
        sub.add_argument("--points", help="point set file (.csv or .json)")
        sub.add_argument("--n-points", type=int, default=None, help="random generator count (with --dim)")
        sub.add_argument("--dim", type=int, nargs="+", default=None, help="ambient dimension(s)")
    if radius:
        sub.add_argument("--radius", type=float, default=1.0, help="ball radius r (default 1.0)")
    if seed:
        sub.add_argument("--seed", type=int, default=_default_seed(), help="base seed (default $BALLBODY_SEED or 0)")
    if out:
        sub.add_argument("--out", default=None, help="output path (default stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ballbody", description=__doc__.split("\n\n")[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("dual", help="body of a point set at radius r")
    _add_common(p, points=True)

    p = subs.add_parser("hull", help="spindle hull (d = 2) or membership query")
    _add_common(p, points=True)
    p.add_argument("--query", default=None, help="comma separated coordinates for a membership query")

    p = subs.add_parser("ivol", help="intrinsic volume V_k of a body")
    _add_common(p, points=True)
    p.add_argument("--k", type=int, nargs="+", default=[1], help="intrinsic volume order(s)")
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--directions", type=int, default=256)

    for name, blurb in (("check-bsz", "equal-volume comparisons"), ("check-kp", "contraction checks")):
        p = subs.add_parser(name, help=blurb)
        p.add_argument("--dim", type=int, nargs="+", default=[2, 3])
        p.add_argument("--k", type=int, nargs="+", default=[1, 2])
        p.add_argument("--trials", type=int, default=50)
        p.add_argument("--samples", type=int, default=20000)
        p.add_argument("--directions", type=int, default=256)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        _add_common(p)
        if name == "check-kp":
            p.add_argument("--lambda", dest="lam", type=float, default=None, help="fixed separation (default randomized)")
            p.add_argument("--n-points", type=int, default=None, help="fixed point count (default threshold based)")

    p = subs.add_parser("identities", help="exact identity suite")
    p.add_argument("--dim", type=int, nargs="+", default=[2, 3])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(p)

    p = subs.add_parser("thresholds", help="threshold table / coverage map")
    p.add_argument("--dim", type=int, nargs="+", default=list(range(2, 11)))
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    _add_common(p, seed=False)
    p.add_argument("--coverage", action="store_true", help="emit the coverage map instead of the threshold table")

    p = subs.add_parser("render", help="SVG rendering at d = 2")
    _add_common(p, points=True)
    p.add_argument("--hull", action="store_true", help="render the spindle hull instead of the body")

    return parser


def _cmd_dual(args) -> int:
    X = _load_points(args)
    body = dual(X, args.radius)
    _emit(body.to_json(), args.out)
    return 0


def _cmd_hull(args) -> int:
    X = _load_points(args)
    if args.query is not None:
        q = np.array([float(tok) for tok in args.query.split(",")])
        result = ball_hull_membership(X, args.radius, q)
        payload = {
            "inside": result.inside,
            "distance": result.distance,
            "certificate": None if result.certificate is None else [float(v) for v in result.certificate],
        }
        _emit(json.dumps(payload), args.out)
        return 0
    if X.dim != 2:
        raise ValueError("hull output without --query is only available at d = 2")
    region = exact2d.spindle_hull_2d(X, args.radius)
    _emit(region.to_json(), args.out)
    return 0


def _cmd_ivol(args) -> int:
    from .harness import _body_vk

    X = _load_points(args)
    body = dual(X, args.radius)
    cfg = EstimatorConfig(samples=args.samples, seed=args.seed, directions=args.directions)
    rows = []
    for k in args.k:
        est = _body_vk(body, k, cfg, exact_planar=True)
        rows.append({"k": k, **json.loads(est.to_json())})
    _emit(json.dumps(rows, indent=2), args.out)
    return 0


def _run_check(args, runner, kind: str) -> int:
    cfg = EstimatorConfig(samples=args.samples, seed=args.seed, directions=args.directions)
    spec = ExperimentSpec(
        kind=kind,
        dims=tuple(args.dim),
        k_values=tuple(args.k),
        trials=args.trials,
        seed=args.seed,
        estimator=cfg,
        radius=args.radius,
        lam=getattr(args, "lam", None),
        n_points=getattr(args, "n_points", None),
    )
    records = runner(spec)
    text = records_to_csv(records) if args.format == "csv" else records_to_json(records)
    _emit(text, args.out)
    bad = sum(1 for rec in records if rec.verdict == "violation" and not rec.observational)
    obs = sum(1 for rec in records if rec.observational)
    print(
        f"{kind}: {len(records)} comparisons, {bad} violations"
        + (f", {obs} observational" if obs else ""),
        file=sys.stderr,
    )
    return 1 if any_violation(records) else 0


def _cmd_identities(args) -> int:
    spec = ExperimentSpec(kind="identities", dims=tuple(args.dim), trials=args.trials, seed=args.seed, radius=args.radius)
    records = run_identity_suite(spec)
    text = records_to_csv(records) if args.format == "csv" else records_to_json(records)
    _emit(text, args.out)
    bad = sum(1 for rec in records if rec.verdict == "violation")
    print(f"identities: {len(records)} cases, {bad} failures", file=sys.stderr)
    return 1 if bad else 0


def _cmd_thresholds(args) -> int:
    spec = ExperimentSpec(kind="thresholds", dims=tuple(args.dim), radius=args.radius)
    result = run_threshold_sweep(spec)
    if args.format == "json":
        _emit(result.to_json(), args.out)
    elif args.coverage:
        _emit(result.coverage_csv(), args.out)
    else:
        _emit(result.thresholds_csv(), args.out)
    return 0


def _cmd_render(args) -> int:
    X = _load_points(args)
    if X.dim != 2:
        raise ValueError("render is only available at d = 2")
    if args.hull:
        region = exact2d.spindle_hull_2d(X, args.radius)
    else:
        region = exact2d.disk_intersection(X, args.radius)
    _emit(exact2d.render_svg(region), args.out)
    return 0


_COMMANDS = {
    "dual": _cmd_dual,
    "hull": _cmd_hull,
    "ivol": _cmd_ivol,
    "identities": _cmd_identities,
    "thresholds": _cmd_thresholds,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check-bsz":
            return _run_check(args, run_bsz_check, "bsz")
        if args.command == "check-kp":
            return _run_check(args, run_kp_check, "kp")
        return _COMMANDS[args.command](args)
    except NoConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

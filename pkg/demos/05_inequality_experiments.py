"""Run small versions of the two inequality experiments and summarize.

Same machinery as `ballbody check-bsz` / `check-kp`, scaled down so the
whole script finishes in a few seconds.  Every record carries a margin
and a verdict; the experiments are reproducible from the seed alone.
"""

import sys

from ballbodies import EstimatorConfig, ExperimentSpec, any_violation, run_bsz_check, run_kp_check

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
cfg = EstimatorConfig(samples=20_000, directions=64, seed=seed)

spec = ExperimentSpec(kind="bsz", dims=(2, 3), k_values=(1, 2), trials=10, seed=seed, estimator=cfg)
records = run_bsz_check(spec)
print(f"equal-volume comparisons: {len(records)} records, violation = {any_violation(records)}")
for rec in records[:4]:
    print(f"  d = {rec.descriptor['dim']}, k = {rec.k}: "
          f"lhs {rec.lhs.value:.5f} <= rhs {rec.rhs.value:.5f}  ({rec.verdict})")

spec = ExperimentSpec(kind="kp", dims=(2, 3), k_values=(1, 2), trials=8, seed=seed, estimator=cfg)
records = run_kp_check(spec)
print(f"\ncontraction comparisons: {len(records)} records, violation = {any_violation(records)}")
cases = {}
for rec in records:
    cases[rec.descriptor["case"]] = cases.get(rec.descriptor["case"], 0) + 1
print(f"  case mix: {cases}")
obs = [rec for rec in records if rec.observational]
print(f"  {len(obs)} observational sub-threshold records (not counted as violations)")

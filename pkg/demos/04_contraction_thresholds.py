"""Threshold table and bound-chain certificates for uniform contractions.

Prints the minimal point counts per dimension, shows where the
high-dimensional refinement takes over, and walks one Jung-chain
certificate end to end.
"""

from ballbodies import SAUSAGE_DIM, bound_chain, classify_instance, threshold_n

print("dim   main_i            jung_b")
for d in range(2, 11):
    a = threshold_n(d, "main_i")
    b = threshold_n(d, "jung_b")
    print(f"{d:3d}   {a.n_min:6d} ({a.value:11.3f})   {b.n_min:6d} ({b.value:11.3f})")

print(f"\nfrom d = {SAUSAGE_DIM} the refined count is strictly smaller:")
for d in (SAUSAGE_DIM, SAUSAGE_DIM + 4, SAUSAGE_DIM + 8):
    i = threshold_n(d, "main_i")
    ii = threshold_n(d, "main_ii")
    print(f"  d = {d}: ratio main_ii/main_i = {ii.value / i.value:.6f}")

print("\none certificate, d = 3, n = 15, lambda = r = 1, k = 3:")
rep = bound_chain(3, 15, 1.0, 1.0, 3)
print(f"  case {rep.case.value} ({rep.rule} rule)")
print(f"  jung radius {rep.jung_radius:.6f} -> inner radius {rep.inner_radius:.6f}")
print(f"  outer radius {rep.naive_outer_radius:.6f}")
print(f"  f_lower {rep.f_lower:.6f} > g_upper {rep.g_upper:.6f}: "
      f"{rep.f_lower > rep.g_upper}")

print("\nclassification across lambda at the d = 3 threshold count:")
for lam in (0.2, 0.8, 1.2, 1.5, 2.5):
    cls = classify_instance(3, 15, lam, 1.0)
    print(f"  lambda/r = {lam}: {cls.case.value}")

"""Hypothesis reports and monopole-level bookkeeping on K3.

The level-0 theorem needs an abundant manifold of simple type plus a class
Lambda in the complement of the basic classes with Lambda^2 = 2-(chi+sigma)
and w - Lambda = w2 mod 2; level-1 raises the square to 4-(chi+sigma).
Both are found by bounded search here. The level table then shows which
spin-c strata can contribute at each compactification level.
"""

from wittenform import (check_delta_window, check_theorem_hypotheses,
                        delta_admissible, enumerate_contributions, i_lambda,
                        mmp_vanishing_check)
from wittenform.corpus import load_bundled

k3 = load_bundled("k3.manifold")
zero = (0,) * k3.rank

for variant in ("level0", "level1"):
    print(f"=== {variant} hypotheses, searched witnesses ===")
    report = check_theorem_hypotheses(k3, None, None, variant)
    print(report.to_text())
    print()

print("=== vanishing window ===")
print("SW series vanishing mod degree c - 2:", mmp_vanishing_check(k3, zero))
print("(c = 2 for K3, so the window is empty)")
print()

print("=== level bookkeeping, delta = 2, lambda = 0 ===")
print("delta admissible for w = 0:", delta_admissible(2, 0, k3.chi, k3.sigma))
bound = i_lambda(0, k3.chi, k3.sigma)
print(f"i(lambda) = {bound}, window delta < i(lambda):",
      check_delta_window(2, bound))
table = enumerate_contributions(k3, zero, zero, delta=2, mm=0, ell_max=4)
for row in table.rows:
    print(f"  c1 = 0: level {row.ell}, sign {row.sign:+d}, "
          f"i range 0..{row.i_range_max}")
for note in table.notes:
    print("  note:", note)

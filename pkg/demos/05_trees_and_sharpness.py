"""Nested commutators of a saturating pair, and the good-tree family.

For x = (t/alpha) S^1 and y = (t/alpha^3) S^3 in the exponential model every
surviving labeled tree has norm exactly t^n; trees with equal-degree sibling
subtrees vanish, since [S^m, S^m] = 0.
"""
from fractions import Fraction

from malcev_bch.bch import sharpness_harness
from malcev_bch.trees import good_tree_count

rep = sharpness_harness(alpha=2, M=3, t=Fraction(1, 5), n_max=7)
print(f"{'n':>2s} {'trees':>6s} {'t^n':>6s} {'zero':>6s} {'level sum':>12s} {'C_(n-1) t^n':>12s}")
for lv in rep.levels:
    print(f"{lv.n:2d} {lv.trees:6d} {lv.saturated:6d} {lv.vanishing:6d} "
          f"{float(lv.level_sum):12.6g} {float(lv.catalan_mass):12.6g}")

print("\ngood trees |G_n| and |G_n| / C_(n-1):")
for n in range(1, 11):
    g, ratio = good_tree_count(n)
    print(f"  n={n:2d}  {g:5d}  {ratio:.4f}")

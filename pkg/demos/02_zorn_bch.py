"""Exact truncated BCH in the split octonions.

The Zorn model is alternative but not associative, so BCH(x, y) is defined
as log(exp(x) exp(y)) inside the ambient algebra.  We expand it exactly with
rational arithmetic and compare each homogeneous level with its Catalan
majorant.
"""
from fractions import Fraction

from malcev_bch import catalog_lookup
from malcev_bch.bch import bch_truncated, default_directions, radius_diagnostic, truncation_report

zorn = catalog_lookup("zorn")
e1, e2 = default_directions(zorn)

series = bch_truncated(e1 * Fraction(1, 10), e2 * Fraction(1, 10), zorn, 6)
for n, z in enumerate(series.levels(), start=1):
    print(f"Z_{n} = {z}")

for t in (Fraction(4, 100), Fraction(12, 100)):
    rep = truncation_report(e1 * t, e2 * t, zorn, 8)
    print(f"\nt = {t}: B s = {rep.B * rep.s:.3f}, within radius: {rep.within_radius}, tail bound {rep.tail_sum:.3g}")
    for row in rep.rows():
        print(f"  n={row['n']}  ||Z_n|| = {row['Z_norm']:.6g}  majorant = {row['majorant']:.6g}")

prof = radius_diagnostic(zorn, e1, e2, [0.1, 0.5, 1.0, 1.5], 12)
print("\nlevel-ratio growth g(t):", [round(g, 4) for g in prof.growth])
print("estimated divergence scale:", round(prof.radius_estimate, 4))

"""Bracket constants and Catalan radii across the model catalog.

For each model we scan the local ratios B_{m,n} over a degree window and
compare the empirical supremum with the closed-form bound.  The Catalan
radius rho = 1/(4KB) then bounds the region where the BCH series converges.
"""
from malcev_bch import catalog_lookup
from malcev_bch.constants import TABLE2_ROWS, bracket_constant, monotone_scan, table_generator

print(f"{'model':16s} {'B_analytic':>11s} {'B_empirical':>12s} {'rho':>9s}  witness")
for rep in table_generator(TABLE2_ROWS, K=1.0):
    print(f"{rep.model.name:16s} {rep.B_analytic:11.6g} {rep.B_empirical:12.6g} {rep.rho:9.4g}  {rep.witness}")

# the closed-form bound need not be attained: 2^p is a safe envelope for polynomial weights
poly = catalog_lookup("polynomial", {"p": 3})
print("\npolynomial p=3, B_empirical over growing windows:", monotone_scan(poly), "analytic:", poly.analytic_B)

# the damped model loses its contraction once the zero mode is allowed
damped = catalog_lookup("damped", {"gamma": 0.7})
print("damped, degrees >= 1:", bracket_constant(damped).B_empirical)
print("damped, degrees >= 0:", bracket_constant(damped.with_min_degree(0)).B_empirical)

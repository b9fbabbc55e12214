"""Per-step BCH truncation error of a splitting integrator against the step size.

Below the threshold dt_max = 1/(4 K B (||A|| + ||B||)) the error of an order-N
truncation scales like dt^(N+1).
"""
from malcev_bch import catalog_lookup
from malcev_bch.integrator import SplittingExperiment, default_generators, observed_order, sweep, trend_excess

zorn = catalog_lookup("zorn")
A, B = default_generators(zorn, "float")

for N in (2, 3, 5):
    res = sweep(SplittingExperiment(zorn, A, B, N=N))
    slope = observed_order(res.dt, res.error, 0.0, res.threshold / 2)
    print(f"N = {N}: dt_max = {res.threshold:.4g}, slope below dt_max/2 = {slope:.3f}, "
          f"excess over trend at 1.25 dt_max = {trend_excess(res, 1.25, (0.0, 0.5)):.3f}")

res = sweep(SplittingExperiment(zorn, A, B, N=3))
print()
print(res.to_csv())

"""The Catalan majorant and its convergence boundary at K B s = 1/4."""
from malcev_bch.trees import MajorantSeries, catalan, count_trees

print("C_k:", [catalan(k) for k in range(10)])
print("full binary trees with n leaves:", [count_trees(n) for n in range(1, 10)])

for r in (0.1, 0.2, 0.24, 0.26):
    ser = MajorantSeries(K=1.0, B=1.0, s=r)
    chk = ser.cauchy_check(200)
    print(f"r = {r:4.2f}  converges={ser.converges!s:5s}  S_200 = {chk['partial_sum']:.6g}  "
          f"term ratio = {chk['term_ratio']:.4f}  limit = {ser.limit():.6g}")

"""
Matrix-free vs dense stepping
=============================

One matrix-free step touches each site once. The dense operators are 2d x 2d
and 4d x 4d, so a matrix-vector product costs O(d^2) and building them
is capped at 512 sites.
"""

from hadamard_rw import bench
from hadamard_rw.engine import CapacityError

mf = bench.time_matrix_free()
for t in mf:
    print(f"matrix-free d={t.d:>8d}  {t.seconds_per_step:.2e} s/step")
print("fit exponent in d:", round(bench.fit_exponent(mf), 3))

for t in bench.time_dense():
    print(f"dense       d={t.d:>8d}  {t.seconds_per_step:.2e} s/step")

try:
    bench.time_dense([10**5])
except CapacityError as exc:
    print("refused:", exc)

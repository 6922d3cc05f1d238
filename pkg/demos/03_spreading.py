"""
Diffusive chain rows, ballistic quantum walk
============================================

Start at the middle of 256 sites with chain rows (1, 0, 0, 0), which lift
to the coin state |0>. Every chain row stays a nonnegative bell-shaped
population whose variance grows linearly in n. The quantum distribution
recovered from those rows spreads linearly in n instead, with its two
peaks near +-n/sqrt(2).
"""

import numpy as np

from hadamard_rw import LatticeConfig, devectorize, evolve, init_quantum, init_rw, step_quantum, step_rw
from hadamard_rw.analysis import find_peaks, linear_fit_r2, moments
from hadamard_rw.bridge import quantum_distribution

d, start = 256, 128
cfg = LatticeConfig(d, start)
rw0 = init_rw(cfg, (1, 0, 0, 0))
q0 = init_quantum(cfg, (1, 0))

steps = [20, 40, 60, 80, 100]
row_var, q_var = [], []
for n in steps:
    rows = devectorize(evolve(rw0, n, step_rw)).real
    row_var.append(moments(rows.sum(axis=0)).variance)
    q_var.append(moments(sum(quantum_distribution(evolve(q0, n, step_quantum)))).variance)

print("chain variance     ", np.round(row_var, 2), " R^2 vs n   =", linear_fit_r2(steps, row_var))
print("quantum variance   ", np.round(q_var, 1), " R^2 vs n^2 =", linear_fit_r2(np.square(steps), q_var))
print("stddev ratio at n=100:", np.sqrt(q_var[-1] / row_var[-1]))

rows = devectorize(evolve(rw0, 100, step_rw)).real
for name, r in zip(("|0>", "|1>", "-|1>", "-|0>"), rows):
    print(f"row {name:>4}: min={r.min():.1e}  mass={r.sum():.4f}  peak sites={find_peaks(r)}")

peaks = find_peaks(sum(quantum_distribution(evolve(q0, 100, step_quantum))))
print("quantum outer peaks at offsets", peaks[0] - start, peaks[-1] - start,
      " (n/sqrt2 =", round(100 / np.sqrt(2), 1), ")")

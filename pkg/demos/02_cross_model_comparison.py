"""
Hadamard walk vs chain after 20 steps
=====================================

80 sites, start at site 40, chain rows (1+i/2, 0, 0, 1-i/2) at the start.
Lifting those rows gives the quantum coin state i|0>. Both models are
evolved and the chain populations are turned into coin distributions with
2^n |P_row1 - P_row4|^2 and 2^n |P_row2 - P_row3|^2.
"""

from pathlib import Path

import numpy as np

from hadamard_rw.experiment import ExperimentConfig, run_experiment, write_csv, write_json
from hadamard_rw.plot import plot_csv

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

cfg = ExperimentConfig(d=80, n=20, start=40, engine="both")
result = run_experiment(cfg)

dist = result.distributions
print("max |p0_qw - p0_rw| =", np.max(np.abs(dist["p0_qw"] - dist["p0_rw"])))
print("max |p1_qw - p1_rw| =", np.max(np.abs(dist["p1_qw"] - dist["p1_rw"])))
print("energy     =", result.report.energy)
print("population =", result.report.population)
print("dense vs matrix-free =", result.residuals["engine"])

# the chain rows themselves are complex here; only the derived
# distributions go into the table
write_csv(result, out / "comparison.csv")
write_json(result, out / "comparison.json")
plot_csv(out / "comparison.csv", out / "comparison.svg")
print("wrote", sorted(p.name for p in out.glob("comparison.*")))

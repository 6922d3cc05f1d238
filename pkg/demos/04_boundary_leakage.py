"""
What happens at the lattice edges
=================================

The finite shift matrices simply drop whatever is pushed past site 1 or
site d. Away from the edges both conservation laws hold; once the walk
reaches an edge, norm and population leak away.
"""

from hadamard_rw import LatticeConfig, init_quantum, init_rw, step_quantum, step_rw
from hadamard_rw.analysis import leakage
from hadamard_rw.engine import trajectory

# one step from site 1 with coin |0>: the half sent down is lost
cfg = LatticeConfig(4, 1)
print("leak after one step from the edge:",
      leakage(trajectory(init_quantum(cfg, (1, 0)), 1, step_quantum)))

for n in (5, 10, 11, 15):
    cfg = LatticeConfig(24, 12, n)
    q = leakage(trajectory(init_quantum(cfg, (1, 0)), n, step_quantum))
    r = leakage(trajectory(init_rw(cfg, (1, 0, 0, 0)), n, step_rw))
    print(f"n={n:2d} interior_safe={cfg.interior_safe!s:5}  quantum leak={q:.3e}  chain leak={r:.3e}")

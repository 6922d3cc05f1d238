"""
Hadamard quantum walk on a finite line, simulated next to a four-row
birth-and-death Markov chain whose populations reproduce the walk's coin
distributions.

Modules
-------
coin        constant coin matrices and their small identities
engine      states, matrix-free steppers, dense oracle operators
bridge      chain <-> quantum projection, distribution extraction, identity residuals
analysis    conservation, moments, peaks, leakage
experiment  run configuration, side-by-side runs, CSV/JSON output
verify      identity sweep
bench       stepping timings
plot        SVG charts
cli         command line
"""

from .coin import A, B, H, HAT_ONE, HAT_ZERO, ONE, ZERO, hadamard, projection_b, transition_a
from .engine import (
    CapacityError,
    ConfigurationError,
    LatticeConfig,
    QuantumState,
    RwState,
    build_dense,
    devectorize,
    evolve,
    evolve_dense,
    init_quantum,
    init_rw,
    step_quantum,
    step_rw,
    vectorize,
)
from .bridge import (
    ScaleMismatchError,
    canonical_embed,
    lift,
    quantum_distribution,
    quantum_distribution_from_rw,
)
from .analysis import energy, leakage, moments, population
from .experiment import ExperimentConfig, run_experiment

__version__ = "0.1.0"

"""
Per-step wall time of the matrix-free and dense steppers.
"""

import time
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .engine import (
    MAX_DENSE_SITES,
    CapacityError,
    QuantumState,
    RwState,
    build_dense,
    step_quantum,
    step_rw,
)

__all__ = ["Timing", "time_matrix_free", "time_dense", "fit_exponent",
           "DEFAULT_SIZES", "DEFAULT_DENSE_SIZES", "EXPONENT_RANGE"]

DEFAULT_SIZES = (10**3, 10**4, 10**5, 10**6)
DEFAULT_DENSE_SIZES = (64, 128, 256, 512)
EXPONENT_RANGE = (0.8, 1.3)


@dataclass(frozen=True)
class Timing:
    engine: str
    d: int
    seconds_per_step: float


def _best_per_step(fn, min_total: float, rounds: int) -> float:
    # calibrate the batch so one round lasts about min_total seconds
    reps = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        elapsed = time.perf_counter() - t0
        if elapsed >= min_total or reps >= 1 << 20:
            break
        reps *= 2
    best = elapsed / reps
    for _ in range(rounds - 1):
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        best = min(best, (time.perf_counter() - t0) / reps)
    return best


def time_matrix_free(sizes: Sequence[int] = DEFAULT_SIZES, seed: int = 0,
                     min_total: float = 0.05, rounds: int = 3) -> List[Timing]:
    """
    Best-of-``rounds`` time for one quantum step plus one chain step at each
    lattice size, on random complex states.
    """
    rng = np.random.default_rng(seed)
    out = []
    for d in sizes:
        q = QuantumState(rng.standard_normal(2 * d) + 1j * rng.standard_normal(2 * d))
        r = RwState(rng.standard_normal(4 * d) + 1j * rng.standard_normal(4 * d))

        def one_step(q=q, r=r):
            step_quantum(q)
            step_rw(r)

        out.append(Timing("matrix-free", d, _best_per_step(one_step, min_total, rounds)))
    return out


def time_dense(sizes: Sequence[int] = DEFAULT_DENSE_SIZES, seed: int = 0,
               min_total: float = 0.05, rounds: int = 3) -> List[Timing]:
    """
    Same measurement with explicit dense operators.

    Raises
    ------
    CapacityError
        If any size exceeds ``MAX_DENSE_SITES``; checked before any work.
    """
    too_big = [d for d in sizes if d > MAX_DENSE_SITES]
    if too_big:
        raise CapacityError(
            f"dense stepping refused for d={too_big[0]}: the chain operator would be "
            f"{4 * too_big[0]} x {4 * too_big[0]} (limit d <= {MAX_DENSE_SITES})"
        )
    rng = np.random.default_rng(seed)
    out = []
    for d in sizes:
        u = build_dense(d, "u").matrix
        big_u = build_dense(d, "U").matrix
        q = rng.standard_normal(2 * d) + 1j * rng.standard_normal(2 * d)
        r = rng.standard_normal(4 * d) + 1j * rng.standard_normal(4 * d)

        def one_step(q=q, r=r, u=u, big_u=big_u):
            u @ q
            big_u @ r

        out.append(Timing("dense", d, _best_per_step(one_step, min_total, rounds)))
    return out


def fit_exponent(timings: Sequence[Timing]) -> float:
    """Slope of log(time) against log(d)."""
    d = np.log([t.d for t in timings])
    t = np.log([t.seconds_per_step for t in timings])
    return float(np.polyfit(d, t, 1)[0])

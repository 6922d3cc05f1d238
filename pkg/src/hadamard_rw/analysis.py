"""
Conservation measures, moments, peaks and boundary leakage of walk runs.
"""

from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Sequence, Union

import numpy as np

from .engine import QuantumState, RwState

__all__ = [
    "UndefinedMomentsError",
    "Moments",
    "RunReport",
    "energy",
    "population",
    "moments",
    "find_peaks",
    "leakage",
    "linear_fit_r2",
    "stddev",
]


class UndefinedMomentsError(ValueError):
    """Moments requested for a distribution with no positive mass."""


@dataclass(frozen=True)
class Moments:
    """Mean and variance in 1-based site units, plus peak sites."""

    mean: float
    variance: float
    peaks: List[int]


@dataclass
class RunReport:
    """
    Summary of one run. ``leak`` is the quantum norm lost at the edges,
    ``leak_rw`` the chain population lost there.
    """

    energy: float
    population: complex
    leak: float
    leak_rw: float = 0.0
    moments: Dict[str, Moments] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "energy": self.energy,
            "population_re": self.population.real,
            "population_im": self.population.imag,
            "leak": self.leak,
            "leak_rw": self.leak_rw,
            "moments": {k: asdict(v) for k, v in self.moments.items()},
        }


def energy(dist0, dist1) -> float:
    """Total quantum probability: sum of both coin distributions."""
    return float(np.sum(dist0) + np.sum(dist1))


def population(state: RwState) -> complex:
    """Raw (unscaled) sum of all chain entries."""
    return state.total()


def find_peaks(dist, rel_threshold: float = 0.1) -> List[int]:
    """
    1-based sites of local maxima reaching ``rel_threshold * max``.

    A walk after ``n`` steps occupies only sites of one parity, so maxima are
    searched on the subsequence of whichever parity holds more mass; the
    empty sites in between would otherwise turn every occupied site into a
    peak.
    """
    dist = np.asarray(dist, dtype=np.float64)
    sites = np.arange(1, dist.size + 1)
    odd_mass = dist[0::2].sum()
    even_mass = dist[1::2].sum()
    offset = 0 if odd_mass >= even_mass else 1
    sub = dist[offset::2]
    sub_sites = sites[offset::2]
    top = sub.max() if sub.size else 0.0
    if top <= 0:
        return []
    padded = np.concatenate(([-np.inf], sub, [-np.inf]))
    is_max = (sub >= padded[:-2]) & (sub > padded[2:]) & (sub >= rel_threshold * top)
    return [int(s) for s in sub_sites[is_max]]


def moments(dist, rel_threshold: float = 0.1) -> Moments:
    """
    Normalized mean and variance of a per-site distribution, and its peaks.

    Raises
    ------
    UndefinedMomentsError
        If the distribution does not sum to a positive value.
    """
    dist = np.asarray(dist, dtype=np.float64)
    total = dist.sum()
    if not total > 0:
        raise UndefinedMomentsError(f"distribution total must be positive, got {total}")
    sites = np.arange(1, dist.size + 1)
    weights = dist / total
    mean = float(weights @ sites)
    variance = float(weights @ (sites - mean) ** 2)
    return Moments(mean, max(variance, 0.0), find_peaks(dist, rel_threshold))


def stddev(dist) -> float:
    return float(np.sqrt(moments(dist).variance))


def _total(state: Union[QuantumState, RwState]) -> complex:
    if isinstance(state, QuantumState):
        return complex(state.norm2())
    return state.total()


def leakage(history: Iterable[Union[QuantumState, RwState]]) -> float:
    """
    Mass lost at the lattice edges over a run.

    Sums ``|total(k) - total(k+1)|`` over consecutive states, where the total
    is the squared norm for quantum states and the population for chain
    states. For quantum runs and nonnegative chain runs every term is a plain
    loss, so the sum equals initial minus final total.
    """
    leak = 0.0
    previous = None
    for state in history:
        current = _total(state)
        if previous is not None:
            leak += abs(previous - current)
        previous = current
    return leak


def linear_fit_r2(x: Sequence[float], y: Sequence[float]) -> float:
    """Coefficient of determination of the least-squares line through (x, y)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = np.sum((y - y.mean()) ** 2)
    if ss_tot == 0:
        return 1.0 if np.allclose(resid, 0) else 0.0
    return float(1.0 - np.sum(resid ** 2) / ss_tot)

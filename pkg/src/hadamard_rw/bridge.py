"""
Projection between chain states and quantum states, probability extraction,
and residual checks of the intertwining identities.

``lift`` applies ``I_d ⊗ B`` site by site: the coin pair at site ``s`` is
``(row|0> - row-|0>, row|1> - row-|1>)``. Evolving the chain ``n`` steps and
lifting gives the quantum state after ``n`` steps up to a factor
``2**(n/2)``::

    u^n (I_d ⊗ B) = 2**(n/2) (I_d ⊗ B) U^n

``canonical_embed`` is the right inverse ``I_d ⊗ B^T / 2``.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from . import coin
from .engine import (
    LatticeConfig,
    QuantumState,
    RwState,
    build_dense,
    evolve,
    step_quantum,
    step_rw,
)

__all__ = [
    "ScaleMismatchError",
    "LiftedVector",
    "lift",
    "canonical_embed",
    "quantum_distribution",
    "quantum_distribution_from_rw",
    "distribution_via_lift",
    "lift_matrix",
    "intertwining_residual",
    "intertwining_probe_residual",
    "power_residual",
    "u_commutation_residual",
    "DENSE_VERIFY_MAX_SITES",
]

# above this the residual checks switch from dense matrices to random probes
DENSE_VERIFY_MAX_SITES = 64

Distribution = NDArray[np.float64]


class ScaleMismatchError(ValueError):
    """Claimed step count is inconsistent with a state's scale exponent."""


@dataclass(frozen=True, eq=False)
class LiftedVector:
    """``(I_d ⊗ B)`` applied to chain populations; carries their ``scale_exp``."""

    amp: NDArray[np.complex128]
    scale_exp: int = 0

    @property
    def d(self) -> int:
        return self.amp.size // 2

    def to_quantum(self) -> QuantumState:
        """Multiply in ``2**(scale_exp/2)`` and return an ordinary quantum state."""
        return QuantumState(self.amp * 2.0 ** (self.scale_exp / 2))


def lift(state: RwState) -> LiftedVector:
    """Apply ``B`` to the four rows of every site (O(d))."""
    rows = state.sites
    out = np.empty((state.d, 2), dtype=np.complex128)
    out[:, 0] = rows[:, 0] - rows[:, 3]
    out[:, 1] = rows[:, 1] - rows[:, 2]
    return LiftedVector(out.reshape(-1), state.scale_exp)


def canonical_embed(state: QuantumState) -> RwState:
    """Map each coin pair (α, β) to rows (α/2, β/2, -β/2, -α/2)."""
    pairs = state.sites
    rows = np.empty((state.d, 4), dtype=np.complex128)
    rows[:, 0] = 0.5 * pairs[:, 0]
    rows[:, 1] = 0.5 * pairs[:, 1]
    rows[:, 2] = -0.5 * pairs[:, 1]
    rows[:, 3] = -0.5 * pairs[:, 0]
    return RwState(rows.reshape(-1))


def quantum_distribution(state: QuantumState) -> Tuple[Distribution, Distribution]:
    """Per-site ``|ψ_0|²`` and ``|ψ_1|²`` of a quantum state."""
    pairs = state.sites
    return np.abs(pairs[:, 0]) ** 2, np.abs(pairs[:, 1]) ** 2


def _check_scale(state: RwState, n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if state.scale_exp not in (0, n):
        raise ScaleMismatchError(
            f"state carries scale_exp={state.scale_exp}, which matches neither "
            f"unscaled stepping (0) nor n={n} scaled steps"
        )


def quantum_distribution_from_rw(state: RwState, n: int) -> Tuple[Distribution, Distribution]:
    """
    Recover the quantum coin distributions from chain populations.

    Returns ``2**n |P_{|0>} - P_{-|0>}|²`` and ``2**n |P_{|1>} - P_{-|1>}|²``
    per site.

    Parameters
    ----------
    state : RwState
        Chain state after ``n`` steps, either unscaled (``scale_exp == 0``)
        or scaled (``scale_exp == n``).
    n : int
        Number of steps taken.

    Raises
    ------
    ScaleMismatchError
        If ``state.scale_exp`` is neither 0 nor ``n``.
    """
    _check_scale(state, n)
    rows = state.sites
    # |diff| shrinks like 2**(-n/2); scale before squaring
    scale = 2.0 ** (n / 2)
    p0 = (scale * np.abs(rows[:, 0] - rows[:, 3])) ** 2
    p1 = (scale * np.abs(rows[:, 1] - rows[:, 2])) ** 2
    return p0, p1


def distribution_via_lift(state: RwState, n: int) -> Tuple[Distribution, Distribution]:
    """Same quantity as :func:`quantum_distribution_from_rw`, via odd/even strides of the lifted vector."""
    _check_scale(state, n)
    v = (2.0 ** (n / 2) * np.abs(lift(state).amp)) ** 2
    return v[0::2], v[1::2]


# ---------------------------------------------------------------------------
# identity residuals
# ---------------------------------------------------------------------------

def _sites(cfg: Union[int, LatticeConfig]) -> int:
    return cfg.d if isinstance(cfg, LatticeConfig) else int(cfg)


def lift_matrix(cfg: Union[int, LatticeConfig], b=None) -> NDArray[np.float64]:
    """Dense ``I_d ⊗ B`` (2d × 4d)."""
    b = coin.B if b is None else np.asarray(b)
    return np.kron(np.eye(_sites(cfg)), b)


def intertwining_residual(cfg: Union[int, LatticeConfig]) -> float:
    """Max-abs entry of ``u (I_d ⊗ B) - √2 (I_d ⊗ B) U``, built densely."""
    d = _sites(cfg)
    u = build_dense(d, "u").matrix
    big_u = build_dense(d, "U").matrix
    lb = lift_matrix(d)
    return float(np.max(np.abs(u @ lb - np.sqrt(2.0) * (lb @ big_u))))


def _random_rw(d: int, rng: np.random.Generator) -> RwState:
    return RwState(rng.standard_normal(4 * d) + 1j * rng.standard_normal(4 * d))


def intertwining_probe_residual(cfg: Union[int, LatticeConfig], probes: int = 100,
                                seed: int = 0) -> float:
    """
    Matrix-free version of :func:`intertwining_residual` on random complex
    chain vectors ``v``: ``max |u lift(v) - √2 lift(U v)|``.
    """
    d = _sites(cfg)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(probes):
        v = _random_rw(d, rng)
        left = step_quantum(lift(v).to_quantum()).amp
        right = np.sqrt(2.0) * lift(step_rw(v)).amp
        worst = max(worst, float(np.max(np.abs(left - right))))
    return worst


def power_residual(cfg: Union[int, LatticeConfig], n: int, probes: Optional[int] = None,
                   seed: int = 0) -> float:
    """
    Residual of the n-step identity ``u^n (I_d ⊗ B) = 2**(n/2) (I_d ⊗ B) U^n``.

    Dense over the full basis when ``probes`` is None and
    ``d <= DENSE_VERIFY_MAX_SITES``; otherwise on ``probes`` random complex
    chain vectors (100 by default) with matrix-free stepping. Both sides are
    compared on the quantum scale.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    d = _sites(cfg)
    if probes is None and d <= DENSE_VERIFY_MAX_SITES:
        lb = lift_matrix(d)
        left = build_dense(d, "u").power(n) @ lb
        right = 2.0 ** (n / 2) * (lb @ build_dense(d, "U").power(n))
        return float(np.max(np.abs(left - right)))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100 if probes is None else probes):
        v = _random_rw(d, rng)
        left = evolve(lift(v).to_quantum(), n, step_quantum).amp
        right = lift(evolve(v, n, lambda s: step_rw(s, scaled=True))).to_quantum().amp
        worst = max(worst, float(np.max(np.abs(left - right))))
    return worst


def u_commutation_residual(cfg: Union[int, LatticeConfig]) -> float:
    """Max-abs entry of ``U (I⊗B^T)(I⊗B) - (I⊗B^T)(I⊗B) U``, dense."""
    d = _sites(cfg)
    big_u = build_dense(d, "U").matrix
    lb = lift_matrix(d)
    proj = lb.T @ lb
    return float(np.max(np.abs(big_u @ proj - proj @ big_u)))

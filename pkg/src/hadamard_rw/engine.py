"""
Quantum and Markov walk states on a finite line, and their time stepping.

Both walks store one flat vector, site-major: the site index is the outer
(left Kronecker) factor and the internal state the inner one. A quantum state
has two coin entries per site, a chain state four rows per site ordered
|0>, |1>, -|1>, -|0>. Site numbers are 1-based in every public signature.

One step is "coin, then shift":

* quantum: ``u = x y`` with ``y = I_d ⊗ H`` and
  ``x = Right ⊗ Zero + Left ⊗ One``
* chain: ``U = X Y`` with ``Y = I_d ⊗ A`` and
  ``X = Right ⊗ HatZero + Left ⊗ HatOne``

``Right`` has ones on the superdiagonal, so under column-vector action it
moves coin-|0> content (chain rows |0>, -|0>) one site *down*; ``Left`` moves
coin-|1> content (rows |1>, -|1>) one site *up*. Content pushed past site 1
or site d is dropped, never wrapped.

The matrix-free steppers cost O(d) per step. :func:`build_dense` assembles
the same operators explicitly with ``np.kron``; they serve as the oracle.
"""

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence, TypeVar, Union

import numpy as np
from numpy.typing import NDArray

from . import coin

__all__ = [
    "ConfigurationError",
    "CapacityError",
    "LatticeConfig",
    "QuantumState",
    "RwState",
    "DenseOperator",
    "MAX_DENSE_SITES",
    "init_quantum",
    "init_rw",
    "step_quantum",
    "step_rw",
    "step_rw_scaled",
    "evolve",
    "trajectory",
    "shift_matrices",
    "build_dense",
    "evolve_dense",
    "vectorize",
    "devectorize",
]

# dense operators are 4d × 4d complex; 512 sites is a 2048² matrix (64 MiB)
MAX_DENSE_SITES = 512


class ConfigurationError(ValueError):
    """Invalid lattice or run configuration."""


class CapacityError(RuntimeError):
    """Requested operation would need an infeasibly large dense matrix."""


@dataclass(frozen=True)
class LatticeConfig:
    """
    Line of ``d`` sites, a 1-based start site and a step count.

    Parameters
    ----------
    d : int
        Number of sites, at least 4.
    start : int
        Initial site, ``1 <= start <= d``.
    n : int
        Number of steps, ``n >= 0``.
    """

    d: int
    start: int
    n: int = 0

    def __post_init__(self):
        for name in ("d", "start", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ConfigurationError(f"{name} must be an integer, got {value!r}")
        if self.d < 4:
            raise ConfigurationError(f"d must be >= 4, got {self.d}")
        if not 1 <= self.start <= self.d:
            raise ConfigurationError(f"start must lie in [1, {self.d}], got {self.start}")
        if self.n < 0:
            raise ConfigurationError(f"n must be >= 0, got {self.n}")

    @property
    def interior_safe(self) -> bool:
        """True when ``n`` steps from ``start`` cannot touch either edge."""
        return self.n < min(self.start - 1, self.d - self.start)

    @classmethod
    def centered(cls, d: int, n: int = 0) -> "LatticeConfig":
        """Start at ``floor(d/2)``, the convention of the reference program."""
        return cls(d=d, start=d // 2, n=n)


def _as_vector(values, length: int) -> NDArray[np.complex128]:
    vec = np.array(values, dtype=np.complex128).reshape(-1)
    if vec.shape != (length,):
        raise ValueError(f"expected {length} entries, got {vec.size}")
    return vec


def _frozen_vector(values) -> NDArray[np.complex128]:
    # read-only complex vectors (stepper output) are adopted without a copy
    if (isinstance(values, np.ndarray) and values.dtype == np.complex128
            and values.ndim == 1 and not values.flags.writeable):
        return values
    vec = np.array(values, dtype=np.complex128).reshape(-1)
    vec.flags.writeable = False
    return vec


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Coin amplitudes of a Hadamard walk, entry ``2(s-1) + r`` for coin ``r``."""

    amp: NDArray[np.complex128]

    def __post_init__(self):
        amp = _frozen_vector(self.amp)
        if amp.size % 2 or amp.size == 0:
            raise ValueError(f"amplitude length must be a positive multiple of 2, got {amp.size}")
        object.__setattr__(self, "amp", amp)

    @property
    def d(self) -> int:
        return self.amp.size // 2

    @property
    def sites(self) -> NDArray[np.complex128]:
        """Read-only ``(d, 2)`` view: row ``s-1`` holds the coin pair at site ``s``."""
        return self.amp.reshape(self.d, 2)

    def norm2(self) -> float:
        """Squared 2-norm."""
        return float(np.vdot(self.amp, self.amp).real)

    @classmethod
    def point(cls, d: int, site: int, coin_pair) -> "QuantumState":
        """State with ``coin_pair`` at 1-based ``site`` and zeros elsewhere."""
        if not 1 <= site <= d:
            raise ConfigurationError(f"site must lie in [1, {d}], got {site}")
        amp = np.zeros(2 * d, dtype=np.complex128)
        amp[2 * (site - 1):2 * site] = _as_vector(coin_pair, 2)
        return cls(amp)


@dataclass(frozen=True, eq=False)
class RwState:
    """
    Chain populations, entry ``4(s-1) + r`` for row ``r``.

    The physically compared vector is ``2**(scale_exp/2) * pop``. Scaled
    stepping bumps ``scale_exp`` instead of multiplying the entries by √2.
    """

    pop: NDArray[np.complex128]
    scale_exp: int = 0

    def __post_init__(self):
        pop = _frozen_vector(self.pop)
        if pop.size % 4 or pop.size == 0:
            raise ValueError(f"population length must be a positive multiple of 4, got {pop.size}")
        object.__setattr__(self, "pop", pop)
        object.__setattr__(self, "scale_exp", int(self.scale_exp))

    @property
    def d(self) -> int:
        return self.pop.size // 4

    @property
    def sites(self) -> NDArray[np.complex128]:
        """Read-only ``(d, 4)`` view: row ``s-1`` holds the four chain rows at site ``s``."""
        return self.pop.reshape(self.d, 4)

    def total(self) -> complex:
        """Unscaled sum of all entries."""
        return complex(self.pop.sum())

    @classmethod
    def point(cls, d: int, site: int, rows) -> "RwState":
        """State with the four ``rows`` values at 1-based ``site``."""
        if not 1 <= site <= d:
            raise ConfigurationError(f"site must lie in [1, {d}], got {site}")
        pop = np.zeros(4 * d, dtype=np.complex128)
        pop[4 * (site - 1):4 * site] = _as_vector(rows, 4)
        return cls(pop)


State = TypeVar("State", QuantumState, RwState)


def init_quantum(cfg: LatticeConfig, coin_pair) -> QuantumState:
    """Place ``coin_pair`` (α, β) at ``cfg.start``."""
    if not isinstance(cfg, LatticeConfig):
        raise ConfigurationError(f"expected a LatticeConfig, got {type(cfg).__name__}")
    return QuantumState.point(cfg.d, cfg.start, coin_pair)


def init_rw(cfg: LatticeConfig, rows) -> RwState:
    """Place the four chain-row values at ``cfg.start``; ``scale_exp`` is 0."""
    if not isinstance(cfg, LatticeConfig):
        raise ConfigurationError(f"expected a LatticeConfig, got {type(cfg).__name__}")
    return RwState.point(cfg.d, cfg.start, rows)


def _coin_then_shift(sites: NDArray, m: NDArray, down_rows) -> NDArray:
    """
    Apply ``m`` to every site's internal vector, then shift: rows in
    ``down_rows`` move one site down (``Right``), the rest one site up
    (``Left``). Works column by column over the nonzeros of ``m``.
    """
    k = sites.shape[1]
    out = np.zeros_like(sites)
    above, below = sites[1:], sites[:-1]
    for r in range(k):
        down = r in down_rows
        src = above if down else below
        acc = None
        for c in range(k):
            w = m[r, c]
            if w == 0:
                continue
            term = w * src[:, c]
            acc = term if acc is None else acc + term
        if acc is not None:
            if down:
                out[:-1, r] = acc
            else:
                out[1:, r] = acc
    return out


_ZERO_ROWS = (0,)
_HAT_ZERO_ROWS = (0, 3)


def step_quantum(state: QuantumState) -> QuantumState:
    """One Hadamard-walk step ``u = x (I_d ⊗ H)``, matrix-free."""
    amp = _coin_then_shift(state.sites, coin.H, _ZERO_ROWS).reshape(-1)
    amp.flags.writeable = False
    return QuantumState(amp)


def step_rw(state: RwState, scaled: bool = False) -> RwState:
    """
    One chain step ``U = X (I_d ⊗ A)``, matrix-free.

    With ``scaled=True`` the stored entries are identical but ``scale_exp``
    grows by one, recording the √2 that ties one chain step to one quantum
    step.
    """
    pop = _coin_then_shift(state.sites, coin.A, _HAT_ZERO_ROWS).reshape(-1)
    pop.flags.writeable = False
    return RwState(pop, state.scale_exp + (1 if scaled else 0))


def step_rw_scaled(state: RwState) -> RwState:
    """:func:`step_rw` with ``scaled=True``."""
    return step_rw(state, scaled=True)


def evolve(state: State, steps: int, stepper: Callable[[State], State]) -> State:
    """Apply ``stepper`` ``steps`` times; ``steps=0`` returns ``state`` itself."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    for _ in range(steps):
        state = stepper(state)
    return state


def trajectory(state: State, steps: int, stepper: Callable[[State], State]) -> Iterator[State]:
    """Yield the initial state followed by each of the ``steps`` evolved states."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    yield state
    for _ in range(steps):
        state = stepper(state)
        yield state


# ---------------------------------------------------------------------------
# dense oracle
# ---------------------------------------------------------------------------

ROLES = ("u", "U", "x", "y", "X", "Y")


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Explicit Kronecker-product operator with its role tag."""

    role: str
    matrix: NDArray[np.complex128] = field(repr=False)

    @property
    def d(self) -> int:
        return self.matrix.shape[0] // (2 if self.role in "uxy" else 4)

    def __matmul__(self, other):
        if isinstance(other, DenseOperator):
            return self.matrix @ other.matrix
        return self.matrix @ other

    def power(self, n: int) -> NDArray[np.complex128]:
        return np.linalg.matrix_power(self.matrix, n)


def _sites_of(d: Union[int, LatticeConfig]) -> int:
    d = d.d if isinstance(d, LatticeConfig) else int(d)
    if d < 2:
        raise ConfigurationError(f"need at least 2 sites, got {d}")
    if d > MAX_DENSE_SITES:
        raise CapacityError(
            f"dense operator for d={d} exceeds the {MAX_DENSE_SITES}-site limit"
        )
    return d


def shift_matrices(d: Union[int, LatticeConfig]) -> tuple:
    """``(Right, Left)``: ones on the super- and subdiagonal of a d×d matrix."""
    d = _sites_of(d)
    right = np.eye(d, k=1)
    return right, right.T.copy()


def build_dense(d: Union[int, LatticeConfig], role: str) -> DenseOperator:
    """
    Assemble one of the six walk operators as an explicit matrix.

    Parameters
    ----------
    d : int or LatticeConfig
        Site count (at most :data:`MAX_DENSE_SITES`).
    role : {"u", "U", "x", "y", "X", "Y"}
        Lower case: quantum (size 2d); upper case: chain (size 4d).

    Raises
    ------
    CapacityError
        When ``d`` exceeds :data:`MAX_DENSE_SITES`.
    """
    if role not in ROLES:
        raise ValueError(f"role must be one of {ROLES}, got {role!r}")
    d = _sites_of(d)
    right, left = shift_matrices(d)
    eye = np.eye(d)
    if role == "x":
        m = np.kron(right, coin.ZERO) + np.kron(left, coin.ONE)
    elif role == "y":
        m = np.kron(eye, coin.H)
    elif role == "X":
        m = np.kron(right, coin.HAT_ZERO) + np.kron(left, coin.HAT_ONE)
    elif role == "Y":
        m = np.kron(eye, coin.A)
    elif role == "u":
        m = np.kron(right, coin.ZERO @ coin.H) + np.kron(left, coin.ONE @ coin.H)
    else:
        m = np.kron(right, coin.HAT_ZERO @ coin.A) + np.kron(left, coin.HAT_ONE @ coin.A)
    return DenseOperator(role, m.astype(np.complex128))


def evolve_dense(state: State, steps: int, scaled: bool = False) -> State:
    """
    Oracle evolution: ``matrix_power(op, steps) @ vector`` with the dense
    ``u`` (quantum) or ``U`` (chain).
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if isinstance(state, QuantumState):
        op = build_dense(state.d, "u")
        return QuantumState(op.power(steps) @ state.amp)
    op = build_dense(state.d, "U")
    return RwState(op.power(steps) @ state.pop, state.scale_exp + (steps if scaled else 0))


# ---------------------------------------------------------------------------
# layout helpers
# ---------------------------------------------------------------------------

def vectorize(rows: Sequence) -> RwState:
    """Column-stack a ``4 × d`` population array into an :class:`RwState`."""
    rows = np.asarray(rows, dtype=np.complex128)
    if rows.ndim != 2 or rows.shape[0] != 4:
        raise ValueError(f"expected a 4 x d array, got shape {rows.shape}")
    return RwState(rows.T.reshape(-1))


def devectorize(state: Union[RwState, QuantumState]) -> NDArray[np.complex128]:
    """
    Inverse of :func:`vectorize`.

    Returns the ``4 × d`` array whose row ``r`` is entries ``r, r+4, r+8, ...``
    (1-based), or ``2 × d`` for a quantum state.
    """
    return state.sites.T.copy()

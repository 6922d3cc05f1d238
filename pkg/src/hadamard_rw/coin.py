"""
Constant coin matrices of the Hadamard walk and its four-row Markov chain.

The quantum coin is the 2×2 Hadamard matrix ``H``. The chain replaces it by
the nonnegative, symmetric, doubly stochastic 4×4 matrix ``A``; the 2×4
projection ``B`` maps the chain rows (ordered |0>, |1>, -|1>, -|0>) back onto
the coin space, so that ``H = B A B^T / sqrt(2)``.

All constants are stored once, read-only. The accessor functions hand out
fresh copies so callers can mutate them freely.

The ``verify_*`` functions return max-abs residuals of the small-matrix
identities the equivalence rests on. Each accepts keyword overrides so a
perturbed matrix can be fed in as a negative control.
"""

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "H",
    "A",
    "B",
    "ZERO",
    "ONE",
    "HAT_ZERO",
    "HAT_ONE",
    "hadamard",
    "transition_a",
    "projection_b",
    "det",
    "verify_decomposition",
    "verify_projector_identities",
    "verify_commutators",
]


def _frozen(rows, scale=1.0) -> NDArray[np.float64]:
    arr = np.array(rows, dtype=np.float64) * scale
    arr.flags.writeable = False
    return arr


H = _frozen([[1, 1], [1, -1]], scale=1.0 / np.sqrt(2.0))

A = _frozen([
    [0.5, 0.5, 0.0, 0.0],
    [0.5, 0.0, 0.5, 0.0],
    [0.0, 0.5, 0.0, 0.5],
    [0.0, 0.0, 0.5, 0.5],
])

B = _frozen([
    [1, 0, 0, -1],
    [0, 1, -1, 0],
])

ZERO = _frozen([[1, 0], [0, 0]])
ONE = _frozen([[0, 0], [0, 1]])

HAT_ZERO = _frozen(np.diag([1, 0, 0, 1]))
HAT_ONE = _frozen(np.diag([0, 1, 1, 0]))


def hadamard() -> NDArray[np.float64]:
    """Return a copy of the Hadamard coin ``(1/√2)[[1, 1], [1, -1]]``."""
    return H.copy()


def transition_a() -> NDArray[np.float64]:
    """
    Return a copy of the 4×4 chain transition matrix.

    Every nonzero entry is 0.5; rows and columns each sum to one.
    """
    return A.copy()


def projection_b() -> NDArray[np.float64]:
    """Return a copy of the 2×4 projection from chain rows onto coin states."""
    return B.copy()


def det(m) -> float:
    """
    Determinant of a small square matrix by cofactor expansion along row 0.

    Meant for the fixed 2×2 and 4×4 coin matrices only (cost is O(n!)).
    """
    m = np.asarray(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"square matrix required, got shape {m.shape}")
    if n == 1:
        return m[0, 0]
    if n == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    total = 0.0
    for j in range(n):
        if m[0, j] == 0:
            continue
        minor = np.delete(m[1:], j, axis=1)
        total += (-1) ** j * m[0, j] * det(minor)
    return total


def verify_decomposition(h=None, a=None, b=None) -> float:
    """
    Max-abs entrywise residual of ``H - (1/√2) B A B^T``.

    Returns
    -------
    float
        Bounded by the representation error of 1/√2 (≤ 1e-15) for the
        built-in constants.
    """
    h = H if h is None else np.asarray(h)
    a = A if a is None else np.asarray(a)
    b = B if b is None else np.asarray(b)
    rebuilt = (b @ a @ b.T) / np.sqrt(2.0)
    return float(np.max(np.abs(h - rebuilt)))


def verify_projector_identities(b=None) -> float:
    """
    Max residual over ``B B^T = 2 I``, ``Zero = ½ B HatZero B^T`` and
    ``One = ½ B HatOne B^T``.

    Exactly zero for the built-in constants: every operand is an integer
    or a half.
    """
    b = B if b is None else np.asarray(b)
    residuals = [
        b @ b.T - 2.0 * np.eye(2),
        ZERO - 0.5 * (b @ HAT_ZERO @ b.T),
        ONE - 0.5 * (b @ HAT_ONE @ b.T),
    ]
    return float(max(np.max(np.abs(r)) for r in residuals))


def verify_commutators(a=None, b=None) -> float:
    """
    Max-abs entry of ``[HatZero, B^T B]``, ``[HatOne, B^T B]`` and
    ``[A, B^T B]``; exactly zero for the built-in constants.
    """
    a = A if a is None else np.asarray(a)
    b = B if b is None else np.asarray(b)
    btb = b.T @ b
    worst = 0.0
    for m in (HAT_ZERO, HAT_ONE, a):
        worst = max(worst, float(np.max(np.abs(m @ btb - btb @ m))))
    return worst

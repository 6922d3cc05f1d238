"""
Slow reference implementations, written from the matrix definitions with
plain Python loops. They share no code with the package.
"""

import math

HADAMARD = [[1 / math.sqrt(2), 1 / math.sqrt(2)], [1 / math.sqrt(2), -1 / math.sqrt(2)]]
CHAIN = [[0.5, 0.5, 0, 0], [0.5, 0, 0.5, 0], [0, 0.5, 0, 0.5], [0, 0, 0.5, 0.5]]

# internal states sent through Right (superdiagonal): Zero / HatZero diagonals
QUANTUM_RIGHT = {0}
CHAIN_RIGHT = {0, 3}


def brute_step(vec, coin, right_rows):
    """
    One coin-then-shift step. Right(j, j+1) = 1 sends block j+1 to block j;
    Left(j+1, j) = 1 sends block j to block j+1.
    """
    k = len(coin)
    d = len(vec) // k
    out = [0j] * len(vec)
    for s in range(d):
        for r in range(k):
            val = sum(coin[r][c] * vec[k * s + c] for c in range(k))
            target = s - 1 if r in right_rows else s + 1
            if 0 <= target < d:
                out[k * target + r] += val
    return out


def brute_evolve_quantum(vec, n):
    vec = list(vec)
    for _ in range(n):
        vec = brute_step(vec, HADAMARD, QUANTUM_RIGHT)
    return vec


def brute_evolve_chain(vec, n):
    vec = list(vec)
    for _ in range(n):
        vec = brute_step(vec, CHAIN, CHAIN_RIGHT)
    return vec

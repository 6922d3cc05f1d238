"""
The coin matrices and the identities behind the mapping
=======================================================

The Hadamard coin has negative entries, the chain matrix A does not. The
2x4 matrix B reconciles them: H = B A B^T / sqrt(2).
"""

import numpy as np

from hadamard_rw import coin

np.set_printoptions(precision=4, suppress=True)

print("H =\n", coin.H)
print("A =\n", coin.A)
print("B =\n", coin.B)

# B A B^T is the unnormalized Hadamard matrix, exactly
print("B A B^T =\n", coin.B @ coin.A @ coin.B.T)

# H is invertible, A is not
print("det H =", coin.det(coin.H), " det A =", coin.det(coin.A))

# residuals: the decomposition is limited by 1/sqrt(2); the rest are exact
print("decomposition residual:", coin.verify_decomposition())
print("projector identities residual:", coin.verify_projector_identities())
print("commutator residual:", coin.verify_commutators())

# B^T B commutes with A and with both shift projectors
btb = coin.B.T @ coin.B
print("B^T B =\n", btb)

"""Single n-level systems from the chained-vector parametrization.

A state is a descending simplex point (the spectrum) plus one complex
vector per level; each vector exponentiates into a sparse unitary factor.
"""

import numpy as np

from dmparam import (
    SingleParams,
    assemble_rho_single,
    build_Vjn,
    build_Xj_single,
    expm_skew,
    param_count,
)

np.set_printoptions(precision=4, suppress=True, linewidth=120)

# --- a qubit: one angle, one phase ------------------------------------------
theta, phi = 0.6, 1.8
lam = np.array([0.9, 0.1])
params = SingleParams(2, lam, (np.array([theta * np.exp(1j * phi)]),))
rho = assemble_rho_single(params)
print("qubit state (Bloch radius r = l1 - l2 = 0.8):")
print(rho.mat)
print("eigenvalues:", rho.eigenvalues, "purity:", rho.purity())

# --- each factor is the exponential of a sparse generator -------------------
z3 = np.array([0.4 + 0.2j, -0.3j])
X3 = build_Xj_single(z3, n=3, j=3)
print("\ngenerator for level 3 (skew-Hermitian, vector in the last column):")
print(X3)
V3 = build_Vjn(z3, 3)
print("closed form vs exponential:", np.max(np.abs(V3 - expm_skew(X3))))

# --- a qutrit with both vectors active --------------------------------------
params3 = SingleParams(
    3, [0.5, 0.3, 0.2], (np.array([0.7j]), z3)
)
rho3 = assemble_rho_single(params3)
print("\nqutrit spectrum preserved:",
      np.allclose(np.sort(rho3.eigenvalues), [0.2, 0.3, 0.5]))

# --- parameter counting ------------------------------------------------------
for n in (2, 3, 4, 5):
    print(f"n = {n}: {param_count(n)} real parameters")

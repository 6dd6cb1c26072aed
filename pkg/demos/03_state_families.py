"""The named 2 (x) 2 and 2 (x) m families and their structural detectors."""

import numpy as np

from dmparam import (
    bell_diagonal,
    circulant_rho,
    class3_state,
    detect_structure,
    hankel_state,
    isotropic,
    nonabelian_bloch,
    normalize_blocks,
    polar,
    nonabelian_sphere_check,
    ppt_check,
    pure_P,
    toeplitz_state,
    two_by_m,
)

np.set_printoptions(precision=4, suppress=True, linewidth=120)
rng = np.random.default_rng(2)

# --- pure projectors and the isotropic line ----------------------------------
print("pure_P(pi/4) is maximally entangled: min PT eig =",
      ppt_check(pure_P(np.pi / 4)).min_pt_eig)
print("isotropic(0.2) diagonal:", np.diag(isotropic(0.2).mat).real)

# --- circulant family: exact spectrum, X-shaped support -----------------------
p = (0.4, 0.3, 0.2, 0.1)
rho = circulant_rho(p, 0.7, 0.3)
print("\ncirculant state (spectrum = p):")
print(rho.mat.real)
print("bell reduction at alpha = beta = pi/4:",
      np.allclose(circulant_rho(p, np.pi / 4, np.pi / 4).mat, bell_diagonal(p).mat))

# --- generic 2 (x) m ----------------------------------------------------------
m = 3
U = np.linalg.qr(rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m)))[0]
L1 = np.diag([0.05, 0.1, 0.15])
L2 = np.diag([0.2, 0.25, 0.25])
Xi = np.diag([0.3, 0.9, 1.4])
print("\ntwo_by_m state is", detect_structure(two_by_m(U, L1, L2, Xi)),
      "(generic inputs)")

# --- structured separable constructions --------------------------------------
L = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
L = L @ L.conj().T
L /= 2 * np.trace(L).real
toe = toeplitz_state(L, np.exp(0.9j) * np.eye(m), np.diag([0.2, 0.8, 1.1]))
print("toeplitz_state:", detect_structure(toe), "| PPT:", ppt_check(toe).is_ppt)

han = hankel_state(np.eye(2), np.diag([0.4, 0.1]), np.diag([0.2, 0.3]),
                   np.diag([0.5, 1.1]))
print("hankel_state:  ", detect_structure(han), "| PPT:", ppt_check(han).is_ppt)

# --- rank-m projector class and the nonabelian Bloch sphere -------------------
V = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))[0]
Zs = [(V * g) @ V.conj().T for g in (rng.standard_normal(2) + 1j * rng.standard_normal(2),
                                     rng.standard_normal(2) + 1j * rng.standard_normal(2))]
rho3 = class3_state(3, 2, Zs)
mr = 2 * rho3.mat
print("\nclass3: m*rho idempotent:", np.linalg.norm(mr @ mr - mr) < 1e-10,
      "| rank:", rho3.rank())
Ps = [polar(Zt)[0] for Zt in normalize_blocks(Zs)]
print("polar parts on the nonabelian sphere:", nonabelian_sphere_check(Ps))

nb = nonabelian_bloch(V, np.diag([0.4, 1.0]))
print("nonabelian Bloch state equals class3(2, m):",
      np.max(np.abs(nb.mat - class3_state(2, 2, [V @ np.diag([0.4, 1.0])]).mat)) < 1e-10)

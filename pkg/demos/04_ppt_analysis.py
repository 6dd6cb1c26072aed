"""Partial transpose, PPT verdicts and analytic separability boundaries."""

import numpy as np

from dmparam import (
    circulant_conditions,
    circulant_ppt_margins,
    circulant_rho,
    isotropic,
    isotropic_alpha,
    partial_transpose,
    ppt_check,
    sep_threshold,
)

np.set_printoptions(precision=4, suppress=True, linewidth=120)

# --- the isotropic boundary at p = 1/3 ----------------------------------------
print("isotropic family: min PT eigenvalue is (1 - 3p)/4 for p >= 0")
for p in (0.0, 0.2, 1 / 3, 0.5, 1.0):
    rep = ppt_check(isotropic(p))
    print(f"  p = {p:5.3f}: min PT eig = {rep.min_pt_eig:+.6f}  PPT = {rep.is_ppt}")

# --- PT moves the corner between the two cyclic sectors ------------------------
rho = isotropic(0.5)
print("\nstate and its partial transpose:")
print(rho.mat.real)
print(partial_transpose(rho).real)

# --- mixing with a tilted projector shifts the boundary ------------------------
print("\nPPT boundary of the tilted-projector mixture: p* = 1/(1 + 2 sin 2a)")
for alpha in (np.pi / 16, np.pi / 8, np.pi / 4):
    p_star = sep_threshold(alpha)
    just_below = ppt_check(isotropic_alpha(p_star - 1e-6, alpha)).is_ppt
    just_above = ppt_check(isotropic_alpha(p_star + 1e-6, alpha)).is_ppt
    print(f"  alpha = {alpha:.4f}: p* = {p_star:.6f}  "
          f"PPT below/above: {just_below}/{just_above}")

# --- circulant family: exact analytic conditions -------------------------------
p = (0.125, 0.125, 0.125, 0.625)
print("\ncirculant worked point p = (1/8, 1/8, 1/8, 5/8):")
print("  Bell-diagonal (alpha = beta = pi/4) is entangled:",
      not circulant_conditions(p, np.pi / 4, np.pi / 4))
for alpha in (np.pi / 24, np.pi / 12, np.pi / 8):
    verdict = circulant_conditions(p, alpha, np.pi / 3)
    margins = circulant_ppt_margins(p, alpha, np.pi / 3)
    numeric = ppt_check(circulant_rho(p, alpha, np.pi / 3))
    print(f"  alpha = {alpha:.4f}: analytic PPT = {verdict}  "
          f"margins = ({margins[0]:+.2e}, {margins[1]:+.2e})  "
          f"numeric min PT eig = {numeric.min_pt_eig:+.2e}")
print("  => the separable window in alpha closes exactly at sin(2 alpha) = 1/2")

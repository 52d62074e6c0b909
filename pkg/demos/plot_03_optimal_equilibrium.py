"""
The singular boundary c1 + c2 = 1
=================================

When c1 + c2 = 1 the matrix G = I - F is singular: (1, 1, 1) spans its
null space and, for P != 0, V = (0, 0, P) is not in its column space, so
G Y = V has no exact solution. The regularised equilibrium
(G^T G + theta^2 I)^{-1} G^T V is used instead. As theta shrinks it
approaches the minimum-norm least-squares solution, with error of order
theta^2.
"""

import numpy as np

from samuelson import (
    ModelParams,
    RegularizationConfig,
    analyze,
    build_problem,
    optimal_equilibrium,
    regularity,
)
from samuelson.linalg3 import det3, pseudo_solve3

params = ModelParams(0.6, 0.4, 1.0, 10.0, mode="extended")
prob = build_problem(params)
print("G =\n", prob.G)
print("det G =", det3(prob.G), "->", regularity(prob))

ref = pseudo_solve3(prob.G, prob.V)
print("minimum-norm least-squares solution:", ref)

print("\n   theta        s_e            |Y(theta) - pinv|   ratio")
prev = None
for theta in [1e-1, 5e-2, 2.5e-2, 1.25e-2, 1e-3, 1e-6]:
    res = optimal_equilibrium(prob, RegularizationConfig(theta))
    err = np.linalg.norm(res.y_star - ref)
    ratio = f"{prev / err:6.3f}" if prev else ""
    print(f"{theta:9.2e}  {res.s_e:14.10f}  {err:18.3e}   {ratio}")
    prev = err

res = optimal_equilibrium(prob, RegularizationConfig(1e-6))
print("\nV in colspan(G):", res.in_colspan)
print("D1 at the solution:", res.residual_d1)
print("component along (1,1,1):", res.y_star.sum() / np.sqrt(3))

# %%
# On the boundary one eigenvalue of F sits exactly on the unit circle.
print("\nstability:", analyze(params).classification, analyze(params).roots)

"""
Unique equilibrium and its stability
====================================

Away from the boundary c1 + c2 = 1 the fixed point is
Y* = P / (1 - c1 - c2) * (1, 1, 1). Whether trajectories approach it is
decided by the eigenvalues of the companion matrix, i.e. the roots of the
characteristic cubic.
"""

import numpy as np

from samuelson import ModelParams, analyze, build_problem, characteristic, simulate, unique_equilibrium

cases = [
    ModelParams(0.5, 0.3, 0.2, 100.0),  # monotone convergence
    ModelParams(0.6, 0.3, 1.2, 100.0),  # damped cycles
    ModelParams(0.5, 0.4, 3.0, 100.0),  # b c2 > 1 forces an explosive root
]

for p in cases:
    eq = unique_equilibrium(build_problem(p))
    rep = analyze(p)
    cubic = characteristic(p)
    print(f"c1={p.c1} c2={p.c2} b={p.b}")
    print(f"  cubic:  lambda^3 {cubic.p2:+.3f} lambda^2 {cubic.p1:+.3f} lambda {cubic.p0:+.3f}")
    print("  roots: ", np.array2string(rep.roots, precision=4))
    print(f"  spectral radius {rep.spectral_radius:.4f} -> {rep.classification}"
          f"{' (oscillatory)' if rep.oscillatory else ''}")
    print(f"  equilibrium s_e = {eq.s_e:.6f}")
    T = simulate(p, 0.0, 0.0, 0.0, steps=60).T
    print(f"  T_60 from zero seeds = {T[-1]:.6g}\n")

"""
Income trajectories: classic versus delayed model
=================================================

The classic model lags consumption one period and keeps government spending
separate. The delayed model spreads consumption over the two previous
incomes, folds spending into autonomous consumption P, and yields a
third-order recurrence. Here both are started slightly off their steady
state and printed side by side.
"""

import numpy as np

from samuelson import ClassicParams, ModelParams, simulate, simulate_classic, simulate_companion

# Classic: a = 0.8, b = 0.9, G = 100 -> steady state G / (1 - a) = 500
classic = simulate_classic(ClassicParams(a=0.8, b=0.9, G_bar=100.0), 510.0, 505.0, steps=28)

# Delayed: c1 + c2 = 0.8 keeps the same steady state P / (1 - c1 - c2) = 500
delayed_params = ModelParams(c1=0.5, c2=0.3, b=0.9, P=100.0)
delayed = simulate(delayed_params, 510.0, 505.0, 500.0, steps=27)

print(" k   classic T_k   delayed T_k   delayed C_k   delayed I_k")
for (k, tc, _, _), (_, td, c, i) in zip(classic.records(), delayed.records()):
    c_txt = f"{c:12.4f}" if c is not None else " " * 12
    i_txt = f"{i:12.4f}" if i is not None else " " * 12
    print(f"{k:2d}  {tc:12.4f}  {td:12.4f}  {c_txt}  {i_txt}")

# %%
# The companion form Y_{k+1} = F Y_k + V reproduces the scalar recurrence
# exactly: its first state component is T_k.
states = simulate_companion(delayed_params, [510.0, 505.0, 500.0], steps=27)
print("\ncompanion vs scalar, max |diff| =", np.max(np.abs(states[:, 0] - delayed.T[:28])))

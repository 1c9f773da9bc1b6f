"""One step, many steps: the SISI operator on the 3-simplex.

The state (x, u, y, v) collects the fractions of susceptible, first-time
infected, recovered, and second-time infected individuals.  Births replace
deaths one-for-one, so each step keeps the coordinate sum at 1 -- we never
renormalize, we *measure* the floating-point drift instead.
"""

import numpy as np

from sisi import ModelParams, SimplexPoint, apply_V, force_of_infection, iterate, validate_params

params = ModelParams(b=0.1, alpha=0.2, beta1=0.5, beta2=0.0, k1=1.0, k2=0.3)
print("rates:", params)
print("admissibility:", validate_params(params))

# A state with every class populated.
state = SimplexPoint(0.3, 0.2, 0.4, 0.1)
print("\nforce of infection A = k1*u + k2*v =", force_of_infection(state, params))

step = apply_V(state, params)
print("one step:", step.as_tuple())
print("coordinate sum after one step:", sum(step.as_tuple()))

# Iterate a while and watch the infected classes settle.
traj = iterate(state, params, 300)
print("\n   n        x         u         y         v")
for n in (0, 1, 2, 5, 10, 50, 100, 300):
    x, u, y, v = traj.states[n]
    print(f"{n:4d}  {x:.6f}  {u:.6f}  {y:.6f}  {v:.6f}")

print("\nmax |coordinate sum - 1| along the trajectory:", traj.max_drift())

# Inadmissible rates are refused: the image could leave the simplex.
bad = ModelParams(b=0.9, alpha=0.5, beta1=0.0, beta2=0.0, k1=0.0, k2=0.0)
print("\ninadmissible example:", validate_params(bad))

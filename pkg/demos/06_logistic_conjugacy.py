"""The no-recovery regime and its logistic conjugacy.

With alpha = k2 = 0 the recovered and twice-infected classes drain away and
the (x, u) pair closes on itself.  Normalized back to x + u = 1, the
x-coordinate obeys a quadratic map that is affinely conjugate to the
logistic family with mu = beta1*k1 - b + 1 -- and for b < beta1*k1 <= 2 the
parameter lands in the monotone window (1, 3), which is why every interior
start settles at the persistent-infection point.
"""

import numpy as np

from sisi import (
    ModelParams,
    QuadraticMap1D,
    SimplexPoint,
    classify_1d_fixed_points,
    conjugacy_map,
    detect_limit,
    edge_map,
    normalized_edge_map,
    verify_conjugacy,
)
from sisi.conjugacy import logistic

params = ModelParams(b=0.2, alpha=0.0, beta1=0.6, beta2=0.1, k1=1.0, k2=0.0)

print("pair map on (x, u):", edge_map(0.5, 0.5, params))
print("normalized pair map:", normalized_edge_map(0.3, 0.2, params))

cm = conjugacy_map(params)
f = QuadraticMap1D.from_params(params)
print(f"\nlogistic parameter mu = {cm.mu}")
print(f"conjugacy h(x) = {cm.slope}*x + {cm.intercept}")
print("identity sup-norm over 10^4 grid points:", verify_conjugacy(params))
print("mu in the monotone window (1,3):", cm.in_logistic_window)

p1, p2 = classify_1d_fixed_points(params)
print(f"\n1-D fixed points: {p1.location} is {p1.label} (f'={p1.derivative}),")
print(f"                  {p2.location:.6f} is {p2.label} (f'={p2.derivative})")

# Transport a short orbit through h and watch the two dynamics agree.
z = 0.37
w = cm(z)
print("\n    n   logistic orbit   h(logistic)   quadratic orbit")
for n in range(6):
    print(f"    {n}   {z:.10f}   {cm(z):.10f}  {w:.10f}")
    z = logistic(cm.mu, z)
    w = f(w)

# The 1-D picture matches the full 4-D model: x settles at b/(beta1*k1).
report = detect_limit(SimplexPoint(0.3, 0.3, 0.2, 0.2), params)
print("\nfull model x-limit:", report.limit[0],
      " vs b/(beta1*k1) =", params.b / (params.beta1 * params.k1))

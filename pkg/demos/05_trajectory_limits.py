"""Trajectory limits and the regime dispatcher.

Four reference runs: two subcritical settings that end disease-free, one
boundary setting that ends at the three-class point, and one fully
interior setting that ends at the all-classes-positive point.  The
dispatcher predicts each limit (flagging conjecture-backed targets), and
detect_limit checks the prediction against the actual trajectory.
"""

import numpy as np

from sisi import ModelParams, SimplexPoint, detect_limit, predicted_limit

RUNS = [
    ("strong turnover, no reinfection",
     ModelParams(0.6, 0.2, 0.5, 0.0, 1.0, 0.3), SimplexPoint(0.1, 0.01, 0.2, 0.69)),
    ("weak turnover, no reinfection",
     ModelParams(0.1, 0.2, 0.5, 0.0, 1.0, 0.3), SimplexPoint(0.3, 0.2, 0.4, 0.1)),
    ("all rates positive, subcritical",
     ModelParams(0.6, 0.1, 0.5, 0.01, 1.2, 1.1), SimplexPoint(0.2, 0.1, 0.3, 0.4)),
    ("all rates positive, supercritical",
     ModelParams(0.1, 0.01, 0.8, 0.2, 0.5, 1.2), SimplexPoint(0.2, 0.4, 0.1, 0.3)),
]

for title, params, start in RUNS:
    pred = predicted_limit(start, params)
    report = detect_limit(start, params, predicted=pred)
    print(f"--- {title}")
    print(f"    predicted: {pred.regime}"
          + (" [conjectural]" if pred.conjectural else ""))
    target = ", ".join("free" if np.isnan(t) else f"{t:.6f}" for t in pred.target)
    print(f"    target:    ({target})")
    print(f"    limit:     ({', '.join(f'{c:.6f}' for c in report.limit)})"
          f"  = {report.snapped}")
    print(f"    iterations: {report.iterations}, agreement: {report.match}, "
          f"deviation: {report.deviation:.2e}")
    print()

# The dispatcher is honest about coverage: some corners have no rule.
quiet = ModelParams(0.2, 0.0, 0.6, 0.0, 1.0, 0.5)
print("uncovered corner (beta2=0, alpha=0, k2>0, b>0):",
      predicted_limit(SimplexPoint(0.2, 0.3, 0.1, 0.4), quiet))

"""Discrete-time SISI epidemic model as a quadratic stochastic operator.

A numerical toolkit for the four-compartment (S, I, S1, I1) epidemic
operator on the 3-simplex: parameter admissibility, the heredity-tensor
form, the fixed-point catalog, Jacobian stability classification,
trajectory limits with regime-by-regime predictions, the logistic-map
conjugacy of the no-recovery dynamics, and deterministic conjecture scans.
"""

from sisi.model import (
    AdmissibilityReport,
    InadmissibleParams,
    ModelParams,
    NegativeParameter,
    SimplexPoint,
    Trajectory,
    apply_V,
    force_of_infection,
    iterate,
    validate_params,
)
from sisi.tensor import QsoTensor, apply_qso, build_tensor, check_axioms
from sisi.fixpoints import (
    FixedPoint,
    InteriorQuadratic,
    fixed_point_set,
    interior_fixed_point,
    interior_quadratic,
)
from sisi.stability import (
    StabilityClass,
    classify,
    classify_at,
    classify_lambda1,
    eigenvalues,
    jacobian,
)
from sisi.dynamics import (
    LimitReport,
    PredictedLimit,
    conjecture_scan,
    detect_limit,
    equilibrium_curves,
    predicted_limit,
    verify_proposition,
)
from sisi.conjugacy import (
    ConjugacyMap,
    QuadraticMap1D,
    classify_1d_fixed_points,
    conjugacy_map,
    edge_map,
    normalized_edge_map,
    verify_conjugacy,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "ConjugacyMap",
    "FixedPoint",
    "InadmissibleParams",
    "InteriorQuadratic",
    "LimitReport",
    "ModelParams",
    "NegativeParameter",
    "PredictedLimit",
    "QsoTensor",
    "QuadraticMap1D",
    "SimplexPoint",
    "StabilityClass",
    "Trajectory",
    "apply_V",
    "apply_qso",
    "build_tensor",
    "check_axioms",
    "classify",
    "classify_1d_fixed_points",
    "classify_at",
    "classify_lambda1",
    "conjecture_scan",
    "conjugacy_map",
    "detect_limit",
    "edge_map",
    "eigenvalues",
    "equilibrium_curves",
    "fixed_point_set",
    "force_of_infection",
    "interior_fixed_point",
    "interior_quadratic",
    "iterate",
    "jacobian",
    "normalized_edge_map",
    "predicted_limit",
    "validate_params",
    "verify_conjugacy",
    "verify_proposition",
]

"""Discrete-time SISI epidemic dynamics on the 3-simplex.

The state (x, u, y, v) holds the population fractions of susceptibles,
first-time infected, recovered, and second-time infected individuals.
One time step applies the evolution operator

    x' = x + b - b*x - beta1*A*x
    u' = u - b*u + beta1*A*x - alpha*u
    y' = y - b*y + alpha*u - beta2*A*y
    v' = v - b*v + beta2*A*y

where A = k1*u + k2*v is the force of infection.  Births replace deaths
one-for-one (both at rate ``b``), so the total population is constant: on
the simplex the four components always sum to 1 again.  The operator maps
the simplex into itself exactly when the six rates satisfy nine
inequalities; see :func:`validate_params`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "COORD_CLAMP",
    "IDENTITY_TOL",
    "RESIDUAL_TOL",
    "LIMIT_TOL",
    "NegativeParameter",
    "InadmissibleParams",
    "ModelParams",
    "Violation",
    "AdmissibilityReport",
    "SimplexPoint",
    "Trajectory",
    "validate_params",
    "require_admissible",
    "force_of_infection",
    "apply_V",
    "evolve_array",
    "iterate",
]

# Negative round-off tolerated (and clamped) on point construction.
COORD_CLAMP = 1e-12
# Guard on the coordinate sum at construction; iteration drift stays far below.
SUM_GUARD = 1e-9

# Shared tolerance tiers: algebraic identities, fixed-point residuals,
# trajectory limits.
IDENTITY_TOL = 1e-12
RESIDUAL_TOL = 1e-10
LIMIT_TOL = 1e-6

_FIELDS = ("b", "alpha", "beta1", "beta2", "k1", "k2")


class NegativeParameter(ValueError):
    """A model rate was negative; all six rates must be >= 0."""


class InadmissibleParams(ValueError):
    """The rates violate the simplex-preservation inequalities."""


@dataclass(frozen=True)
class ModelParams:
    """The six non-negative rates of the SISI model.

    b      birth rate (equal to the death rate; population size is constant)
    alpha  recovery rate of the first infected class
    beta1  susceptibility of never-infected individuals
    beta2  susceptibility of recovered individuals
    k1     infectivity of the first infected class
    k2     infectivity of the second infected class
    """

    b: float
    alpha: float
    beta1: float
    beta2: float
    k1: float
    k2: float

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.b, self.alpha, self.beta1, self.beta2, self.k1, self.k2)

    @property
    def admissible(self) -> bool:
        """True iff the evolution operator maps the simplex into itself."""
        try:
            return validate_params(self).ok
        except NegativeParameter:
            return False


@dataclass(frozen=True)
class Violation:
    condition: str
    value: float
    bound: float

    def __str__(self) -> str:
        return f"{self.condition} violated: {self.value:.17g} > {self.bound:g}"


@dataclass(frozen=True)
class AdmissibilityReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "admissible"
        return "; ".join(str(v) for v in self.violations)


# The nine inequalities equivalent to every heredity coefficient lying in
# [0, 1] (see the tensor module).
_CONDITIONS = (
    ("alpha + b <= 1", lambda b, al, b1, b2, k1, k2: al + b, 1.0),
    ("beta1*k2 <= 2", lambda b, al, b1, b2, k1, k2: b1 * k2, 2.0),
    ("beta2*k1 <= 2", lambda b, al, b1, b2, k1, k2: b2 * k1, 2.0),
    ("b + beta2*k2 <= 1", lambda b, al, b1, b2, k1, k2: b + b2 * k2, 1.0),
    ("|b - beta1*k1| <= 1", lambda b, al, b1, b2, k1, k2: abs(b - b1 * k1), 1.0),
    ("|b - beta2*k2| <= 1", lambda b, al, b1, b2, k1, k2: abs(b - b2 * k2), 1.0),
    ("|b - beta1*k2| <= 1", lambda b, al, b1, b2, k1, k2: abs(b - b1 * k2), 1.0),
    ("|alpha + b - beta1*k1| <= 1",
     lambda b, al, b1, b2, k1, k2: abs(al + b - b1 * k1), 1.0),
    ("|alpha - b - beta2*k1| <= 1",
     lambda b, al, b1, b2, k1, k2: abs(al - b - b2 * k1), 1.0),
)


def validate_params(p: ModelParams) -> AdmissibilityReport:
    """Check the nine simplex-preservation inequalities.

    Raises :class:`NegativeParameter` for negative rates (a distinct error:
    negative rates are malformed input, not merely inadmissible).
    """
    negative = [f for f in _FIELDS if getattr(p, f) < 0]
    if negative:
        raise NegativeParameter(
            "negative rate(s): "
            + ", ".join(f"{f}={getattr(p, f)!r}" for f in negative)
        )
    args = p.as_tuple()
    violations = tuple(
        Violation(name, value, bound)
        for name, fn, bound in _CONDITIONS
        if (value := fn(*args)) > bound
    )
    return AdmissibilityReport(violations)


def require_admissible(p: ModelParams) -> None:
    """Raise :class:`InadmissibleParams` unless ``p`` passes validation."""
    report = validate_params(p)
    if not report.ok:
        raise InadmissibleParams(str(report))


@dataclass(frozen=True)
class SimplexPoint:
    """A state (x, u, y, v) on the standard 3-simplex.

    Coordinates down to -1e-12 are clamped to zero (round-off tolerance);
    anything more negative is rejected.  The coordinate sum must be 1 up to
    a loose guard: iteration is never renormalized, so a small measured
    drift is legal and observable via :attr:`drift`.
    """

    x: float
    u: float
    y: float
    v: float

    def __post_init__(self) -> None:
        for name in ("x", "u", "y", "v"):
            c = float(getattr(self, name))
            if c < -COORD_CLAMP:
                raise ValueError(
                    f"coordinate {name}={c!r} is negative beyond round-off"
                )
            object.__setattr__(self, name, 0.0 if c < 0.0 else c)
        total = self.x + self.u + self.y + self.v
        if abs(total - 1.0) > SUM_GUARD:
            raise ValueError(f"coordinates sum to {total!r}, not 1")

    @classmethod
    def from_array(cls, a) -> "SimplexPoint":
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.u, self.y, self.v])

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x, self.u, self.y, self.v)

    @property
    def drift(self) -> float:
        """Signed deviation of the coordinate sum from 1."""
        return (self.x + self.u + self.y + self.v) - 1.0


def force_of_infection(s: SimplexPoint, p: ModelParams) -> float:
    """Infection pressure A = k1*u + k2*v felt by one susceptible."""
    return p.k1 * s.u + p.k2 * s.v


def _step(x, u, y, v, b, al, b1, b2, k1, k2):
    """One application of the evolution operator on raw floats."""
    A = k1 * u + k2 * v
    return (
        x + b - b * x - b1 * A * x,
        u - b * u + b1 * A * x - al * u,
        y - b * y + al * u - b2 * A * y,
        v - b * v + b2 * A * y,
    )


def apply_V(s: SimplexPoint, p: ModelParams) -> SimplexPoint:
    """One step of the evolution operator.

    Requires admissible rates; otherwise the image may leave the simplex.
    """
    require_admissible(p)
    return SimplexPoint(*_step(*s.as_tuple(), *p.as_tuple()))


def evolve_array(states: np.ndarray, p: ModelParams, validate: bool = True) -> np.ndarray:
    """Vectorized one-step map on an (..., 4) array of states."""
    if validate:
        require_admissible(p)
    b, al, b1, b2, k1, k2 = p.as_tuple()
    x, u, y, v = (states[..., i] for i in range(4))
    A = k1 * u + k2 * v
    out = np.empty_like(states)
    out[..., 0] = x + b - b * x - b1 * A * x
    out[..., 1] = u - b * u + b1 * A * x - al * u
    out[..., 2] = y - b * y + al * u - b2 * A * y
    out[..., 3] = v - b * v + b2 * A * y
    return out


@dataclass(frozen=True)
class Trajectory:
    """An iterate sequence: row n of :attr:`states` is the n-th iterate."""

    states: np.ndarray  # shape (n+1, 4)
    params: ModelParams

    def __len__(self) -> int:
        return self.states.shape[0]

    def __getitem__(self, n: int) -> SimplexPoint:
        return SimplexPoint.from_array(self.states[n])

    @property
    def final(self) -> SimplexPoint:
        return SimplexPoint.from_array(self.states[-1])

    def max_drift(self) -> float:
        """Largest |coordinate sum - 1| along the trajectory."""
        return float(np.max(np.abs(self.states.sum(axis=1) - 1.0)))


def iterate(s0: SimplexPoint, p: ModelParams, n: int) -> Trajectory:
    """Iterate the operator ``n`` times from ``s0`` (no renormalization).

    Returns the full sequence of n+1 states starting at ``s0``.
    """
    if n < 0:
        raise ValueError("step count must be >= 0")
    require_admissible(p)
    rates = p.as_tuple()
    out = np.empty((n + 1, 4))
    state = s0.as_tuple()
    out[0] = state
    for i in range(1, n + 1):
        state = _step(*state, *rates)
        out[i] = state
    return Trajectory(out, p)

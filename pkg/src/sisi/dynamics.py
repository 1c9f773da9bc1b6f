"""Trajectory limits: detection, regime-by-regime predictions, and scans.

Every trajectory of the SISI operator converges to one of the cataloged
fixed points (proven in several parameter regimes, conjectured in two).
This module provides

* :func:`detect_limit` -- honest numerical limit detection with a dual
  stopping rule (step size, proximity to the fixed-point catalog);
* :func:`predicted_limit` -- the dispatcher encoding the proven limit
  rules and the two conjectured dichotomies, with conjectural predictions
  flagged as such;
* :func:`verify_proposition` -- randomized agreement suites per regime;
* :func:`conjecture_scan` -- deterministic grid scans that either confirm
  the conjectured targets cell by cell or emit reproducible
  counterexample records (a counterexample is reported, never suppressed);
* :func:`equilibrium_curves` -- the linear-vs-saturating curve pair whose
  intersections are the interior equilibrium forces of infection.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.optimize import brentq

from sisi.model import (
    LIMIT_TOL,
    ModelParams,
    SimplexPoint,
    _step,
    require_admissible,
    validate_params,
)
from sisi.fixpoints import (
    DegenerateRegime,
    FixedPoint,
    NoInteriorPoint,
    fixed_point_set,
    interior_fixed_point,
    interior_quadratic,
    lambda9_point,
    lambda10_point,
    residual,
)

__all__ = [
    "RegimeUnsatisfiable",
    "PredictedLimit",
    "LimitReport",
    "SuiteReport",
    "GridSpec",
    "ScanRecord",
    "ScanReport",
    "EquilibriumCurves",
    "detect_limit",
    "predicted_limit",
    "verify_proposition",
    "list_regimes",
    "conjecture_scan",
    "default_grid",
    "equilibrium_curves",
]

_LAMBDA1 = np.array([1.0, 0.0, 0.0, 0.0])

SRC_NO_SUSCEPTIBILITY = "limit rule for beta1 = beta2 = 0 (no susceptibility)"
SRC_RECOVERED_ONLY = ("limit rule for beta1 = 0, beta2 > 0 "
                      "(susceptibility only after recovery)")
SRC_NO_TURNOVER = "limit rule for b = alpha = 0 (no turnover)"
SRC_NO_RECOVERY = ("limit rule for alpha = k2 = 0 "
                   "(no recovery; dynamics close on the infected edge)")
SRC_NO_REINFECTION = ("limit rule for beta2 = 0, beta1 > 0 "
                      "(recovered never reinfected), proven cases")
SRC_BOUNDARY_CONJ = "boundary-limit conjecture (beta2 = 0, b*alpha > 0)"
SRC_INTERIOR_CONJ = "interior-limit conjecture (all six rates positive)"
SRC_FIXED_START = "initial point is fixed"


class RegimeUnsatisfiable(ValueError):
    """No admissible parameters satisfy the requested regime constraints."""


@dataclass(frozen=True, eq=False)
class PredictedLimit:
    """A limit target for one regime.

    ``target`` pins coordinates by value; NaN marks a coordinate the rule
    leaves free (it depends on the initial point).  ``conjectural`` marks
    targets backed by a conjecture rather than a proof.
    """

    regime: str
    source: str
    target: np.ndarray
    conjectural: bool = False
    note: str = ""

    @property
    def exact(self) -> bool:
        return not np.any(np.isnan(self.target))

    def pinned_deviation(self, limit: np.ndarray) -> float:
        """Largest deviation over the pinned (non-NaN) coordinates."""
        mask = ~np.isnan(self.target)
        return float(np.max(np.abs(limit[mask] - self.target[mask])))

    def check(self, limit: np.ndarray, tol: float) -> tuple[bool, float]:
        dev = self.pinned_deviation(limit)
        return dev <= tol, dev


@dataclass(frozen=True, eq=False)
class LimitReport:
    """Outcome of iterating to a (possible) limit."""

    converged: bool
    limit: np.ndarray | None
    iterations: int
    final_step: float
    snapped: str | None = None            # catalog label, when within tol_fix
    predicted: PredictedLimit | None = None
    match: bool | None = None
    deviation: float | None = None

    @property
    def point(self) -> SimplexPoint | None:
        return None if self.limit is None else SimplexPoint.from_array(self.limit)


def detect_limit(
    s0: SimplexPoint,
    p: ModelParams,
    max_iter: int = 1_000_000,
    tol_step: float = 1e-12,
    tol_fix: float = 1e-10,
    predicted: PredictedLimit | None = None,
    match_tol: float = LIMIT_TOL,
    catalog: list[FixedPoint] | None = None,
) -> LimitReport:
    """Iterate until the step size drops below ``tol_step``, the state comes
    within ``tol_fix`` of a cataloged fixed point, or ``max_iter`` steps.

    The dual stopping rule matters near nonhyperbolic boundaries, where
    step sizes shrink sub-geometrically.  Convergence is reported honestly:
    hitting ``max_iter`` yields ``converged=False`` with the data so far.
    """
    require_admissible(p)
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if catalog is None:
        catalog = fixed_point_set(p)
    anchors = [(fp.label, fp.point) for fp in catalog if fp.point is not None]
    rates = p.as_tuple()

    cur = s0.as_tuple()
    applications = 0
    converged = False
    step = math.inf
    while True:
        nxt = _step(*cur, *rates)
        step = max(abs(nxt[0] - cur[0]), abs(nxt[1] - cur[1]),
                   abs(nxt[2] - cur[2]), abs(nxt[3] - cur[3]))
        if step <= tol_step:
            converged = True  # cur is (numerically) fixed; do not advance
            break
        applications += 1
        cur = nxt
        if any(max(abs(cur[0] - a[0]), abs(cur[1] - a[1]),
                   abs(cur[2] - a[2]), abs(cur[3] - a[3])) <= tol_fix
               for _, a in anchors):
            converged = True
            break
        if applications >= max_iter:
            break

    limit = np.array(cur) if converged else None
    snapped = None
    if converged and anchors:
        dists = [(max(abs(cur[i] - a[i]) for i in range(4)), label, a)
                 for label, a in anchors]
        dist, label, a = min(dists, key=lambda t: t[0])
        if dist <= tol_fix:
            snapped = label
            limit = a.copy()

    match = None
    deviation = None
    if predicted is not None and converged:
        match, deviation = predicted.check(limit, match_tol)
    return LimitReport(
        converged=converged,
        limit=limit,
        iterations=applications,
        final_step=step,
        snapped=snapped,
        predicted=predicted,
        match=match,
        deviation=deviation,
    )


def predicted_limit(s0: SimplexPoint, p: ModelParams) -> PredictedLimit | None:
    """The limit target the regime rules assign to (s0, p), if any.

    Returns None for parameter/initial-point combinations no rule covers;
    nothing is guessed.  Conjecture-backed targets carry
    ``conjectural=True``.
    """
    require_admissible(p)
    b, al, b1, b2, k1, k2 = p.as_tuple()
    x0, u0, y0, v0 = s0.as_tuple()
    A0 = k1 * u0 + k2 * v0
    arr = s0.as_array()

    if residual(arr, p) <= 1e-13:
        return PredictedLimit("fixed-initial", SRC_FIXED_START, arr.copy())

    # no susceptibility at all
    if b1 == 0.0 and b2 == 0.0:
        if b == 0.0 and al > 0.0:
            return PredictedLimit(
                "no-susceptibility/b=0,alpha>0", SRC_NO_SUSCEPTIBILITY,
                np.array([x0, 0.0, 1.0 - x0 - v0, v0]))
        if b > 0.0:
            return PredictedLimit(
                "no-susceptibility/b>0", SRC_NO_SUSCEPTIBILITY, _LAMBDA1.copy())
        return None  # b = alpha = 0 is the identity; caught as fixed-initial

    # no turnover: b = alpha = 0 (any point with A0 = 0 is fixed, so A0 > 0 here
    # unless the rates make the whole simplex fixed)
    if b == 0.0 and al == 0.0:
        if A0 <= 0.0:
            return None
        if b1 == 0.0 and b2 > 0.0:
            return PredictedLimit(
                "no-turnover/beta1=0,beta2>0", SRC_NO_TURNOVER,
                np.array([x0, u0, 0.0, 1.0 - x0 - u0]))
        if b1 > 0.0 and b2 == 0.0:
            return PredictedLimit(
                "no-turnover/beta1>0,beta2=0", SRC_NO_TURNOVER,
                np.array([0.0, 1.0 - y0 - v0, y0, v0]))
        if b1 > 0.0 and b2 > 0.0 and k1 * k2 > 0.0:
            return PredictedLimit(
                "no-turnover/beta1>0,beta2>0", SRC_NO_TURNOVER,
                np.array([0.0, np.nan, 0.0, np.nan]),
                note=("the u-limit is >= u0 and depends on the initial "
                      "point; v-limit = 1 - u-limit"))
        return None

    # susceptibility only after recovery
    if b1 == 0.0 and b2 > 0.0:
        if b > 0.0:
            regime = ("recovered-susceptibility/b>0,alpha=0" if al == 0.0
                      else "recovered-susceptibility/b>0,alpha>0")
            return PredictedLimit(regime, SRC_RECOVERED_ONLY, _LAMBDA1.copy())
        if al > 0.0 and k2 == 0.0:
            return PredictedLimit(
                "recovered-susceptibility/b=0,alpha>0,k2=0", SRC_RECOVERED_ONLY,
                np.array([x0, 0.0, np.nan, np.nan]),
                note="the y-limit depends on the initial point; v = 1 - x0 - y")
        if al > 0.0 and k2 > 0.0 and A0 > 0.0:
            return PredictedLimit(
                "recovered-susceptibility/b=0,alpha>0,k2>0", SRC_RECOVERED_ONLY,
                np.array([x0, 0.0, 0.0, 1.0 - x0]))
        return None

    # no recovery and non-infectious second class: dynamics close on (x, u)
    if al == 0.0 and k2 == 0.0 and b > 0.0:
        if u0 == 0.0 or b1 * k1 <= b:
            return PredictedLimit(
                "no-recovery/disease-free", SRC_NO_RECOVERY, _LAMBDA1.copy())
        return PredictedLimit(
            "no-recovery/persistent", SRC_NO_RECOVERY, lambda9_point(p))

    # recovered never reinfected
    if b2 == 0.0 and b1 > 0.0:
        if b == 0.0 and al > 0.0:
            if A0 == 0.0:
                return PredictedLimit(
                    "no-reinfection/b=0,A0=0", SRC_NO_REINFECTION,
                    np.array([x0, 0.0, 1.0 - x0 - v0, v0]))
            if k2 * v0 > 0.0:
                return PredictedLimit(
                    "no-reinfection/b=0,k2v0>0", SRC_NO_REINFECTION,
                    np.array([0.0, 0.0, 1.0 - v0, v0]))
            if k1 * u0 > 0.0:
                return PredictedLimit(
                    "no-reinfection/b=0,k2v0=0,k1u0>0", SRC_NO_REINFECTION,
                    np.array([np.nan, 0.0, np.nan, v0]),
                    note=("the x-limit depends on the initial point; "
                          "y = 1 - x - v0"))
            return None
        if b > 0.0 and al > 0.0:
            if A0 == 0.0:
                return PredictedLimit(
                    "no-reinfection/b*alpha>0,A0=0", SRC_NO_REINFECTION,
                    _LAMBDA1.copy())
            if k2 * v0 == 0.0 and b1 * k1 <= b + al:
                return PredictedLimit(
                    "no-reinfection/b*alpha>0,k2v0=0,beta1k1<=b+alpha",
                    SRC_NO_REINFECTION, _LAMBDA1.copy())
            if b1 * k1 <= b + al and k2 * v0 > 0.0:
                return PredictedLimit(
                    "boundary-conjecture/beta1k1<=b+alpha", SRC_BOUNDARY_CONJ,
                    _LAMBDA1.copy(), conjectural=True)
            if b1 * k1 > b + al and u0 + v0 > 0.0:
                return PredictedLimit(
                    "boundary-conjecture/beta1k1>b+alpha", SRC_BOUNDARY_CONJ,
                    lambda10_point(p), conjectural=True)
        return None

    # every rate positive
    if al * b * b1 * b2 * k1 * k2 > 0.0:
        if u0 == 0.0 and v0 == 0.0:
            return PredictedLimit(
                "interior-conjecture/u0=v0=0", SRC_INTERIOR_CONJ,
                _LAMBDA1.copy())
        if b1 * k1 > b + al:
            try:
                target = interior_fixed_point(p).point
            except NoInteriorPoint:
                return None
            return PredictedLimit(
                "interior-conjecture/beta1k1>b+alpha", SRC_INTERIOR_CONJ,
                target, conjectural=True)
        if b * (b + al) >= al * b2 * k2:
            return PredictedLimit(
                "interior-conjecture/beta1k1<=b+alpha", SRC_INTERIOR_CONJ,
                _LAMBDA1.copy(), conjectural=True)
        return None

    return None


# --------------------------------------------------------------------------
# randomized per-regime verification suites


def _floored_point(rng: np.random.Generator, zeros: tuple[int, ...] = ()) -> SimplexPoint:
    """Random simplex point with every free coordinate >= 0.1."""
    free = [i for i in range(4) if i not in zeros]
    raw = rng.dirichlet(np.ones(len(free)))
    pt = np.zeros(4)
    floor = 0.1
    pt[free] = floor + raw * (1.0 - floor * len(free))
    return SimplexPoint.from_array(pt)


@dataclass(frozen=True)
class RegimeCase:
    name: str
    description: str
    sample: "callable"
    expected_regimes: tuple[str, ...]
    extra_check: "callable | None" = None


def _admissible_or_none(fields: tuple[float, ...]) -> ModelParams | None:
    p = ModelParams(*fields)
    try:
        ok = validate_params(p).ok
    except Exception:
        return None
    return p if ok else None


def _rejection_sample(rng, draw, attempts: int = 1000) -> tuple[ModelParams, SimplexPoint]:
    for _ in range(attempts):
        got = draw(rng)
        if got is not None:
            return got
    raise RegimeUnsatisfiable("no admissible draw after "
                              f"{attempts} attempts")


def _cases_no_susceptibility() -> list[RegimeCase]:
    def identity_draw(rng):
        p = _admissible_or_none((0.0, 0.0, 0.0, 0.0,
                                 rng.uniform(0, 1.5), rng.uniform(0, 1.5)))
        return None if p is None else (p, _floored_point(rng))

    def decay_draw(rng):
        p = _admissible_or_none((0.0, rng.uniform(0.05, 0.95), 0.0, 0.0,
                                 rng.uniform(0, 1.5), rng.uniform(0, 1.5)))
        return None if p is None else (p, _floored_point(rng))

    def birth_draw(rng):
        b = rng.uniform(0.05, 0.9)
        p = _admissible_or_none((b, rng.uniform(0.0, max(0.0, 0.95 - b)), 0.0, 0.0,
                                 rng.uniform(0, 1.5), rng.uniform(0, 1.5)))
        return None if p is None else (p, _floored_point(rng))

    return [
        RegimeCase("no-susceptibility/alpha=b=0",
                   "identity dynamics; every point is fixed",
                   identity_draw, ("fixed-initial",)),
        RegimeCase("no-susceptibility/b=0,alpha>0",
                   "infected recover, x and v frozen",
                   decay_draw, ("no-susceptibility/b=0,alpha>0",)),
        RegimeCase("no-susceptibility/b>0",
                   "turnover empties every infected class",
                   birth_draw, ("no-susceptibility/b>0",)),
    ]


def _cases_recovered_susceptibility() -> list[RegimeCase]:
    def base(rng, b, al, k1, k2):
        return _admissible_or_none((b, al, 0.0, rng.uniform(0.2, 1.0), k1, k2))

    def no_turnover(rng):
        p = base(rng, 0.0, 0.0, rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2))
        return None if p is None else (p, _floored_point(rng))

    def birth_no_recovery(rng):
        p = base(rng, rng.uniform(0.05, 0.7), 0.0,
                 rng.uniform(0.3, 1.0), rng.uniform(0.3, 1.0))
        return None if p is None else (p, _floored_point(rng))

    def decay_k2_zero(rng):
        p = base(rng, 0.0, rng.uniform(0.05, 0.95), rng.uniform(0.3, 1.2), 0.0)
        return None if p is None else (p, _floored_point(rng))

    def decay_k2_pos(rng):
        p = base(rng, 0.0, rng.uniform(0.05, 0.95),
                 rng.uniform(0.0, 1.2), rng.uniform(0.3, 1.2))
        return None if p is None else (p, _floored_point(rng))

    def both_positive(rng):
        b = rng.uniform(0.05, 0.6)
        p = base(rng, b, rng.uniform(0.05, max(0.06, 0.9 - b)),
                 rng.uniform(0.3, 1.0), rng.uniform(0.3, 1.0))
        return None if p is None else (p, _floored_point(rng))

    return [
        RegimeCase("recovered-susceptibility/alpha=b=0",
                   "x and u frozen; y drains into v",
                   no_turnover, ("no-turnover/beta1=0,beta2>0",)),
        RegimeCase("recovered-susceptibility/b>0,alpha=0",
                   "turnover wins; disease-free limit",
                   birth_no_recovery, ("recovered-susceptibility/b>0,alpha=0",)),
        RegimeCase("recovered-susceptibility/b=0,alpha>0,k2=0",
                   "u dies out; y-limit depends on the start",
                   decay_k2_zero, ("recovered-susceptibility/b=0,alpha>0,k2=0",)),
        RegimeCase("recovered-susceptibility/b=0,alpha>0,k2>0",
                   "y drains completely into v",
                   decay_k2_pos, ("recovered-susceptibility/b=0,alpha>0,k2>0",)),
        RegimeCase("recovered-susceptibility/b>0,alpha>0",
                   "turnover wins; disease-free limit",
                   both_positive, ("recovered-susceptibility/b>0,alpha>0",)),
    ]


def _cases_no_turnover() -> list[RegimeCase]:
    def frozen(rng):
        p = _admissible_or_none((0.0, 0.0, rng.uniform(0, 1.5),
                                 rng.uniform(0, 1.5), 0.0, 0.0))
        return None if p is None else (p, _floored_point(rng))

    def beta1_zero(rng):
        p = _admissible_or_none((0.0, 0.0, 0.0, rng.uniform(0.2, 1.2),
                                 rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2)))
        return None if p is None else (p, _floored_point(rng))

    def beta2_zero(rng):
        p = _admissible_or_none((0.0, 0.0, rng.uniform(0.2, 1.2), 0.0,
                                 rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2)))
        return None if p is None else (p, _floored_point(rng))

    def both(rng):
        p = _admissible_or_none((0.0, 0.0, rng.uniform(0.2, 1.2),
                                 rng.uniform(0.2, 1.2),
                                 rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2)))
        return None if p is None else (p, _floored_point(rng))

    def u_growth(trial_rows):
        """The open reading question: does the u-limit stay at u0?"""
        lifts = [rec["limit"][1] - rec["s0"][1] for rec in trial_rows]
        return {
            "u_lift_min": float(min(lifts)),
            "u_lift_max": float(max(lifts)),
            "u_stays_at_u0_count": int(sum(1 for d in lifts if abs(d) <= LIMIT_TOL)),
        }

    return [
        RegimeCase("no-turnover/k1=k2=0",
                   "no infectivity; identity dynamics",
                   frozen, ("fixed-initial",)),
        RegimeCase("no-turnover/beta1=0,beta2>0",
                   "x, u frozen; y drains into v",
                   beta1_zero, ("no-turnover/beta1=0,beta2>0",)),
        RegimeCase("no-turnover/beta1>0,beta2=0",
                   "y, v frozen; x drains into u",
                   beta2_zero, ("no-turnover/beta1>0,beta2=0",)),
        RegimeCase("no-turnover/beta1>0,beta2>0",
                   "x and y drain; limit on the u-v edge",
                   both, ("no-turnover/beta1>0,beta2>0",),
                   extra_check=u_growth),
    ]


def _cases_no_recovery() -> list[RegimeCase]:
    def weak_infection(rng):
        b = rng.uniform(0.1, 0.9)
        b1 = rng.uniform(0.2, 1.0)
        k1 = rng.uniform(0.0, max(0.0, b - 0.02)) / b1
        p = _admissible_or_none((b, 0.0, b1, rng.uniform(0.0, 0.8), k1, 0.0))
        return None if p is None else (p, _floored_point(rng))

    def no_initial_infected(rng):
        p = _admissible_or_none((rng.uniform(0.05, 0.9), 0.0,
                                 rng.uniform(0.2, 1.0), rng.uniform(0.0, 0.8),
                                 rng.uniform(0.0, 1.5), 0.0))
        return None if p is None else (p, _floored_point(rng, zeros=(1,)))

    def persistent(rng):
        b = rng.uniform(0.05, 0.45)
        bk = b + rng.uniform(0.05, min(0.5, 1.0 - b))
        b1 = rng.uniform(0.4, 1.0)
        p = _admissible_or_none((b, 0.0, b1, rng.uniform(0.0, 0.5), bk / b1, 0.0))
        return None if p is None else (p, _floored_point(rng))

    return [
        RegimeCase("no-recovery/beta1k1<=b",
                   "infection too weak; disease-free limit",
                   weak_infection, ("no-recovery/disease-free",)),
        RegimeCase("no-recovery/u0=0",
                   "nobody to infect from; disease-free limit",
                   no_initial_infected, ("no-recovery/disease-free",)),
        RegimeCase("no-recovery/beta1k1>b",
                   "persistent infection on the (x, u) edge",
                   persistent, ("no-recovery/persistent",)),
    ]


def _cases_no_reinfection() -> list[RegimeCase]:
    def quiet_variant(rng, b, al):
        # realize A0 = 0 through one of the four zero patterns
        which = rng.integers(4)
        if which == 0:
            k1, k2, zeros = 0.0, 0.0, ()
        elif which == 1:
            k1, k2, zeros = 0.0, rng.uniform(0.3, 1.2), (3,)
        elif which == 2:
            k1, k2, zeros = rng.uniform(0.3, 1.2), 0.0, (1,)
        else:
            k1, k2, zeros = rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2), (1, 3)
        p = _admissible_or_none((b, al, rng.uniform(0.2, 1.2), 0.0, k1, k2))
        return None if p is None else (p, _floored_point(rng, zeros=zeros))

    def frozen_b0(rng):
        return quiet_variant(rng, 0.0, rng.uniform(0.05, 0.95))

    def second_wave(rng):
        p = _admissible_or_none((0.0, rng.uniform(0.05, 0.95),
                                 rng.uniform(0.2, 1.2), 0.0,
                                 rng.uniform(0.0, 1.2), rng.uniform(0.3, 1.2)))
        return None if p is None else (p, _floored_point(rng))

    def first_wave_only(rng):
        if rng.integers(2):
            k2, zeros = 0.0, ()
        else:
            k2, zeros = rng.uniform(0.3, 1.2), (3,)
        p = _admissible_or_none((0.0, rng.uniform(0.05, 0.95),
                                 rng.uniform(0.2, 1.2), 0.0,
                                 rng.uniform(0.3, 1.2), k2))
        return None if p is None else (p, _floored_point(rng, zeros=zeros))

    def frozen_turnover(rng):
        b = rng.uniform(0.05, 0.5)
        return quiet_variant(rng, b, rng.uniform(0.05, max(0.06, 0.9 - b)))

    def subcritical(rng):
        b = rng.uniform(0.05, 0.45)
        al = rng.uniform(0.05, max(0.06, 0.9 - b))
        b1 = rng.uniform(0.3, 1.0)
        k1 = rng.uniform(0.0, max(0.0, b + al - 0.02)) / b1
        if rng.integers(2):
            k2, zeros = 0.0, ()
        else:
            k2, zeros = rng.uniform(0.3, 1.2), (3,)
        p = _admissible_or_none((b, al, b1, 0.0, k1, k2))
        return None if p is None else (p, _floored_point(rng, zeros=zeros))

    return [
        RegimeCase("no-reinfection/b=0,A0=0",
                   "no infection pressure; u drains into y",
                   frozen_b0, ("no-reinfection/b=0,A0=0", "fixed-initial")),
        RegimeCase("no-reinfection/b=0,k2v0>0",
                   "x drains completely; v frozen",
                   second_wave, ("no-reinfection/b=0,k2v0>0",)),
        RegimeCase("no-reinfection/b=0,k2v0=0,k1u0>0",
                   "u dies out; x-limit depends on the start",
                   first_wave_only, ("no-reinfection/b=0,k2v0=0,k1u0>0",)),
        RegimeCase("no-reinfection/b*alpha>0,A0=0",
                   "no infection pressure; turnover wins",
                   frozen_turnover, ("no-reinfection/b*alpha>0,A0=0",)),
        RegimeCase("no-reinfection/b*alpha>0,k2v0=0,beta1k1<=b+alpha",
                   "subcritical first wave; disease-free limit",
                   subcritical,
                   ("no-reinfection/b*alpha>0,k2v0=0,beta1k1<=b+alpha",)),
    ]


def _registry() -> dict[str, RegimeCase]:
    cases = (_cases_no_susceptibility() + _cases_recovered_susceptibility()
             + _cases_no_turnover() + _cases_no_recovery()
             + _cases_no_reinfection())
    return {c.name: c for c in cases}


_REGIMES = _registry()


def list_regimes() -> tuple[str, ...]:
    """Names accepted by :func:`verify_proposition`."""
    return tuple(_REGIMES)


@dataclass(frozen=True, eq=False)
class TrialFailure:
    index: int
    reason: str
    params: tuple[float, ...]
    init: tuple[float, ...]
    deviation: float | None


@dataclass(frozen=True, eq=False)
class SuiteReport:
    regime: str
    description: str
    trials: int
    seed: int
    passes: int
    failures: tuple[TrialFailure, ...]
    worst_deviation: float
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return (f"{self.regime}: {self.passes}/{self.trials} agree, "
                f"worst deviation {self.worst_deviation:.3e} "
                f"[seed {self.seed}] {status}")


def verify_proposition(
    regime: str,
    trials: int = 100,
    seed: int = 0,
    tol: float = LIMIT_TOL,
    max_iter: int = 200_000,
    tol_step: float = 1e-10,
) -> SuiteReport:
    """Randomized agreement suite for one limit-rule regime.

    Samples regime-conforming (rates, initial point) pairs by rejection
    against the admissibility inequalities (strict inequalities are sampled
    with small margins so convergence stays geometric), runs
    :func:`detect_limit`, and compares every exactly-pinned coordinate of
    the predicted target at tolerance ``tol``.  The seed is recorded in the
    report for reproducibility.
    """
    try:
        case = _REGIMES[regime]
    except KeyError:
        raise RegimeUnsatisfiable(
            f"unknown regime {regime!r}; see list_regimes()") from None
    rng = np.random.default_rng(seed)
    passes = 0
    failures: list[TrialFailure] = []
    worst = 0.0
    rows: list[dict] = []
    for i in range(trials):
        p, s0 = _rejection_sample(rng, case.sample)
        pred = predicted_limit(s0, p)
        if pred is None or pred.regime not in case.expected_regimes:
            failures.append(TrialFailure(
                i, f"dispatcher returned {None if pred is None else pred.regime!r}",
                p.as_tuple(), s0.as_tuple(), None))
            continue
        report = detect_limit(s0, p, max_iter=max_iter, tol_step=tol_step,
                              predicted=pred, match_tol=tol)
        if not report.converged:
            failures.append(TrialFailure(
                i, f"no convergence in {max_iter} steps",
                p.as_tuple(), s0.as_tuple(), None))
            continue
        worst = max(worst, report.deviation)
        if report.match:
            passes += 1
            rows.append({"limit": report.limit, "s0": s0.as_array(),
                         "iterations": report.iterations})
        else:
            failures.append(TrialFailure(
                i, "limit disagrees with prediction",
                p.as_tuple(), s0.as_tuple(), report.deviation))
    extra = case.extra_check(rows) if (case.extra_check and rows) else {}
    return SuiteReport(
        regime=regime,
        description=case.description,
        trials=trials,
        seed=seed,
        passes=passes,
        failures=tuple(failures),
        worst_deviation=worst,
        extra=extra,
    )


# --------------------------------------------------------------------------
# conjecture scans


@dataclass(frozen=True)
class GridSpec:
    """Axis values per rate, in the order (b, alpha, beta1, beta2, k1, k2)."""

    b: tuple[float, ...]
    alpha: tuple[float, ...]
    beta1: tuple[float, ...]
    beta2: tuple[float, ...]
    k1: tuple[float, ...]
    k2: tuple[float, ...]

    def cells(self) -> np.ndarray:
        return np.array(list(product(self.b, self.alpha, self.beta1,
                                     self.beta2, self.k1, self.k2)))

    @property
    def n_cells(self) -> int:
        return (len(self.b) * len(self.alpha) * len(self.beta1)
                * len(self.beta2) * len(self.k1) * len(self.k2))


def default_grid(conjecture: int) -> GridSpec:
    """5-values-per-axis grids covering the reference simulation settings."""
    if conjecture == 1:
        return GridSpec(
            b=(0.1, 0.2, 0.35, 0.5, 0.6),
            alpha=(0.05, 0.1, 0.2, 0.3, 0.4),
            beta1=(0.25, 0.5, 0.75, 1.0, 1.25),
            beta2=(0.0, 0.05, 0.1, 0.2, 0.4),
            k1=(0.25, 0.5, 1.0, 1.5, 2.0),
            k2=(0.15, 0.3, 0.6, 0.9, 1.2),
        )
    if conjecture == 2:
        return GridSpec(
            b=(0.1, 0.2, 0.35, 0.5, 0.6),
            alpha=(0.01, 0.05, 0.1, 0.2, 0.3),
            beta1=(0.2, 0.4, 0.5, 0.6, 0.8),
            beta2=(0.01, 0.05, 0.1, 0.2, 0.4),
            k1=(0.3, 0.5, 0.8, 1.0, 1.2),
            k2=(0.3, 0.6, 0.8, 1.1, 1.2),
        )
    raise ValueError("conjecture must be 1 (boundary) or 2 (interior)")


@dataclass(frozen=True, eq=False)
class ScanRecord:
    cell: int
    init: int
    verdict: str       # match | counterexample | inconclusive | no-claim | inadmissible
    target: str | None  # catalog label of the claimed limit
    distance: float
    iterations: int
    final_step: float
    limit: tuple[float, ...] | None

    def to_json(self, cells: np.ndarray, inits: np.ndarray) -> str:
        payload = {
            "cell": self.cell,
            "init": self.init,
            "params": [float(c) for c in cells[self.cell]],
            "init_point": [float(c) for c in inits[self.init]] if self.init >= 0 else None,
            "verdict": self.verdict,
            "target": self.target,
            "distance": self.distance,
            "iterations": self.iterations,
            "final_step": self.final_step,
            "limit": list(self.limit) if self.limit is not None else None,
        }
        return json.dumps(payload, sort_keys=True)


@dataclass(frozen=True, eq=False)
class ScanReport:
    conjecture: int
    seed: int
    grid: GridSpec
    inits: np.ndarray
    cells: np.ndarray
    records: tuple[ScanRecord, ...]
    summary: dict[str, int]
    max_iter: int
    tol_step: float
    match_tol: float

    @property
    def counterexamples(self) -> tuple[ScanRecord, ...]:
        return tuple(r for r in self.records if r.verdict == "counterexample")

    def to_jsonl(self, fh) -> None:
        header = {
            "conjecture": self.conjecture,
            "seed": self.seed,
            "n_cells": int(self.cells.shape[0]),
            "n_init": int(self.inits.shape[0]),
            "max_iter": self.max_iter,
            "tol_step": self.tol_step,
            "match_tol": self.match_tol,
            "summary": self.summary,
        }
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for rec in self.records:
            fh.write(rec.to_json(self.cells, self.inits) + "\n")


def _batch_limits(params: np.ndarray, states: np.ndarray, max_iter: int,
                  tol_step: float, targets: np.ndarray, prox_tol: float):
    """Iterate many (rates, state) rows at once, freezing converged rows.

    Freezes a row when its last step is <= tol_step or it comes within
    prox_tol of its target (rows with a NaN target use the step rule only).
    Returns (final states, iterations, final steps).
    """
    n = states.shape[0]
    final = states.copy()
    iters = np.zeros(n, dtype=np.int64)
    fstep = np.full(n, np.inf)

    live = np.arange(n)
    cur = states.copy()
    b, al, b1, b2, k1, k2 = (params[:, i].copy() for i in range(6))
    tgt = targets.copy()
    done = 0
    CHUNK = 16
    while live.size and done < max_iter:
        span = min(CHUNK, max_iter - done)
        x, u, y, v = cur[:, 0], cur[:, 1], cur[:, 2], cur[:, 3]
        for _ in range(span - 1):
            A = k1 * u + k2 * v
            x, u, y, v = (x + b - b * x - b1 * A * x,
                          u - b * u + b1 * A * x - al * u,
                          y - b * y + al * u - b2 * A * y,
                          v - b * v + b2 * A * y)
        px, pu, py, pv = x, u, y, v
        A = k1 * u + k2 * v
        x, u, y, v = (x + b - b * x - b1 * A * x,
                      u - b * u + b1 * A * x - al * u,
                      y - b * y + al * u - b2 * A * y,
                      v - b * v + b2 * A * y)
        done += span
        cur = np.stack([x, u, y, v], axis=1)
        step = np.max(np.abs(cur - np.stack([px, pu, py, pv], axis=1)), axis=1)
        frozen = step <= tol_step
        with np.errstate(invalid="ignore"):
            dist = np.max(np.abs(cur - tgt), axis=1)
        frozen |= dist <= prox_tol
        if done >= max_iter:
            frozen[:] = True
        if np.any(frozen):
            rows = live[frozen]
            final[rows] = cur[frozen]
            iters[rows] = done
            fstep[rows] = step[frozen]
            keep = ~frozen
            live = live[keep]
            cur = cur[keep]
            b, al, b1, b2, k1, k2 = b[keep], al[keep], b1[keep], b2[keep], k1[keep], k2[keep]
            tgt = tgt[keep]
    return final, iters, fstep


def _positive_roots_vec(b, al, b1, b2, k1, k2):
    """Vectorized positive root of the interior equilibrium quadratic."""
    c2 = (b + al) * b1 * b2
    c1 = (b + al) * b * (b1 + b2) - b1 * b2 * (b * k1 + al * k2)
    c0 = b * b * (b + al - b1 * k1)
    disc = c1 * c1 - 4.0 * c2 * c0
    out = np.full(b.shape, np.nan)
    ok = (disc >= 0.0) & (c2 > 0.0)
    sq = np.sqrt(np.where(ok, disc, 0.0))
    q = -0.5 * (c1 + np.sign(np.where(c1 == 0.0, 1.0, c1)) * sq)
    r1 = np.divide(q, c2, out=np.full_like(q, np.nan), where=(c2 != 0.0))
    r2 = np.divide(c0, q, out=np.full_like(q, np.nan), where=(q != 0.0))
    big = np.fmax(r1, r2)
    small = np.fmin(r1, r2)
    pos = np.where(big > 0.0, big, np.where(small > 0.0, small, np.nan))
    out[ok] = pos[ok]
    return out


def conjecture_scan(
    conjecture: int,
    grid: GridSpec | None = None,
    n_init: int = 5,
    seed: int = 0,
    max_iter: int = 20_000,
    tol_step: float = 1e-11,
    match_tol: float = 1e-4,
) -> ScanReport:
    """Grid scan of one conjectured limit dichotomy.

    Every (cell, initial point) pair gets a verdict backed by its stored
    limit data: ``match`` when the trajectory reaches the claimed target,
    ``counterexample`` when it demonstrably converges elsewhere,
    ``inconclusive`` when the budget ran out (typical on the nonhyperbolic
    threshold beta1*k1 = b + alpha, where convergence is sub-geometric),
    ``no-claim`` when the conjecture does not speak, and ``inadmissible``
    for cells outside the admissible region.  Scans are deterministic for
    a fixed seed; counterexamples are reported, never suppressed.
    """
    if grid is None:
        grid = default_grid(conjecture)
    if conjecture not in (1, 2):
        raise ValueError("conjecture must be 1 (boundary) or 2 (interior)")
    cells = grid.cells()
    n_cells = cells.shape[0]
    rng = np.random.default_rng(seed)
    inits = np.stack([_floored_point(rng).as_array() for _ in range(n_init)])

    admissible = np.array([
        ModelParams(*row).admissible for row in cells
    ])

    b, al, b1, b2, k1, k2 = (cells[:, i] for i in range(6))
    bk = b1 * k1
    joint = b + al
    if conjecture == 1:
        premise = admissible & (b2 == 0.0) & (b * al > 0.0)
        claim_lam1 = premise & (bk <= joint)          # needs k2*v0 > 0: holds for interior inits
        claim_other = premise & (bk > joint)          # needs u0 + v0 > 0: holds
        other_label = "lambda_10"
        excess = bk - joint
        with np.errstate(divide="ignore", invalid="ignore"):
            other_target = np.stack([
                joint / bk,
                b * excess / (bk * joint),
                al * excess / (bk * joint),
                np.zeros_like(b),
            ], axis=1)
    else:
        premise = admissible & (al * b * b1 * b2 * k1 * k2 > 0.0)
        claim_lam1 = premise & (bk <= joint) & (b * joint >= al * b2 * k2)
        claim_other = premise & (bk > joint)
        other_label = "lambda_11"
        A = _positive_roots_vec(b, al, b1, b2, k1, k2)
        with np.errstate(divide="ignore", invalid="ignore"):
            x = b / (b + b1 * A)
            u = b1 * A * x / joint
            y = al * u / (b + b2 * A)
            v = b2 * A * y / np.where(b == 0.0, np.nan, b)
            other_target = np.stack([x, u, y, v], axis=1)

    lam1 = np.tile(_LAMBDA1, (n_cells, 1))
    targets = np.full((n_cells, 4), np.nan)
    target_label = np.full(n_cells, None, dtype=object)
    targets[claim_lam1] = lam1[claim_lam1]
    target_label[claim_lam1] = "lambda_1"
    targets[claim_other] = other_target[claim_other]
    target_label[claim_other] = other_label

    # evolve every admissible (cell, init) row
    cell_idx = np.repeat(np.arange(n_cells)[admissible], n_init)
    init_idx = np.tile(np.arange(n_init), int(admissible.sum()))
    row_params = cells[cell_idx]
    row_states = inits[init_idx]
    row_targets = targets[cell_idx]
    final, iters, fstep = _batch_limits(
        row_params, row_states, max_iter, tol_step, row_targets,
        prox_tol=min(1e-8, match_tol / 10.0))

    records: list[ScanRecord] = []
    summary: dict[str, int] = {
        "match": 0, "counterexample": 0, "inconclusive": 0,
        "no-claim": 0, "inadmissible": 0,
    }
    pos = 0
    for c in range(n_cells):
        if not admissible[c]:
            for k in range(n_init):
                records.append(ScanRecord(c, k, "inadmissible", None,
                                          math.nan, 0, math.nan, None))
                summary["inadmissible"] += 1
            continue
        for k in range(n_init):
            st = final[pos]
            it = int(iters[pos])
            stp = float(fstep[pos])
            pos += 1
            label = target_label[c]
            if label is None:
                records.append(ScanRecord(c, k, "no-claim", None, math.nan,
                                          it, stp, tuple(st)))
                summary["no-claim"] += 1
                continue
            dist = float(np.max(np.abs(st - targets[c])))
            converged = stp <= tol_step or dist <= match_tol
            if dist <= match_tol:
                verdict = "match"
            elif converged:
                verdict = "counterexample"
            else:
                verdict = "inconclusive"
            records.append(ScanRecord(c, k, verdict, label, dist, it, stp,
                                      tuple(st)))
            summary[verdict] += 1
    return ScanReport(
        conjecture=conjecture,
        seed=seed,
        grid=grid,
        inits=inits,
        cells=cells,
        records=tuple(records),
        summary=summary,
        max_iter=max_iter,
        tol_step=tol_step,
        match_tol=match_tol,
    )


# --------------------------------------------------------------------------
# equilibrium force-of-infection curves


@dataclass(frozen=True, eq=False)
class EquilibriumCurves:
    """The linear and saturating sides of the interior balance equation.

    In the force-of-infection variable, interior equilibria solve
    linear(A) = saturating(A) where

        linear(A)     = b + beta1*A
        saturating(A) = b*beta1*k1/(b+alpha)
                        + alpha*beta1*beta2*k2*A / ((b+beta2*A)*(b+alpha))

    The saturating side starts at b*beta1*k1/(b+alpha) with initial slope
    alpha*beta1*beta2*k2/(b*(b+alpha)) and flattens toward the horizontal
    asymptote beta1*(b*k1+alpha*k2)/(b+alpha); the intersection pattern on
    A > 0 reproduces the root analysis of the cleared quadratic.
    """

    xs: np.ndarray
    linear: np.ndarray
    saturating: np.ndarray
    value_at_zero: float        # saturating(0)
    asymptote: float
    slope_linear: float
    slope_saturating_at_zero: float
    sign_changes: int
    crossings: tuple[float, ...]
    quadratic: "object | None"  # InteriorQuadratic when defined


def equilibrium_curves(p: ModelParams, x_max: float | None = None,
                       n: int = 513) -> EquilibriumCurves:
    """Sample the two balance curves on [0, x_max] plus analytic markers."""
    b, al, b1, b2, k1, k2 = p.as_tuple()
    if b == 0.0:
        raise DegenerateRegime(
            "b = 0 leaves the saturating curve undefined at the origin")

    quad = None
    try:
        quad = interior_quadratic(p)
    except DegenerateRegime:
        pass

    if x_max is None:
        x_max = max(1.0, k1, k2)
        if quad is not None and quad.positive_root is not None:
            x_max = max(x_max, 1.5 * quad.positive_root)

    xs = np.linspace(0.0, x_max, n)
    linear = b + b1 * xs
    saturating = (b * b1 * k1 / (b + al)
                  + al * b1 * b2 * k2 * xs / ((b + b2 * xs) * (b + al)))
    diff = linear - saturating
    flips = np.nonzero(np.sign(diff[1:-1]) * np.sign(diff[2:]) < 0)[0] + 1
    crossings = []
    for i in flips:
        lo, hi = xs[i], xs[i + 1]
        f = lambda t: (b + b1 * t) - (b * b1 * k1 / (b + al)
                                      + al * b1 * b2 * k2 * t / ((b + b2 * t) * (b + al)))
        crossings.append(float(brentq(f, lo, hi, xtol=1e-14)))
    return EquilibriumCurves(
        xs=xs,
        linear=linear,
        saturating=saturating,
        value_at_zero=b * b1 * k1 / (b + al),
        asymptote=b1 * (b * k1 + al * k2) / (b + al),
        slope_linear=b1,
        slope_saturating_at_zero=al * b1 * b2 * k2 / (b * (b + al)),
        sign_changes=len(flips),
        crossings=tuple(crossings),
        quadratic=quad,
    )

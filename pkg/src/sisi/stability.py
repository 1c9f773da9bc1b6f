"""Jacobian and hyperbolicity classification for the SISI operator.

A fixed point is hyperbolic when the Jacobian there has no eigenvalue on
the unit circle: attracting if all moduli are < 1, repelling if all are
> 1, saddle otherwise.  The disease-free state (1, 0, 0, 0) admits a
closed-form rule (see :func:`classify_lambda1`); every other point goes
through the generic eigenvalue path, which the model's source analysis
does not cover -- reports label it accordingly.

The eigenvalue routine is self-contained: the characteristic quartic comes
from the Faddeev-LeVerrier recursion and its roots from a Durand-Kerner
iteration.  For an m-fold eigenvalue the root cluster carries the usual
~eps^(1/m) accuracy; simple eigenvalues resolve to ~1e-14.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sisi.model import ModelParams, SimplexPoint, force_of_infection

__all__ = [
    "NonConvergence",
    "StabilityClass",
    "UNIT_CIRCLE_TOL",
    "jacobian",
    "characteristic_polynomial",
    "eigenvalues",
    "classify",
    "classify_at",
    "lambda1_spectrum",
    "classify_lambda1",
]

# |modulus - 1| below this counts as "on the unit circle".
UNIT_CIRCLE_TOL = 1e-10
# Exact-equality tolerance for the closed-form boundary rule.
BOUNDARY_TOL = 1e-12

LAMBDA1 = SimplexPoint(1.0, 0.0, 0.0, 0.0)


class NonConvergence(RuntimeError):
    """The root iteration failed to produce residual-verified eigenvalues."""


def jacobian(s: SimplexPoint, p: ModelParams) -> np.ndarray:
    """Jacobian matrix of the one-step map at ``s``."""
    b, al, b1, b2, k1, k2 = p.as_tuple()
    x, _, y, _ = s.as_tuple()
    A = force_of_infection(s, p)
    return np.array([
        [1 - b - b1 * A, -b1 * k1 * x, 0.0, -b1 * k2 * x],
        [b1 * A, 1 - b - al + b1 * k1 * x, 0.0, b1 * k2 * x],
        [0.0, al - b2 * k1 * y, 1 - b - b2 * A, -b2 * k2 * y],
        [0.0, b2 * k1 * y, b2 * A, 1 - b + b2 * k2 * y],
    ])


def characteristic_polynomial(J: np.ndarray) -> np.ndarray:
    """Monic coefficients [1, c1, c2, c3, c4] of det(lambda*I - J).

    Faddeev-LeVerrier recursion; exact in the number of operations for a
    fixed 4x4 matrix.
    """
    J = np.asarray(J, dtype=float)
    if J.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {J.shape}")
    if not np.all(np.isfinite(J)):
        raise ValueError("matrix entries must be finite")
    n = 4
    eye = np.eye(n)
    M = eye
    coeffs = [1.0]
    for k in range(1, n + 1):
        JM = J @ M
        c = -np.trace(JM) / k
        coeffs.append(float(c))
        M = JM + c * eye
    return np.array(coeffs)


def _horner(coeffs, z: complex) -> complex:
    acc = complex(coeffs[0])
    for c in coeffs[1:]:
        acc = acc * z + c
    return acc


def _durand_kerner(coeffs, max_iter: int = 400) -> list[complex]:
    """Simultaneous root iteration for a monic quartic (plain complex math).

    Stops on root movement below 1e-14 (simple roots) or on a stalled
    movement plateau (the noise floor of a multiple-root cluster).
    """
    n = len(coeffs) - 1
    radius = 1.0 + max(abs(float(c)) for c in coeffs[1:])
    seed = complex(0.4, 0.9)
    z = [radius * seed ** (j + 1) for j in range(n)]
    best = float("inf")
    stalled = 0
    for _ in range(max_iter):
        move = 0.0
        for j in range(n):
            pj = _horner(coeffs, z[j])
            denom = complex(1.0)
            for m in range(n):
                if m != j:
                    denom *= z[j] - z[m]
            if denom == 0:
                denom = complex(1e-30)
            dz = pj / denom
            z[j] -= dz
            move = max(move, abs(dz))
        scale = max(1.0, max(abs(w) for w in z))
        if move <= 1e-14 * scale:
            break
        if move <= 0.5 * best:
            best = move
            stalled = 0
        else:
            stalled += 1
            if stalled >= 25:
                break
    return z


def eigenvalues(J: np.ndarray, residual_tol: float = 1e-8) -> np.ndarray:
    """The four eigenvalues of a real 4x4 matrix, sorted by (real, imag).

    Each root is accepted only if the scaled characteristic-polynomial
    residual |p(mu)| is below ``residual_tol``; otherwise
    :class:`NonConvergence` is raised rather than guessing.
    """
    coeffs = characteristic_polynomial(J)
    roots = _durand_kerner(coeffs)
    coeff_scale = max(1.0, float(np.max(np.abs(coeffs))))
    for r in roots:
        scale = coeff_scale * max(1.0, abs(r)) ** 4
        if abs(_horner(coeffs, r)) > residual_tol * scale:
            raise NonConvergence(
                f"root {r!r} has characteristic residual above {residual_tol:g}"
            )
    return np.sort_complex(np.array(roots))


@dataclass(frozen=True)
class StabilityClass:
    """Hyperbolicity verdict plus the eigenvalue list it rests on."""

    classification: str  # "attracting" | "repelling" | "saddle" | "nonhyperbolic"
    eigenvalues: tuple[complex, ...]

    def __str__(self) -> str:
        eigs = ", ".join(f"{e.real:.6g}{e.imag:+.2g}j" if e.imag else f"{e.real:.6g}"
                         for e in self.eigenvalues)
        return f"{self.classification} (eigenvalues: {eigs})"


def classify(eigs, unit_tol: float = UNIT_CIRCLE_TOL) -> StabilityClass:
    """Three-type classification from an eigenvalue list."""
    eigs = tuple(complex(e) for e in eigs)
    moduli = [abs(e) for e in eigs]
    if any(abs(m - 1.0) <= unit_tol for m in moduli):
        kind = "nonhyperbolic"
    elif all(m < 1.0 for m in moduli):
        kind = "attracting"
    elif all(m > 1.0 for m in moduli):
        kind = "repelling"
    else:
        kind = "saddle"
    return StabilityClass(kind, eigs)


def classify_at(s: SimplexPoint, p: ModelParams,
                unit_tol: float = UNIT_CIRCLE_TOL) -> StabilityClass:
    """Generic classification at an arbitrary point (Jacobian + eigenvalues)."""
    return classify(eigenvalues(jacobian(s, p)), unit_tol)


def lambda1_spectrum(p: ModelParams) -> tuple[float, float, float, float]:
    """Spectrum at the disease-free state, in closed form.

    The Jacobian there is triangular up to one harmless subdiagonal entry:
    1 - b appears with multiplicity three and 1 - b - alpha + beta1*k1 once.
    """
    mu1 = 1.0 - p.b
    mu2 = 1.0 - p.b - p.alpha + p.beta1 * p.k1
    return (mu1, mu1, mu1, mu2)


def classify_lambda1(p: ModelParams,
                     boundary_tol: float = BOUNDARY_TOL) -> StabilityClass:
    """Closed-form classification of the disease-free state (1, 0, 0, 0).

    nonhyperbolic  if b = 0 or beta1*k1 = b + alpha (within ``boundary_tol``)
    attracting     if b > 0 and beta1*k1 < b + alpha
    saddle         if b > 0 and beta1*k1 > b + alpha

    Agrees with the generic eigenvalue path wherever the point is
    hyperbolic; on the boundary set the closed form is the honest answer
    while root-finding noise is not.
    """
    eigs = tuple(complex(m) for m in lambda1_spectrum(p))
    gap = p.beta1 * p.k1 - (p.b + p.alpha)
    if abs(p.b) <= boundary_tol or abs(gap) <= boundary_tol:
        kind = "nonhyperbolic"
    elif gap < 0.0:
        kind = "attracting"
    else:
        kind = "saddle"
    return StabilityClass(kind, eigs)

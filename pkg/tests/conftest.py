"""Shared helpers: seeded random admissible rates and simplex points."""

import numpy as np
import pytest

from sisi.model import ModelParams, validate_params


def random_admissible(rng: np.random.Generator, attempts: int = 10_000) -> ModelParams:
    """Rejection-sample rates against the nine admissibility inequalities."""
    for _ in range(attempts):
        b = rng.uniform(0.0, 0.9)
        p = ModelParams(
            b=b,
            alpha=rng.uniform(0.0, 1.0 - b),
            beta1=rng.uniform(0.0, 1.2),
            beta2=rng.uniform(0.0, 1.2),
            k1=rng.uniform(0.0, 1.6),
            k2=rng.uniform(0.0, 1.6),
        )
        if validate_params(p).ok:
            return p
    raise AssertionError("could not sample admissible rates")


def random_point(rng: np.random.Generator) -> np.ndarray:
    return rng.dirichlet(np.ones(4))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)

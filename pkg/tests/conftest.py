"""Shared fixtures, random generators and hypothesis strategies."""

from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from hom3lie.examples import (
    EX32_DEFAULTS,
    a4_algebra,
    abelian_algebra,
    ex31_algebra,
    ex32_algebra,
    ex32_alpha,
)
from hom3lie.homlie import twist
from hom3lie.scalars import mpq, to_scalar
from hom3lie.solver import invariant_skew_subspace
from hom3lie.tensorcore import as_array, zeros
from hom3lie.ybe import RMatrix

settings.register_profile("default", deadline=None, max_examples=25)
settings.load_profile("default")

DIAG_TWIST = as_array([[1, 0, 0], [0, 2, 0], [0, 0, mpq(1, 2)]])


def ex31_twisted():
    """The 3-dimensional example twisted by ``diag(1, 2, 1/2)``."""
    return twist(ex31_algebra(), DIAG_TWIST, name="ex31 diag")


def ex32_twisted():
    """The 4-dimensional example twisted by its default parametrized morphism."""
    params = {k: to_scalar(v) for k, v in EX32_DEFAULTS.items()}
    return twist(ex32_algebra(), ex32_alpha(params), name="ex32 twisted")


ALGEBRA_FACTORIES = {
    "ex31": ex31_algebra,
    "ex31_diag": ex31_twisted,
    "ex32": ex32_algebra,
    "ex32_twisted": ex32_twisted,
    "a4": a4_algebra,
    "abelian": lambda: abelian_algebra(3),
}


@pytest.fixture(params=sorted(ALGEBRA_FACTORIES))
def bundled(request):
    return ALGEBRA_FACTORIES[request.param]()


def rand_q(rng: random.Random, bound: int = 3, den: int = 3):
    return mpq(rng.randint(-bound, bound), rng.randint(1, den))


def random_matrix(rng: random.Random, n: int, m: int | None = None, bound: int = 3):
    m = n if m is None else m
    out = zeros((n, m))
    for i in range(n):
        for j in range(m):
            out[i, j] = rand_q(rng, bound)
    return out


def random_r(rng: random.Random, n: int) -> RMatrix:
    return RMatrix(random_matrix(rng, n))


def random_skew_r(rng: random.Random, n: int) -> RMatrix:
    return RMatrix.skew(n, {(i, j): rand_q(rng) for i in range(1, n + 1) for j in range(i + 1, n + 1)})


def random_invariant_skew_r(rng: random.Random, alg) -> RMatrix:
    """A random point of the α-invariant skew subspace."""
    param = invariant_skew_subspace(alg.alpha)
    return param.r([rand_q(rng) for _ in range(param.d)]) if param.d else RMatrix.zero(alg.dim)


def random_vector(rng: random.Random, n: int):
    return np.array([rand_q(rng) for _ in range(n)], dtype=object)


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6).map(mpq)
seeds = st.integers(min_value=0, max_value=2**32 - 1)

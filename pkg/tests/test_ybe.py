"""r-matrices, embedded brackets, the CHYBE bracket and its variants."""

import random

import numpy as np
import pytest
from hypothesis import given, settings

from hom3lie.bialgebra import delta_components_unchecked
from hom3lie.coalgebra import HomTriCoalgebra, cojacobi_residual
from hom3lie.examples import a4_algebra, abelian_algebra, ex31_algebra, ex32_algebra
from hom3lie.homlie import bracket_eval, twist
from hom3lie.tensorcore import Tensor, as_array, basis_vector, identity
from hom3lie.ybe import (
    CHYBE_TERMS,
    EmbeddedFactor,
    RMatrix,
    alpha_invariance_residual,
    chybe_bracket,
    chybe_bracket_expanded,
    chybe_residual,
    condition31_residual,
    embedded_triple_bracket,
    r_skew_residual,
    twisted_r,
    variant_brackets,
)

from conftest import (
    ALGEBRA_FACTORIES,
    DIAG_TWIST,
    ex31_twisted,
    random_invariant_skew_r,
    random_r,
    random_skew_r,
    seeds,
)

R23 = RMatrix.skew(3, {(2, 3): 1})


def outer(*vectors):
    out = vectors[0]
    for v in vectors[1:]:
        out = np.multiply.outer(out, v)
    return Tensor(out)


def chybe_oracle(r, alg):
    """Four-term sum over legs ``x_a = e_a``, ``y_a = Σ_b R[a, b] e_b``.

    The second term is read as ``α(x_i) ⊗ [y_i, x_j, x_k] ⊗ α(y_j) ⊗ α(y_k)``;
    with ``[y_j, x_j, x_k]`` the index ``i`` would be summed against nothing.
    """
    n, a = alg.dim, alg.alpha
    xs = [basis_vector(i + 1, n) for i in range(n)]
    ys = [r.R[i] for i in range(n)]
    br = lambda u, v, w: bracket_eval(alg, u, v, w)  # noqa: E731
    al = lambda v: a.dot(v)  # noqa: E731
    total = Tensor.zeros(n, 4)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                xi, xj, xk, yi, yj, yk = xs[i], xs[j], xs[k], ys[i], ys[j], ys[k]
                total = total + outer(br(xi, xj, xk), al(yi), al(yj), al(yk))
                total = total + outer(al(xi), br(yi, xj, xk), al(yj), al(yk))
                total = total + outer(al(xi), al(xj), br(yi, yj, xk), al(yk))
                total = total + outer(al(xi), al(xj), al(xk), br(yi, yj, yk))
    return total


def test_alpha_invariance_examples():
    assert alpha_invariance_residual(random_r(random.Random(0), 3), identity(3)).passed
    assert alpha_invariance_residual(R23, DIAG_TWIST).passed
    assert alpha_invariance_residual(RMatrix.skew(3, {(1, 2): 1}), DIAG_TWIST).residual == 1


def test_r_skew_examples():
    assert r_skew_residual(RMatrix.zero(3)).residual == 0
    assert r_skew_residual(R23).passed
    assert r_skew_residual(as_array([[1, 0, 0], [0, 0, 0], [0, 0, 0]])).residual == 2


def test_rmatrix_construction():
    assert R23.R.tolist() == [[0, 0, 0], [0, 0, 1], [0, -1, 0]]
    assert R23.as_tensor() == Tensor.basis(3, 2, 3) - Tensor.basis(3, 3, 2)
    with pytest.raises(AttributeError):
        R23.R = None
    with pytest.raises(ValueError):
        EmbeddedFactor(R23, 2, 2)
    with pytest.raises(ValueError):
        EmbeddedFactor(R23, 1, 5)


def test_first_embedded_term_matches_its_expansion():
    rng = random.Random(4)
    alg = ex31_algebra(DIAG_TWIST)
    r = random_r(rng, 3)
    got = embedded_triple_bracket(*(EmbeddedFactor(r, 1, q) for q in (2, 3, 4)), alg)
    n = 3
    expected = Tensor.zeros(n, 4)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                xi, xj, xk = (basis_vector(t + 1, n) for t in (i, j, k))
                expected = expected + outer(
                    bracket_eval(alg, xi, xj, xk),
                    *(alg.alpha.dot(r.R[t]) for t in (i, j, k)),
                )
    assert got == expected


def test_embedded_bracket_examples():
    alg = ex31_algebra()
    assert embedded_triple_bracket(*(EmbeddedFactor(RMatrix.zero(3), 1, q) for q in (2, 3, 4)), alg).max_abs() == 0
    t = embedded_triple_bracket(EmbeddedFactor(R23, 1, 3), EmbeddedFactor(R23, 3, 2), EmbeddedFactor(R23, 3, 4), alg)
    assert t.max_abs() == 0


@pytest.mark.parametrize(
    "pattern",
    [
        ((1, 2), (1, 3), (2, 4)),  # no slot shared by all three
        ((1, 2), (1, 3), (1, 2)),  # slot 2 doubly occupied, slot 4 empty
        ((1, 2), (1, 3), (1, 3)),
    ],
)
def test_occupancy_rule_rejects(pattern):
    with pytest.raises(ValueError, match="occupancy"):
        embedded_triple_bracket(*(EmbeddedFactor(R23, p, q) for p, q in pattern), ex31_algebra())


def test_occupancy_rule_rejects_mixed_slot_counts():
    with pytest.raises(ValueError):
        embedded_triple_bracket(EmbeddedFactor(R23, 1, 2), EmbeddedFactor(R23, 1, 3),
                                EmbeddedFactor(R23, 1, 4, slots=5), ex31_algebra())


def test_chybe_examples():
    assert chybe_residual(RMatrix.zero(3), ex31_algebra()).passed
    assert chybe_residual(R23, ex31_algebra()).passed
    flat = abelian_algebra(3)
    assert chybe_bracket(random_r(random.Random(1), 3), flat).max_abs() == 0


@pytest.mark.parametrize("name", sorted(ALGEBRA_FACTORIES))
def test_chybe_matches_leg_oracle(name):
    rng = random.Random(len(name))
    alg = ALGEBRA_FACTORIES[name]()
    for r in (random_r(rng, alg.dim), random_skew_r(rng, alg.dim)):
        assert chybe_bracket(r, alg) == chybe_oracle(r, alg)


@given(seeds)
def test_embedded_terms_agree_with_expansion(seed):
    rng = random.Random(seed)
    alg = ex32_algebra(random_r(rng, 4).R)
    r = random_r(rng, 4)
    assert chybe_bracket(r, alg, cross_check=False) == chybe_bracket_expanded(r, alg)


def test_chybe_is_nontrivial_on_the_four_dimensional_algebra():
    r = RMatrix.skew(4, {(1, 4): 1, (2, 3): 1})
    assert not chybe_residual(r, ex32_algebra()).passed
    assert len(CHYBE_TERMS) == 4


def test_variant_examples():
    alg = ex31_algebra()
    assert all(t.max_abs() == 0 for t in variant_brackets(RMatrix.zero(3), alg))
    assert all(t.max_abs() == 0 for t in variant_brackets(R23, alg))


@settings(max_examples=15)
@given(seeds)
def test_skew_reduction_of_variants(seed):
    rng = random.Random(seed)
    for name in ("ex32", "ex32_twisted", "a4", "ex31_diag"):
        alg = ALGEBRA_FACTORIES[name]()
        r = random_skew_r(rng, alg.dim)
        base = chybe_bracket(r, alg)
        v1, v2, v3 = variant_brackets(r, alg)
        assert v1 == base and v2 == -base and v3 == base


def test_printed_first_variant_breaks_the_reduction():
    rng = random.Random(9)
    alg = ex32_algebra()
    r = random_skew_r(rng, 4)
    base = chybe_bracket(r, alg)
    printed = variant_brackets(r, alg, printed=True)[0]
    assert base.max_abs() != 0
    assert printed != base


def test_condition_examples():
    alg = ex31_algebra()
    assert condition31_residual(RMatrix.zero(3), alg).passed
    assert condition31_residual(R23, alg).passed
    assert condition31_residual(R23, ex31_twisted()).passed


@settings(max_examples=10)
@given(seeds)
def test_condition_vanishes_on_invariant_solutions(seed):
    rng = random.Random(seed)
    for name in ("ex31", "ex31_diag", "a4"):
        alg = ALGEBRA_FACTORIES[name]()
        r = random_invariant_skew_r(rng, alg)
        assert chybe_residual(r, alg).passed
        assert condition31_residual(r, alg).passed


def _cojacobi_of_induced(alg, r):
    parts = delta_components_unchecked(alg, r)
    return cojacobi_residual(HomTriCoalgebra(parts[0] + parts[1] + parts[2], alg.alpha))


@settings(max_examples=15)
@given(seeds)
def test_condition_iff_cojacobi(seed):
    rng = random.Random(seed)
    for name in ("ex32", "ex32_twisted", "ex31_diag", "a4"):
        alg = ALGEBRA_FACTORIES[name]()
        r = random_invariant_skew_r(rng, alg)
        assert condition31_residual(r, alg).passed == _cojacobi_of_induced(alg, r).passed


def test_condition_iff_cojacobi_includes_failures():
    alg = ex32_algebra()
    r = RMatrix.skew(4, {(1, 4): 1, (2, 3): 1})
    assert not condition31_residual(r, alg).passed
    assert not _cojacobi_of_induced(alg, r).passed


def test_twisted_r_examples():
    r = random_r(random.Random(2), 3)
    assert twisted_r(r, DIAG_TWIST, 0) == r
    assert twisted_r(r, identity(3), 3) == r
    with pytest.raises(ValueError):
        twisted_r(r, DIAG_TWIST, -1)
    expected = DIAG_TWIST.dot(DIAG_TWIST).dot(r.R).dot(DIAG_TWIST.dot(DIAG_TWIST).T)
    assert twisted_r(r, DIAG_TWIST, 2) == RMatrix(expected)


@pytest.mark.parametrize("power", [0, 1, 2, 3])
def test_twisted_solutions_stay_solutions(power):
    rng = random.Random(power)
    base = ex32_algebra()
    # a solution with r23 = 0 of the untwisted equation on the 4-dimensional algebra
    r = RMatrix.skew(4, {(1, 2): 1, (1, 3): 2, (1, 4): -1, (2, 4): 3, (3, 4): 1})
    assert chybe_residual(r, base).passed
    alpha = as_array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]])
    alg = twist(base, alpha)
    assert chybe_residual(twisted_r(r, alpha, power), alg).passed
    # and on the 3-dimensional algebra every skew r works
    r3 = random_skew_r(rng, 3)
    assert chybe_residual(twisted_r(r3, DIAG_TWIST, power), ex31_twisted()).passed


def test_a4_every_skew_r_solves():
    rng = random.Random(8)
    assert chybe_residual(random_skew_r(rng, 4), a4_algebra()).passed

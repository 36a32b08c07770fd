"""Dense exact tensors, slot operators and exact linear algebra."""

import itertools
import random

import numpy as np
import pytest
from hypothesis import given

from hom3lie.scalars import mpq
from hom3lie.tensorcore import (
    OMEGA_PERMUTATIONS,
    Tensor,
    apply_slot_maps,
    as_array,
    contract_slot,
    identity,
    insert_at,
    inverse,
    kron,
    matrix_power,
    nullspace,
    omega,
    permute_slots,
    rref,
    sigma_switch,
    wedge3,
)

from conftest import random_matrix, seeds


def random_tensor(rng, dim, arity):
    data = np.empty((dim,) * arity, dtype=object)
    for idx in np.ndindex(*data.shape):
        data[idx] = mpq(rng.randint(-3, 3), rng.randint(1, 2))
    return Tensor(data)


@pytest.mark.parametrize(
    "m, image",
    [(1, (3, 4, 1, 2, 5)), (2, (4, 5, 1, 2, 3)), (3, (5, 3, 1, 2, 4))],
)
def test_omega_on_standard_word(m, image):
    word = Tensor.basis(5, 1, 2, 3, 4, 5)
    assert omega(word, m) == Tensor.basis(5, *image)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_omega_exhaustive_on_basis_words(m):
    perm = OMEGA_PERMUTATIONS[m]
    for word in itertools.product(range(1, 4), repeat=5):
        moved = tuple(word[p - 1] for p in perm)
        assert omega(Tensor.basis(3, *word), m) == Tensor.basis(3, *moved)


def test_omega_argument_checks():
    with pytest.raises(ValueError):
        omega(Tensor.basis(3, 1, 2, 3), 1)
    with pytest.raises(ValueError):
        omega(Tensor.basis(2, 1, 1, 1, 1, 1), 4)


def test_omega_orders():
    t = random_tensor(random.Random(0), 2, 5)
    assert omega(omega(t, 1), 1) == t
    # ω2 and ω3 are 5-cycles written as slot pictures; their fifth powers are the identity
    for m in (2, 3):
        u = t
        for _ in range(5):
            u = omega(u, m)
        assert u == t


def test_sigma_switch():
    assert sigma_switch(Tensor.basis(3, 1, 2, 3), 1, 3) == Tensor.basis(3, 3, 2, 1)
    with pytest.raises(IndexError):
        sigma_switch(Tensor.basis(3, 1, 2), 2, 1)
    with pytest.raises(IndexError):
        sigma_switch(Tensor.basis(3, 1, 2), 1, 3)


def test_insert_at_matches_positional_definition():
    t = Tensor.basis(4, 1, 2, 3, 4)
    a = Tensor.basis(4, 4).data
    assert insert_at(t, a, 2) == Tensor.basis(4, 1, 4, 2, 3, 4)
    assert insert_at(t, a, 1) == Tensor.basis(4, 4, 1, 2, 3, 4)
    assert insert_at(t, a, 5) == Tensor.basis(4, 1, 2, 3, 4, 4)
    with pytest.raises(IndexError):
        insert_at(t, a, 6)


def test_contract_slot():
    t = Tensor.basis(2, 1, 2) + Tensor.basis(2, 2, 2) * 3
    assert contract_slot(t, 1, [1, 1]) == Tensor.basis(2, 2) * 4


def test_apply_slot_maps_identity_and_errors():
    t = random_tensor(random.Random(1), 3, 3)
    assert apply_slot_maps([None, identity(3), None], t) == t
    with pytest.raises(ValueError):
        apply_slot_maps([None, None], t)


@given(seeds)
def test_apply_slot_maps_agrees_with_kron(seed):
    rng = random.Random(seed)
    mats = [random_matrix(rng, 2) for _ in range(3)]
    t = random_tensor(rng, 2, 3)
    expected = kron(*mats).dot(t.data.reshape(-1)).reshape(2, 2, 2)
    assert apply_slot_maps(mats, t) == Tensor(expected)


@given(seeds)
def test_sigma_switch_is_an_involution(seed):
    t = random_tensor(random.Random(seed), 2, 4)
    for i, j in itertools.combinations(range(1, 5), 2):
        assert sigma_switch(sigma_switch(t, i, j), i, j) == t


@given(seeds)
def test_permute_slots_composes(seed):
    rng = random.Random(seed)
    t = random_tensor(rng, 2, 5)
    p = rng.sample(range(1, 6), 5)
    q = rng.sample(range(1, 6), 5)
    # slot k of permute(permute(t, p), q) holds slot q[k] of permute(t, p) = slot p[q[k]] of t
    composed = [p[k - 1] for k in q]
    assert permute_slots(permute_slots(t, p), q) == permute_slots(t, composed)


def test_wedge3_is_totally_antisymmetric():
    w = wedge3(*(Tensor.basis(3, i).data for i in (1, 2, 3)))
    assert sum(1 for _ in w.terms()) == 6
    assert sigma_switch(w, 1, 2) == -w
    assert sigma_switch(w, 2, 3) == -w


def test_exact_linear_algebra():
    m = as_array([[2, 1], [4, 3]])
    inv = inverse(m)
    assert np.all(m.dot(inv) == identity(2))
    assert np.all(matrix_power(m, -2).dot(matrix_power(m, 2)) == identity(2))
    with pytest.raises(ValueError):
        inverse(as_array([[1, 2], [2, 4]]))
    red, piv = rref(as_array([[1, 2, 3], [2, 4, 6]]))
    assert piv == [0]
    (v1, v2) = nullspace(as_array([[1, 2, 3]]))
    assert list(v1) == [-2, 1, 0] and list(v2) == [-3, 0, 1]


@given(seeds)
def test_nullspace_vectors_are_annihilated(seed):
    rng = random.Random(seed)
    m = random_matrix(rng, 2, 4)
    for v in nullspace(m):
        assert all(x == 0 for x in m.dot(v))
    assert len(nullspace(m)) == 4 - len(rref(m)[1])


def test_tensor_construction_guards():
    with pytest.raises(ValueError):
        Tensor(np.zeros((2, 3), dtype=object))
    with pytest.raises(IndexError):
        Tensor.basis(2, 3)
    with pytest.raises(TypeError):
        Tensor([0.5, 1])
    t = Tensor.basis(2, 1)
    with pytest.raises(AttributeError):
        t.data = None
    assert repr(Tensor.basis(2, 1, 2)) == "Tensor(dim=2, arity=2: 1*e1⊗e2)"

"""JSON documents: exact round-trips and position-bearing errors."""

import json
import random

import numpy as np
import pytest
from hypothesis import given

from hom3lie.bialgebra import assemble_coboundary
from hom3lie.examples import a4_algebra, ex31_algebra
from hom3lie.io import (
    InputError,
    algebra_from_document,
    algebra_to_document,
    alpha_from_document,
    alpha_to_document,
    cobracket_from_document,
    cobracket_to_document,
    dumps,
    load_json,
    rmatrix_from_document,
    rmatrix_to_document,
)
from hom3lie.scalars import GaussianRational, mpq
from hom3lie.ybe import RMatrix

from conftest import ALGEBRA_FACTORIES, random_matrix, random_r, seeds

EX31_DOC = {"dim": 3, "bracket": [{"i": 1, "j": 2, "k": 3, "value": ["1", "0", "0"]}]}


def test_algebra_document_builds_the_bracket():
    alg = algebra_from_document(EX31_DOC)
    assert alg.bracket == ex31_algebra().bracket
    assert np.all(alg.alpha == np.eye(3, dtype=int))


@pytest.mark.parametrize("name", sorted(ALGEBRA_FACTORIES))
def test_algebra_round_trip(name):
    alg = ALGEBRA_FACTORIES[name]()
    doc = algebra_to_document(alg)
    back = algebra_from_document(json.loads(dumps(doc)))
    assert back.bracket == alg.bracket and np.all(back.alpha == alg.alpha)


@given(seeds)
def test_rmatrix_and_alpha_round_trip(seed):
    rng = random.Random(seed)
    r = random_r(rng, 3)
    assert rmatrix_from_document(json.loads(dumps(rmatrix_to_document(r)))) == r
    alpha = random_matrix(rng, 4)
    back = alpha_from_document(json.loads(dumps(alpha_to_document(alpha))), 4)
    assert np.all(back == alpha)


@given(seeds)
def test_complex_round_trip(seed):
    rng = random.Random(seed)
    R = np.empty((2, 2), dtype=object)
    for idx in np.ndindex(2, 2):
        R[idx] = GaussianRational(mpq(rng.randint(-4, 4), rng.randint(1, 3)), rng.randint(-2, 2))
    doc = rmatrix_to_document(RMatrix(R))
    back = rmatrix_from_document(json.loads(dumps(doc)))
    assert back == RMatrix(R)


def test_cobracket_round_trip():
    b = assemble_coboundary(ex31_algebra(), RMatrix.skew(3, {(2, 3): 1}))
    doc = cobracket_to_document(b.delta)
    assert doc[0][0][1][2] == "-1"
    assert cobracket_from_document(json.loads(dumps(doc)), 3) == b.delta
    with pytest.raises(InputError):
        cobracket_from_document(doc, 4)


def test_dumps_is_canonical():
    text = dumps({"b": 1, "a": [1, 2]})
    assert text == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"bracket": []}, "missing key 'dim'"),
        ({"dim": 0, "bracket": []}, "dim: expected a positive integer"),
        ({"dim": 3}, "missing key 'bracket'"),
        ({"dim": 3, "bracket": {}}, "bracket: expected a list"),
        ({"dim": 3, "bracket": [{"i": 1, "j": 2, "value": ["1", "0", "0"]}]}, "bracket[0]: missing key 'k'"),
        ({"dim": 3, "bracket": [{"i": 1, "j": 2, "k": 4, "value": ["1", "0", "0"]}]}, "bracket[0].k"),
        ({"dim": 3, "bracket": [{"i": 1, "j": 2, "k": 3, "value": ["1", "0"]}]}, "bracket[0].value"),
        ({"dim": 3, "bracket": [{"i": 1, "j": 2, "k": 3, "value": ["1", "x", "0"]}]}, "bracket[0].value[1]"),
        ({"dim": 3, "bracket": [{"i": 1, "j": 2, "k": 3, "value": ["1", 0.5, "0"]}]}, "bracket[0].value[1]"),
        ({"dim": 3, "bracket": [{"i": 1, "j": 2, "k": 3, "value": ["1", "1/0", "0"]}]}, "bracket[0].value[1]"),
        ({"dim": 3, "bracket": [{"i": 1, "j": 2, "k": 3, "value": ["1", "i", "0"]}]}, "bracket[0].value[1]"),
        (
            {"dim": 3, "bracket": [{"i": 1, "j": 2, "k": 3, "value": ["1", "0", "0"]},
                                   {"i": 1, "j": 2, "k": 3, "value": ["1", "0", "0"]}]},
            "bracket[1]: duplicate",
        ),
        (
            {"dim": 3, "bracket": [{"i": 1, "j": 2, "k": 3, "value": ["1", "0", "0"]},
                                   {"i": 2, "j": 1, "k": 3, "value": ["1", "0", "0"]}]},
            "conflicts",
        ),
        ({**EX31_DOC, "alpha": [["1", "0"], ["0", "1"]]}, "alpha: expected a list of 3 rows"),
        ({**EX31_DOC, "alpha": [["1", "0", "0"], ["0", "1"], ["0", "0", "1"]]}, "alpha[1]"),
        ({**EX31_DOC, "complex": "yes"}, "complex"),
    ],
)
def test_algebra_errors_name_the_position(doc, fragment):
    with pytest.raises(InputError) as info:
        algebra_from_document(doc)
    assert fragment in str(info.value)


def test_complex_algebra_document():
    doc = {"dim": 3, "complex": True,
           "bracket": [{"i": 1, "j": 2, "k": 3, "value": ["1+2i", "0", "-i"]}]}
    alg = algebra_from_document(doc)
    assert alg.c[0, 1, 2, 0] == GaussianRational(1, 2)
    assert algebra_to_document(alg)["complex"] is True


def test_rmatrix_and_alpha_errors():
    with pytest.raises(InputError, match=r"entries\[1\]\[0\]"):
        rmatrix_from_document({"dim": 2, "entries": [["0", "1"], ["q", "0"]]})
    with pytest.raises(InputError, match="matrix: expected 3 rows"):
        alpha_from_document({"matrix": [["1"]]}, 3)
    with pytest.raises(InputError, match="missing key 'matrix'"):
        alpha_from_document({}, 3)


def test_load_json_reports_line_and_column(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "dim": 3,\n  "bracket": [\n}\n')
    with pytest.raises(InputError, match=r"line 4 column 1"):
        load_json(bad)
    with pytest.raises(InputError, match="cannot read"):
        load_json(tmp_path / "missing.json")
    good = tmp_path / "a4.json"
    good.write_text(dumps(algebra_to_document(a4_algebra())))
    assert algebra_from_document(load_json(good)).bracket == a4_algebra().bracket

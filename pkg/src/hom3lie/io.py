"""JSON documents for algebras, r-matrices, twist maps and cobrackets.

All scalars cross the file boundary as strings (``"p/q"``, or ``"a+bi"`` for
documents with ``"complex": true``) so no precision is ever lost. Every
parse failure raises :class:`InputError` with a path into the document.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .coalgebra import CoBracket
from .homlie import HomTriAlgebra
from .scalars import GaussianRational, ScalarParseError, format_scalar, parse_scalar
from .tensorcore import as_array, identity
from .ybe import RMatrix

__all__ = [
    "InputError",
    "load_json",
    "algebra_from_document",
    "algebra_to_document",
    "rmatrix_from_document",
    "rmatrix_to_document",
    "alpha_from_document",
    "alpha_to_document",
    "cobracket_to_document",
    "cobracket_from_document",
    "dumps",
]


class InputError(ValueError):
    """Malformed input; the message names the offending location."""


def load_json(path) -> object:
    """Read a JSON file, reporting syntax errors with line and column."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{p}: cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _require(doc, key: str, where: str):
    if not isinstance(doc, dict):
        raise InputError(f"{where or 'document'}: expected an object")
    if key not in doc:
        raise InputError(f"{where or 'document'}: missing key {key!r}")
    return doc[key]


def _scalar(value, where: str, complex: bool):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InputError(f"{where}: expected a rational string, got {value!r}")
    try:
        return parse_scalar(str(value), complex=complex)
    except ScalarParseError as exc:
        raise InputError(f"{where}: {exc}") from exc


def _dim(doc, where: str = "") -> int:
    dim = _require(doc, "dim", where)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InputError(f"{where}dim: expected a positive integer, got {dim!r}")
    return dim


def _matrix(rows, dim: int, where: str, complex: bool) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise InputError(f"{where}: expected a list of {dim} rows")
    out = np.empty((dim, dim), dtype=object)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise InputError(f"{where}[{i}]: expected a row of {dim} entries")
        for j, v in enumerate(row):
            out[i, j] = _scalar(v, f"{where}[{i}][{j}]", complex)
    return out


def _is_complex(arr) -> bool:
    return any(isinstance(v, GaussianRational) and v.im != 0 for v in np.asarray(arr).flat)


def _fmt(arr) -> list:
    return np.vectorize(format_scalar, otypes=[object])(arr).tolist() if np.size(arr) else []


def algebra_from_document(doc, name: str | None = None) -> HomTriAlgebra:
    """Build a :class:`HomTriAlgebra` from ``{dim, bracket, alpha?, complex?}``."""
    dim = _dim(doc)
    complex = doc.get("complex", False)
    if not isinstance(complex, bool):
        raise InputError(f"complex: expected true or false, got {complex!r}")
    entries = _require(doc, "bracket", "")
    if not isinstance(entries, list):
        raise InputError("bracket: expected a list")
    products = {}
    for pos, entry in enumerate(entries):
        where = f"bracket[{pos}]"
        idx = []
        for key in ("i", "j", "k"):
            v = _require(entry, key, where)
            if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= dim:
                raise InputError(f"{where}.{key}: expected an index in 1..{dim}, got {v!r}")
            idx.append(v)
        value = _require(entry, "value", where)
        if not isinstance(value, list) or len(value) != dim:
            raise InputError(f"{where}.value: expected {dim} coefficients")
        vec = [_scalar(v, f"{where}.value[{t}]", complex) for t, v in enumerate(value)]
        key = tuple(idx)
        if key in products:
            raise InputError(f"{where}: duplicate entry for ({key[0]}, {key[1]}, {key[2]})")
        products[key] = vec
    if "alpha" in doc and doc["alpha"] is not None:
        alpha = _matrix(doc["alpha"], dim, "alpha", complex)
    else:
        alpha = identity(dim)
    try:
        return HomTriAlgebra.from_generators(dim, products, alpha, name=name or doc.get("name"))
    except ValueError as exc:
        raise InputError(f"bracket: {exc}") from exc


def algebra_to_document(alg: HomTriAlgebra) -> dict:
    entries = []
    for (i, j, k), vec in alg.bracket.generators():
        entries.append({"i": i, "j": j, "k": k, "value": _fmt(vec)})
    doc = {
        "dim": alg.dim,
        "bracket": entries,
        "alpha": _fmt(alg.alpha),
        "complex": _is_complex(alg.c) or _is_complex(alg.alpha),
    }
    if alg.name:
        doc["name"] = alg.name
    return doc


def rmatrix_from_document(doc, complex: bool = False) -> RMatrix:
    dim = _dim(doc)
    complex = doc.get("complex", complex)
    return RMatrix(_matrix(_require(doc, "entries", ""), dim, "entries", complex))


def rmatrix_to_document(r: RMatrix) -> dict:
    return {"dim": r.dim, "entries": _fmt(r.R), "complex": _is_complex(r.R)}


def alpha_from_document(doc, dim: int | None = None, complex: bool = False) -> np.ndarray:
    rows = _require(doc, "matrix", "")
    if not isinstance(rows, list) or not rows:
        raise InputError("matrix: expected a non-empty list of rows")
    n = len(rows)
    if dim is not None and n != dim:
        raise InputError(f"matrix: expected {dim} rows to match the algebra, got {n}")
    return _matrix(rows, n, "matrix", doc.get("complex", complex))


def alpha_to_document(alpha) -> dict:
    alpha = as_array(alpha)
    return {"matrix": _fmt(alpha), "complex": _is_complex(alpha)}


def cobracket_to_document(d: CoBracket) -> list:
    """``[Δ(e_1), ..., Δ(e_n)]``, each an ``n×n×n`` nested list of strings."""
    return _fmt(d.d)


def cobracket_from_document(images, dim: int, complex: bool = False) -> CoBracket:
    arr = np.array(images, dtype=object)
    if arr.shape != (dim,) * 4:
        raise InputError(f"cobracket: expected shape {(dim,) * 4}, got {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = _scalar(v, "cobracket" + "".join(f"[{t}]" for t in idx), complex)
    return CoBracket(out)

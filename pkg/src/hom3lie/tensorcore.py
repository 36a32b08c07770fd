"""Dense exact tensors on ``L^{⊗k}`` and the slot operators acting on them.

A :class:`Tensor` of arity ``k`` on an ``n``-dimensional space stores all
``n**k`` coefficients in a numpy object array of exact scalars. Slot indices
in the public API are 1-based, as are basis labels (``e1, e2, ...``).

Matrices (twists, ``ad_1`` operators, representation maps) are plain numpy
object arrays; a matrix ``M`` acts on column vectors, so ``M[:, j]`` is the
image of ``e_{j+1}``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from .scalars import ZERO, ONE, format_scalar, magnitude, to_scalar

__all__ = [
    "Tensor",
    "as_array",
    "as_vector",
    "as_matrix",
    "zeros",
    "identity",
    "basis_vector",
    "matrix_power",
    "inverse",
    "rref",
    "nullspace",
    "kron",
    "max_abs",
    "sigma_switch",
    "omega",
    "OMEGA_PERMUTATIONS",
    "insert_at",
    "contract_slot",
    "apply_slot_maps",
    "wedge3",
]

# ω_m sends x1⊗...⊗x5 to the tensor whose slot p holds old slot PERM[p]
OMEGA_PERMUTATIONS = {
    1: (3, 4, 1, 2, 5),
    2: (4, 5, 1, 2, 3),
    3: (5, 3, 1, 2, 4),
}


def as_array(data, complex: bool = False) -> np.ndarray:
    """Object array of exact scalars with the shape of ``data``."""
    if isinstance(data, Tensor):
        return data.data
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = to_scalar(v, complex=complex)
    return out


def as_vector(v, dim: int | None = None) -> np.ndarray:
    arr = as_array(v)
    if arr.ndim != 1:
        raise ValueError(f"expected a vector, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"vector has length {arr.shape[0]}, expected {dim}")
    return arr


def as_matrix(m, dim: int | None = None) -> np.ndarray:
    arr = as_array(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"matrix is {arr.shape[0]}x{arr.shape[0]}, expected {dim}x{dim}")
    return arr


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = ONE
    return out


def basis_vector(i: int, n: int) -> np.ndarray:
    """``e_i`` (1-based) in an ``n``-dimensional space."""
    if not 1 <= i <= n:
        raise IndexError(f"basis index {i} out of range 1..{n}")
    v = zeros(n)
    v[i - 1] = ONE
    return v


def max_abs(arr) -> object:
    """Largest exact magnitude among the entries (0 for an empty array)."""
    arr = as_array(arr)
    best = ZERO
    for v in arr.flat:
        m = magnitude(v)
        if m > best:
            best = m
    return best


def kron(*mats: np.ndarray) -> np.ndarray:
    out = np.array([[ONE]], dtype=object)
    for m in mats:
        out = np.kron(out, m)
    return out


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Exact reduced row echelon form and pivot columns (0-based)."""
    a = np.array(m, dtype=object, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """Exact basis of ``{v : m @ v = 0}``, one vector per free column."""
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return [basis_vector(j + 1, cols) for j in range(cols)]
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = ONE
        for row, pc in enumerate(pivots):
            v[pc] = -red[row, f]
        basis.append(v)
    return basis


def inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse; raises ``ValueError`` on a singular matrix."""
    m = as_matrix(m)
    n = m.shape[0]
    red, pivots = rref(np.concatenate([m, identity(n)], axis=1))
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is not invertible")
    return red[:, n:]


def matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    """``m**k`` exactly; negative ``k`` needs an invertible ``m``."""
    m = as_matrix(m)
    if k < 0:
        m = inverse(m)
        k = -k
    out = identity(m.shape[0])
    base = m
    while k:
        if k & 1:
            out = out.dot(base)
        base = base.dot(base)
        k >>= 1
    return out


class Tensor:
    """Immutable dense element of ``L^{⊗k}`` with exact coefficients."""

    __slots__ = ("data",)

    def __init__(self, data):
        arr = as_array(data) if not isinstance(data, np.ndarray) else data
        if arr.dtype != object:
            arr = as_array(arr)
        if arr.ndim and len(set(arr.shape)) != 1:
            raise ValueError(f"tensor slots must share one dimension, got {arr.shape}")
        if arr.ndim and arr.shape[0] < 1:
            raise ValueError("dimension must be at least 1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    @property
    def arity(self) -> int:
        return self.data.ndim

    @property
    def dim(self) -> int:
        return self.data.shape[0] if self.data.ndim else 0

    @classmethod
    def zeros(cls, dim: int, arity: int) -> Tensor:
        return cls(zeros((dim,) * arity))

    @classmethod
    def basis(cls, dim: int, *indices: int) -> Tensor:
        """``e_{i1} ⊗ ... ⊗ e_{ik}`` with 1-based indices."""
        arr = zeros((dim,) * len(indices))
        for i in indices:
            if not 1 <= i <= dim:
                raise IndexError(f"basis index {i} out of range 1..{dim}")
        arr[tuple(i - 1 for i in indices)] = ONE
        return cls(arr)

    @classmethod
    def vector(cls, v) -> Tensor:
        return cls(as_vector(v))

    def tensor(self, other: Tensor) -> Tensor:
        _check_dims(self, other)
        return Tensor(np.multiply.outer(self.data, other.data))

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, Tensor):
            if other.data.shape != self.data.shape:
                raise ValueError(
                    f"shape mismatch {self.data.shape} vs {other.data.shape}"
                )
            return other.data
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Tensor(self.data + o)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Tensor(self.data - o)

    def __neg__(self):
        return Tensor(-self.data)

    def __mul__(self, scalar):
        if isinstance(scalar, (Tensor, np.ndarray)):
            return NotImplemented
        return Tensor(self.data * to_scalar(scalar, complex=True))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            np.all(self.data == other.data)
        )

    __hash__ = None

    def max_abs(self):
        return max_abs(self.data)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.data.flat)

    def terms(self) -> Iterable[tuple[tuple[int, ...], object]]:
        """Nonzero ``(1-based index tuple, coefficient)`` pairs in index order."""
        for idx, v in np.ndenumerate(self.data):
            if v != 0:
                yield tuple(i + 1 for i in idx), v

    def __repr__(self):
        parts = []
        for idx, v in self.terms():
            word = "⊗".join(f"e{i}" for i in idx) or "1"
            parts.append(f"{format_scalar(v)}*{word}")
        body = " + ".join(parts) if parts else "0"
        return f"Tensor(dim={self.dim}, arity={self.arity}: {body})"


def _tensor(t) -> Tensor:
    return t if isinstance(t, Tensor) else Tensor(t)


def _check_dims(a: Tensor, b: Tensor) -> None:
    if a.arity and b.arity and a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def _check_slot(i: int, arity: int, name: str = "slot") -> None:
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= arity:
        raise IndexError(f"{name} {i} out of range 1..{arity}")


def sigma_switch(t, i: int, j: int) -> Tensor:
    """The (ij)-switching operator: swap slots ``i`` and ``j``."""
    t = _tensor(t)
    _check_slot(i, t.arity)
    _check_slot(j, t.arity)
    if i > j:
        raise IndexError(f"need i <= j, got {i} > {j}")
    return Tensor(np.swapaxes(t.data, i - 1, j - 1))


def permute_slots(t, perm: Sequence[int]) -> Tensor:
    """Slot ``p`` of the result holds slot ``perm[p]`` of ``t`` (1-based)."""
    t = _tensor(t)
    if sorted(perm) != list(range(1, t.arity + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{t.arity}")
    return Tensor(np.transpose(t.data, [p - 1 for p in perm]))


def omega(t, m: int) -> Tensor:
    """ω_1, ω_2, ω_3 on ``L^{⊗5}``."""
    t = _tensor(t)
    if t.arity != 5:
        raise ValueError(f"omega acts on arity-5 tensors, got arity {t.arity}")
    if m not in OMEGA_PERMUTATIONS:
        raise ValueError(f"omega index must be 1, 2 or 3, got {m!r}")
    return permute_slots(t, OMEGA_PERMUTATIONS[m])


def insert_at(t, a, i: int) -> Tensor:
    """``t ⊗_i a``: put the vector ``a`` at slot ``i`` (later slots shift right)."""
    t = _tensor(t)
    a = as_vector(a.data if isinstance(a, Tensor) else a)
    _check_slot(i, t.arity + 1)
    if t.arity and a.shape[0] != t.dim:
        raise ValueError(f"dimension mismatch: tensor {t.dim}, vector {a.shape[0]}")
    outer = np.multiply.outer(t.data, a)
    return Tensor(np.moveaxis(outer, -1, i - 1))


def contract_slot(t, i: int, covector) -> Tensor:
    """Pair slot ``i`` with a covector, removing that slot."""
    t = _tensor(t)
    _check_slot(i, t.arity)
    c = as_vector(covector, t.dim)
    return Tensor(np.tensordot(t.data, c, axes=([i - 1], [0])))


def apply_slot_maps(maps: Sequence, t) -> Tensor:
    """Kronecker action ``maps[0] ⊗ ... ⊗ maps[k-1]`` on ``t``.

    ``None`` stands for the identity and skips the contraction.
    """
    t = _tensor(t)
    if len(maps) != t.arity:
        raise ValueError(f"{len(maps)} maps for a tensor of arity {t.arity}")
    data = t.data
    for slot, m in enumerate(maps):
        if m is None:
            continue
        m = np.asarray(m, dtype=object)
        if m.shape != (t.dim, t.dim):
            raise ValueError(f"map for slot {slot + 1} has shape {m.shape}, expected {(t.dim, t.dim)}")
        # contract the map's column index with this slot, then put the row index back
        data = np.moveaxis(np.tensordot(m, data, axes=([1], [slot])), 0, slot)
    return Tensor(data)


_SIGNED_S3 = [
    (perm, -1 if sum(perm[a] > perm[b] for a in range(3) for b in range(a + 1, 3)) % 2 else 1)
    for perm in itertools.permutations(range(3))
]


def wedge3(u, v, w) -> Tensor:
    """``u∧v∧w = Σ_σ sgn(σ) (slot-permuted u⊗v⊗w)``."""
    u, v, w = (as_vector(x.data if isinstance(x, Tensor) else x) for x in (u, v, w))
    if not u.shape == v.shape == w.shape:
        raise ValueError("wedge3 arguments must share one dimension")
    base = np.multiply.outer(np.multiply.outer(u, v), w)
    total = zeros(base.shape)
    for perm, sign in _SIGNED_S3:
        total = total + sign * np.transpose(base, perm)
    return Tensor(total)

"""3-Hom-Lie algebras given by structure constants.

``c[i, j, k, l]`` (0-based) is the coefficient of ``e_l`` in
``[e_i, e_j, e_k]``. The twist ``alpha`` is a square matrix acting on column
vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Mapping

import numpy as np

from .report import Check, ResidualError, VerificationReport
from .scalars import ZERO
from .tensorcore import (
    OMEGA_PERMUTATIONS,
    as_array,
    as_matrix,
    as_vector,
    identity,
    matrix_power,
    max_abs,
    zeros,
)

__all__ = [
    "TriBracket",
    "HomTriAlgebra",
    "bracket_eval",
    "skew_residual",
    "hom_jacobi_residual",
    "hom_jacobi_tensor",
    "multiplicative_residual",
    "morphism_residual",
    "derivation_residual",
    "inner_derivation",
    "ad1",
    "twist",
    "check_algebra",
]


def _perm_sign(p) -> int:
    inv = sum(p[a] > p[b] for a in range(len(p)) for b in range(a + 1, len(p)))
    return -1 if inv % 2 else 1


class TriBracket:
    """Structure constants of a trilinear bracket on an ``n``-dimensional space.

    The plain constructor stores ``c`` as given (so deliberately broken inputs
    can be inspected); :meth:`from_generators` builds a fully antisymmetric
    bracket from products of distinct basis vectors.
    """

    __slots__ = ("c",)

    def __init__(self, c):
        arr = as_array(c)
        if arr.ndim != 4 or len(set(arr.shape)) != 1:
            raise ValueError(f"structure constants need shape (n, n, n, n), got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "c", arr)

    def __setattr__(self, name, value):
        raise AttributeError("TriBracket is immutable")

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @classmethod
    def zero(cls, dim: int) -> TriBracket:
        return cls(zeros((dim,) * 4))

    @classmethod
    def from_generators(cls, dim: int, products: Mapping[tuple[int, int, int], object]) -> TriBracket:
        """Antisymmetric extension of ``{(i, j, k): [e_i, e_j, e_k]}`` (1-based).

        Any ordering of three distinct indices is accepted; two entries naming
        the same unordered triple must agree up to the permutation sign.
        """
        c = zeros((dim,) * 4)
        seen: dict[tuple[int, int, int], np.ndarray] = {}
        for key, value in products.items():
            i, j, k = key
            for idx in key:
                if not 1 <= idx <= dim:
                    raise ValueError(f"index {idx} in {key} out of range 1..{dim}")
            vec = as_vector(value, dim)
            if len({i, j, k}) < 3:
                if any(v != 0 for v in vec):
                    raise ValueError(f"[e{i}, e{j}, e{k}] repeats an argument but is nonzero")
                continue
            order = sorted(range(3), key=lambda t: key[t])
            canon = tuple(key[t] for t in order)
            canon_vec = _perm_sign(order) * vec
            if canon in seen:
                if any(a != b for a, b in zip(seen[canon], canon_vec)):
                    raise ValueError(
                        f"[e{i}, e{j}, e{k}] conflicts with the antisymmetric extension of "
                        f"[e{canon[0]}, e{canon[1]}, e{canon[2]}]"
                    )
                continue
            seen[canon] = canon_vec
            for p in permutations(range(3)):
                c[tuple(canon[t] - 1 for t in p)] = _perm_sign(p) * canon_vec
        return cls(c)

    def generators(self) -> list[tuple[tuple[int, int, int], np.ndarray]]:
        """Nonzero ``[e_i, e_j, e_k]`` for ``i < j < k`` (1-based)."""
        n = self.dim
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    v = self.c[i, j, k]
                    if any(x != 0 for x in v):
                        out.append(((i + 1, j + 1, k + 1), v.copy()))
        return out

    def eval(self, x, y, z) -> np.ndarray:
        n = self.dim
        x, y, z = (as_vector(v, n) for v in (x, y, z))
        return np.einsum("i,j,k,ijkl->l", x, y, z, self.c)

    def compose(self, alpha) -> TriBracket:
        """Structure constants of ``alpha ∘ [·,·,·]``."""
        alpha = as_matrix(alpha, self.dim)
        return TriBracket(np.einsum("lm,ijkm->ijkl", alpha, self.c))

    def __eq__(self, other):
        if not isinstance(other, TriBracket):
            return NotImplemented
        return self.c.shape == other.c.shape and bool(np.all(self.c == other.c))

    __hash__ = None

    def __repr__(self):
        gens = ", ".join(f"[e{i},e{j},e{k}]={list(map(str, v))}" for (i, j, k), v in self.generators())
        return f"TriBracket(dim={self.dim}, {gens or 'abelian'})"


@dataclass(frozen=True, eq=False)
class HomTriAlgebra:
    """``(L, [·,·,·], α)``; axioms are checked on demand, not at construction."""

    bracket: TriBracket
    alpha: np.ndarray
    name: str | None = None

    def __post_init__(self):
        alpha = as_matrix(self.alpha, self.bracket.dim)
        alpha.flags.writeable = False
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def from_generators(cls, dim, products, alpha=None, name=None) -> HomTriAlgebra:
        b = TriBracket.from_generators(dim, products)
        return cls(b, identity(dim) if alpha is None else alpha, name)

    @property
    def dim(self) -> int:
        return self.bracket.dim

    @property
    def c(self) -> np.ndarray:
        return self.bracket.c

    @cached_property
    def multiplicative(self) -> bool:
        return multiplicative_residual(self).passed

    def with_alpha(self, alpha) -> HomTriAlgebra:
        return HomTriAlgebra(self.bracket, alpha, self.name)

    def __repr__(self):
        return f"HomTriAlgebra({self.name or ''} {self.bracket!r}, alpha={self.alpha.tolist()})"


def bracket_eval(alg: HomTriAlgebra, x, y, z) -> np.ndarray:
    return alg.bracket.eval(x, y, z)


def skew_residual(b: TriBracket | HomTriAlgebra) -> Check:
    """Defect of ``μ(1 + σ12) = 0`` and ``μ(1 + σ23) = 0``."""
    c = b.c
    r12 = max_abs(c + np.swapaxes(c, 0, 1))
    r23 = max_abs(c + np.swapaxes(c, 1, 2))
    return Check.exact("skew-symmetry", max(r12, r23))


def hom_jacobi_tensor(alg: HomTriAlgebra) -> np.ndarray:
    """``[α x1, α x2, [x3, x4, x5]]`` composed with ``1 - ω1 - ω2 - ω3``.

    Entry ``[i1, ..., i5, l]`` is the ``e_l`` coefficient on the basis tuple.
    """
    c, a = alg.c, alg.alpha
    c_alpha = np.einsum("ap,bq,abul->pqul", a, a, c)
    t = np.einsum("pqul,stvu->pqstvl", c_alpha, c)
    out = t.copy()
    for perm in OMEGA_PERMUTATIONS.values():
        # (T∘ω)[x] = T[x_perm]; numpy transposes by the inverse permutation
        inv = list(np.argsort([p - 1 for p in perm])) + [5]
        out = out - np.transpose(t, inv)
    return out


def hom_jacobi_residual(alg: HomTriAlgebra) -> Check:
    return Check.exact("hom-jacobi", max_abs(hom_jacobi_tensor(alg)))


def morphism_residual(b: TriBracket, phi) -> object:
    """Max magnitude of ``φ[e_i,e_j,e_k] - [φ e_i, φ e_j, φ e_k]``."""
    phi = as_matrix(phi, b.dim)
    lhs = np.einsum("lm,ijkm->ijkl", phi, b.c)
    rhs = np.einsum("ai,bj,ck,abcl->ijkl", phi, phi, phi, b.c)
    return max_abs(lhs - rhs)


def multiplicative_residual(alg: HomTriAlgebra) -> Check:
    return Check.exact("multiplicativity", morphism_residual(alg.bracket, alg.alpha))


def _all_brackets(c, x, y, z) -> np.ndarray:
    """``[X e_i, Y e_j, Z e_k]`` for all basis triples, as ``[i, j, k, l]``."""
    return np.einsum("ai,bj,ck,abcl->ijkl", x, y, z, c)


def derivation_residual(alg: HomTriAlgebra, D, k: int) -> Check:
    """Defect of ``D`` being an ``α^k``-derivation (commutation included)."""
    n = alg.dim
    D = as_matrix(D, n)
    ak = matrix_power(alg.alpha, k)
    lhs = np.einsum("lm,ijkm->ijkl", D, alg.c)
    rhs = (
        _all_brackets(alg.c, D, ak, ak)
        + _all_brackets(alg.c, ak, D, ak)
        + _all_brackets(alg.c, ak, ak, D)
    )
    leibniz = max_abs(lhs - rhs)
    commute = max_abs(D.dot(alg.alpha) - alg.alpha.dot(D))
    return Check.exact(f"alpha^{k}-derivation", max(leibniz, commute))


def _fixed_residual(alg: HomTriAlgebra, v: np.ndarray):
    return max_abs(alg.alpha.dot(v) - v)


def inner_derivation(alg: HomTriAlgebra, x, y, k: int) -> np.ndarray:
    """Matrix of ``z ↦ [x, y, α^k z]`` for α-fixed ``x`` and ``y``."""
    n = alg.dim
    x, y = as_vector(x, n), as_vector(y, n)
    res = max(_fixed_residual(alg, x), _fixed_residual(alg, y))
    if res != 0:
        raise ResidualError("inner derivations need alpha(x) = x and alpha(y) = y", res)
    ak = matrix_power(alg.alpha, k)
    left = np.einsum("i,j,ijml->lm", x, y, alg.c)
    return left.dot(ak)


def ad1(alg: HomTriAlgebra, x, y) -> np.ndarray:
    """Matrix of ``z ↦ [α x, α y, z]``."""
    n = alg.dim
    ax = alg.alpha.dot(as_vector(x, n))
    ay = alg.alpha.dot(as_vector(y, n))
    return np.einsum("i,j,ijml->lm", ax, ay, alg.c)


def twist(b: TriBracket | HomTriAlgebra, phi, name: str | None = None) -> HomTriAlgebra:
    """``L_φ = (L, φ ∘ [·,·,·], φ)`` for an endomorphism ``φ`` of a 3-Lie algebra."""
    if isinstance(b, HomTriAlgebra):
        name = name or b.name
        b = b.bracket
    phi = as_matrix(phi, b.dim)
    res = morphism_residual(b, phi)
    if res != 0:
        raise ResidualError("twisting map is not an algebra endomorphism", res)
    return HomTriAlgebra(b.compose(phi), phi, name)


def check_algebra(alg: HomTriAlgebra) -> VerificationReport:
    report = VerificationReport()
    report.add(skew_residual(alg.bracket))
    report.add(hom_jacobi_residual(alg))
    report.add(multiplicative_residual(alg))
    return report

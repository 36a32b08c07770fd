"""Representations (Hom-modules), cochains and coboundary operators.

A representation of a multiplicative 3-Hom-Lie algebra ``L`` on ``V`` is a
skew map ``ρ : L ∧ L → gl(V)`` together with ``A ∈ gl(V)``. It is stored as
an object array ``rho[i, j]`` of ``m×m`` matrices (``ρ(e_i, e_j)``), which
the constructor requires to be antisymmetric in ``(i, j)``.

The identity checks are done with sparse dict-of-rows products: the local
representations on ``L⊗L⊗L`` have ``m = n**3`` and are mostly zero, so dense
object-array matmuls would dominate the cost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .homlie import HomTriAlgebra, ad1
from .report import Check
from .scalars import ZERO, magnitude
from .tensorcore import (
    as_array,
    as_matrix,
    basis_vector,
    kron,
    matrix_power,
    max_abs,
    zeros,
)

__all__ = [
    "Representation",
    "Cochain",
    "rep_residuals",
    "adjoint_rep",
    "local_rep",
    "is_cochain",
    "coboundary",
    "one_cocycle_residual",
    "coboundary_squared_residual",
]


# -- sparse helpers -----------------------------------------------------------

def _sparse(m: np.ndarray) -> dict[int, dict[int, object]]:
    rows: dict[int, dict[int, object]] = {}
    for (r, c), v in np.ndenumerate(m):
        if v != 0:
            rows.setdefault(r, {})[c] = v
    return rows


def _sp_mul(x: dict, y: dict) -> dict:
    out: dict[int, dict[int, object]] = {}
    for r, row in x.items():
        acc: dict[int, object] = {}
        for k, v in row.items():
            yrow = y.get(k)
            if not yrow:
                continue
            for c, w in yrow.items():
                acc[c] = acc.get(c, ZERO) + v * w
        acc = {c: v for c, v in acc.items() if v != 0}
        if acc:
            out[r] = acc
    return out


def _sp_axpy(acc: dict, coeff, x: dict) -> None:
    """``acc += coeff * x`` in place."""
    if coeff == 0:
        return
    for r, row in x.items():
        arow = acc.setdefault(r, {})
        for c, v in row.items():
            arow[c] = arow.get(c, ZERO) + coeff * v


def _sp_max_abs(x: dict):
    best = ZERO
    for row in x.values():
        for v in row.values():
            m = magnitude(v)
            if m > best:
                best = m
    return best


def _combine(mats: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """``Σ coeffs[i, j] mats[i, j]`` for an ``(n, n)`` array of matrices."""
    return np.tensordot(coeffs, mats, axes=([0, 1], [0, 1]))


# -- representations ----------------------------------------------------------

class Representation:
    """``(V, A, ρ)`` over a 3-Hom-Lie algebra; ``rho`` has shape ``(n, n, m, m)``."""

    __slots__ = ("algebra", "A", "rho", "name")

    def __init__(self, algebra: HomTriAlgebra, A, rho, name: str | None = None):
        A = as_matrix(A)
        m = A.shape[0]
        rho = as_array(rho)
        n = algebra.dim
        if rho.shape != (n, n, m, m):
            raise ValueError(f"rho must have shape {(n, n, m, m)}, got {rho.shape}")
        defect = max_abs(rho + np.swapaxes(rho, 0, 1))
        if defect != 0:
            raise ValueError(f"rho is not antisymmetric in its two arguments (defect {defect})")
        A.flags.writeable = False
        rho.flags.writeable = False
        for attr, value in (("algebra", algebra), ("A", A), ("rho", rho), ("name", name)):
            object.__setattr__(self, attr, value)

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    @classmethod
    def from_pairs(cls, algebra: HomTriAlgebra, A, pairs, name: str | None = None) -> Representation:
        """Build from ``{(i, j): matrix}`` on 1-based pairs ``i < j``."""
        A = as_matrix(A)
        n, m = algebra.dim, A.shape[0]
        rho = zeros((n, n, m, m))
        for (i, j), mat in pairs.items():
            if not (1 <= i < j <= n):
                raise ValueError(f"pair ({i}, {j}) must satisfy 1 <= i < j <= {n}")
            mat = as_matrix(mat, m)
            rho[i - 1, j - 1] = mat
            rho[j - 1, i - 1] = -mat
        return cls(algebra, A, rho, name)

    @property
    def dim(self) -> int:
        """Dimension ``m`` of the module ``V``."""
        return self.A.shape[0]

    def __call__(self, x, y) -> np.ndarray:
        """The matrix ``ρ(x, y)`` for vectors ``x, y`` of ``L``."""
        n = self.algebra.dim
        x, y = as_array(x), as_array(y)
        return _combine(self.rho, np.outer(x, y).reshape(n, n))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Representation{label}(L dim={self.algebra.dim}, V dim={self.dim})"


def rep_residuals(alg: HomTriAlgebra, rep: Representation) -> list[Check]:
    """Exact defects of the three representation identities.

    (i)   ρ(αa, αb) A = A ρ(a, b)
    (ii)  ρ(αb, αc)ρ(a, d) + ρ(αc, αa)ρ(b, d) - ρ([a,b,c], αd) A + ρ(αa, αb)ρ(c, d) = 0
    (iii) ρ(αc, αd)ρ(a, b) - ρ(αa, αb)ρ(c, d) + ρ([a,b,c], αd) A + ρ(αc, [a,b,d]) A = 0

    Each residual is the maximum over basis tuples; the identities are used
    exactly in the form above.
    """
    n, m = alg.dim, rep.dim
    if rep.algebra.dim != n:
        raise ValueError("representation and algebra dimensions differ")
    a, c = alg.alpha, alg.c
    rho = rep.rho
    # P_alpha[i, j] = ρ(α e_i, α e_j); P_mixed[u, d] = ρ(e_u, α e_d)
    p_alpha = np.einsum("ui,vj,uvxy->ijxy", a, a, rho)
    p_mixed = np.einsum("vd,uvxy->udxy", a, rho)
    A = _sparse(rep.A)
    P = {(i, j): _sparse(rho[i, j]) for i in range(n) for j in range(n)}
    PA = {(i, j): _sparse(p_alpha[i, j]) for i in range(n) for j in range(n)}
    QA = {(u, d): _sp_mul(_sparse(p_mixed[u, d]), A) for u in range(n) for d in range(n)}

    res_i = ZERO
    for i, j in itertools.product(range(n), repeat=2):
        diff = _sp_mul(PA[i, j], A)
        _sp_axpy(diff, -1, _sp_mul(A, P[i, j]))
        res_i = max(res_i, _sp_max_abs(diff))

    prod: dict = {}

    def pp(i, j, k, l):
        key = (i, j, k, l)
        if key not in prod:
            prod[key] = _sp_mul(PA[i, j], P[k, l])
        return prod[key]

    res_ii = res_iii = ZERO
    for i, j, k, l in itertools.product(range(n), repeat=4):
        two = {}
        _sp_axpy(two, 1, pp(j, k, i, l))
        _sp_axpy(two, 1, pp(k, i, j, l))
        _sp_axpy(two, 1, pp(i, j, k, l))
        for u in range(n):
            _sp_axpy(two, -c[i, j, k, u], QA[u, l])
        res_ii = max(res_ii, _sp_max_abs(two))

        three = {}
        _sp_axpy(three, 1, pp(k, l, i, j))
        _sp_axpy(three, -1, pp(i, j, k, l))
        for u in range(n):
            _sp_axpy(three, c[i, j, k, u], QA[u, l])
            # ρ(α e_k, e_u) = -ρ(e_u, α e_k)
            _sp_axpy(three, -c[i, j, l, u], QA[u, k])
        res_iii = max(res_iii, _sp_max_abs(three))

    return [
        Check.exact("representation (i)", res_i),
        Check.exact("representation (ii)", res_ii),
        Check.exact("representation (iii)", res_iii),
    ]


def _ad1_stack(alg: HomTriAlgebra) -> np.ndarray:
    n = alg.dim
    out = zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = ad1(alg, basis_vector(i + 1, n), basis_vector(j + 1, n))
    return out


def adjoint_rep(alg: HomTriAlgebra) -> Representation:
    """``(L, α, ad_1)`` with ``ad_1(x, y)(z) = [αx, αy, z]``."""
    return Representation(alg, alg.alpha, _ad1_stack(alg), name="adjoint")


def local_rep(alg: HomTriAlgebra, slot: int) -> Representation:
    """``ad_1`` in tensor position ``slot`` and ``α`` in the other two, on ``L⊗L⊗L``.

    ``L⊗L⊗L`` is flattened in C order, so ``e_p⊗e_q⊗e_s`` has index
    ``(p*n + q)*n + s`` (0-based), matching ``numpy.kron``.
    """
    if slot not in (1, 2, 3):
        raise ValueError(f"slot must be 1, 2 or 3, got {slot}")
    n = alg.dim
    a = alg.alpha
    ads = _ad1_stack(alg)
    m = n ** 3
    rho = zeros((n, n, m, m))
    for i in range(n):
        for j in range(i + 1, n):
            factors = [a, a, a]
            factors[slot - 1] = ads[i, j]
            mat = kron(*factors)
            rho[i, j] = mat
            rho[j, i] = -mat
    return Representation(alg, kron(a, a, a), rho, name=f"local slot {slot}")


# -- cochains -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Cochain:
    """Multilinear ``f : L^{⊗p} → V``; ``f[i1, ..., ip]`` is the image of a basis tuple."""

    p: int
    f: np.ndarray

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("cochain arity must be non-negative")
        f = as_array(self.f)
        if f.ndim != self.p + 1 or len(set(f.shape[:-1])) > 1:
            raise ValueError(f"arity-{self.p} cochain needs shape (n,)*{self.p} + (m,), got {f.shape}")
        f.flags.writeable = False
        object.__setattr__(self, "f", f)

    @classmethod
    def from_linear_map(cls, mat) -> Cochain:
        """A 1-cochain from an ``m×n`` matrix acting on column vectors."""
        mat = as_array(mat)
        return cls(1, mat.T.copy())

    def __call__(self, *args) -> np.ndarray:
        if len(args) != self.p:
            raise ValueError(f"expected {self.p} arguments, got {len(args)}")
        out = self.f
        for v in args:
            out = np.tensordot(as_array(v), out, axes=([0], [0]))
        return out


def _f_alpha(f: np.ndarray, alpha: np.ndarray, p: int) -> np.ndarray:
    """Coefficients of ``f ∘ α^{⊗p}``."""
    out = f
    for axis in range(p):
        # (f∘α)[.., i, ..] = Σ_k α[k, i] f[.., k, ..]
        out = np.moveaxis(np.tensordot(alpha, out, axes=([0], [axis])), 0, axis)
    return out


def is_cochain(f: Cochain, rep: Representation) -> Check:
    """Defect of ``A ∘ f = f ∘ α^{⊗p}`` on all basis tuples."""
    lhs = np.tensordot(f.f, rep.A, axes=([f.p], [1]))
    rhs = _f_alpha(f.f, rep.algebra.alpha, f.p)
    return Check.exact("cochain", max_abs(lhs - rhs))


def coboundary(f: Cochain, rep: Representation) -> Cochain:
    """``δ f`` of arity ``p + 2``, transcribed term by term from the defining formulas.

    Odd ``p = 2n - 1`` evaluates at ``(x_1, ..., x_{2n+1})``; even ``p = 2n``
    at ``(y, x_1, ..., x_{2n+1})``, with ``y`` carried in front. The ρ-terms
    twist their arguments by ``α^{n-1}`` (odd) or ``α^n`` (even); in the double
    sum the inserted bracket ``[x_{2k-1}, x_{2k}, x_j]`` is left untwisted
    while every other surviving argument gets one ``α``.
    """
    p = f.p
    if p < 1:
        raise ValueError("the coboundary is defined for arity >= 1")
    alg = rep.algebra
    dim, m = alg.dim, rep.dim
    a = alg.alpha
    even = p % 2 == 0
    half = p // 2 if even else (p + 1) // 2
    ak = matrix_power(a, half if even else half - 1)
    c = alg.c
    rho_twisted = np.einsum("ui,vj,uvxy->ijxy", ak, ak, rep.rho)  # ρ(α^k e_i, α^k e_j)
    f_coeffs = f.f

    def fv(args):
        out = f_coeffs
        for v in args:
            out = np.tensordot(v, out, axes=([0], [0]))
        return out

    def f_basis(idx):
        return f_coeffs[tuple(idx)]

    out = zeros((dim,) * (p + 2) + (m,))
    for tup in itertools.product(range(dim), repeat=p + 2):
        pre = list(tup[:1]) if even else []
        xs = list(tup[1:]) if even else list(tup)
        # xs is 0-based storage of x_1..x_{2n+1}; x_t lives at xs[t-1]
        X = lambda t: xs[t - 1]  # noqa: E731
        N = half
        val = zeros(m)
        # ρ(x_{2n}, x_{2n+1}) f(x_1, ..., x_{2n-1})
        val = val + rho_twisted[X(2 * N), X(2 * N + 1)].dot(f_basis(pre + xs[: 2 * N - 1]))
        # - ρ(x_{2n-1}, x_{2n+1}) f(x_1, ..., x_{2n-2}, x_{2n})
        val = val - rho_twisted[X(2 * N - 1), X(2 * N + 1)].dot(
            f_basis(pre + xs[: 2 * N - 2] + [X(2 * N)])
        )
        for k in range(1, N + 1):
            sign = 1 if (N + k) % 2 == 0 else -1
            rest = [xs[t - 1] for t in range(1, 2 * N + 2) if t not in (2 * k - 1, 2 * k)]
            val = val + sign * rho_twisted[X(2 * k - 1), X(2 * k)].dot(f_basis(pre + rest))
        for k in range(1, N + 1):
            sign = 1 if (N + k + 1) % 2 == 0 else -1
            for j in range(2 * k + 1, 2 * N + 2):
                args = [a[:, i] for i in pre]
                for t in range(1, 2 * N + 2):
                    if t in (2 * k - 1, 2 * k):
                        continue
                    if t == j:
                        args.append(c[X(2 * k - 1), X(2 * k), X(j)])
                    else:
                        args.append(a[:, X(t)])
                val = val + sign * fv(args)
        out[tup] = val
    return Cochain(p + 2, out)


def one_cocycle_residual(f, rep: Representation) -> Check:
    """Defect of ``f[x,y,z] = ρ(x,y)f(z) + ρ(y,z)f(x) + ρ(z,x)f(y)`` on basis triples.

    ``f`` is a :class:`Cochain` of arity 1 or an ``(n, m)`` coefficient array
    whose row ``i`` is ``f(e_i)``.
    """
    F = f.f if isinstance(f, Cochain) else as_array(f)
    alg = rep.algebra
    c, rho = alg.c, rep.rho
    lhs = np.einsum("ijku,ux->ijkx", c, F)
    rhs = (
        np.einsum("ijxy,ky->ijkx", rho, F)
        + np.einsum("jkxy,iy->ijkx", rho, F)
        + np.einsum("kixy,jy->ijkx", rho, F)
    )
    return Check.exact("1-cocycle", max_abs(lhs - rhs))


def coboundary_squared_residual(f: Cochain, rep: Representation) -> Check:
    """Diagnostic: magnitude of ``δ(δ f)``. Not expected to vanish in general."""
    dd = coboundary(coboundary(f, rep), rep)
    return Check.exact("coboundary squared", max_abs(dd.f))

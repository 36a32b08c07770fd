"""r-matrices and the 3-Lie classical Hom-Yang-Baxter bracket.

An r-matrix is an ``n x n`` matrix ``R`` standing for
``r = Σ_{a,b} R[a, b] e_a ⊗ e_b``; its "legs" ``x_i`` and ``y_i`` are the
first and second tensor factors.

Brackets of embedded copies ``r_pq`` follow an occupancy rule: the three
factors must all meet in one slot, whose three legs are bracketed in factor
order; every other slot holds exactly one leg, to which ``α`` is applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .homlie import HomTriAlgebra, ad1
from .report import Check
from .tensorcore import (
    Tensor,
    apply_slot_maps,
    as_matrix,
    basis_vector,
    insert_at,
    matrix_power,
    max_abs,
    zeros,
)

__all__ = [
    "RMatrix",
    "EmbeddedFactor",
    "alpha_invariance_residual",
    "r_skew_residual",
    "embedded_triple_bracket",
    "chybe_bracket",
    "chybe_bracket_expanded",
    "VARIANT_TERMS",
    "PRINTED_VARIANT1_TERMS",
    "CONDITION31_SUMMANDS",
    "chybe_residual",
    "CHYBE_TERMS",
    "variant_brackets",
    "condition31_terms",
    "condition31_residual",
    "twisted_r",
]


class RMatrix:
    """Element of ``L ⊗ L`` stored as its coefficient matrix."""

    __slots__ = ("R",)

    def __init__(self, R):
        arr = as_matrix(R)
        arr.flags.writeable = False
        object.__setattr__(self, "R", arr)

    def __setattr__(self, name, value):
        raise AttributeError("RMatrix is immutable")

    @property
    def dim(self) -> int:
        return self.R.shape[0]

    @classmethod
    def zero(cls, dim: int) -> RMatrix:
        return cls(zeros((dim, dim)))

    @classmethod
    def skew(cls, dim: int, coeffs: dict[tuple[int, int], object]) -> RMatrix:
        """``Σ r_ij (e_i⊗e_j - e_j⊗e_i)`` over the given 1-based pairs."""
        R = zeros((dim, dim))
        for (i, j), v in coeffs.items():
            R[i - 1, j - 1] += v
            R[j - 1, i - 1] -= v
        return cls(R)

    def as_tensor(self) -> Tensor:
        return Tensor(self.R)

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.R.shape == other.R.shape and bool(np.all(self.R == other.R))

    __hash__ = None

    def __repr__(self):
        return f"RMatrix({[[str(v) for v in row] for row in self.R]})"


def _R(r) -> np.ndarray:
    return r.R if isinstance(r, RMatrix) else as_matrix(r)


@dataclass(frozen=True)
class EmbeddedFactor:
    """``r_pq`` inside ``L^{⊗slots}``: first leg at slot ``p``, second at ``q``."""

    r: object
    p: int
    q: int
    slots: int = 4

    def __post_init__(self):
        if not (1 <= self.p <= self.slots and 1 <= self.q <= self.slots) or self.p == self.q:
            raise ValueError(f"invalid embedding r_{self.p}{self.q} in {self.slots} slots")


def alpha_invariance_residual(r, alpha) -> Check:
    """Defect of ``α^{⊗2}(r) = r``, i.e. ``α R αᵀ - R``."""
    R = _R(r)
    alpha = as_matrix(alpha, R.shape[0])
    return Check.exact("alpha-invariance of r", max_abs(alpha.dot(R).dot(alpha.T) - R))


def r_skew_residual(r) -> Check:
    R = _R(r)
    return Check.exact("skew-symmetry of r", max_abs(R + R.T))


def _occupancy(factors: Sequence[EmbeddedFactor]) -> int:
    """The triply occupied slot; raises if the pattern is not bracketable."""
    slots = {f.slots for f in factors}
    if len(slots) != 1:
        raise ValueError("embedded factors disagree on the number of slots")
    total = slots.pop()
    count = [0] * (total + 1)
    for f in factors:
        count[f.p] += 1
        count[f.q] += 1
    triple = [s for s in range(1, total + 1) if count[s] == 3]
    bad = [s for s in range(1, total + 1) if count[s] not in (1, 3)]
    if len(triple) != 1 or bad:
        pattern = ", ".join(f"r_{f.p}{f.q}" for f in factors)
        raise ValueError(
            f"[{pattern}]: need one slot shared by all three factors and every other "
            f"slot filled exactly once (occupancy {count[1:]})"
        )
    return triple[0]


def embedded_triple_bracket(f1: EmbeddedFactor, f2: EmbeddedFactor, f3: EmbeddedFactor,
                            alg: HomTriAlgebra) -> Tensor:
    """``[r_{p1 q1}, r_{p2 q2}, r_{p3 q3}]`` under the occupancy rule.

    The factors may carry different r-matrices, which makes the result
    trilinear in ``(f1.r, f2.r, f3.r)``.
    """
    factors = (f1, f2, f3)
    t = _occupancy(factors)
    alpha = alg.alpha
    legs = []
    singles = []
    for f in factors:
        R = _R(f.r)
        if R.shape[0] != alg.dim:
            raise ValueError(f"r has dimension {R.shape[0]}, algebra {alg.dim}")
        # rows: the leg sitting in the bracket slot; columns: α of the other leg
        M = R if f.p == t else R.T
        legs.append(M.dot(alpha.T))
        singles.append(f.q if f.p == t else f.p)
    res = np.einsum("uvwl,ux,vy,wz->lxyz", alg.c, *legs)
    current = [t] + singles
    order = [current.index(s) for s in range(1, f1.slots + 1)]
    return Tensor(np.transpose(res, order))


def _signed_sum(terms, r, alg) -> Tensor:
    total = Tensor.zeros(alg.dim, 4)
    for sign, pattern in terms:
        factors = [EmbeddedFactor(r, p, q) for p, q in pattern]
        term = embedded_triple_bracket(*factors, alg)
        total = total + term if sign > 0 else total - term
    return total


CHYBE_TERMS = (
    (+1, ((1, 2), (1, 3), (1, 4))),
    (+1, ((1, 2), (2, 3), (2, 4))),
    (+1, ((1, 3), (2, 3), (3, 4))),
    (+1, ((1, 4), (2, 4), (3, 4))),
)

# The last term of the first sum carries +: that is the sign the co-Jacobi
# expansion produces, and the only one giving [[r,r,r]]_1 = [[r,r,r]]^α for
# skew r. PRINTED_VARIANT1_TERMS keeps the displayed minus sign.
PRINTED_VARIANT1_TERMS = (
    (+1, ((1, 2), (1, 3), (1, 4))),
    (+1, ((1, 2), (2, 3), (2, 4))),
    (-1, ((1, 3), (3, 2), (3, 4))),
    (-1, ((1, 4), (4, 2), (4, 3))),
)

VARIANT_TERMS = (
    (
        (+1, ((1, 2), (1, 3), (1, 4))),
        (+1, ((1, 2), (2, 3), (2, 4))),
        (-1, ((1, 3), (3, 2), (3, 4))),
        (+1, ((1, 4), (4, 2), (4, 3))),
    ),
    (
        (+1, ((1, 2), (3, 1), (1, 4))),
        (-1, ((2, 1), (3, 2), (2, 4))),
        (-1, ((3, 1), (3, 2), (3, 4))),
        (-1, ((4, 1), (4, 2), (3, 4))),
    ),
    (
        (-1, ((1, 2), (1, 3), (4, 1))),
        (+1, ((2, 1), (2, 3), (4, 2))),
        (-1, ((3, 1), (3, 2), (4, 3))),
        (-1, ((4, 1), (4, 2), (4, 3))),
    ),
)

# every displayed term must fit the occupancy rule
for _terms in (CHYBE_TERMS, PRINTED_VARIANT1_TERMS) + VARIANT_TERMS:
    for _sign, _pattern in _terms:
        _occupancy([EmbeddedFactor(None, p, q) for p, q in _pattern])


def chybe_bracket_expanded(r, alg: HomTriAlgebra) -> Tensor:
    """``[[r, r, r]]^α`` from the four fully expanded sums, without embeddings."""
    R = _R(r)
    a, c = alg.alpha, alg.c
    N = R.dot(a.T)  # N[a, s]: x-leg index a, α(y-leg) coefficient s
    P = R.T.dot(a.T)  # P[b, s]: y-leg index b, α(x-leg) coefficient s
    t1 = np.einsum("uvwl,ux,vy,wz->lxyz", c, N, N, N)
    t2 = np.einsum("uvwl,us,vy,wz->slyz", c, P, N, N)
    t3 = np.einsum("uvwl,us,vt,wz->stlz", c, P, P, N)
    t4 = np.einsum("uvwl,us,vt,wq->stql", c, P, P, P)
    return Tensor(t1 + t2 + t3 + t4)


def chybe_bracket(r, alg: HomTriAlgebra, cross_check: bool = True) -> Tensor:
    """``[[r,r,r]]^α = [r12,r13,r14] + [r12,r23,r24] + [r13,r23,r34] + [r14,r24,r34]``."""
    out = _signed_sum(CHYBE_TERMS, r, alg)
    if cross_check:
        direct = chybe_bracket_expanded(r, alg)
        if out != direct:
            raise AssertionError("embedded-factor and expanded CHYBE brackets disagree")
    return out


def chybe_residual(r, alg: HomTriAlgebra) -> Check:
    return Check.exact("CHYBE [[r,r,r]]^alpha", chybe_bracket(r, alg).max_abs())


def variant_brackets(r, alg: HomTriAlgebra, printed: bool = False) -> tuple[Tensor, Tensor, Tensor]:
    """The three signed sums ``[[r,r,r]]^α_1``, ``_2``, ``_3``.

    ``printed=True`` uses the displayed sign on the last term of the first sum.
    """
    terms = VARIANT_TERMS
    if printed:
        terms = (PRINTED_VARIANT1_TERMS,) + VARIANT_TERMS[1:]
    return tuple(_signed_sum(t, r, alg) for t in terms)


# (variant, insertion slot, ad_1 slot, ad_1 argument order) per summand;
# "ix" is ad_1(x_i, x), "xi" is ad_1(x, x_i)
CONDITION31_SUMMANDS = (
    (1, 2, 1, "ix"),
    (1, 1, 2, "xi"),
    (2, 5, 3, "xi"),
    (2, 4, 3, "ix"),
    (2, 3, 4, "xi"),
    (3, 5, 4, "ix"),
    (3, 4, 5, "xi"),
    (3, 3, 5, "ix"),
)


def condition31_terms(r, alg: HomTriAlgebra, x, variants=None) -> Tensor:
    """Left side of the eight-summand condition for the vector ``x``.

    ``variants`` lets callers substitute precomputed (or replaced) brackets.
    """
    R = _R(r)
    n = alg.dim
    x = np.asarray(x, dtype=object)
    if variants is None:
        variants = variant_brackets(R, alg)
    alpha = alg.alpha
    total = Tensor.zeros(n, 5)
    for which, ins, ad_slot, order in CONDITION31_SUMMANDS:
        B = variants[which - 1]
        inner = Tensor.zeros(n, 5)
        for a in range(n):
            row = R[a]
            if all(v == 0 for v in row):
                continue
            e_a = basis_vector(a + 1, n)
            op = ad1(alg, e_a, x) if order == "ix" else ad1(alg, x, e_a)
            # Σ_b R[a, b] α(e_b), the α(y_i) belonging to x_i = e_a
            w = alpha.dot(row)
            maps = [None] * 5
            maps[ad_slot - 1] = op
            inner = inner + apply_slot_maps(maps, insert_at(B, w, ins))
        maps = [alpha] * 5
        maps[ad_slot - 1] = None
        total = total + apply_slot_maps(maps, inner)
    return total


def condition31_residual(r, alg: HomTriAlgebra, printed: bool = False) -> Check:
    n = alg.dim
    variants = variant_brackets(r, alg, printed=printed)
    worst = max(
        condition31_terms(r, alg, basis_vector(m + 1, n), variants).max_abs()
        for m in range(n)
    )
    return Check.exact("r-matrix compatibility condition", worst)


def twisted_r(r, alpha, n: int) -> RMatrix:
    """``(α^{⊗2})^n (r) = α^n R (α^n)ᵀ``."""
    if n < 0:
        raise ValueError("twist power must be non-negative")
    R = _R(r)
    an = matrix_power(as_matrix(alpha, R.shape[0]), n)
    return RMatrix(an.dot(R).dot(an.T))

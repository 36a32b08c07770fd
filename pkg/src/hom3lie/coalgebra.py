"""3-Hom-Lie coalgebras: cobrackets ``Δ : L → L⊗L⊗L`` and their identities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .homlie import HomTriAlgebra, ad1
from .report import Check
from .tensorcore import (
    OMEGA_PERMUTATIONS,
    Tensor,
    apply_slot_maps,
    as_array,
    as_matrix,
    as_vector,
    basis_vector,
    max_abs,
    zeros,
)

__all__ = [
    "CoBracket",
    "HomTriCoalgebra",
    "coskew_residual",
    "cojacobi_tensor",
    "cojacobi_residual",
    "comultiplicative_residual",
    "ad1_cubed",
    "derivation_compat_residual",
]


class CoBracket:
    """``Δ`` by coefficients: ``d[i, p, q, s]`` is the ``e_p⊗e_q⊗e_s`` part of ``Δ(e_i)``."""

    __slots__ = ("d",)

    def __init__(self, d):
        arr = as_array(d)
        if arr.ndim != 4 or len(set(arr.shape)) != 1:
            raise ValueError(f"cobracket coefficients need shape (n, n, n, n), got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "d", arr)

    def __setattr__(self, name, value):
        raise AttributeError("CoBracket is immutable")

    @property
    def dim(self) -> int:
        return self.d.shape[0]

    @classmethod
    def zero(cls, dim: int) -> CoBracket:
        return cls(zeros((dim,) * 4))

    @classmethod
    def from_images(cls, images) -> CoBracket:
        """Build from ``[Δ(e_1), ..., Δ(e_n)]`` given as arity-3 tensors."""
        return cls(np.stack([as_array(t) for t in images]))

    def __call__(self, x) -> Tensor:
        x = as_vector(x.data if isinstance(x, Tensor) else x, self.dim)
        return Tensor(np.tensordot(x, self.d, axes=([0], [0])))

    def image(self, i: int) -> Tensor:
        """``Δ(e_i)`` for a 1-based basis index."""
        return Tensor(self.d[i - 1])

    def __add__(self, other: CoBracket) -> CoBracket:
        return CoBracket(self.d + other.d)

    def __sub__(self, other: CoBracket) -> CoBracket:
        return CoBracket(self.d - other.d)

    def __eq__(self, other):
        if not isinstance(other, CoBracket):
            return NotImplemented
        return self.d.shape == other.d.shape and bool(np.all(self.d == other.d))

    __hash__ = None

    def __repr__(self):
        return f"CoBracket(dim={self.dim}, " + "; ".join(
            f"Δ(e{i + 1})={Tensor(self.d[i])!r}" for i in range(self.dim)
        ) + ")"


@dataclass(frozen=True, eq=False)
class HomTriCoalgebra:
    cobracket: CoBracket
    alpha: np.ndarray

    def __post_init__(self):
        alpha = as_matrix(self.alpha, self.cobracket.dim)
        alpha.flags.writeable = False
        object.__setattr__(self, "alpha", alpha)

    @property
    def dim(self) -> int:
        return self.cobracket.dim


def _d(x) -> np.ndarray:
    return x.cobracket.d if isinstance(x, HomTriCoalgebra) else x.d


def coskew_residual(d: CoBracket | HomTriCoalgebra) -> Check:
    D = _d(d)
    r12 = max_abs(D + np.swapaxes(D, 1, 2))
    r23 = max_abs(D + np.swapaxes(D, 2, 3))
    return Check.exact("co-skew-symmetry", max(r12, r23))


def _inverse_perm(perm) -> list[int]:
    inv = [0] * len(perm)
    for pos, src in enumerate(perm):
        inv[src - 1] = pos + 1
    return inv


def cojacobi_tensor(co: HomTriCoalgebra, literal: bool = False) -> np.ndarray:
    """``(1 - ω1 - ω2 - ω3)(α⊗α⊗Δ)Δ(e_i)`` stacked over ``i``.

    The ω's act through their transposes (``ω_m^T = ω_m^{-1}``), which makes
    the identity the exact dual of the Hom-Jacobi identity: the cobracket dual
    to any 3-Hom-Lie bracket satisfies it. ``literal=True`` applies the
    permutations as written to the tensor instead.
    """
    D, a = co.cobracket.d, co.alpha
    # third slot of Δ(e_i) expands through Δ into three slots
    t = np.einsum("Pp,Qq,ipqs,suvw->iPQuvw", a, a, D, D)
    out = t.copy()
    for perm in OMEGA_PERMUTATIONS.values():
        p = list(perm) if literal else _inverse_perm(perm)
        out = out - np.transpose(t, [0] + p)
    return out


def cojacobi_residual(co: HomTriCoalgebra, literal: bool = False) -> Check:
    name = "hom-cojacobi (literal permutations)" if literal else "hom-cojacobi"
    return Check.exact(name, max_abs(cojacobi_tensor(co, literal)))


def comultiplicative_residual(co: HomTriCoalgebra) -> Check:
    """Defect of ``Δ ∘ α = α^{⊗3} ∘ Δ`` on the basis."""
    D, a = co.cobracket.d, co.alpha
    lhs = np.einsum("ji,jpqs->ipqs", a, D)
    rhs = np.einsum("Pp,Qq,Ss,ipqs->iPQS", a, a, a, D)
    return Check.exact("comultiplicativity", max_abs(lhs - rhs))


def ad1_cubed(alg: HomTriAlgebra, x, y, t) -> Tensor:
    """``(ad_1⊗α⊗α + α⊗ad_1⊗α + α⊗α⊗ad_1)(x, y)`` applied to ``t``."""
    op = ad1(alg, x, y)
    a = alg.alpha
    return (
        apply_slot_maps([op, a, a], t)
        + apply_slot_maps([a, op, a], t)
        + apply_slot_maps([a, a, op], t)
    )


def derivation_compat_residual(alg: HomTriAlgebra, d: CoBracket) -> Check:
    """Defect of ``Δ[x,y,z] = ad^(3)(x,y)Δ(z) + ad^(3)(y,z)Δ(x) + ad^(3)(z,x)Δ(y)``."""
    n = alg.dim
    e = [basis_vector(i + 1, n) for i in range(n)]
    images = [d.image(i + 1) for i in range(n)]
    worst = 0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = d(alg.c[i, j, k])
                rhs = (
                    ad1_cubed(alg, e[i], e[j], images[k])
                    + ad1_cubed(alg, e[j], e[k], images[i])
                    + ad1_cubed(alg, e[k], e[i], images[j])
                )
                worst = max(worst, (lhs - rhs).max_abs())
    return Check.exact("derivation compatibility", worst)

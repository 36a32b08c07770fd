"""Coboundary local cocycle bialgebras built from an r-matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coalgebra import (
    CoBracket,
    HomTriCoalgebra,
    cojacobi_residual,
    comultiplicative_residual,
    coskew_residual,
)
from .homlie import HomTriAlgebra, hom_jacobi_residual, multiplicative_residual, skew_residual
from .repcoh import local_rep, one_cocycle_residual
from .report import Check, ResidualError, VerificationReport
from .ybe import (
    RMatrix,
    _R,
    alpha_invariance_residual,
    chybe_residual,
    condition31_residual,
    r_skew_residual,
)

__all__ = [
    "LocalCocycleBialgebra",
    "delta_components_unchecked",
    "build_delta_components",
    "verify_local_cocycle",
    "assemble_coboundary",
]


def delta_components_unchecked(alg: HomTriAlgebra, r) -> tuple[CoBracket, CoBracket, CoBracket]:
    """The three cobrackets induced by ``r = Σ x_i ⊗ y_i``.

    Δ1(x) = Σ [x, x_i, x_j] ⊗ α(y_j) ⊗ α(y_i)
    Δ2(x) = Σ α(y_i) ⊗ [x, x_i, x_j] ⊗ α(y_j)
    Δ3(x) = Σ α(y_j) ⊗ α(y_i) ⊗ [x, x_i, x_j]
    """
    R = _R(r)
    if R.shape[0] != alg.dim:
        raise ValueError(f"r has dimension {R.shape[0]}, algebra {alg.dim}")
    N = R.dot(alg.alpha.T)  # N[a, s]: coefficient of e_s in α(y) paired with x = e_a
    c = alg.c
    d1 = np.einsum("mabl,bs,at->mlst", c, N, N)
    d2 = np.einsum("mabl,as,bt->mslt", c, N, N)
    d3 = np.einsum("mabl,bs,at->mstl", c, N, N)
    return CoBracket(d1), CoBracket(d2), CoBracket(d3)


def build_delta_components(alg: HomTriAlgebra, r) -> tuple[CoBracket, CoBracket, CoBracket]:
    """Like :func:`delta_components_unchecked`, rejecting a non-skew total ``Δ``."""
    parts = delta_components_unchecked(alg, r)
    total = parts[0] + parts[1] + parts[2]
    check = coskew_residual(total)
    if not check.passed:
        raise ResidualError("induced cobracket is not skew-symmetric", check.residual)
    return parts


def verify_local_cocycle(alg: HomTriAlgebra, d1: CoBracket, d2: CoBracket, d3: CoBracket) -> VerificationReport:
    """Check that ``Δs`` is a 1-cocycle for the local representation in slot ``s``."""
    n = alg.dim
    report = VerificationReport()
    for slot, d in enumerate((d1, d2, d3), start=1):
        if d.dim != n:
            raise ValueError(f"component {slot} has dimension {d.dim}, algebra {n}")
        check = one_cocycle_residual(d.d.reshape(n, n ** 3), local_rep(alg, slot))
        report.add(Check(f"local cocycle (slot {slot})", check.residual, check.passed))
    return report


@dataclass(frozen=True, eq=False)
class LocalCocycleBialgebra:
    """An algebra, an induced coalgebra and the report that certifies (or refutes) them."""

    alg: HomTriAlgebra
    co: HomTriCoalgebra
    components: tuple[CoBracket, CoBracket, CoBracket]
    r: RMatrix | None
    report: VerificationReport

    @property
    def delta(self) -> CoBracket:
        return self.co.cobracket

    @property
    def passed(self) -> bool:
        return self.report.passed


def assemble_coboundary(alg: HomTriAlgebra, r) -> LocalCocycleBialgebra:
    """Build ``Δ`` from ``r`` and verify every bialgebra condition.

    Nothing is assumed: the algebra axioms, the hypotheses on ``r`` and all
    properties of the resulting coalgebra are checked in turn, and failures
    are recorded in the report rather than raised.
    """
    r = r if isinstance(r, RMatrix) else RMatrix(r)
    if r.dim != alg.dim:
        raise ValueError(f"r has dimension {r.dim}, algebra {alg.dim}")
    report = VerificationReport()
    report.add(skew_residual(alg.bracket))
    report.add(hom_jacobi_residual(alg))
    report.add(multiplicative_residual(alg))
    report.add(r_skew_residual(r))
    report.add(alpha_invariance_residual(r, alg.alpha))
    report.add(chybe_residual(r, alg))

    parts = delta_components_unchecked(alg, r)
    try:
        build_delta_components(alg, r)
        report.add(Check.exact("delta construction", 0))
    except ResidualError as err:
        report.add(Check("delta construction", err.residual, False, str(err)))
    total = parts[0] + parts[1] + parts[2]
    co = HomTriCoalgebra(total, alg.alpha)
    report.add(coskew_residual(co))
    report.add(comultiplicative_residual(co))
    report.add(cojacobi_residual(co))
    report.extend(verify_local_cocycle(alg, *parts).checks)
    report.add(condition31_residual(r, alg))
    return LocalCocycleBialgebra(alg, co, parts, r, report)

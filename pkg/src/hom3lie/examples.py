"""Bundled algebras and claim-by-claim verification of the two worked examples.

``ex31`` is the 3-dimensional 3-Lie algebra ``[e1, e2, e3] = e1`` and
``ex32`` its 4-dimensional extension with the same single product. Both
examples are parametric families: a twist ``α`` with free entries ``a_ij``
subject to a few displayed constraint equations, and an r-matrix. Every
displayed claim becomes its own report entry, so a claim that fails as
printed shows up with its exact residual instead of aborting the run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bialgebra import assemble_coboundary, delta_components_unchecked
from .homlie import HomTriAlgebra, hom_jacobi_residual, morphism_residual
from .report import Check, VerificationReport
from .scalars import ONE, ZERO, format_scalar, to_scalar
from .tensorcore import as_array, insert_at, wedge3, zeros
from .ybe import RMatrix, alpha_invariance_residual, chybe_bracket

__all__ = [
    "ex31_algebra",
    "ex32_algebra",
    "a4_algebra",
    "abelian_algebra",
    "BUNDLED",
    "EX31_DEFAULTS",
    "EX32_DEFAULTS",
    "ex31_alpha",
    "ex32_alpha",
    "ex31_r",
    "ex32_r",
    "ExampleResult",
    "verify_example",
]


def ex31_algebra(alpha=None) -> HomTriAlgebra:
    """``[e1, e2, e3] = e1`` on a 3-dimensional space."""
    return HomTriAlgebra.from_generators(3, {(1, 2, 3): [1, 0, 0]}, alpha, name="ex31")


def ex32_algebra(alpha=None) -> HomTriAlgebra:
    """``[e1, e2, e3] = e1`` on a 4-dimensional space."""
    return HomTriAlgebra.from_generators(4, {(1, 2, 3): [1, 0, 0, 0]}, alpha, name="ex32")


def a4_algebra(alpha=None) -> HomTriAlgebra:
    """The simple 4-dimensional 3-Lie algebra ``[e_i, e_j, e_k] = Σ ε_ijkl e_l``."""
    products = {
        (2, 3, 4): [1, 0, 0, 0],
        (1, 3, 4): [0, -1, 0, 0],
        (1, 2, 4): [0, 0, 1, 0],
        (1, 2, 3): [0, 0, 0, -1],
    }
    return HomTriAlgebra.from_generators(4, products, alpha, name="A4")


def abelian_algebra(dim: int = 3, alpha=None) -> HomTriAlgebra:
    return HomTriAlgebra.from_generators(dim, {}, alpha, name=f"abelian{dim}")


BUNDLED = {
    "ex31": ex31_algebra,
    "ex32": ex32_algebra,
    "a4": a4_algebra,
    "abelian": abelian_algebra,
}


# Defaults: the identity twist with r = e2∧e3 for the 3-dimensional family;
# for the 4-dimensional family a11 = 1, a12 = -1, a13 = 0, a22 = 1, a23 = 1,
# which satisfies all three of its constraint equations.
EX31_DEFAULTS = {
    "a11": "1", "a12": "0", "a13": "0",
    "a22": "1", "a23": "0", "a32": "0", "a33": "1",
    "r12": "0", "r13": "0", "r23": "1",
}
EX32_DEFAULTS = {"a11": "1", "a12": "-1", "a13": "0", "a22": "1", "a23": "1"}


def _params(defaults: dict, overrides: dict | None) -> dict:
    merged = dict(defaults)
    if overrides:
        unknown = set(overrides) - set(defaults)
        if unknown:
            raise ValueError(f"unknown parameters: {', '.join(sorted(unknown))}")
        merged.update(overrides)
    return {k: to_scalar(v) for k, v in merged.items()}


def ex31_alpha(p: dict) -> np.ndarray:
    """Columns: ``α e1 = a11 e1``, ``α e2 = a12 e1 + a22 e2 + a32 e3``, ``α e3 = a13 e1 + a23 e2 + a33 e3``."""
    return as_array([
        [p["a11"], p["a12"], p["a13"]],
        [0, p["a22"], p["a23"]],
        [0, p["a32"], p["a33"]],
    ])


def ex31_r(p: dict) -> RMatrix:
    return RMatrix.skew(3, {(1, 2): p["r12"], (1, 3): p["r13"], (2, 3): p["r23"]})


def ex32_alpha(p: dict) -> np.ndarray:
    """Columns: ``α e1 = a11 e1``, ``α e2 = a12 e1 + a22 e2 + e3 + e4``,
    ``α e3 = a13 e1 + a23 e2 + 2 e3 + 2 e4``, ``α e4 = 0``."""
    return as_array([
        [p["a11"], p["a12"], p["a13"], 0],
        [0, p["a22"], p["a23"], 0],
        [0, 1, 2, 0],
        [0, 1, 2, 0],
    ])


def ex32_r() -> RMatrix:
    """``-e3⊗e4 + e4⊗e3 + Σ_{i<j} (e_i⊗e_j - e_j⊗e_i)``; the (3, 4) pair cancels."""
    coeffs = {(i, j): ONE for i in range(1, 5) for j in range(i + 1, 5)}
    coeffs[(3, 4)] = ZERO
    return RMatrix.skew(4, coeffs)


@dataclass
class ExampleResult:
    which: str
    params: dict
    algebra: HomTriAlgebra
    r: RMatrix
    report: VerificationReport

    def header(self) -> dict:
        return {k: format_scalar(v) for k, v in sorted(self.params.items())}


def _e(i: int, n: int) -> np.ndarray:
    v = zeros(n)
    v[i - 1] = ONE
    return v


def _delta_checks(report, alg, r, component_forms, total_forms) -> None:
    parts = delta_components_unchecked(alg, r)
    total = parts[0] + parts[1] + parts[2]
    n = alg.dim
    for slot in (1, 2, 3):
        for basis, expected in component_forms(slot):
            got = parts[slot - 1].image(basis)
            report.add(Check.exact(f"Delta_{slot}(e{basis}) closed form", (got - expected).max_abs()))
    for label, residual in total_forms(total, n):
        report.add(Check.exact(label, residual))


def _bialgebra_check(alg, r) -> Check:
    """Summarize the full coboundary pipeline as one entry (worst residual)."""
    bialg = assemble_coboundary(alg, r)
    failed = bialg.report.failed()
    worst = max((c.residual for c in failed), default=ZERO)
    detail = "failed: " + ", ".join(c.name for c in failed) if failed else None
    return Check("local cocycle bialgebra (all conditions)", worst, not failed, detail)


def _verify_ex31(p: dict) -> ExampleResult:
    alpha = ex31_alpha(p)
    r = ex31_r(p)
    base = ex31_algebra()
    report = VerificationReport()
    a = rr = p
    report.add(Check.exact("constraint a22*a33 - a23*a32 = 1", abs(a["a22"] * a["a33"] - a["a23"] * a["a32"] - 1)))
    u = rr["r12"] * a["a11"] - rr["r23"] * a["a13"]
    w = rr["r13"] * a["a11"] + rr["r23"] * a["a12"]
    report.add(Check.exact("constraint on r12", abs(u * a["a22"] + w * a["a23"] - rr["r12"])))
    report.add(Check.exact("constraint on r13", abs(u * a["a32"] + w * a["a33"] - rr["r13"])))
    report.add(Check.exact("alpha is a 3-Lie morphism", morphism_residual(base.bracket, alpha)))
    alg = HomTriAlgebra(base.bracket.compose(alpha), alpha, "ex31 twisted")
    report.add(Check.exact("twisted algebra hom-jacobi", hom_jacobi_residual(alg).residual))
    report.add(alpha_invariance_residual(r, alpha))
    report.add(Check.exact("CHYBE in the 3-Lie algebra", chybe_bracket(r, base).max_abs()))
    report.add(Check.exact("CHYBE in the twisted algebra", chybe_bracket(r, alg).max_abs()))

    n = 3
    a11e1 = a["a11"] * _e(1, n)
    coeff = {1: rr["r23"], 2: -rr["r13"], 3: rr["r12"]}

    def component_forms(slot):
        sign = -1 if slot % 2 else 1
        for basis in (1, 2, 3):
            # Δ_i(e1) = (-1)^i r23 r ⊗_i a11 e1, Δ_i(e2) = (-1)^{i+1} r13 (...), Δ_i(e3) = (-1)^i r12 (...)
            yield basis, insert_at(r.as_tensor(), a11e1, slot) * (sign * coeff[basis])

    wedge = wedge3(_e(1, n), _e(2, n), _e(3, n))

    def total_forms(total, n):
        expected = {
            1: -rr["r23"] ** 2 * a["a11"],
            2: rr["r13"] * rr["r23"] * a["a11"],
            3: -rr["r12"] * rr["r23"] * a["a11"],
        }
        for basis, c in expected.items():
            yield f"Delta(e{basis}) closed form", (total.image(basis) - wedge * c).max_abs()

    _delta_checks(report, alg, r, component_forms, total_forms)
    report.add(_bialgebra_check(alg, r))
    return ExampleResult("ex31", p, alg, r, report)


def _verify_ex32(p: dict) -> ExampleResult:
    alpha = ex32_alpha(p)
    r = ex32_r()
    base = ex32_algebra()
    a = p
    report = VerificationReport()
    report.add(Check.exact(
        "constraint a11*(a22 + a23) + a12*a23 - a22*a13 = 1",
        abs(a["a11"] * (a["a22"] + a["a23"]) + a["a12"] * a["a23"] - a["a22"] * a["a13"] - 1),
    ))
    report.add(Check.exact("constraint 3*a11 + 2*a12 - a13 = 1", abs(3 * a["a11"] + 2 * a["a12"] - a["a13"] - 1)))
    report.add(Check.exact("constraint 2*a22 - a23 = 1", abs(2 * a["a22"] - a["a23"] - 1)))
    report.add(Check.exact("alpha is a 3-Lie morphism", morphism_residual(base.bracket, alpha)))
    alg = HomTriAlgebra(base.bracket.compose(alpha), alpha, "ex32 twisted")
    report.add(Check.exact("twisted algebra hom-jacobi", hom_jacobi_residual(alg).residual))
    report.add(alpha_invariance_residual(r, alpha))
    report.add(Check.exact("CHYBE in the 3-Lie algebra", chybe_bracket(r, base).max_abs()))
    report.add(Check.exact("CHYBE in the twisted algebra", chybe_bracket(r, alg).max_abs()))

    n = 4
    a11e1 = a["a11"] * _e(1, n)
    rel = {1: 1, 2: -1, 3: 1}

    def component_forms(slot):
        sign = -1 if slot % 2 else 1
        for basis in (1, 2, 3):
            yield basis, insert_at(r.as_tensor(), a11e1, slot) * (sign * rel[basis])

    def total_forms(total, n):
        d1, d2, d3, d4 = (total.image(i) for i in range(1, 5))
        yield "Delta(e1) = Delta(e3)", (d1 - d3).max_abs()
        yield "Delta(e1) = -Delta(e2)", (d1 + d2).max_abs()
        yield "Delta(e4) = 0", d4.max_abs()
        expected = (wedge3(_e(1, n), _e(2, n), _e(3, n)) + wedge3(_e(1, n), _e(2, n), _e(4, n))) * a["a11"]
        yield "Delta(e2) closed form", (d2 - expected).max_abs()

    _delta_checks(report, alg, r, component_forms, total_forms)
    report.add(_bialgebra_check(alg, r))
    return ExampleResult("ex32", p, alg, r, report)


def verify_example(which: str, params: dict | None = None) -> ExampleResult:
    """Evaluate every displayed claim of a bundled example as a separate check.

    ``params`` overrides the defaults (values are exact rational strings).
    """
    if which == "ex31":
        return _verify_ex31(_params(EX31_DEFAULTS, params))
    if which == "ex32":
        return _verify_ex32(_params(EX32_DEFAULTS, params))
    raise ValueError(f"unknown example {which!r}; choose ex31 or ex32")

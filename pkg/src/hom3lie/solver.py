"""Search for solutions of the CHYBE ``[[r, r, r]]^α = 0``.

The pipeline never lets floating point certify anything:

1. parametrize skew (optionally α-invariant) ``r`` exactly, by a nullspace;
2. expand ``[[r, r, r]]^α`` into exact cubic polynomials of the parameters;
3. minimize the sum of squares numerically from random starts;
4. round each candidate to nearby rationals and verify it exactly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .homlie import HomTriAlgebra, TriBracket, morphism_residual
from .report import Check, ResidualError, VerificationReport
from .scalars import ONE, ZERO, mpq
from .tensorcore import as_matrix, identity, kron, max_abs, nullspace, rref, zeros
from .ybe import (
    CHYBE_TERMS,
    EmbeddedFactor,
    RMatrix,
    _occupancy,
    alpha_invariance_residual,
    chybe_bracket,
    r_skew_residual,
)

__all__ = [
    "SkewParametrization",
    "ResidualPolynomialSystem",
    "invariant_skew_subspace",
    "residual_polynomials",
    "minimize_residual",
    "rationalize_and_verify",
    "morphism_constraint_residual",
    "SolveResult",
    "solve_chybe",
]


@dataclass(frozen=True, eq=False)
class SkewParametrization:
    """``r(t) = Σ_a t_a B_a`` over an exact basis of skew ``n×n`` matrices."""

    dim: int
    basis: tuple[np.ndarray, ...]
    alpha: np.ndarray | None = None

    @property
    def d(self) -> int:
        return len(self.basis)

    def r(self, params) -> RMatrix:
        """The r-matrix at exact (or exactly convertible) parameters."""
        if len(params) != self.d:
            raise ValueError(f"expected {self.d} parameters, got {len(params)}")
        R = zeros((self.dim, self.dim))
        for t, b in zip(params, self.basis):
            R = R + mpq(t) * b
        return RMatrix(R)


def _skew_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def invariant_skew_subspace(alpha=None, dim: int | None = None) -> SkewParametrization:
    """Exact basis of ``{r skew : α^{⊗2}(r) = r}``; ``alpha=None`` drops the invariance.

    Coordinates are the upper-triangle entries ``r_ij`` (``i < j``). The basis
    is read off the reduced row echelon form of the nullspace, so it is
    canonical for a given ``α``.
    """
    if alpha is None:
        if dim is None:
            raise ValueError("need either alpha or dim")
        n = dim
    else:
        alpha = as_matrix(alpha, dim)
        n = alpha.shape[0]
    pairs = _skew_pairs(n)
    # column for pair (i, j): the n×n matrix e_i∧e_j flattened
    embed = zeros((n * n, len(pairs)))
    for col, (i, j) in enumerate(pairs):
        embed[i * n + j, col] = ONE
        embed[j * n + i, col] = -ONE
    if alpha is None or not pairs:
        coords = [v for v in identity(len(pairs))]
    else:
        # vec(α R αᵀ) = (α⊗α) vec(R) in C order
        constraint = (kron(alpha, alpha) - identity(n * n)).dot(embed)
        null = nullspace(constraint)
        if null:
            red, _ = rref(np.array(null, dtype=object))
            coords = [row for row in red if any(v != 0 for v in row)]
        else:
            coords = []
    basis = tuple(embed.dot(v).reshape(n, n) for v in coords)
    for b in basis:
        b.flags.writeable = False
    return SkewParametrization(n, basis, alpha)


def _chybe_trilinear_stack(basis, alg: HomTriAlgebra) -> np.ndarray:
    """``T[a, b, c] = [[B_a, B_b, B_c]]^α``: the CHYBE bracket with one basis element per factor.

    Same occupancy rule as :func:`embedded_triple_bracket`, batched over the
    basis so each of the four terms is a single einsum.
    """
    d, n = len(basis), alg.dim
    total = zeros((d, d, d) + (n,) * 4)
    if d == 0:
        return total
    stack = np.array([np.asarray(b, dtype=object) for b in basis], dtype=object).reshape(d, n, n)
    alpha_t = alg.alpha.T
    for sign, pattern in CHYBE_TERMS:
        factors = [EmbeddedFactor(None, p, q) for p, q in pattern]
        t = _occupancy(factors)
        legs, singles = [], []
        for f in factors:
            M = stack if f.p == t else np.transpose(stack, (0, 2, 1))
            legs.append(np.einsum("axy,yz->axz", M, alpha_t))
            singles.append(f.q if f.p == t else f.p)
        # contract one leg at a time; a single object-dtype einsum would not factor the sum
        res = np.tensordot(legs[0], alg.c, axes=([1], [0]))    # a x | v w l
        res = np.tensordot(legs[1], res, axes=([1], [2]))      # b y | a x w l
        res = np.tensordot(legs[2], res, axes=([1], [4]))      # c z | b y a x l
        res = np.transpose(res, (4, 2, 0, 6, 5, 3, 1))         # a b c l x y z
        current = [t] + singles
        order = [0, 1, 2] + [3 + current.index(s) for s in range(1, 5)]
        total = total + sign * np.transpose(res, order)
    return total


@dataclass(eq=False)
class ResidualPolynomialSystem:
    """Polynomials ``F_E(t)``, one per entry ``E`` of ``[[r(t), r(t), r(t)]]^α``.

    ``monomials[k]`` is a sorted tuple of parameter indices (``(a, b, c)``
    stands for ``t_a t_b t_c``; the CHYBE only produces cubics) and
    ``coefficients[k]`` holds its exact coefficient in every polynomial.
    """

    param: SkewParametrization
    monomials: list[tuple[int, ...]]
    coefficients: np.ndarray
    _float_coeffs: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=object)
        if coeffs.ndim != 2 or coeffs.shape[0] != len(self.monomials):
            raise ValueError("need one coefficient row per monomial")
        self.coefficients = coeffs
        self._float_coeffs = np.array([[float(v) for v in row] for row in coeffs]).reshape(coeffs.shape)

    @property
    def d(self) -> int:
        return self.param.d

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coefficients.flat)

    def evaluate_exact(self, params) -> np.ndarray:
        """Exact values at rational parameters (one per polynomial)."""
        params = [mpq(p) for p in params]
        out = zeros(self.coefficients.shape[1])
        for mono, coeff in zip(self.monomials, self.coefficients):
            value = ONE
            for i in mono:
                value = value * params[i]
            out = out + value * coeff
        return out

    def _monomial_values(self, t) -> np.ndarray:
        return np.array([np.prod([t[i] for i in mono]) for mono in self.monomials])

    def values(self, t) -> np.ndarray:
        """Float values of all polynomials at ``t``."""
        return self._monomial_values(t).dot(self._float_coeffs)

    def objective(self, t) -> float:
        """``Σ_E F_E(t)²``."""
        F = self.values(t)
        return float(F.dot(F))

    def jacobian(self, t) -> np.ndarray:
        """``J[a, E] = ∂F_E / ∂t_a``."""
        dm = np.zeros((self.d, len(self.monomials)))
        for k, mono in enumerate(self.monomials):
            for pos, a in enumerate(mono):
                dm[a, k] += np.prod([t[i] for q, i in enumerate(mono) if q != pos])
        return dm.dot(self._float_coeffs)

    def gradient(self, t) -> np.ndarray:
        """Analytic gradient of :meth:`objective`."""
        return 2.0 * self.jacobian(t).dot(self.values(t))

    def max_residual(self, t) -> float:
        F = self.values(t)
        return float(np.max(np.abs(F))) if F.size else 0.0


def residual_polynomials(alg: HomTriAlgebra, param: SkewParametrization,
                         checks: int = 3, seed: int = 0) -> ResidualPolynomialSystem:
    """Expand ``[[r, r, r]]^α`` over ``param`` and cross-check it at random points.

    The CHYBE bracket is trilinear in the three copies of ``r``, so the
    coefficient of ``t_a t_b t_c`` is the sum of the trilinear form over the
    distinct orderings of ``(B_a, B_b, B_c)``.
    """
    if param.dim != alg.dim:
        raise ValueError(f"parametrization has dimension {param.dim}, algebra {alg.dim}")
    d, n = param.d, alg.dim
    cache = _chybe_trilinear_stack(param.basis, alg)
    monomials, rows = [], []
    for mono in itertools.combinations_with_replacement(range(d), 3):
        coeff = zeros((n,) * 4)
        for p in set(itertools.permutations(mono)):
            coeff = coeff + cache[p]
        monomials.append(mono)
        rows.append(coeff.reshape(-1))
    coefficients = np.empty((len(rows), n ** 4), dtype=object)
    for k, row in enumerate(rows):
        coefficients[k] = row
    system = ResidualPolynomialSystem(param, monomials, coefficients)

    rng = random.Random(seed)
    for _ in range(checks if d else 0):
        point = [mpq(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(d)]
        direct = chybe_bracket(param.r(point), alg).data
        if max_abs(direct - system.evaluate_exact(point).reshape((n,) * 4)) != 0:
            raise RuntimeError(f"polynomial expansion disagrees with the CHYBE bracket at {point}")
    return system


def minimize_residual(system: ResidualPolynomialSystem, restarts: int = 32, tol: float = 1e-12,
                      max_iters: int = 2000, seed: int = 0, box: float = 2.0,
                      dedup: float = 1e-6) -> list[np.ndarray]:
    """Gradient descent from uniform starts in ``[-box, box]^d``.

    Steps follow the Barzilai-Borwein rule with a backtracking (Armijo)
    fallback whenever the objective does not decrease. A point is kept when
    ``max |F_E| < tol``; kept points closer than ``dedup`` are merged and the
    result is sorted lexicographically.
    """
    d = system.d
    if d < 1:
        return []
    rng = np.random.default_rng(seed)
    found: list[np.ndarray] = []
    for _ in range(restarts):
        t = rng.uniform(-box, box, size=d)
        t = _descend(system, t, tol, max_iters)
        if system.max_residual(t) < tol and not any(np.linalg.norm(t - s) < dedup for s in found):
            found.append(t)
    found.sort(key=lambda v: tuple(v))
    return found


def _descend(system: ResidualPolynomialSystem, t: np.ndarray, tol: float, max_iters: int) -> np.ndarray:
    f = system.objective(t)
    g = system.gradient(t)
    step = 1e-2
    for _ in range(max_iters):
        if system.max_residual(t) < tol or not np.any(g):
            break
        while True:
            cand = t - step * g
            fc = system.objective(cand)
            if fc <= f - 1e-4 * step * g.dot(g) or step < 1e-300:
                break
            step *= 0.5
        gc = system.gradient(cand)
        s, y = cand - t, gc - g
        sy = s.dot(y)
        step = s.dot(s) / sy if sy > 0 else step * 2.0
        t, f, g = cand, fc, gc
    return t


def rationalize_and_verify(alg: HomTriAlgebra, param: SkewParametrization, point,
                           max_denominator: int = 1000) -> RMatrix:
    """Round ``point`` by continued fractions and return ``r`` if it solves exactly.

    Raises :class:`ResidualError` carrying the exact residual otherwise.
    """
    coords = [Fraction(float(x)).limit_denominator(max_denominator) for x in point]
    r = param.r([mpq(c.numerator, c.denominator) for c in coords])
    residual = chybe_bracket(r, alg).max_abs()
    if residual != 0:
        raise ResidualError("rationalized point does not solve the CHYBE", residual)
    for check in (r_skew_residual(r), alpha_invariance_residual(r, alg.alpha)):
        if not check.passed:
            raise ResidualError(f"rationalized point fails {check.name}", check.residual)
    return r


def morphism_constraint_residual(b: TriBracket | HomTriAlgebra, alpha) -> Check:
    """Defect of ``α`` being an endomorphism of the bracket."""
    bracket = b.bracket if isinstance(b, HomTriAlgebra) else b
    return Check.exact("morphism", morphism_residual(bracket, alpha))


@dataclass
class SolveResult:
    param: SkewParametrization
    system: ResidualPolynomialSystem
    candidates: list[np.ndarray]
    solutions: list[RMatrix]
    report: VerificationReport


def solve_chybe(alg: HomTriAlgebra, restarts: int = 32, tol: float = 1e-12, max_iters: int = 2000,
                max_denominator: int = 1000, seed: int = 0, invariant: bool = True) -> SolveResult:
    """Full pipeline: parametrize, expand, minimize, rationalize, verify.

    When the polynomial system vanishes identically every point of the
    subspace solves the equation; the basis elements are then reported as
    the (exactly verified) solutions.
    """
    param = invariant_skew_subspace(alg.alpha if invariant else None, alg.dim)
    system = residual_polynomials(alg, param, seed=seed)
    report = VerificationReport()
    solutions: list[RMatrix] = []

    def accept(r: RMatrix, label: str) -> None:
        if any(r == s for s in solutions):
            return
        residual = chybe_bracket(r, alg).max_abs()
        report.add(Check.exact(f"solution {len(solutions) + 1} ({label})", residual))
        solutions.append(r)

    candidates: list[np.ndarray] = []
    if param.d and system.is_zero():
        for k, b in enumerate(param.basis):
            accept(RMatrix(b), f"basis element {k + 1}")
    elif param.d:
        candidates = minimize_residual(system, restarts, tol, max_iters, seed)
        for point in candidates:
            try:
                r = rationalize_and_verify(alg, param, point, max_denominator)
            except ResidualError:
                continue
            accept(r, "rationalized")
    if not solutions:
        report.add(Check("no verified solutions", 0, True))
    return SolveResult(param, system, candidates, solutions, report)

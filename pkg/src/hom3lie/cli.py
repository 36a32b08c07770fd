"""``hom3lie`` command line: verification pipelines with JSON reports.

Exit codes: 0 when every check passes, 1 when at least one check fails,
2 for malformed input (the message names the offending file position).
The JSON report goes to stdout (or ``--out``); a readable table goes to
stderr unless ``--json-only`` is given.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import click

from . import __version__
from .bialgebra import assemble_coboundary
from .examples import verify_example
from .homlie import HomTriAlgebra, check_algebra, hom_jacobi_residual, skew_residual
from .io import (
    InputError,
    algebra_from_document,
    algebra_to_document,
    alpha_from_document,
    cobracket_to_document,
    dumps,
    load_json,
    rmatrix_from_document,
    rmatrix_to_document,
)
from .report import Check, VerificationReport
from .scalars import ScalarParseError
from .solver import morphism_constraint_residual, solve_chybe
from .tensorcore import identity
from .ybe import (
    RMatrix,
    alpha_invariance_residual,
    chybe_residual,
    condition31_residual,
    r_skew_residual,
    twisted_r,
    variant_brackets,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _emit(ctx: click.Context, command: str, report: VerificationReport, payload: dict | None = None) -> None:
    doc = {"tool_version": __version__, "command": command}
    doc.update(report.to_dict())
    if payload:
        doc.update(payload)
    text = dumps(doc)
    out = ctx.obj["out"]
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)
    if not ctx.obj["json_only"]:
        click.echo(report.format_table(), err=True)
    ctx.exit(EXIT_OK if report.passed else EXIT_FAILED)


def _input_errors(fn):
    """Map malformed-input exceptions to exit code 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (InputError, ScalarParseError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)

    return wrapper


def _load_algebra(path) -> HomTriAlgebra:
    doc = load_json(path)
    try:
        return algebra_from_document(doc)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_r(path, dim: int):
    doc = load_json(path)
    try:
        r = rmatrix_from_document(doc)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if r.dim != dim:
        raise InputError(f"{path}: dim: r-matrix has dimension {r.dim}, algebra has {dim}")
    return r


def _load_alpha(path, dim: int):
    doc = load_json(path)
    try:
        return alpha_from_document(doc, dim)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _output_options(fn):
    """``--out`` and ``--json-only``, shared by every subcommand."""

    def store(key):
        def callback(ctx, param, value):
            ctx.ensure_object(dict)
            ctx.obj[key] = value
            return value
        return callback

    fn = click.option("--json-only", is_flag=True, expose_value=False, callback=store("json_only"),
                      help="Do not print the table on stderr.")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False), default=None, expose_value=False,
                      callback=store("out"), help="Write the JSON report here instead of stdout.")(fn)
    return fn


@click.group()
@click.version_option(__version__, prog_name="hom3lie")
def main():
    """Exact verification tools for 3-Hom-Lie algebras and bialgebras."""


@main.command("check-algebra")
@click.argument("file", type=click.Path(dir_okay=False))
@_output_options
@click.pass_context
@_input_errors
def check_algebra_cmd(ctx, file):
    """Skew-symmetry, Hom-Jacobi identity and multiplicativity of FILE."""
    alg = _load_algebra(file)
    _emit(ctx, "check-algebra", check_algebra(alg))


@main.command("chybe")
@click.argument("file", type=click.Path(dir_okay=False))
@click.argument("rfile", type=click.Path(dir_okay=False))
@_output_options
@click.pass_context
@_input_errors
def chybe_cmd(ctx, file, rfile):
    """CHYBE residual and related brackets for the r-matrix in RFILE."""
    alg = _load_algebra(file)
    r = _load_r(rfile, alg.dim)
    report = VerificationReport()
    report.add(r_skew_residual(r))
    report.add(alpha_invariance_residual(r, alg.alpha))
    report.add(chybe_residual(r, alg))
    # the three variants are only expected to vanish for skew r; report them as diagnostics
    for k, t in enumerate(variant_brackets(r, alg), start=1):
        report.add(Check.exact(f"variant bracket {k}", t.max_abs()))
    report.add(condition31_residual(r, alg))
    _emit(ctx, "chybe", report)


@main.command("bialgebra")
@click.argument("file", type=click.Path(dir_okay=False))
@click.argument("rfile", type=click.Path(dir_okay=False))
@_output_options
@click.pass_context
@_input_errors
def bialgebra_cmd(ctx, file, rfile):
    """Build the coboundary bialgebra induced by RFILE and verify it."""
    alg = _load_algebra(file)
    r = _load_r(rfile, alg.dim)
    b = assemble_coboundary(alg, r)
    payload = {
        "r": rmatrix_to_document(r),
        "delta": cobracket_to_document(b.delta),
        "delta_components": [cobracket_to_document(d) for d in b.components],
    }
    _emit(ctx, "bialgebra", b.report, payload)


@main.command("twist")
@click.argument("file", type=click.Path(dir_okay=False))
@click.argument("alphafile", type=click.Path(dir_okay=False))
@click.option("--n", "power", type=click.IntRange(min=0), default=0, show_default=True,
              help="Check (alpha⊗alpha)^m(r) for m = 0..N.")
@click.option("--r", "rfile", type=click.Path(dir_okay=False), default=None,
              help="A solution of the untwisted equation to carry over.")
@_output_options
@click.pass_context
@_input_errors
def twist_cmd(ctx, file, alphafile, power, rfile):
    """Twist the 3-Lie algebra in FILE by the endomorphism in ALPHAFILE."""
    base = _load_algebra(file)
    alpha = _load_alpha(alphafile, base.dim)
    r = _load_r(rfile, base.dim) if rfile else None
    report = VerificationReport()
    plain = base.with_alpha(identity(base.dim))
    report.add(Check.exact("input skew-symmetry", skew_residual(plain.bracket).residual))
    report.add(Check.exact("input 3-Lie jacobi", hom_jacobi_residual(plain).residual))
    morph = report.add(morphism_constraint_residual(base.bracket, alpha))
    payload = {}
    if morph.passed:
        twisted = HomTriAlgebra(base.bracket.compose(alpha), alpha, base.name)
        report.extend(Check(f"twisted {c.name}", c.residual, c.passed) for c in check_algebra(twisted).checks)
        payload["algebra"] = algebra_to_document(twisted)
        if r is not None:
            report.add(Check.exact("r solves the untwisted equation", chybe_residual(r, plain).residual))
            solutions = []
            for m in range(power + 1):
                rm = twisted_r(r, alpha, m)
                report.add(Check.exact(f"twisted r (power {m}) solves CHYBE", chybe_residual(rm, twisted).residual))
                solutions.append(rmatrix_to_document(rm))
            payload["twisted_r"] = solutions
    _emit(ctx, "twist", report, payload)


@main.command("solve")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--alpha", "alphafile", type=click.Path(dir_okay=False), default=None,
              help="Replace the algebra's twist map by this one.")
@click.option("--restarts", type=click.IntRange(min=1), default=32, show_default=True)
@click.option("--tol", type=float, default=1e-12, show_default=True, help="Float residual accepted before rounding.")
@click.option("--max-iters", type=click.IntRange(min=1), default=2000, show_default=True)
@click.option("--max-denominator", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_output_options
@click.pass_context
@_input_errors
def solve_cmd(ctx, file, alphafile, restarts, tol, max_iters, max_denominator, seed):
    """Search the α-invariant skew r-matrices of FILE for exact CHYBE solutions."""
    alg = _load_algebra(file)
    if alphafile:
        alg = alg.with_alpha(_load_alpha(alphafile, alg.dim))
    result = solve_chybe(alg, restarts=restarts, tol=tol, max_iters=max_iters,
                         max_denominator=max_denominator, seed=seed)
    payload = {
        "subspace_dimension": result.param.d,
        "subspace_basis": [rmatrix_to_document(RMatrix(b)) for b in result.param.basis],
        "float_candidates": len(result.candidates),
        "solutions": [rmatrix_to_document(r) for r in result.solutions],
        "solver": {"restarts": restarts, "tol": tol, "max_iters": max_iters,
                   "max_denominator": max_denominator, "seed": seed},
    }
    _emit(ctx, "solve", result.report, payload)


@main.command("verify-example")
@click.argument("which", type=click.Choice(["ex31", "ex32"]))
@click.option("--params", "paramsfile", type=click.Path(dir_okay=False), default=None,
              help="JSON object overriding the default parameters (rational strings).")
@_output_options
@click.pass_context
@_input_errors
def verify_example_cmd(ctx, which, paramsfile):
    """Check every displayed claim of a bundled worked example."""
    params = None
    if paramsfile:
        params = load_json(paramsfile)
        if not isinstance(params, dict):
            raise InputError(f"{paramsfile}: expected an object of parameter strings")
        for key, value in params.items():
            if not isinstance(value, (str, int)) or isinstance(value, bool):
                raise InputError(f"{paramsfile}: {key}: expected a rational string, got {value!r}")
    try:
        result = verify_example(which, params)
    except ValueError as exc:
        raise InputError(f"{paramsfile}: {exc}") from exc
    payload = {
        "example": which,
        "parameters": result.header(),
        "algebra": algebra_to_document(result.algebra),
        "r": rmatrix_to_document(result.r),
    }
    _emit(ctx, "verify-example", result.report, payload)


if __name__ == "__main__":  # pragma: no cover
    main()

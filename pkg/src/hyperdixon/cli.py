"""Command-line interface: ``hyperdixon <command> [options]``.

Exit codes:
    0  success (every check within tolerance)
    1  an identity check failed (residual above tolerance)
    2  usage / configuration error
    3  domain error (argument outside the region of convergence)
    4  unsupported (i, j) cell
    5  pole (Gamma argument, printed coefficient or series denominator)
    6  slow convergence (series hit its term budget)
"""
from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction

import click

from .dixon import DixonCase, dixon_oracle, dixon_sum, table_records
from .errors import (
    ConfigError,
    DivisionByZeroError,
    DomainError,
    IndeterminateError,
    NotTerminatingError,
    PoleError,
    UnsupportedPairError,
)
from .series import PFQParams, SeriesControl, SeriesResult, eval_pfq
from .transform import (
    LIMITING_CASES,
    SPECIAL_CASES,
    GeneralTransformSpec,
    IdentityPair,
    TransformPoint,
    exton_general_lhs,
    exton_general_rhs,
    exton_lhs_theorem,
    exton_rhs_theorem,
    limiting_case,
    special_case,
)
from .verify import DEFAULT_SEED, SUITES, run_suite, to_csv, to_json, to_text, totals

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_UNSUPPORTED = 4
EXIT_POLE = 5
EXIT_SLOW = 6

# Checked in order; subclasses must precede their bases.
_ERROR_CODES = (
    (UnsupportedPairError, EXIT_UNSUPPORTED),
    (PoleError, EXIT_POLE),
    (IndeterminateError, EXIT_POLE),
    (DivisionByZeroError, EXIT_POLE),
    (DomainError, EXIT_DOMAIN),
    (NotTerminatingError, EXIT_DOMAIN),
    (ConfigError, EXIT_USAGE),
)


def parse_scalar(text: str) -> float:
    """Accept decimals and simple rationals such as ``-1/2``.

    Integers and rationals with an integer value come back as exact integral
    floats, so ``-2`` is recognised as a terminating parameter.
    """
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None


class Scalar(click.ParamType):
    name = "number"

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value
        try:
            return parse_scalar(str(value))
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class ScalarList(click.ParamType):
    name = "list"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        text = str(value).strip()
        if not text:
            return ()
        try:
            return tuple(parse_scalar(v) for v in text.split(","))
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


SCALAR = Scalar()
SCALAR_LIST = ScalarList()
FORMAT = click.Choice(["human", "json"])


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Exception as exc:
            for cls, code in _ERROR_CODES:
                if isinstance(exc, cls):
                    click.echo(f"error: {exc}", err=True)
                    sys.exit(code)
            raise

    return wrapper


def _result_dict(r: SeriesResult) -> dict:
    return {"value": r.value, "terms_used": r.terms_used, "status": r.status.value}


def _emit(fmt: str, doc: dict, human: list[str]) -> None:
    if fmt == "json":
        click.echo(json.dumps(doc, indent=1, sort_keys=True))
    else:
        click.echo("\n".join(human))


@click.group()
def cli() -> None:
    """Generalized hypergeometric series, Dixon sums and quadratic transforms."""


@cli.command("eval-pfq")
@click.option("--num", type=SCALAR_LIST, default="", help="Numerator parameters, comma separated.")
@click.option("--den", type=SCALAR_LIST, default="", help="Denominator parameters, comma separated.")
@click.option("--z", type=SCALAR, required=True, help="Series argument.")
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=1e-13, show_default=True)
@click.option("--max-terms", type=click.IntRange(min=1), default=200_000, show_default=True)
@click.option("--format", "fmt", type=FORMAT, default="human", show_default=True)
@_handle_errors
def eval_pfq_cmd(num, den, z, tol, max_terms, fmt):
    """Sum a pFq series term by term."""
    params = PFQParams(num, den)
    r = eval_pfq(params, z, SeriesControl(rel_tol=tol, max_terms=max_terms))
    _emit(fmt, {"series": str(params), "z": z, **_result_dict(r)}, [
        f"{params} at z={z!r}",
        f"value      = {r.value!r}",
        f"terms_used = {r.terms_used}",
        f"status     = {r.status.value}",
    ])
    sys.exit(EXIT_OK if r.usable else EXIT_SLOW)


@cli.command()
@click.option("--a", type=SCALAR, required=True)
@click.option("--b", type=SCALAR, required=True)
@click.option("--c", type=SCALAR, required=True)
@click.option("--i", type=int, default=0, show_default=True)
@click.option("--j", type=int, default=0, show_default=True)
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=1e-9, show_default=True)
@click.option("--format", "fmt", type=FORMAT, default="human", show_default=True)
@_handle_errors
def dixon(a, b, c, i, j, tol, fmt):
    """Closed form of 3F2[a, b, c; 1+a-b+i, 1+a-c+i+j; 1] against its series.

    Negative j is mapped onto a printed cell through the b <-> c symmetry.
    """
    case = DixonCase(a, b, c, i, j)
    closed = dixon_sum(case)
    if not case.is_valid():
        raise DomainError(
            f"series diverges: a-2b-2c+2+2i+j = {case.margin!r} must be positive unless b or c is -n"
        )
    oracle = dixon_oracle(case, SeriesControl(rel_tol=1e-16))
    residual = abs(closed - oracle.value) / max(1.0, abs(oracle.value))
    _emit(fmt, {
        "case": {"a": a, "b": b, "c": c, "i": i, "j": j},
        "closed_form": closed,
        "oracle": _result_dict(oracle),
        "residual": residual,
        "tolerance": tol,
    }, [
        f"3F2[{a!r}, {b!r}, {c!r}; {1 + a - b + i!r}, {1 + a - c + i + j!r}; 1]",
        f"closed form = {closed!r}",
        f"series      = {oracle.value!r} ({oracle.status.value}, {oracle.terms_used} terms)",
        f"residual    = {residual:.3e} (tol {tol:.0e})",
    ])
    if not oracle.usable:
        sys.exit(EXIT_SLOW)
    sys.exit(EXIT_OK if residual <= tol else EXIT_FAIL)


TRANSFORM_CASES = ("theorem", "general", *SPECIAL_CASES, *LIMITING_CASES)


@cli.command()
@click.option("--case", "case_id", type=click.Choice(TRANSFORM_CASES), required=True)
@click.option("--b", type=SCALAR, default=0.4, show_default=True)
@click.option("--d", type=SCALAR, default=1.1, show_default=True)
@click.option("--x", type=SCALAR, default=0.5, show_default=True)
@click.option("--i", type=int, default=0, show_default=True, help="Cell row (theorem only).")
@click.option("--j", type=int, default=0, show_default=True, help="Cell column (theorem only).")
@click.option("--a-list", type=SCALAR_LIST, default="", help="Parameters (a) for --case general.")
@click.option("--h-list", type=SCALAR_LIST, default="", help="Parameters (h) for --case general.")
@click.option("--y", type=SCALAR, default=1.0, show_default=True, help="Scale y for --case general.")
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=1e-8, show_default=True)
@click.option("--format", "fmt", type=FORMAT, default="human", show_default=True)
@_handle_errors
def transform(case_id, b, d, x, i, j, a_list, h_list, y, tol, fmt):
    """Evaluate both sides of a quadratic transformation identity."""
    if case_id == "theorem":
        pt = TransformPoint(b, d, i, j, x)
        pair = IdentityPair(exton_lhs_theorem(pt), exton_rhs_theorem(pt))
        inputs = {"b": b, "d": d, "i": i, "j": j, "x": x}
    elif case_id == "general":
        spec = GeneralTransformSpec(a_list, h_list, d, x, y)
        pair = IdentityPair(exton_general_lhs(spec), exton_general_rhs(spec))
        inputs = {"a": list(a_list), "h": list(h_list), "d": d, "x": x, "y": y}
    elif case_id in SPECIAL_CASES:
        pair = special_case(case_id, b, d, x)
        inputs = {"b": b, "d": d, "x": x}
    else:
        pair = limiting_case(case_id, d, x)
        inputs = {"d": d, "x": x}
    _emit(fmt, {
        "case": case_id,
        "inputs": inputs,
        "lhs": _result_dict(pair.lhs),
        "rhs": _result_dict(pair.rhs),
        "residual": pair.rel_residual,
        "tolerance": tol,
    }, [
        f"{case_id} at {', '.join(f'{k}={v!r}' for k, v in inputs.items())}",
        f"lhs      = {pair.lhs.value!r} ({pair.lhs.status.value}, {pair.lhs.terms_used} terms)",
        f"rhs      = {pair.rhs.value!r} ({pair.rhs.status.value}, {pair.rhs.terms_used} terms)",
        f"residual = {pair.rel_residual:.3e} (tol {tol:.0e})",
    ])
    if not pair.usable:
        sys.exit(EXIT_SLOW)
    sys.exit(EXIT_OK if pair.rel_residual <= tol else EXIT_FAIL)


@cli.command()
@click.option("--suite", type=click.Choice([*SUITES, "all"]), default="all", show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=50, show_default=True,
              help="Random samples per table cell.")
@click.option("--format", "fmt", type=click.Choice(["human", "json", "csv"]), default="human",
              show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the report here instead of stdout.")
@_handle_errors
def verify(suite, seed, samples, fmt, output):
    """Sweep identities over parameter grids and report every point."""
    reports = run_suite(suite, seed=seed, samples_per_cell=samples)
    text = {"human": to_text, "json": to_json, "csv": to_csv}[fmt](reports)
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
        click.echo(to_text(reports).splitlines()[-1])
    else:
        click.echo(text)
    sys.exit(EXIT_OK if totals(reports)["passed"] else EXIT_FAIL)


@cli.command("dump-tables")
@click.option("--format", "fmt", type=FORMAT, default="human", show_default=True)
def dump_tables(fmt):
    """List the coefficient polynomials A and B for every (i, j) cell."""
    records = table_records()
    if fmt == "json":
        click.echo(json.dumps(records, indent=1, sort_keys=True))
        return
    for rec in records:
        i, j = rec["cell"]
        click.echo(f"({i:+d},{j}) A = {rec['A']}")
        click.echo(f"       B = {rec['B']}")
        for note in rec["notes"]:
            click.echo(f"       note: {note}")


def main() -> None:
    cli()


if __name__ == "__main__":
    main()

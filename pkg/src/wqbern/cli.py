"""Command-line front end.

Usage:
    wqbern numbers --n 0..4 --alpha 1 --format json
    wqbern poly --n 2 --alpha 1 --x 0..3
    wqbern verify --only T11 --n 2..6 --alpha 1..3
    wqbern padic --p 3 --n 1 --alpha 1 --levels 1..5
    wqbern gfcheck --alpha 1,2,3 --q 0.25,0.5 --t 0,0.1,0.2 --x 0,1

Exit codes: 0 success, 1 a check failed, 2 usage error. Ranges are "a..b"
(inclusive) or comma lists, or both ("0..3,7"). The default output format
comes from WQBERN_FORMAT (text, json or csv) when --format is not given.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys

import click

from . import __version__
from .analytic import generating_function_check, series_number_check
from .identities import IDENTITY_IDS, GridSpec, run_grid, summarize
from .padic import ALLOWED_PRIMES, check_integral_equation, convergence_table, defect_growth_ok
from .qbern import weighted_number_closed, weighted_polynomial

__all__ = ["main", "cli", "parse_range"]

FORMATS = ("text", "json", "csv")
MAX_LEVEL = {3: 6, 5: 4, 7: 3}
LIMITS = {"n": (0, 24), "m": (0, 24), "alpha": (1, 8), "d": (1, 6), "x": (-10, 10)}


def parse_range(text: str) -> tuple[int, ...]:
    """Parse "a..b", "a,b,c" or mixtures into a sorted tuple of distinct ints.

    >>> parse_range("0..3,7")
    (0, 1, 2, 3, 7)
    >>> parse_range("-2..1")
    (-2, -1, 0, 1)
    """
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ValueError(f"empty item in {text!r}")
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError(f"empty range {part!r}")
            out.update(range(lo_i, hi_i + 1))
        else:
            out.add(int(part))
    return tuple(sorted(out))


class IntRange(click.ParamType):
    name = "range"

    def __init__(self, axis: str | None = None):
        self.axis = axis

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            vals = parse_range(str(value))
        except ValueError as exc:
            self.fail(str(exc), param, ctx)
        if self.axis in LIMITS:
            lo, hi = LIMITS[self.axis]
            bad = [v for v in vals if not lo <= v <= hi]
            if bad:
                self.fail(f"values {bad} outside the supported range {lo}..{hi}", param, ctx)
        return vals


class FloatList(click.ParamType):
    name = "floats"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return tuple(float(v) for v in str(value).split(","))
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


def _default_format() -> str:
    fmt = os.environ.get("WQBERN_FORMAT", "text")
    return fmt if fmt in FORMATS else "text"


def _format_option(f):
    return click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                        help="Output format (default: $WQBERN_FORMAT or text).")(f)


def _output_option(f):
    return click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None,
                        help="Write to this file instead of standard output.")(f)


def render(rows: list[dict], fmt: str, columns: list[str] | None = None) -> str:
    """Render rows deterministically; json is an array of records."""
    if fmt == "json":
        return json.dumps(rows, indent=2, ensure_ascii=False) + "\n"
    columns = columns or (list(rows[0]) if rows else [])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return ""
    return str(v)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(__version__, prog_name="wqbern")
def cli():
    """Weighted q-Bernoulli numbers: exact values, identity checks, p-adic sums."""


@cli.command()
@click.option("--n", "ns", type=IntRange("n"), default="0..6", show_default=True, help="Indices n.")
@click.option("--alpha", "alphas", type=IntRange("alpha"), default="1", show_default=True, help="Weights alpha.")
@_format_option
@_output_option
def numbers(ns, alphas, fmt, output):
    """Table of the numbers as canonical rational functions, with their value at q = 1."""
    rows = [weighted_number_closed(n, a).to_record() for a in alphas for n in ns]
    _emit(render(rows, fmt or _default_format(), ["n", "alpha", "num", "den", "value_at_1"]), output)


@cli.command()
@click.option("--n", "ns", type=IntRange("n"), default="0..3", show_default=True)
@click.option("--alpha", "alphas", type=IntRange("alpha"), default="1", show_default=True)
@click.option("--x", "xs", type=IntRange("x"), default=None, help="Integer points to evaluate at.")
@_format_option
@_output_option
def poly(ns, alphas, xs, fmt, output):
    """Polynomials in Y = [x]_{q^alpha}: one row per coefficient (or per value with --x)."""
    rows = []
    for a in alphas:
        for n in ns:
            p = weighted_polynomial(n, a)
            if xs is None:
                for j, c in enumerate(p.coeffs):
                    rows.append({"n": n, "alpha": a, "power_of_Y": j, "coefficient": str(c)})
            else:
                for x in xs:
                    v = p.at_integer(x)
                    rows.append({"n": n, "alpha": a, "x": x, "value": str(v), "value_at_1": str(v.eval_at(1))})
    _emit(render(rows, fmt or _default_format()), output)


@cli.command()
@click.option("--only", default=",".join(IDENTITY_IDS), show_default=True,
              help="Comma-separated identity ids.")
@click.option("--n", "ns", type=IntRange("n"), default="0..8", show_default=True)
@click.option("--m", "ms", type=IntRange("m"), default="0..6", show_default=True)
@click.option("--alpha", "alphas", type=IntRange("alpha"), default="1..4", show_default=True)
@click.option("--d", "ds", type=IntRange("d"), default="1..4", show_default=True)
@click.option("--x", "xs", type=IntRange("x"), default="-2..3", show_default=True)
@click.option("--workers", type=click.IntRange(1, 64), default=1, show_default=True)
@_format_option
@_output_option
def verify(only, ns, ms, alphas, ds, xs, workers, fmt, output):
    """Check every identity on a parameter grid; exit 1 if any check fails."""
    ids = tuple(s.strip() for s in only.split(",") if s.strip())
    unknown = sorted(set(ids) - set(IDENTITY_IDS))
    if unknown or not ids:
        raise click.BadParameter(f"unknown identity ids {unknown}; choose from {', '.join(IDENTITY_IDS)}",
                                 param_hint="--only")
    grid = GridSpec(n=ns, m=ms, alpha=alphas, d=ds, x=xs, only=ids)
    reports = run_grid(grid, workers=workers)
    summary = summarize(reports)
    fmt = fmt or _default_format()
    if fmt == "json":
        text = render([r.to_record() for r in reports], "json")
    else:
        rows = [{"identity_id": r.identity_id, "params": dict(sorted(r.params.items())), "passed": r.passed}
                for r in reports]
        text = render(rows, fmt, ["identity_id", "params", "passed"])
    _emit(text, output)
    click.echo(f"{summary['total']} checks, {summary['failed']} failed", err=True)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        click.echo(f"FAIL {r.identity_id} {json.dumps(dict(sorted(r.params.items())))}\n"
                   f"  lhs = {r.lhs}\n  rhs = {r.rhs}", err=True)
    sys.exit(1 if failed else 0)


@cli.command()
@click.option("--p", "p", type=int, default=3, show_default=True, help="Odd prime.")
@click.option("--q", "q", type=int, default=None, help="q as an integer = 1 mod p (default 1 + p).")
@click.option("--n", "ns", type=IntRange("n"), default="1", show_default=True)
@click.option("--alpha", "alphas", type=IntRange("alpha"), default="1", show_default=True)
@click.option("--levels", type=IntRange(), default="1..3", show_default=True)
@click.option("--precision", "M", type=int, default=None, help="Working precision (default N + 8 per level).")
@click.option("--integral", is_flag=True, help="Also check the shift equation at each level.")
@_format_option
@_output_option
def padic(p, q, ns, alphas, levels, M, integral, fmt, output):
    """Defect valuations of the level-N Riemann sums.

    Exits 1 if a defect drops or falls behind one digit of growth per level.
    """
    if p not in ALLOWED_PRIMES:
        raise click.BadParameter(f"p must be one of {ALLOWED_PRIMES} (odd primes at desk scale)", param_hint="--p")
    if levels[0] < 1 or levels[-1] > MAX_LEVEL[p]:
        raise click.BadParameter(f"levels must lie in 1..{MAX_LEVEL[p]} for p = {p}", param_hint="--levels")
    q = 1 + p if q is None else q
    if (q - 1) % p:
        raise click.BadParameter("q must be congruent to 1 mod p", param_hint="--q")
    if M is not None and M <= levels[-1]:
        raise click.BadParameter("precision must exceed every level", param_hint="--precision")
    rows = []
    ok = True
    for a in alphas:
        for n in ns:
            table = convergence_table(n, a, p, q, levels, M)
            ok &= defect_growth_ok(table)
            for r in table:
                row = r.to_record()
                if integral:
                    ie = check_integral_equation(n, a, p, q, r.level, M)
                    row["integral_defect"] = ie.defect_valuation
                    row["routes_agree"] = ie.routes_agree
                    ok &= ie.routes_agree and ie.defect_valuation >= r.level - 1
                rows.append(row)
    cols = ["p", "q", "n", "alpha", "N", "defect_valuation", "defect_is_bound"]
    if integral:
        cols += ["integral_defect", "routes_agree"]
    _emit(render(rows, fmt or _default_format(), cols), output)
    sys.exit(0 if ok else 1)


@cli.command()
@click.option("--alpha", "alphas", type=IntRange("alpha"), default="1,2,3", show_default=True)
@click.option("--q", "qs", type=FloatList(), default="0.25,0.5", show_default=True)
@click.option("--t", "ts", type=FloatList(), default="0,0.1,0.2", show_default=True)
@click.option("--x", "xs", type=IntRange("x"), default="0,1", show_default=True)
@click.option("--n", "ns", type=IntRange("n"), default="1..6", show_default=True,
              help="Indices for the number series check.")
@click.option("--tolerance", type=float, default=1e-10, show_default=True)
@_format_option
@_output_option
def gfcheck(alphas, qs, ts, xs, ns, tolerance, fmt, output):
    """Floating-point series and generating-function checks for 0 < q < 1."""
    for q in qs:
        if not 0 < q < 1:
            raise click.BadParameter("q values must lie in (0, 1)", param_hint="--q")
    for t in ts:
        if abs(t) > 0.5:
            raise click.BadParameter("|t| must be at most 0.5", param_hint="--t")
    rows = []
    for a in alphas:
        for q in qs:
            for n in ns:
                if n >= 1:
                    rows.append(series_number_check(n, a, q, tol=tolerance).to_record())
            for x in xs:
                for t in ts:
                    rows.append(generating_function_check(a, q, t, x, tol=tolerance).to_record())
    cols = ["statement", "alpha", "q", "t", "x", "n", "M_terms", "N_terms", "abs_error", "passed"]
    _emit(render(rows, fmt or _default_format(), cols), output)
    sys.exit(0 if all(r["passed"] for r in rows) else 1)


def main(argv=None):
    cli.main(args=argv, prog_name="wqbern")


if __name__ == "__main__":
    main()

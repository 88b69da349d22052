"""Command-line front end: dimension tables, sharpness reports, constructions,
decompositions, and reverse-Poincare sweep reports.

Output formats: plain text tables, JSON ({"command", "params", "rows",
"pass"}), or CSV with a fixed header row.  Identical invocations produce
byte-identical output.  Exit codes: 0 success, 1 verification failure,
2 usage or parse error.  ``BICALORIC_THREADS`` caps the number of worker
threads used for independent table cells (default 1).
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import click

from . import ancient, cylinder, spaces
from .poly import Monomial, Poly, PolyParseError, heat_op, laplacian, parse, partial, render
from .spaces import DimensionMismatchError

SWEEP_TOLERANCE = 10.0  # harness bound: max ratio over a sweep vs value at first r


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def _emit(command: str, params: dict, rows: list[dict], passed: bool, fmt: str) -> None:
    if fmt == "json":
        payload = {"command": command, "params": params, "rows": rows, "pass": passed}
        click.echo(json.dumps(payload))
        return
    columns = list(rows[0].keys()) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_value(row[c]) for c in columns])
        click.echo(buf.getvalue(), nl=False)
        return
    cells = [[_format_value(row[c]) for c in columns] for row in rows]
    widths = [
        max(len(col), *(len(r[i]) for r in cells)) if cells else len(col)
        for i, col in enumerate(columns)
    ]
    click.echo("  ".join(col.ljust(w) for col, w in zip(columns, widths)).rstrip())
    for r in cells:
        click.echo("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())


def _thread_count() -> int:
    raw = os.environ.get("BICALORIC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_cells(fn, items):
    workers = _thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _parse_seed(text: str, n: int) -> Poly:
    try:
        return parse(text, n)
    except PolyParseError as exc:
        raise click.UsageError(f"cannot parse polynomial: {exc}")


format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json", "csv"]),
    default="text",
    help="Output format.",
)


@click.group()
def cli() -> None:
    """Exact biharmonic/bicaloric polynomial spaces and their checks."""


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Number of spatial variables.")
@click.option("--dmax", type=int, required=True, help="Largest degree row.")
@click.option("--force", is_flag=True, help="Allow very large degree ranges.")
@format_option
def dims(n: int, dmax: int, force: bool, fmt: str) -> None:
    """Dimension table of the graded spaces for d = 0..DMAX.

    Columns: dim_A (homogeneous polynomials), dim_B (homogeneous biharmonic
    kernel), dim_H / dim_P (polynomially bounded biharmonic / bicaloric space
    dimensions), and formula_match, which records that the closed-form counts
    agree with the exact kernel ranks.
    """
    if n < 1 or dmax < 0:
        raise click.UsageError("need --n >= 1 and --dmax >= 0")
    if spaces.biparabolic_dim(n, dmax) > 10_000 and not force:
        raise click.UsageError(
            "degree range implies a graded space of dimension > 10000; "
            "rerun with --force if you really want this"
        )

    def row(d: int) -> dict:
        dim_a = spaces.homogeneous_dim(n, d)
        dim_b = spaces.biharmonic_kernel(n, d).dim
        match = dim_b == spaces.biharmonic_kernel_dim_formula(n, d)
        try:
            dim_h = spaces.biharmonic_space_dim(n, d)
        except DimensionMismatchError:
            dim_h = sum(spaces.homogeneous_dim(n, d - i) for i in range(4))
            match = False
        try:
            dim_p = spaces.bicaloric_space_dim(n, d)
        except DimensionMismatchError:
            dim_p = sum(spaces.homogeneous_dim(n, j) for j in range(d + 1))
            match = False
        return {
            "d": d,
            "dim_A": dim_a,
            "dim_B": dim_b,
            "dim_H": dim_h,
            "dim_P": dim_p,
            "formula_match": match,
        }

    rows = _map_cells(row, list(range(dmax + 1)))
    passed = all(r["formula_match"] for r in rows)
    _emit("dims", {"n": n, "dmax": dmax}, rows, passed, fmt)
    if not passed:
        sys.exit(1)


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Number of spatial variables.")
@click.option("--d", "d", type=int, required=True, help="Growth scale k: degrees up to 4k.")
@format_option
def sharpness(n: int, d: int, fmt: str) -> None:
    """Check the dimension equality at growth scale 4d.

    The bicaloric space dimension at biparabolic degree 4d must equal the sum
    of the biharmonic space dimensions at degrees 4d, 4(d-1), ..., 0, all
    computed from exact kernel ranks.
    """
    if n < 1 or d < 1:
        raise click.UsageError("need --n >= 1 and --d >= 1")
    report = spaces.sharpness_report(n, d)
    row = {
        "n": report.n,
        "d": report.k,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "terms": "+".join(str(t) for t in report.terms),
        "equal": report.equal,
    }
    _emit("sharpness", {"n": n, "d": d}, [row], report.equal, fmt)
    if not report.equal:
        sys.exit(1)


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Number of spatial variables.")
@click.argument("seed")
@format_option
def construct(n: int, seed: str, fmt: str) -> None:
    """Extend a t-free polynomial SEED to an ancient bicaloric solution.

    Prints the solution, its t-power coefficients, the coefficient recurrence
    check, and the growth-class membership at the smallest admissible orders.
    """
    if n < 1:
        raise click.UsageError("need --n >= 1")
    q = _parse_seed(seed, n)
    if q.time_degree not in (float("-inf"), 0):
        raise click.UsageError("seed must not contain t")
    u = ancient.caloric_extension(q)
    dec = ancient.decompose(u)
    recurrence_ok = ancient.verify_recurrence(dec)
    k, ell = ancient.minimal_growth_orders(u)
    report = ancient.growth_membership(u, k, ell)
    rows = [
        {
            "solution": render(u),
            "time_degree": dec.time_degree,
            "coefficients": "; ".join(render(p) for p in dec.coefficients),
            "recurrence_ok": recurrence_ok,
            "k": report.k,
            "ell": report.ell,
            "in_space": report.in_space,
        }
    ]
    passed = recurrence_ok and report.in_space
    _emit("construct", {"n": n, "seed": seed}, rows, passed, fmt)
    if not passed:
        sys.exit(1)


@cli.command("decompose")
@click.option("--n", "n", type=int, required=True, help="Number of spatial variables.")
@click.argument("expr")
@format_option
def decompose_cmd(n: int, expr: str, fmt: str) -> None:
    """Collect the t-powers of EXPR into spatial coefficients."""
    if n < 1:
        raise click.UsageError("need --n >= 1")
    u = _parse_seed(expr, n)
    dec = ancient.decompose(u)
    bicaloric = not heat_op(u)
    rows = [
        {
            "j": j,
            "coefficient": render(p),
        }
        for j, p in enumerate(dec.coefficients)
    ]
    passed = True
    if bicaloric:
        passed = ancient.verify_recurrence(dec)
    for row in rows:
        row["bicaloric"] = bicaloric
        row["recurrence_ok"] = passed if bicaloric else ""
    _emit("decompose", {"n": n, "expr": expr}, rows, passed, fmt)
    if not passed:
        sys.exit(1)


@cli.command("rp-sweep")
@click.option("--n", "n", type=int, required=True, help="Number of spatial variables.")
@click.option("--seed", required=True, help="t-free seed polynomial to extend.")
@click.option("--eps", type=float, required=True, help="Inner cylinder fraction in (0,1).")
@click.option("--r", "r_list", default="1,2,4,8", show_default=True,
              help="Comma-separated list of outer scales.")
@format_option
def rp_sweep(n: int, seed: str, eps: float, r_list: str, fmt: str) -> None:
    """Reverse-Poincare ratio sweep for the extension of SEED.

    For each scale r the combined ratio plus the four individually weighted
    ratios are reported; the sweep fails (exit 1) if any ratio exceeds ten
    times its value at the first scale.
    """
    if n < 1:
        raise click.UsageError("need --n >= 1")
    if not 0 < eps < 1:
        raise click.UsageError("--eps must lie strictly between 0 and 1")
    try:
        scales = [Fraction(part.strip()) for part in r_list.split(",") if part.strip()]
    except ValueError:
        raise click.UsageError(f"cannot parse --r list {r_list!r}")
    if not scales or any(s <= 0 for s in scales):
        raise click.UsageError("--r must list positive scales")
    q = _parse_seed(seed, n)
    if q.time_degree not in (float("-inf"), 0):
        raise click.UsageError("seed must not contain t")
    u = ancient.caloric_extension(q)
    if u.biparabolic_degree <= 0:
        raise click.UsageError(
            "seed constructs a constant solution; all ratios vanish and the "
            "sweep is degenerate"
        )

    def row(scale: Fraction) -> dict:
        spec = cylinder.CylinderSpec(n=n, r=scale, epsilon=Fraction(eps))
        combined = cylinder.rp_ratio(u, spec)
        hess, ut, graddelta, gradut = cylinder.rp_sublemma_ratios(u, spec)
        return {
            "r": str(scale),
            "combined": combined,
            "hess": hess,
            "ut": ut,
            "graddelta": graddelta,
            "gradut": gradut,
        }

    rows = _map_cells(row, scales)
    passed = True
    for key in ("combined", "hess", "ut", "graddelta", "gradut"):
        first = rows[0][key]
        top = max(row[key] for row in rows)
        ok = top <= SWEEP_TOLERANCE * first if first > 0 else top == 0.0
        passed = passed and ok
    _emit(
        "rp-sweep",
        {"n": n, "seed": seed, "eps": eps, "r": r_list},
        rows,
        passed,
        fmt,
    )
    if not passed:
        sys.exit(1)


def _selfcheck_cases() -> list[tuple[str, bool]]:
    rng = random.Random(20240814)

    def random_poly(n: int, degree: int, tmax: int = 1) -> Poly:
        p = Poly.zero(n)
        for _ in range(rng.randint(1, 4)):
            mono_exp = [0] * n
            for _ in range(rng.randint(0, degree)):
                mono_exp[rng.randrange(n)] += 1
            mono = Monomial(tuple(mono_exp), rng.randint(0, tmax))
            coef = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            p = p + Poly.from_monomial(n, mono, coef)
        return p

    results: list[tuple[str, bool]] = []

    ring_ok = True
    commute_ok = True
    for _ in range(12):
        n = rng.randint(1, 3)
        a, b, c = (random_poly(n, 4) for _ in range(3))
        ring_ok &= (a + b) + c == a + (b + c)
        ring_ok &= a * b == b * a
        ring_ok &= a * (b + c) == a * b + a * c
        commute_ok &= laplacian(partial(a, "t")) == partial(laplacian(a), "t")
    results.append(("ring axioms on random triples", ring_ok))
    results.append(("laplacian commutes with d/dt", commute_ok))

    dims_ok = True
    for n in (1, 2, 3):
        for d in range(9):
            dims_ok &= (
                spaces.biharmonic_kernel(n, d).dim
                == spaces.biharmonic_kernel_dim_formula(n, d)
            )
            dims_ok &= spaces.bicaloric_kernel(n, d).dim == spaces.homogeneous_dim(n, d)
    results.append(("kernel dimensions match closed formulas", dims_ok))

    onto_ok = all(
        spaces.laplacian_onto(n, d)
        and spaces.bilaplacian_onto(n, d)
        and spaces.heat_op_onto(n, d)
        for n in (1, 2, 3)
        for d in (0, 1, 3, 5)
    )
    results.append(("graded operators are surjective", onto_ok))

    sharp_ok = all(
        spaces.sharpness_report(n, k).equal for n in (1, 2, 3) for k in (1, 2)
    )
    results.append(("bicaloric dimension equals stacked biharmonic dimensions", sharp_ok))

    construct_ok = True
    for _ in range(8):
        n = rng.randint(1, 3)
        q = random_poly(n, 6, tmax=0)
        u = ancient.caloric_extension(q)
        construct_ok &= not heat_op(u)
        dec = ancient.decompose(u)
        construct_ok &= ancient.verify_recurrence(dec)
        count = dec.time_degree + 1
        # distinct samples inside (-1, -1/2)
        samples = [Fraction(-1) + Fraction(i + 1, 2 * (count + 1)) for i in range(count)]
        for j, expected in enumerate(dec.coefficients):
            construct_ok &= ancient.vandermonde_extract(u, samples, j) == expected
    results.append(("construction round-trips exactly", construct_ok))

    vanish_ok = True
    for seed_text, n in (("x1^4", 1), ("x1^8", 1), ("x1^4 + x2^4", 2)):
        u = ancient.caloric_extension(parse(seed_text, n))
        k, ell = ancient.minimal_growth_orders(u)
        vanish_ok &= ancient.time_derivative_vanishes(u, k, ell)
    results.append(("high time derivatives vanish", vanish_ok))

    u = ancient.caloric_extension(parse("x1^4", 1))
    ratios = [
        cylinder.rp_ratio(u, cylinder.CylinderSpec(n=1, r=r, epsilon=Fraction(1, 2)))
        for r in (1, 2, 4)
    ]
    bounded_ok = max(ratios) <= SWEEP_TOLERANCE * ratios[0]
    scaled = cylinder.rp_ratio(
        u.parabolic_scale(2), cylinder.CylinderSpec(n=1, r=1, epsilon=Fraction(1, 2))
    )
    covariant_ok = abs(scaled - ratios[1]) <= 1e-8 * abs(ratios[1])
    results.append(("reverse-Poincare ratios bounded over sweep", bounded_ok))
    results.append(("ratios covariant under parabolic scaling", covariant_ok))

    unit_spec = cylinder.CylinderSpec(n=1, r=1, epsilon=Fraction(1, 2))
    quad_ok = (
        abs(cylinder.cylinder_integral(Poly.constant(1, 1), unit_spec) - 2.0) < 1e-12
        and abs(cylinder.cylinder_integral(parse("x1^2", 1), unit_spec) - 2.0 / 3.0) < 1e-12
    )
    results.append(("cylinder integrals match hand values", quad_ok))
    return results


@cli.command()
def selfcheck() -> None:
    """Run the built-in invariant suite and report one line per check."""
    results = _selfcheck_cases()
    failed = 0
    for name, ok in results:
        click.echo(f"{'ok  ' if ok else 'FAIL'}  {name}")
        failed += 0 if ok else 1
    click.echo(f"{len(results) - failed}/{len(results)} checks passed")
    if failed:
        sys.exit(1)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()

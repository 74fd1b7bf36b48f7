"""Command line front end.

Exit codes are part of the contract: 0 success, 1 verification failure,
2 parse/schema error, 3 singular matrix, 4 degenerate Euclidean sequence
with fallback disabled.
"""

import json
import sys

import click

from . import bench, instances, solver, syzygy, tbt, toeplitz
from .errors import DegenerateSequenceError, SingularMatrixError, SyzolveError
from .fields import field_by_name

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PARSE = 2
EXIT_SINGULAR = 3
EXIT_DEGENERATE = 4

FLOAT_RESIDUAL_TOL = 1e-8

_ROUTES = {"eea": solver.ROUTE_EEA, "dense": solver.ROUTE_DENSE}


@click.group()
def main():
    """Structured Toeplitz / Toeplitz-block-Toeplitz solver via syzygy bases."""


def _fail(code, msg):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _load_instance(path):
    try:
        return instances.load_instance(path)
    except (OSError, KeyError, ValueError, TypeError) as exc:
        _fail(EXIT_PARSE, f"cannot load instance {path}: {exc}")


@main.command()
@click.option("--kind", type=click.Choice(["toeplitz", "tbt"]), default="toeplitz")
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, default=None, help="block size (tbt only)")
@click.option("--seed", type=int, default=0)
@click.option("--field", "field_name",
              type=click.Choice(["rational", "float64"]), default="rational")
@click.option("--out", type=click.Path(), required=True)
def gen(kind, n, m, seed, field_name, out):
    """Generate a seeded invertible instance and write it as JSON."""
    field = field_by_name(field_name)
    try:
        if kind == "toeplitz":
            T = instances.random_toeplitz(n, seed, field)
        else:
            if m is None:
                _fail(EXIT_PARSE, "--m is required for kind=tbt")
            T = instances.random_tbt(m, n, seed, field)
    except instances.ExhaustedResampling as exc:
        _fail(EXIT_SINGULAR, str(exc))
    instances.save_instance(T, out)
    click.echo(f"wrote {kind} instance to {out}")


def _resolve_rhs(T, rhs, rhs_seed):
    length = T.n if isinstance(T, toeplitz.ToeplitzMatrix) else T.m * T.n
    if rhs is not None:
        g, rhs_field = instances.load_rhs(rhs)
        if rhs_field.name != T.field.name:
            raise ValueError(f"rhs field {rhs_field.name} != instance field {T.field.name}")
        if len(g) != length:
            raise ValueError(f"rhs length {len(g)} != {length}")
        return g
    return instances.random_rhs(length, 0 if rhs_seed is None else rhs_seed, T.field)


def _residual_ok(T, g, u):
    if T.field.exact:
        mv = (toeplitz.matvec(T, u) if isinstance(T, toeplitz.ToeplitzMatrix)
              else tbt.tbt_matvec(T, u))
        worst = max((abs(a - b) for a, b in zip(mv, g)), default=0)
        return worst == 0, float(worst)
    if isinstance(T, toeplitz.ToeplitzMatrix):
        scaled = solver.scaled_residual(T, g, u)
    else:
        res = [a - b for a, b in zip(tbt.tbt_matvec(T, u), g)]
        num = max(abs(c) for c in res)
        den = float(T.max_norm()) * max(abs(c) for c in u) + max(abs(c) for c in g)
        scaled = num / den if den else num
    return scaled <= FLOAT_RESIDUAL_TOL, scaled


@main.command("solve")
@click.argument("instance_path", type=click.Path(exists=True))
@click.option("--rhs", type=click.Path(exists=True), default=None)
@click.option("--rhs-seed", type=int, default=None)
@click.option("--route", type=click.Choice(sorted(_ROUTES)), default="eea")
@click.option("--no-fallback", is_flag=True, default=False)
@click.option("--out", type=click.Path(), default=None)
def cmd_solve(instance_path, rhs, rhs_seed, route, no_fallback, out):
    """Solve the instance against a right-hand side; write a SolveReport."""
    T = _load_instance(instance_path)
    try:
        g = _resolve_rhs(T, rhs, rhs_seed)
    except (OSError, KeyError, ValueError, TypeError) as exc:
        _fail(EXIT_PARSE, str(exc))
    try:
        if isinstance(T, toeplitz.ToeplitzMatrix):
            rep = solver.solve(T, g, route=_ROUTES[route], fallback=not no_fallback)
            u, route_used, timings = rep.u, rep.route, rep.timings
        else:
            u = tbt.solve_tbt(T, g)
            route_used, timings = "tbt-structured", {}
    except SingularMatrixError as exc:
        _fail(EXIT_SINGULAR, str(exc))
    except DegenerateSequenceError as exc:
        _fail(EXIT_DEGENERATE, str(exc))

    ok, scaled = _residual_ok(T, g, u)
    doc = {
        "kind": "solve-report",
        "field": T.field.name,
        "route": route_used,
        "u": [T.field.to_str(x) for x in u],
        "g": [T.field.to_str(x) for x in g],
        "scaled_residual": scaled,
        "timings": timings,
    }
    text = instances.dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    sys.exit(EXIT_OK if ok else EXIT_VERIFY_FAIL)


def _poly_doc(p):
    return [p.field.to_str(c) for c in p.coeffs]


def _bipoly_doc(p):
    return [[p.field.to_str(c) for c in row] for row in p.coeffs]


@main.command("basis")
@click.argument("instance_path", type=click.Path(exists=True))
@click.option("--route", type=click.Choice(sorted(_ROUTES)), default="eea")
@click.option("--out", type=click.Path(), default=None)
def cmd_basis(instance_path, route, out):
    """Compute and emit the syzygy generators with verification residuals."""
    T = _load_instance(instance_path)
    try:
        if isinstance(T, toeplitz.ToeplitzMatrix):
            basis, route_used = solver.compute_basis(T, route=_ROUTES[route])
            residuals = [
                float(syzygy.verify_syzygy(T, vec).max_norm())
                for vec in (basis.rho1, basis.rho2)
            ]
            doc = {
                "kind": "syzygy-basis",
                "field": T.field.name,
                "n": T.n,
                "route": route_used,
                "mu_degrees": list(syzygy.mu_degrees(basis)),
                "rho1": {"u": _poly_doc(basis.rho1.u), "v": _poly_doc(basis.rho1.v),
                         "w": _poly_doc(basis.rho1.w)},
                "rho2": {"u": _poly_doc(basis.rho2.u), "v": _poly_doc(basis.rho2.v),
                         "w": _poly_doc(basis.rho2.w)},
                "residual_norms": residuals,
            }
        else:
            s9 = tbt.generators_rho(T)
            residuals = [
                float(tbt.verify_syzygy9(T, r).max_norm()) for r in s9.rho
            ]
            doc = {
                "kind": "tbt-basis",
                "field": T.field.name,
                "m": T.m,
                "n": T.n,
                "generators": [[_bipoly_doc(h) for h in r] for r in s9.rho],
                "residual_norms": residuals,
            }
    except SingularMatrixError as exc:
        _fail(EXIT_SINGULAR, str(exc))
    except DegenerateSequenceError as exc:
        _fail(EXIT_DEGENERATE, str(exc))
    text = instances.dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command("verify")
@click.argument("instance_path", type=click.Path(exists=True))
@click.argument("solution_path", type=click.Path(exists=True))
def cmd_verify(instance_path, solution_path):
    """Recompute the residual of a solution report via matvec only."""
    T = _load_instance(instance_path)
    try:
        with open(solution_path) as fh:
            doc = json.load(fh)
        u = [T.field.coerce(x) for x in doc["u"]]
        g = [T.field.coerce(x) for x in doc["g"]]
        length = T.n if isinstance(T, toeplitz.ToeplitzMatrix) else T.m * T.n
        if len(u) != length or len(g) != length:
            raise ValueError(f"solution/rhs length mismatch (expected {length})")
    except (OSError, KeyError, ValueError, TypeError, json.JSONDecodeError) as exc:
        _fail(EXIT_PARSE, f"cannot load solution {solution_path}: {exc}")
    ok, scaled = _residual_ok(T, g, u)
    click.echo(f"scaled residual: {scaled:.6e}")
    sys.exit(EXIT_OK if ok else EXIT_VERIFY_FAIL)


@main.command("bench")
@click.option("--kind", type=click.Choice(["toeplitz", "tbt"]), default="toeplitz")
@click.option("--sizes", default="256,512,1024",
              help="comma list; for tbt use m:n pairs, e.g. 4:4,8:8")
@click.option("--routes", default="syzygy,dense-oracle")
@click.option("--trials", type=int, default=3)
@click.option("--seed", type=int, default=0)
@click.option("--field", "field_name",
              type=click.Choice(["rational", "float64"]), default="float64")
@click.option("--out", type=click.Path(), required=True)
@click.option("--strict", is_flag=True, default=False,
              help="turn scaling-trend warnings into failures")
def cmd_bench(kind, sizes, routes, trials, seed, field_name, out, strict):
    """Run the scaling benchmark and write a CSV of timing records."""
    try:
        if kind == "toeplitz":
            size_list = [int(s) for s in sizes.split(",") if s]
        else:
            size_list = [tuple(int(v) for v in s.split(":")) for s in sizes.split(",") if s]
        route_list = [r for r in routes.split(",") if r]
    except ValueError as exc:
        _fail(EXIT_PARSE, f"bad sizes/routes: {exc}")
    records = bench.run_bench(kind, size_list, route_list, trials,
                              seed=seed, field_name=field_name)
    bench.write_csv(records, out)
    click.echo(f"wrote {len(records)} records to {out}")
    failed = False
    if kind == "toeplitz":
        for name, value, ok in bench.trend_report(records):
            status = "ok" if ok else "WARN"
            click.echo(f"trend {name}: {value:.3f} [{status}]")
            if not ok:
                failed = True
    if strict and failed:
        _fail(EXIT_VERIFY_FAIL, "scaling-trend thresholds violated under --strict")


if __name__ == "__main__":
    main()

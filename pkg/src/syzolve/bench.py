"""Benchmark harness: seeded runs, phase timings, and scaling-trend checks.

Every record is reproducible from its seed.  Trend thresholds are soft by
default (warnings); strict mode turns them into hard failures.  The syzygy
route's per-solve cost is the reduction phase; the basis phase is reported
separately because it is amortized across right-hand sides.
"""

import csv
import os
import time

import numpy as np

from . import instances, solver, tbt, toeplitz
from .fields import field_by_name

CSV_COLUMNS = [
    "kind", "n", "m", "route", "trial", "seed",
    "t_basis", "t_reduce", "t_residual", "t_total", "residual",
]

# soft thresholds: measured log-log slope of per-solve time over the size range
SYZYGY_SLOPE_MAX = 1.35
DENSE_SLOPE_MIN = 2.5
# doubling-time ratios (soft) for adjacent sizes
DENSE_DOUBLING_MIN = 3.5
SYZYGY_DOUBLING_MAX = 2.6


def worker_count():
    try:
        return max(1, int(os.environ.get("SYZOLVE_THREADS", "1")))
    except ValueError:
        return 1


def _bench_one(task):
    kind, size, route, trial, seed, field_name = task
    field = field_by_name(field_name)
    rec = {
        "kind": kind, "route": route, "trial": trial, "seed": seed,
        "t_basis": 0.0, "t_reduce": 0.0, "t_residual": 0.0,
    }
    if kind == "toeplitz":
        n = size
        rec["n"], rec["m"] = n, ""
        T = instances.random_toeplitz(n, seed, field)
        g = instances.random_rhs(n, seed + 1, field)
        if route == "dense-oracle":
            t0 = time.perf_counter()
            u = toeplitz.dense_solve(T, g)
            rec["t_total"] = time.perf_counter() - t0
            rec["residual"] = solver.scaled_residual(T, g, u)
        else:
            rep = solver.solve(T, g, route="dense-generators")
            rec["t_basis"] = rep.timings["basis"]
            rec["t_reduce"] = rep.timings["reduce"]
            rec["t_residual"] = rep.timings["residual"]
            rec["t_total"] = sum(rep.timings.values())
            rec["residual"] = solver.scaled_residual(T, g, rep.u)
    elif kind == "tbt":
        m, n = size
        rec["n"], rec["m"] = n, m
        T = instances.random_tbt(m, n, seed, field)
        g = instances.random_rhs(m * n, seed + 1, field)
        t0 = time.perf_counter()
        if route == "dense-oracle":
            u = tbt.dense_solve_tbt(T, g)
        else:
            u = tbt.solve_tbt(T, g)
        rec["t_total"] = time.perf_counter() - t0
        res = [a - b for a, b in zip(tbt.tbt_matvec(T, u), g)]
        num = float(max(abs(c) for c in res))
        den = float(T.max_norm()) * float(max(abs(c) for c in u)) + float(
            max(abs(c) for c in g)
        )
        rec["residual"] = num / den if den else num
    else:
        raise ValueError(f"unknown bench kind {kind!r}")
    return rec


def run_bench(kind, sizes, routes, trials, seed=0, field_name="float64"):
    """Run the benchmark grid; deterministic record order by (size, route, trial)."""
    tasks = []
    for si, size in enumerate(sizes):
        for route in routes:
            for trial in range(trials):
                tasks.append((kind, size, route, trial,
                              seed + 1000 * si + trial, field_name))
    nworkers = worker_count()
    if nworkers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            records = list(pool.map(_bench_one, tasks))
    else:
        records = [_bench_one(t) for t in tasks]
    records.sort(key=lambda r: (str(r["n"]), str(r["m"]), r["route"], r["trial"]))
    return records


def write_csv(records, path):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for rec in records:
            writer.writerow({k: rec.get(k, "") for k in CSV_COLUMNS})


def loglog_slope(sizes, times):
    """Least-squares slope of log(time) against log(size)."""
    xs = np.log([float(s) for s in sizes])
    ys = np.log([max(t, 1e-12) for t in times])
    return float(np.polyfit(xs, ys, 1)[0])


def median_times(records, route, key):
    """size -> median of the chosen timing column for one route."""
    by_size = {}
    for rec in records:
        if rec["route"] != route:
            continue
        by_size.setdefault(rec["n"], []).append(rec[key])
    return {n: sorted(ts)[len(ts) // 2] for n, ts in by_size.items()}


def trend_report(records):
    """Scaling checks for a univariate benchmark; returns (name, value, ok) rows."""
    rows = []
    syz = median_times(records, "syzygy", "t_reduce")
    dense = median_times(records, "dense-oracle", "t_total")
    if len(syz) >= 2:
        ns = sorted(syz)
        slope = loglog_slope(ns, [syz[n] for n in ns])
        rows.append(("syzygy_reduce_slope", slope, slope <= SYZYGY_SLOPE_MAX))
        for a, b in zip(ns, ns[1:]):
            if b == 2 * a:
                ratio = syz[b] / max(syz[a], 1e-12)
                rows.append((f"syzygy_doubling_{a}->{b}", ratio,
                             ratio <= SYZYGY_DOUBLING_MAX))
    if len(dense) >= 2:
        ns = sorted(dense)
        slope = loglog_slope(ns, [dense[n] for n in ns])
        rows.append(("dense_oracle_slope", slope, slope >= DENSE_SLOPE_MIN))
        for a, b in zip(ns, ns[1:]):
            if b == 2 * a:
                ratio = dense[b] / max(dense[a], 1e-12)
                rows.append((f"dense_doubling_{a}->{b}", ratio,
                             ratio >= DENSE_DOUBLING_MIN))
    return rows

"""Seeded instance generation and JSON (de)serialization.

Instance schema (kind "toeplitz"):
    { "kind": "toeplitz", "n": int, "diagonals": [str, ...], "field": str }
with diagonals low exponent first (t_{-n+1} .. t_{n-1}); kind "tbt":
    { "kind": "tbt", "m": int, "n": int, "diagonals": [[str, ...], ...],
      "field": str }
with the (2m-1) x (2n-1) grid row-major (x index outer).  Field elements are
decimal strings; rationals may use "p/q".
"""

import json
import random

from . import tbt as tbt_mod
from . import toeplitz as toeplitz_mod
from .errors import SyzolveError
from .fields import field_by_name

RESAMPLE_BUDGET = 100


class ExhaustedResampling(SyzolveError):
    """Could not draw an invertible instance within the resampling budget."""


def _draw(rng, field, count):
    if field.exact:
        return [field.coerce(rng.randint(-9, 9)) for _ in range(count)]
    return [rng.uniform(-1.0, 1.0) for _ in range(count)]


def random_toeplitz(n, seed, field, dominant=None):
    """Invertible Toeplitz instance with i.i.d. seeded diagonals.

    Float instances are made diagonally dominant by default so they are well
    conditioned; exact instances are rejection-sampled until invertible.
    """
    if dominant is None:
        dominant = not field.exact
    rng = random.Random(seed)
    for _ in range(RESAMPLE_BUDGET):
        diags = _draw(rng, field, count=2 * n - 1)
        if dominant and not field.exact:
            diags[n - 1] += 2.0 * (sum(abs(d) for d in diags) + 1.0)
        T = toeplitz_mod.ToeplitzMatrix(field, n, diags)
        if not toeplitz_mod.is_singular(T):
            return T
    raise ExhaustedResampling(f"no invertible Toeplitz draw in {RESAMPLE_BUDGET} tries")


def random_tbt(m, n, seed, field, dominant=None):
    if dominant is None:
        dominant = not field.exact
    rng = random.Random(seed)
    for _ in range(RESAMPLE_BUDGET):
        flat = _draw(rng, field, count=(2 * m - 1) * (2 * n - 1))
        grid = [flat[i * (2 * n - 1):(i + 1) * (2 * n - 1)] for i in range(2 * m - 1)]
        if dominant and not field.exact:
            grid[m - 1][n - 1] += 2.0 * (sum(abs(v) for r in grid for v in r) + 1.0)
        T = tbt_mod.TbtMatrix(field, m, n, grid)
        if not tbt_mod.is_singular(T):
            return T
    raise ExhaustedResampling(f"no invertible TBT draw in {RESAMPLE_BUDGET} tries")


def random_rhs(length, seed, field):
    rng = random.Random(seed)
    if field.exact:
        return [field.coerce(rng.randint(-9, 9)) for _ in range(length)]
    return [rng.uniform(-1.0, 1.0) for _ in range(length)]


def instance_to_dict(T):
    if isinstance(T, toeplitz_mod.ToeplitzMatrix):
        return {
            "kind": "toeplitz",
            "n": T.n,
            "diagonals": [T.field.to_str(d) for d in T.diagonals],
            "field": T.field.name,
        }
    if isinstance(T, tbt_mod.TbtMatrix):
        return {
            "kind": "tbt",
            "m": T.m,
            "n": T.n,
            "diagonals": [[T.field.to_str(v) for v in row] for row in T.diagonals],
            "field": T.field.name,
        }
    raise TypeError(f"not an instance type: {type(T)!r}")


def instance_from_dict(doc):
    field = field_by_name(doc["field"])
    kind = doc.get("kind")
    if kind == "toeplitz":
        return toeplitz_mod.ToeplitzMatrix(field, doc["n"], doc["diagonals"])
    if kind == "tbt":
        return tbt_mod.TbtMatrix(field, doc["m"], doc["n"], doc["diagonals"])
    raise ValueError(f"unknown instance kind {kind!r}")


def dumps(doc):
    """Canonical JSON text: stable key order, so same-seed runs are byte-identical."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save_instance(T, path):
    with open(path, "w") as fh:
        fh.write(dumps(instance_to_dict(T)))


def load_instance(path):
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


def rhs_to_dict(values, field):
    return {
        "kind": "rhs",
        "length": len(values),
        "values": [field.to_str(v) for v in values],
        "field": field.name,
    }


def rhs_from_dict(doc):
    field = field_by_name(doc["field"])
    return [field.coerce(v) for v in doc["values"]], field


def load_rhs(path):
    with open(path) as fh:
        return rhs_from_dict(json.load(fh))

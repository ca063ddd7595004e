"""Agreement models for three raters on n categories."""

import json
from fractions import Fraction

from . import _core
from ._core import AgreetensorError, catalog, fiber_dimension, run_cli

__all__ = [
    "AgreetensorError",
    "catalog",
    "counterexample",
    "evaluate",
    "fiber_dimension",
    "fit",
    "kappas",
    "materialize",
    "run_cli",
    "toric_member",
]


def _text(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _jsonable(value):
    if isinstance(value, Fraction):
        return _text(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def materialize(params):
    """Exact tensor for a parameter dict, as (n, flat list of Fractions) in i, j, k order."""
    n, entries = _core.materialize(json.dumps({k: _jsonable(v) for k, v in params.items()}))
    return n, [Fraction(e) for e in entries]


def kappas(n, entries):
    """Pairwise kappas (12, 13, 23). Exact when the entries are Fractions or ints."""
    if all(isinstance(e, (Fraction, int)) for e in entries):
        return tuple(Fraction(k) for k in _core.kappas_exact(n, [_text(e) for e in entries]))
    return tuple(_core.kappas_float(n, [float(e) for e in entries]))


def evaluate(poly, n, entries):
    return Fraction(_core.evaluate(poly, n, [_text(e) for e in entries]))


def toric_member(n, entries, family):
    return _core.toric_member(n, [_text(e) for e in entries], family)


def fit(family, n, counts, **options):
    return json.loads(_core.fit(family, n, list(counts), **options))


def counterexample(direction, n):
    return json.loads(_core.counterexample(direction, n))

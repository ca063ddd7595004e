from fractions import Fraction

import pytest

import agreetensor as at

HALF = [Fraction(1, 2)] * 2


def test_pairwise_qi_kappa():
    params = {"family": "pQI", "a": HALF, "b": HALF, "c": HALF, "gamma12": 3, "gamma13": 3, "gamma23": 3}
    n, p = at.materialize(params)
    assert n == 2 and sum(p) == 1
    assert at.kappas(n, p) == (Fraction(2, 3),) * 3
    k = at.kappas(n, [float(x) for x in p])
    assert k[0] == pytest.approx(2 / 3, abs=1e-12)


def test_catalog_vanishes_on_model():
    _, p = at.materialize({"family": "mix", "a": HALF, "b": HALF, "c": ["1/4", "3/4"], "alpha": "3/10"})
    polys = at.catalog("mix", 2)
    assert len(polys) == 10
    assert all(at.evaluate(f, 2, p) == 0 for f in polys)
    assert at.toric_member(2, p, "qI")[0] is False


def test_fiber_dimension():
    assert at.fiber_dimension("pQI", 3, 3) == 52
    assert at.fiber_dimension("pQI", 3, 2) == 0


def test_fit_and_counterexample():
    counts = [40, 3, 3, 4, 5, 3, 4, 38]
    result = at.fit("qI", 2, counts)
    assert result["metadata"]["converged"]
    assert len(result["fitted"]) == 8
    ce = at.counterexample("MixNotInQI", 3)
    assert ce["witness_holds"]


def test_errors_and_cli():
    with pytest.raises(at.AgreetensorError):
        at.materialize({"family": "qI", "a": HALF, "b": HALF, "c": HALF, "gamma": -1})
    with pytest.raises(ValueError):
        at.fiber_dimension("Mix", 3, 3)
    code, out, _ = at.run_cli(["fiber-dim", "--family", "QI", "--n", "2", "--degree", "2"])
    assert (code, out) == (0, "2\n")
    assert at.run_cli(["nope"])[0] == 2

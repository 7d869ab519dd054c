import json
import math
import pathlib

import pytest

import bvq

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"


def test_affine_quotient_is_a_quarter():
    f = bvq.Signal.from_json(json.dumps({"type": "affine", "slope": 3.0, "intercept": 1.0, "domain": [0, 1]}))
    s = bvq.interval_stats(f, 0.1, 0.8)
    assert abs(s["quotient"] - 0.25) <= 1e-12
    assert s["tv"] == pytest.approx(3 * 0.7)


def test_constant_quotient_is_none():
    f = bvq.Signal.from_samples([0.0, 0.5, 1.0], [2.0, 2.0, 2.0])
    assert bvq.interval_stats(f, 0.0, 1.0)["quotient"] is None


def test_csv_fixture_and_map():
    f = bvq.Signal.from_csv(str(DATA / "square.csv"))
    assert f.domain == (-1.0, 1.0)
    m = bvq.quotient_map(f, [2.0], 0.5)
    assert len(m["windows"]) == 1
    assert m["windows"][0]["quotient"] == pytest.approx(0.1283, abs=1e-4)


def test_segmentation_of_composite():
    f = bvq.Signal.from_json((DATA / "composite.json").read_text())
    segs = bvq.segment(f, [0.1, 0.2, 0.4], 0.05)["segments"]
    assert [s["class"] for s in segs] == ["affine", "jump", "constant"]


def test_power_law_values():
    assert bvq.power_quotient(1.0) == pytest.approx(0.25)
    assert bvq.power_quotient(2.5) == pytest.approx(0.2472900816, abs=1e-9)
    assert bvq.phi(2.5, 0.0, 1.0) == pytest.approx(0.0027099184, abs=1e-9)
    assert abs(bvq.exponent_function(2.5)) > 0.01
    roots = bvq.exponent_equation_solve(0.5, 4.0)
    assert any(abs(r - 1.0) < 1e-10 for r in roots)
    assert all(abs(r - 2.5) > 1e-6 for r in roots)


def test_verify_report():
    r = bvq.verify("affine")
    assert r["pass"]
    assert all(c["max_residual"] < 1e-10 for c in r["checks"])
    assert not bvq.verify("ode", tol=1e-300)["pass"]


def test_errors_are_value_errors():
    with pytest.raises(bvq.BvqError):
        bvq.Signal.from_samples([0.0, 1.0, 0.5], [0.0, 1.0, 2.0])
    with pytest.raises(ValueError, match="EmptyInterval"):
        bvq.interval_stats(bvq.Signal.from_samples([0.0, 1.0], [0.0, 1.0]), 0.5, 0.5)
    with pytest.raises(ValueError, match="UnknownKind"):
        bvq.Signal.from_json('{"type": "wave", "domain": [0, 1]}')


def test_derivative_identity_on_affine():
    f = bvq.Signal.from_samples([0.0, 1.0], [0.0, -2.0])
    assert bvq.osc_derivative_rhs(f, 0.2, 0.7) == pytest.approx(0.5, abs=1e-12)
    assert math.isclose(bvq.measure_extension_defect(f, 0.0, 1.0, 0.3), 0.0, abs_tol=1e-12)

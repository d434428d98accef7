import json
import os
from pathlib import Path

import pytest

import confmodels as cm

DATA = Path(os.environ.get("CONFMODELS_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))


def test_catalog_and_algebra():
    assert "cp" in cm.catalog()
    a = cm.algebra("cp(2)")
    assert (a.dim, a.formal_dimension, a.euler_characteristic) == (3, 4, 3)
    assert a.poincare == "1+t^2+t^4"


def test_betti_sphere_j3():
    assert cm.betti(cm.algebra("sphere(1)"), "j", 3) == {(0, 0): 1, (3, 1): 1}


def test_poincare_torus():
    st, t = cm.poincare(cm.algebra("torus"), "j", 3)
    assert st == "1+6t+(12+2s)t^2+(10+4s)t^3+(3+2s)t^4"
    assert t == "1+6t+14t^2+14t^3+5t^4"


def test_betti_json():
    doc = json.loads(cm.betti_json(cm.algebra("cp(1)"), "punctured", 3))
    assert doc["poincare_t"] == "1+3t+2t^2"
    assert {(e["p"], e["q"]): e["dim"] for e in doc["betti"]} == {(0, 0): 1, (1, 1): 3, (2, 2): 2}


def test_sizes():
    a = cm.algebra("genus(2)")
    assert cm.model_size(a, "kriz", 3) == 336 == cm.predicted_dimension("kriz", 6, 3)


def test_psi_and_reduction():
    a = cm.algebra("torus")
    assert cm.psi_is_quasi_isomorphism(a, 3)
    r = cm.reduce_over_h(a, 3)
    assert r["ok"] and r["quotient_dim"] == r["target_dim"]
    assert cm.column_acyclicity(a, 3)


def test_verify_suites():
    a = cm.algebra("cp(2)")
    for suite in ("sigma", "simplicial", "coaction", "connected-sum"):
        checks = cm.verify(suite, a, 3)
        assert checks and all(c["status"] == "pass" for c in checks)
    closed = cm.verify("closed-faces", a, 3)
    assert any(c["status"] == "expected-failure" for c in closed)


def test_json_file():
    a = cm.algebra(str(DATA / "genus2.json"))
    assert cm.poincare(a, "j", 3)[0] == "1+12t+48t^2+(64+11s)t^3+(10+4s)t^4"


def test_errors():
    with pytest.raises(ValueError):
        cm.algebra("klein")
    with pytest.raises(cm.ParseError):
        cm.algebra(str(DATA / "missing_orientation.json"))
    with pytest.raises(cm.ValidationError):
        cm.algebra(str(DATA / "degenerate_pairing.json"))
    with pytest.raises(ValueError):
        cm.betti(cm.algebra("torus"), "bogus", 2)

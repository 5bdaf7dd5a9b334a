import json

import pytest

from coexpand import io, verify
from coexpand.library import NAMED, cycle_graph
from coexpand.linalg_exact import Matrix

SMALL = {"er-le-ez": 10, "tu-criterion": 10, "hoffman-kruskal": 3, "tue1": 5, "tue2": 5,
         "dtu": 0, "integrality": 3, "duality": 1, "cover": 2}


@pytest.mark.parametrize("name", sorted(verify.SUITES))
def test_suite_passes(name):
    rep = verify.run_suite(name, seed=1, trials=SMALL[name])
    assert rep.passed, rep.table()
    assert rep.count(verify.PASS) > 0
    data = json.loads(io.dumps(rep.to_json()))
    assert set(data) == {"summary", "checks"}
    assert data["summary"]["suite"] == name
    for c in data["checks"]:
        assert set(c) == {"claim", "anchor", "status", "witness"}
        assert c["status"] in (verify.PASS, verify.FAIL, verify.SKIPPED)
        assert c["anchor"] == verify.ANCHORS[name]


@pytest.mark.parametrize("name", ["er-le-ez", "tu-criterion", "tue2"])
def test_seed_determinism(name):
    a = io.dumps(verify.run_suite(name, seed=5, trials=4).to_json())
    b = io.dumps(verify.run_suite(name, seed=5, trials=4).to_json())
    assert a == b


def test_matrix_inputs():
    rep = verify.run_suite("tu-criterion", inputs=[("id", Matrix.identity(3))], trials=0)
    assert rep.passed and any("id" in c.claim for c in rep.checks)
    rep = verify.run_suite("er-le-ez", inputs=[("(1,2)", Matrix.from_rows([[1, 2]]))], trials=0)
    assert rep.passed


def test_complex_inputs():
    rep = verify.run_suite("dtu", inputs=[("c5", cycle_graph(5))])
    assert rep.passed and rep.count(verify.PASS) >= 1
    rep = verify.run_suite("duality", inputs=[("sphere", NAMED["delta3"]())], trials=1)
    assert rep.passed


def test_report_accounting():
    rep = verify.VerificationReport("dtu")
    rep.add("a", True)
    rep.add("b", None, reason="guard")
    assert rep.passed and rep.summary() == {"suite": "dtu", "passed": True, "pass": 1,
                                            "fail": 0, "skipped": 1}
    rep.add("c", False, x=1)
    assert not rep.passed and "[fail   ] c" in rep.table()
    assert rep.checks[-1].witness == {"x": 1}

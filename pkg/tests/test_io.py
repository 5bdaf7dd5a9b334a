import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coexpand import guards, io
from coexpand.covers import cyclic_voltages
from coexpand.errors import FormatError, SizeGuard
from coexpand.library import NAMED, cycle_graph
from coexpand.linalg_exact import Matrix


@given(st.integers(0, 4).flatmap(lambda r: st.integers(0, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                       min_size=r, max_size=r).map(lambda rows: Matrix.from_rows(rows, cols=c)))))
def test_matrix_round_trips(M):
    assert io.parse_matrix_text(io.matrix_to_text(M)) == M
    assert io.matrix_from_obj(json.loads(json.dumps(io.matrix_to_obj(M)))) == M


def test_matrix_formats():
    assert io.parse_matrix_text("1 2\n1 2\n") == Matrix.from_rows([[1, 2]])
    assert io.parse_matrix_text('{"rows":2,"cols":1,"data":[[3],[4]]}').tolist() == [[3], [4]]
    assert io.parse_matrix_text("[[1, 0], [0, 1]]") == Matrix.identity(2)


@pytest.mark.parametrize("text", ["", "2", "1 2\n1", "1 1\nx", '{"rows":1}', "{bad json",
                                  '{"rows":1,"cols":1,"data":["1/2"]}'])
def test_matrix_format_errors(text):
    with pytest.raises(FormatError):
        io.parse_matrix_text(text)


def test_rationals_and_vectors():
    assert io.parse_rational("3/6") == Fraction(1, 2)
    assert io.parse_rational("4") == 4 and io.parse_rational(2.0) == 2
    assert io.parse_vector("[1, \"-1/3\"]") == (1, Fraction(-1, 3))
    for bad in ("x", True, 0.5, "1/0"):
        with pytest.raises(FormatError):
            io.parse_rational(bad)
    with pytest.raises(FormatError):
        io.parse_vector("{}")


def test_complex_round_trip(tmp_path):
    X = NAMED["torus"]()
    p = tmp_path / "t.json"
    p.write_text(json.dumps(io.complex_to_obj(X)))
    Y = io.load_complex(str(p))
    assert Y.f_vector == X.f_vector and Y.vertices == X.vertices
    assert io.load_complex("builtin:rp2").f_vector == (6, 15, 10)
    with pytest.raises(FormatError):
        io.load_complex("builtin:nope")
    with pytest.raises(FormatError):
        io.load_complex(str(tmp_path / "missing.json"))


@pytest.mark.parametrize("obj", [{}, {"facets": 3}, {"facets": [[]]}, {"facets": [[0, 0.5]]},
                                 {"facets": [[0, 1, 1]]}])
def test_complex_format_errors(obj):
    with pytest.raises(FormatError):
        io.complex_from_obj(obj)


def test_string_labels_and_voltage_files():
    X = io.complex_from_obj({"facets": [["a", "b"], ["b", "c"], ["a", "c"]]})
    obj = {"degree": 2, "tree": [["a", "b"], ["a", "c"]], "voltages": {"b-c": [1, 0]}}
    va = io.voltage_from_obj(obj, X)
    assert va.voltage("c", "b") == (1, 0)
    C = cycle_graph(3)
    va = cyclic_voltages(C, 3)
    again = io.voltage_from_obj(json.loads(json.dumps(io.voltage_to_obj(va))), C)
    assert again == va


@pytest.mark.parametrize("obj", [{}, {"degree": 2, "voltages": {"ab": [0, 1]}},
                                 {"degree": 2, "voltages": {"0-9": [0, 1]}},
                                 {"degree": 2, "tree": [[0, 1, 2]]},
                                 {"degree": 2, "voltages": {"0-1": "x"}}])
def test_voltage_format_errors(obj):
    with pytest.raises(FormatError):
        io.voltage_from_obj(obj, cycle_graph(3))


def test_bounds_and_problems():
    box = io.bounds_from_obj({"lower": [0], "upper": [2], "row_lower": ["-inf"], "row_upper": ["inf"]})
    assert box.row_lower == (-math.inf,) and box.row_upper == (math.inf,)
    with pytest.raises(FormatError):
        io.bounds_from_obj({"lower": [0]})
    A, v = io.problem_from_obj({"A": {"rows": 1, "cols": 2, "data": [1, 2]}, "v": [1]})
    assert A == Matrix.from_rows([[1, 2]]) and v == (1,)
    with pytest.raises(FormatError):
        io.problem_from_obj({"A": [[1, 2]], "v": [1, 2]})


def test_load_input_sniffing(tmp_path):
    (tmp_path / "m.txt").write_text("1 2\n1 2\n")
    (tmp_path / "c.json").write_text('{"facets": [[0, 1]]}')
    (tmp_path / "p.json").write_text('{"A": [[1, 2]], "v": [1]}')
    assert io.load_input(str(tmp_path / "m.txt"))[0] == "matrix"
    assert io.load_input(str(tmp_path / "c.json"))[0] == "complex"
    assert io.load_input(str(tmp_path / "p.json"))[0] == "problem"
    assert io.load_input("builtin:delta3")[0] == "complex"


def test_dumps_is_deterministic():
    s = io.dumps({"b": Fraction(1, 3), "a": (1, math.inf)})
    assert s == '{"a": [1, "inf"], "b": "1/3"}'


def test_guard_parsing(monkeypatch):
    monkeypatch.delenv("COEXPAND_SIZE_GUARD", raising=False)
    assert guards.limit("tu") == guards.DEFAULTS["tu"]
    monkeypatch.setenv("COEXPAND_SIZE_GUARD", "11")
    assert guards.limit("tu") == 11 and guards.limit("enum") == guards.DEFAULTS["enum"]
    monkeypatch.setenv("COEXPAND_SIZE_GUARD", "tu=5, enum=7")
    assert (guards.limit("tu"), guards.limit("enum")) == (5, 7)
    assert guards.limit("tu", 9) == 9
    with pytest.raises(SizeGuard):
        guards.check("enum", 8)
    monkeypatch.setenv("COEXPAND_SIZE_GUARD", "bogus=1")
    with pytest.raises(SizeGuard):
        guards.limit("tu")

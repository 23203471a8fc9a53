from __future__ import annotations

import json
from fractions import Fraction

import pytest

from wiretap.entropy import H, I, VarSet, joint
from wiretap.expr import ExpressionError, parse_relation
from wiretap.formats import FormatError, code_from_dict, code_to_dict, load_problem, problem_from_dict, problem_to_dict

N = 8


def v(*m):
    return VarSet.of(N, m)


@pytest.mark.parametrize(
    "text,expected,rel",
    [
        ("H(X4|X1,X3) = 0", H(v(5), v(2, 4)), "="),
        ("H(X4|X1X2X3)=0", H(v(5), v(2, 3, 4)), "="),
        ("3H(X3) = 4H(X1)", joint(v(4)) * 3 - joint(v(2)) * 4, "="),
        ("I(M;X1,X2|K) >= 0", I(v(0), v(2, 3), v(1)), ">="),
        ("H(K) >= 7/3 H(M)", joint(v(1)) - joint(v(0)) * Fraction(7, 3), ">="),
        ("2*H(X1) <= H(M)", joint(v(0)) - joint(v(2)) * 2, ">="),
        ("-H(X1) + H(X1,X2)", H(v(3), v(2)), ">="),
        ("0 <= I(M;K)", I(v(0), v(1)), ">="),
    ],
)
def test_parse(text, expected, rel):
    f, r = parse_relation(text, N)
    assert f == expected and r == rel


@pytest.mark.parametrize(
    "text",
    ["H(X7)", "H(Y1)", "H(X1) + 2 >= 0", "H()", "I(X1) >= 0", "H(X1) >= H(X2) >= 0", "H(X1", "", "H(X1) H(X2)"],
)
def test_parse_errors(text):
    with pytest.raises(ExpressionError):
        parse_relation(text, N)


def test_problem_round_trip(data_dir):
    p = load_problem(data_dir / "example6_classII.json")
    assert len(p.pattern) == 12
    assert problem_from_dict(problem_to_dict(p)) == p


@pytest.mark.parametrize(
    "data",
    [
        {"n1": 3, "n2": 3, "class": "II", "wiretap_sets": []},
        {"version": 2, "n1": 3, "n2": 3, "class": "II", "wiretap_sets": []},
        {"version": 1, "n1": "3", "n2": 3, "class": "II", "wiretap_sets": []},
        {"version": 1, "n1": 3, "n2": 3, "class": "III", "wiretap_sets": []},
        {"version": 1, "n1": 3, "n2": 3, "class": "II", "wiretap_sets": [[9]]},
        {"version": 1, "n1": 3, "n2": 3, "class": "II", "wiretap_sets": [["a"]]},
        {"version": 1, "n1": 3, "n2": 3, "class": "II"},
    ],
)
def test_bad_problems(data):
    with pytest.raises(FormatError):
        problem_from_dict(data)


def test_code_round_trip():
    d = {"version": 1, "q": 5, "m": 1, "k": 2, "edges": {"1": [[0, 1, 0]], "4": [[1, 7, 2]]}}
    code = code_from_dict(d, 6)
    assert code.edge_maps[3] == ((1, 2, 2),)  # reduced mod q
    assert code.edge_maps[1] == ()
    assert code_to_dict(code_from_dict(code_to_dict(code), 6)) == code_to_dict(code)


@pytest.mark.parametrize(
    "data",
    [
        {"version": 1, "q": 4, "m": 1, "k": 0, "edges": {}},
        {"version": 1, "q": 3, "m": 1, "k": 0, "edges": {"x": []}},
        {"version": 1, "q": 3, "m": 1, "k": 0, "edges": {"1": [[1, 2]]}},
        {"version": 1, "q": 3, "m": 1, "k": 0, "edges": {"9": [[1]]}},
        {"version": 1, "q": 3, "m": 0, "k": 0, "edges": {}},
    ],
)
def test_bad_codes(data):
    with pytest.raises(FormatError):
        code_from_dict(data, 6)


def test_unreadable_file(tmp_path):
    bad = tmp_path / "p.json"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        load_problem(bad)
    with pytest.raises(FormatError):
        load_problem(tmp_path / "missing.json")
    bad.write_text(json.dumps([1, 2]))
    with pytest.raises(FormatError):
        load_problem(bad)

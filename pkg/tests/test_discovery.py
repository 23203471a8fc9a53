from __future__ import annotations

from itertools import combinations
from math import gcd

import pytest

from conftest import cached_discovery, example_code, example_problem
from wiretap.discovery import DiscoveryError, Dependency, check_bound_preserving, discover, optimal_slice
from wiretap.entropy import H, evaluate, joint
from wiretap.lincode import entropy_vector
from wiretap.network import WiretapProblem, edge_var
from wiretap.shannon import functional_range


def eh(p, *edges):
    return joint(edge_var(p.spec, edges))


def reported_equalities(p, rep):
    out = []
    for r in rep.ratios:
        out.append(eh(p, r.i) * r.a - eh(p, r.j) * r.b)
    for d in rep.dependencies:
        t, s = edge_var(p.spec, [d.target]), edge_var(p.spec, d.sources)
        out.append(H(t, s) if d.sources else joint(t))
    return out


def test_example1_structure():
    rep = cached_discovery(1)
    assert rep.bound == 3
    assert rep.layer1_independent and rep.layer2_independent
    for ratio in [(1, 3, 2, 1), (1, 2, 1, 1), (4, 5, 2, 1), (4, 6, 1, 1)]:
        assert rep.has_ratio(*ratio)
    assert Dependency(4, (1, 3)) in rep.dependencies
    assert Dependency(6, (2, 3)) in rep.dependencies
    assert Dependency(5, (1, 2, 3)) in rep.dependencies


def test_example5_structure():
    rep = cached_discovery(5)
    for ratio in [(1, 3, 4, 3), (4, 5, 2, 1), (5, 6, 1, 1), (1, 2, 1, 1)]:
        assert rep.has_ratio(*ratio)
    assert Dependency(5, (1, 3)) in rep.dependencies
    assert Dependency(6, (2, 3)) in rep.dependencies


def test_example6_structure():
    rep = cached_discovery(6)
    for ratio in [(1, 2, 7, 9), (1, 3, 8, 9), (4, 5, 3, 4), (4, 6, 5, 4)]:
        assert rep.has_ratio(*ratio)
    assert {d.sources for d in rep.dependencies} == {(1, 2, 3)}


def test_report_invariants():
    for k in (1, 5, 6):
        rep = cached_discovery(k)
        for r in rep.ratios:
            assert gcd(r.a, r.b) == 1 and r.a <= 16 and r.b <= 16
        for d in rep.dependencies:
            others = [e for e in rep.dependencies if e.target == d.target and e != d]
            assert not any(set(e.sources) < set(d.sources) for e in others)


def test_reported_equalities_reverify_and_preserve_bound():
    p = example_problem(1, "II")
    rep = cached_discovery(1)
    cs, extra, _ = optimal_slice(p)
    eqs = reported_equalities(p, rep)
    for f in eqs[:4]:
        assert functional_range(cs, extra, f) == (0, 0)
    for f in eqs:
        assert check_bound_preserving(p, f)


def test_reported_equalities_hold_on_optimal_codes():
    for k in (1, 2):
        p = example_problem(k, "II")
        rep = cached_discovery(k)
        h = entropy_vector(example_code(k, 5))
        for f in reported_equalities(p, rep):
            assert evaluate(f, h) == 0


def test_ratio_completeness_small_bound():
    # plain candidate testing over every pair and every a/b with a, b <= 2
    p = example_problem(2, "II")
    rep = discover(p, denominator_bound=2)
    cs, extra, _ = optimal_slice(p)
    for i, j in combinations(range(1, 7), 2):
        for a, b in [(1, 1), (1, 2), (2, 1)]:
            implied = functional_range(cs, extra, eh(p, i) * a - eh(p, j) * b) == (0, 0)
            assert implied == rep.has_ratio(i, j, a, b)


def test_bound_preserving_examples():
    p = example_problem(1, "II")
    layer1 = eh(p, 1) + eh(p, 2) + eh(p, 3) - eh(p, 1, 2, 3)
    assert check_bound_preserving(p, layer1)
    assert not check_bound_preserving(p, [eh(p, 1) - eh(p, 2), eh(p, 2) - eh(p, 3)])
    assert check_bound_preserving(p, eh(p, 1) * 0)


def test_discover_errors():
    with pytest.raises(DiscoveryError):
        discover(WiretapProblem.of(3, 3, "I", [[4, 5, 6]]))
    with pytest.raises(DiscoveryError):
        discover(WiretapProblem.of(3, 3, "I", []))
    with pytest.raises(ValueError):
        discover(example_problem(2, "II"), denominator_bound=0)


def test_report_serialization():
    rep = cached_discovery(5)
    data = rep.to_json()
    assert data["bound"] == "7/3"
    assert "4H(X1)=3H(X3)" in data["ratios"]
    assert "H(X5|X1,X3)=0" in data["dependencies"]
    assert rep.lines()[0] == "bound=7/3"

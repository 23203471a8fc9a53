from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wiretap.entropy import (
    EntropyFunctional,
    GroundMismatch,
    H,
    I,
    VarSet,
    elemental_count,
    elemental_inequalities,
    evaluate,
    expand_measure,
    format_functional,
    joint,
)


def v(n, *members):
    return VarSet.of(n, members)


def test_varset_basics():
    a, b = v(4, 0, 2), v(4, 2, 3)
    assert (a | b).members == (0, 2, 3)
    assert (a & b).members == (2,)
    assert (a - b).members == (0,)
    assert v(4, 2) <= a and not a <= b
    assert len(a) == 2 and not VarSet(4, 0)
    with pytest.raises(ValueError):
        v(3, 3)
    with pytest.raises(ValueError):
        VarSet(17, 1)
    with pytest.raises(GroundMismatch):
        a | v(5, 1)


def test_mutual_information_expansion():
    M, K = v(2, 0), v(2, 1)
    f = expand_measure("I", M, K)
    assert f.coeffs == {0b01: 1, 0b10: 1, 0b11: -1}


def test_conditional_entropy_expansion():
    X, Y = v(3, 0), v(3, 1)
    assert expand_measure("H|", X, Y).coeffs == {0b011: 1, 0b010: -1}


def test_conditional_mutual_information_expansion():
    X, Y, Z = v(3, 0), v(3, 1), v(3, 2)
    f = expand_measure("I|", X, Y, Z)
    assert f.coeffs == {0b101: 1, 0b110: 1, 0b111: -1, 0b100: -1}


def test_expand_measure_linearity():
    X, Y, Z = v(4, 0), v(4, 1, 3), v(4, 2)
    assert I(X, Y, Z) == H(X, Z) - H(X, Y | Z)


def test_measure_errors():
    with pytest.raises(GroundMismatch):
        expand_measure("I", v(3, 0), v(4, 1))
    with pytest.raises(ValueError):
        expand_measure("H", VarSet(3, 0))
    with pytest.raises(ValueError):
        expand_measure("Q", v(3, 0))


def test_functional_arithmetic_is_exact_and_drops_zeros():
    a = joint(v(3, 0)) * Fraction(1, 3)
    b = joint(v(3, 0)) * Fraction(2, 3)
    assert (a + b).coeffs == {1: 1}
    assert not (a - a)
    assert len(a + joint(v(3, 1))) == 2
    assert EntropyFunctional(3, {1: 0, 2: Fraction(1, 2)}).coeffs == {2: Fraction(1, 2)}
    with pytest.raises(ValueError):
        EntropyFunctional(3, {8: 1})


def test_elemental_small_cases():
    rows = elemental_inequalities(2)
    expected = {
        frozenset(H(v(2, 0), v(2, 1)).coeffs.items()),
        frozenset(H(v(2, 1), v(2, 0)).coeffs.items()),
        frozenset(I(v(2, 0), v(2, 1)).coeffs.items()),
    }
    assert {frozenset(r.coeffs.items()) for r in rows} == expected
    assert len(elemental_inequalities(3)) == 9
    assert len(elemental_inequalities(8)) == 1800


@pytest.mark.parametrize("n", range(2, 11))
def test_elemental_count_formula(n):
    closed = n + comb(n, 2) * 2 ** (n - 2)
    assert elemental_count(n) == closed
    assert len(elemental_inequalities(n)) == closed


def test_elemental_range_errors():
    with pytest.raises(ValueError):
        elemental_inequalities(0)
    with pytest.raises(ValueError):
        elemental_inequalities(17)


def test_evaluate_examples():
    n = 2
    f = joint(v(n, 0)) + joint(v(n, 1)) - joint(v(n, 0, 1))
    assert evaluate(f, {v(n, 0): 1, v(n, 1): 1, v(n, 0, 1): 2}) == 0
    assert evaluate(H(v(n, 0), v(n, 1)), {v(n, 0, 1): 1, v(n, 1): 1}) == 0
    g = joint(v(n, 1)) * 3 - joint(v(n, 0)) * 7
    assert evaluate(g, {v(n, 1): Fraction(7, 3), v(n, 0): 1}) == 0
    with pytest.raises(KeyError):
        evaluate(f, {v(n, 0): 1})
    # mask-keyed vectors work too
    assert evaluate(f, {1: 1, 2: 1, 3: 2}) == 0


def test_format_functional():
    f = joint(v(3, 0)) * 2 - joint(v(3, 1, 2))
    assert format_functional(f, ["M", "K", "X1"]) == "2*H(M) - H(K,X1)"
    assert format_functional(EntropyFunctional(3)) == "0"


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.data())
def test_elemental_nonnegative_on_random_distributions(n, data):
    # entropy vectors of random linear maps over F_3 are entropic
    from wiretap.lincode import rank_mod

    width = data.draw(st.integers(1, 4))
    maps = [
        [data.draw(st.lists(st.integers(0, 2), min_size=width, max_size=width)) for _ in range(data.draw(st.integers(0, 2)))]
        for _ in range(n)
    ]
    h = {}
    for mask in range(1, 1 << n):
        rows = [r for i in range(n) if mask >> i & 1 for r in maps[i]]
        h[mask] = rank_mod(rows, 3)
    for f in elemental_inequalities(n):
        assert evaluate(f, h) >= 0

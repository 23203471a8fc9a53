from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from conftest import example_problem
from oracles import shannon_cone_rays
from wiretap.entropy import EntropyFunctional, GroundMismatch, H, I, VarSet, elemental_masks, evaluate, joint
from wiretap.network import build_constraints, key_var, msg_var
from wiretap.shannon import (
    NOT_PROVABLE,
    PROVABLE,
    ConstraintSet,
    functional_range,
    prove_inequality,
    reconstruct,
    shannon_bound,
)


def v(n, *m):
    return VarSet.of(n, m)


def test_entropy_nonnegative_provable():
    verdict = prove_inequality(ConstraintSet(3), joint(v(3, 0)))
    assert verdict.status == PROVABLE
    assert reconstruct(ConstraintSet(3), verdict) == joint(v(3, 0))


def test_independence_identity_both_directions():
    M, K = v(2, 0), v(2, 1)
    cs = ConstraintSet(2, (I(M, K),))
    f = joint(M) + joint(K) - joint(M | K)
    assert prove_inequality(cs, f).provable
    assert prove_inequality(cs, -f).provable


def test_not_provable_has_cone_witness():
    cs = ConstraintSet(3)
    target = joint(v(3, 0)) - joint(v(3, 1))
    verdict = prove_inequality(cs, target)
    assert verdict.status == NOT_PROVABLE
    w = verdict.witness
    assert evaluate(target, w) < 0
    for row in elemental_masks(3):
        assert sum(c * w[m] for m, c in row.items()) >= 0


def test_example1_key_bound_provable():
    p = example_problem(1, "II")
    cs = build_constraints(p)
    n = p.spec.ground
    target = joint(key_var(p.spec)) - joint(msg_var(p.spec)) * 3
    verdict = prove_inequality(cs, target)
    assert verdict.provable
    assert reconstruct(cs, verdict) == target
    assert all(m > 0 for m in verdict.elemental_multipliers.values())
    assert not prove_inequality(cs, joint(key_var(p.spec)) - joint(msg_var(p.spec)) * 4).provable
    assert n == 8


@pytest.mark.parametrize("k,expected", [(2, Fraction(2)), (5, Fraction(7, 3)), (6, Fraction(19, 5))])
def test_shannon_bound_examples(k, expected):
    p = example_problem(k, "II")
    assert shannon_bound(build_constraints(p), key_var(p.spec), msg_var(p.spec)) == expected


def test_functional_range_examples():
    p = example_problem(1, "II")
    s = p.spec
    x1, x3 = VarSet.of(8, [2]), VarSet.of(8, [4])
    extra = [(joint(msg_var(s)), 1), (joint(key_var(s)), 3)]
    assert functional_range(build_constraints(p), extra, joint(x3) - joint(x1) * 2) == (0, 0)

    M, K = v(3, 0), v(3, 1)
    assert functional_range(ConstraintSet(3, (I(M, K),)), [], I(M, K)) == (0, 0)
    assert functional_range(ConstraintSet(3), [(joint(M), 1)], joint(v(3, 2))) == (0, math.inf)


def test_ground_mismatch_rejected():
    with pytest.raises(GroundMismatch):
        prove_inequality(ConstraintSet(3), joint(v(4, 0)))
    with pytest.raises(GroundMismatch):
        ConstraintSet(3, (joint(v(4, 0)),))


def test_infeasible_normalization():
    # H(M) forced to zero
    M, K = v(2, 0), v(2, 1)
    assert shannon_bound(ConstraintSet(2, (joint(M),)), K, M) is None


def _oracle_rays():
    rows = []
    for r in elemental_masks(3):
        dense = [0] * 7
        for m, c in r.items():
            dense[m - 1] = c
        rows.append(dense)
    return shannon_cone_rays(rows, 7)


def test_three_variable_oracle_agreement():
    rays = _oracle_rays()
    assert len(rays) == 8  # the polymatroid cone on 3 variables
    rng = random.Random(2024)
    elem = elemental_masks(3)
    cs = ConstraintSet(3)
    agree = {True: 0, False: 0}
    for trial in range(200):
        if trial % 2:
            coeffs = {m: rng.randint(-3, 3) for m in range(1, 8)}
        else:
            # nonnegative combination plus a small perturbation: near the boundary
            coeffs = {}
            for row in rng.sample(elem, 3):
                w = rng.randint(1, 3)
                for m, c in row.items():
                    coeffs[m] = coeffs.get(m, 0) + w * c
            m = rng.randint(1, 7)
            coeffs[m] = coeffs.get(m, 0) + rng.choice([-1, 0, 0, 1])
        target = EntropyFunctional(3, coeffs)
        expected = all(sum(target.coeffs.get(m, 0) * r[m - 1] for m in range(1, 8)) >= 0 for r in rays)
        verdict = prove_inequality(cs, target)
        assert verdict.provable == expected, target
        agree[expected] += 1
    assert agree[True] > 20 and agree[False] > 20


def test_adding_equalities_keeps_provable():
    rng = random.Random(7)
    n = 3
    base = ConstraintSet(n)
    for _ in range(25):
        target = EntropyFunctional(n, {m: rng.randint(-2, 3) for m in range(1, 8)})
        extra = EntropyFunctional(n, {m: rng.randint(-1, 1) for m in range(1, 8)})
        if prove_inequality(base, target).provable:
            assert prove_inequality(base.with_equalities([extra]), target).provable

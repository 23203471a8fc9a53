"""Structure shared by every bound-achieving polymatroid of a wiretap problem.

With the key size pinned at its Shannon bound (H(M) = 1, H(K) = c), a linear
relation is *implied* when it holds at every point of the remaining cone
slice, i.e. its exact range over the slice is (0, 0). Such relations are
hints for building an optimal code: which layer is independent, fixed
ratios between edge entropies, and which layer-1 edges determine each
layer-2 edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import shannon
from .entropy import EntropyFunctional, H, evaluate, joint
from .network import (
    NONE_SECURE,
    WiretapProblem,
    build_constraints,
    edge_var,
    key_var,
    msg_var,
    shannon_bound_of,
)


class DiscoveryError(ValueError):
    pass


@dataclass(frozen=True)
class Ratio:
    """``a * H(Xi) = b * H(Xj)`` with ``i < j`` and ``gcd(a, b) = 1``."""

    i: int
    j: int
    a: int
    b: int

    def __str__(self) -> str:
        lhs = f"{self.a}H(X{self.i})" if self.a != 1 else f"H(X{self.i})"
        rhs = f"{self.b}H(X{self.j})" if self.b != 1 else f"H(X{self.j})"
        return f"{lhs}={rhs}"


@dataclass(frozen=True)
class Dependency:
    """``H(X_target | X_S) = 0``."""

    target: int
    sources: tuple[int, ...]

    def __str__(self) -> str:
        given = ",".join(f"X{e}" for e in self.sources)
        return f"H(X{self.target}|{given})=0" if given else f"H(X{self.target})=0"


@dataclass
class DiscoveryReport:
    bound: Fraction
    layer1_independent: bool
    layer2_independent: bool
    ratios: list[Ratio] = field(default_factory=list)
    dependencies: list[Dependency] = field(default_factory=list)

    def has_ratio(self, i: int, j: int, a: int, b: int) -> bool:
        """True if ``a*H(Xi) = b*H(Xj)`` was reported (either orientation, any scaling)."""
        for r in self.ratios:
            if (r.i, r.j) == (i, j) and r.a * b == r.b * a:
                return True
            if (r.i, r.j) == (j, i) and r.a * a == r.b * b:
                return True
        return False

    def to_json(self) -> dict:
        return {
            "bound": str(self.bound),
            "layer1_independent": self.layer1_independent,
            "layer2_independent": self.layer2_independent,
            "ratios": [str(r) for r in self.ratios],
            "dependencies": [str(d) for d in self.dependencies],
        }

    def lines(self) -> list[str]:
        out = [
            f"bound={self.bound}",
            f"layer1_independent={str(self.layer1_independent).lower()}",
            f"layer2_independent={str(self.layer2_independent).lower()}",
        ]
        out += [f"ratio {r}" for r in self.ratios]
        out += [f"dependency {d}" for d in self.dependencies]
        return out


def _edge_h(p: WiretapProblem, edges: Sequence[int]) -> EntropyFunctional:
    return joint(edge_var(p.spec, edges))


def optimal_slice(p: WiretapProblem) -> tuple[shannon.ConstraintSet, list, Fraction]:
    """Problem constraints plus H(M)=1 and H(K)=c, with c the Shannon bound."""
    c = shannon_bound_of(p)
    if c is NONE_SECURE:
        raise DiscoveryError("no secure code exists for this pattern")
    if c == 0:
        raise DiscoveryError("Shannon bound is zero; nothing to discover")
    cs = build_constraints(p)
    extra = [(joint(msg_var(p.spec)), 1), (joint(key_var(p.spec)), c)]
    return cs, extra, c


def discover(p: WiretapProblem, denominator_bound: int = 16) -> DiscoveryReport:
    """Implied independence, edge-entropy ratios and minimal layer-2 dependencies."""
    if denominator_bound < 1:
        raise ValueError("denominator_bound must be at least 1")
    cs, extra, c = optimal_slice(p)
    s = p.spec

    # Any implied relation holds at this point, so relations it violates are
    # skipped without an LP; survivors are confirmed by their exact range.
    h0 = shannon.extreme_point(cs, extra, joint(key_var(s)), "min")
    if h0 is None:
        raise shannon.InvariantBreach("optimal slice has no optimal point")

    def implied(f: EntropyFunctional) -> bool:
        if evaluate(f, h0) != 0:
            return False
        return shannon.functional_range(cs, extra, f) == (0, 0)

    def independent(edges: Sequence[int]) -> bool:
        f = sum((_edge_h(p, [e]) for e in edges), EntropyFunctional(s.ground)) - _edge_h(p, edges)
        return implied(f)

    layer1 = list(range(1, s.n1 + 1))
    layer2 = list(range(s.n1 + 1, s.edges + 1))

    ratios = []
    single = {e: evaluate(_edge_h(p, [e]), h0) for e in range(1, s.edges + 1)}
    for i, j in combinations(range(1, s.edges + 1), 2):
        hi, hj = single[i], single[j]
        if hi == 0 or hj == 0:
            continue  # a positive ratio needs both sides nonzero at every point
        # a * hi = b * hj  =>  a / b = hj / hi
        q = hj / hi
        a, b = q.numerator, q.denominator
        if a > denominator_bound or b > denominator_bound:
            continue
        if implied(_edge_h(p, [i]) * a - _edge_h(p, [j]) * b):
            ratios.append(Ratio(i, j, a, b))

    deps = []
    for t in layer2:
        found: list[tuple[int, ...]] = []
        for size in range(len(layer1) + 1):
            for src in combinations(layer1, size):
                if any(set(f) <= set(src) for f in found):
                    continue
                tv = edge_var(s, [t])
                sv = edge_var(s, src)
                if implied(H(tv, sv) if src else joint(tv)):
                    found.append(src)
        deps += [Dependency(t, src) for src in found]

    return DiscoveryReport(c, independent(layer1), independent(layer2), ratios, deps)


def check_bound_preserving(
    p: WiretapProblem, extra: EntropyFunctional | Sequence[EntropyFunctional]
) -> bool:
    """Does adding ``extra = 0`` (one or several equalities) leave the Shannon bound unchanged?"""
    if isinstance(extra, EntropyFunctional):
        extra = [extra]
    base = shannon_bound_of(p)
    cs = build_constraints(p).with_equalities(list(extra))
    val = shannon.shannon_bound(cs, key_var(p.spec), msg_var(p.spec))
    return (NONE_SECURE if val is None else val) == base

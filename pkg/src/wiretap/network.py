"""The source-relay-destination wiretap network and its three key-size bounds.

Ground-set convention for entropy coordinates: index 0 is the message M,
index 1 the key K, indices 2..n1+1 the layer-1 edges and n1+2..n1+n2+1 the
layer-2 edges. Edges themselves are numbered 1..n1+n2 (layer 1 first), so
edge ``e`` lives at ground index ``e + 1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from . import ratlp, shannon
from .entropy import MAX_GROUND, H, I, VarSet

log = logging.getLogger(__name__)

MSG = 0
KEY = 1


class _NoneSecure:
    """Bound value meaning no secure code exists for the pattern."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NONE_SECURE"

    def __str__(self) -> str:
        return "none-secure"

    def __reduce__(self):
        return (_NoneSecure, ())


NONE_SECURE = _NoneSecure()
Bound = Union[Fraction, _NoneSecure]

TIGHT_BY_CUTSET = "routing-tight-by-cutset"
GAP_FOUND = "gap-found"
SHANNON_EQUALS_ROUTING = "shannon-equals-routing"


def format_bound(b: Bound | None) -> str:
    if b is None:
        return "n/a"
    return str(b)


def parse_bound(text: str) -> Bound:
    return NONE_SECURE if text == "none-secure" else Fraction(text)


@dataclass(frozen=True)
class NetworkSpec:
    n1: int
    n2: int
    decoding: str = "II"

    def __post_init__(self) -> None:
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("each layer needs at least one edge")
        if self.n1 + self.n2 + 2 > MAX_GROUND:
            raise ValueError(f"n1 + n2 + 2 must not exceed {MAX_GROUND}")
        if self.decoding not in ("I", "II"):
            raise ValueError(f"decoding class must be 'I' or 'II', not {self.decoding!r}")

    @property
    def edges(self) -> int:
        return self.n1 + self.n2

    @property
    def ground(self) -> int:
        return self.n1 + self.n2 + 2

    @property
    def layer1_mask(self) -> int:
        return (1 << self.n1) - 1

    @property
    def layer2_mask(self) -> int:
        return ((1 << self.n2) - 1) << self.n1


def _mask(edges: Iterable[int]) -> int:
    m = 0
    for e in edges:
        m |= 1 << (e - 1)
    return m


def _edges(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def maximal_sets(masks: Iterable[int]) -> tuple[int, ...]:
    """Drop empty and dominated sets; result sorted by :func:`set_key`."""
    uniq = {m for m in masks if m}
    keep = [m for m in uniq if not any(m != o and m & o == m for o in uniq)]
    return tuple(sorted(keep, key=set_key))


def set_key(mask: int) -> tuple[int, ...]:
    return _edges(mask)


class WiretapPattern:
    """An antichain of nonempty edge sets (dominated sets are silently dropped)."""

    __slots__ = ("masks",)

    def __init__(self, sets: Iterable[Iterable[int]] = ()):
        masks = []
        for s in sets:
            s = list(s)
            if any(e < 1 for e in s):
                raise ValueError("edges are numbered from 1")
            masks.append(_mask(s))
        self.masks = maximal_sets(masks)

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "WiretapPattern":
        p = object.__new__(cls)
        p.masks = maximal_sets(masks)
        return p

    @property
    def sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_edges(m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.sets)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WiretapPattern) and self.masks == other.masks

    def __hash__(self) -> int:
        return hash(self.masks)

    def __repr__(self) -> str:
        return f"WiretapPattern({[list(s) for s in self.sets]})"

    def max_edge(self) -> int:
        return max((e for s in self.sets for e in s), default=0)


@dataclass(frozen=True)
class WiretapProblem:
    spec: NetworkSpec
    pattern: WiretapPattern

    def __post_init__(self) -> None:
        if self.pattern.max_edge() > self.spec.edges:
            raise ValueError(
                f"pattern uses edge {self.pattern.max_edge()} but the network has {self.spec.edges}"
            )

    @classmethod
    def of(cls, n1: int, n2: int, decoding: str, sets: Iterable[Iterable[int]]) -> "WiretapProblem":
        return cls(NetworkSpec(n1, n2, decoding), WiretapPattern(sets))


@dataclass(frozen=True)
class BoundReport:
    cutset: Bound
    routing: Bound
    shannon: Bound | None  # None only when never computed
    gap_class: str
    shannon_solved: bool = True

    def line(self) -> str:
        return (
            f"cutset={format_bound(self.cutset)} routing={format_bound(self.routing)} "
            f"shannon={format_bound(self.shannon)} gap={self.gap_class}"
        )


# --------------------------------------------------------------------------
# variables


def edge_var(spec: NetworkSpec, edges: Iterable[int]) -> VarSet:
    return VarSet.of(spec.ground, [e + 1 for e in edges])


def msg_var(spec: NetworkSpec) -> VarSet:
    return VarSet.of(spec.ground, [MSG])


def key_var(spec: NetworkSpec) -> VarSet:
    return VarSet.of(spec.ground, [KEY])


def layer1_var(spec: NetworkSpec) -> VarSet:
    return edge_var(spec, range(1, spec.n1 + 1))


def layer2_var(spec: NetworkSpec) -> VarSet:
    return edge_var(spec, range(spec.n1 + 1, spec.edges + 1))


def build_constraints(p: WiretapProblem) -> shannon.ConstraintSet:
    """Independence, encoding, relaying, decoding and secrecy equalities (each = 0)."""
    s = p.spec
    M, K = msg_var(s), key_var(s)
    L1, L2 = layer1_var(s), layer2_var(s)
    eqs = [
        I(M, K),
        H(L1, M | K),
        H(L2, L1),
        H(M, L2) if s.decoding == "I" else H(M | K, L2),
    ]
    eqs += [I(M, edge_var(s, a)) for a in p.pattern.sets]
    return shannon.ConstraintSet(s.ground, tuple(eqs))


# --------------------------------------------------------------------------
# cut-set and routing bounds


def _covering_lp_bound(nvars: int, cover_rows: list[list[int]]) -> Bound:
    """1 / (max sum x - 1) subject to sum_{i in row} x_i <= 1, x >= 0."""
    if not cover_rows:
        return Fraction(0)
    lp = ratlp.LinearProgram.build(
        nvars,
        [1] * nvars,
        "max",
        le=[({i: 1 for i in row}, 1) for row in cover_rows],
    )
    try:
        out = ratlp.solve(lp)
    except ratlp.CertificateError as exc:
        raise shannon.InvariantBreach(str(exc)) from exc
    if out.status == ratlp.UNBOUNDED:
        return Fraction(0)
    opt = out.value
    if opt == 1:
        return NONE_SECURE
    return 1 / (opt - 1)


def cut_bound(p: WiretapProblem, layer: int) -> Bound:
    """Covering bound for one cut, with wiretap sets restricted to that cut."""
    s = p.spec
    cut = s.layer1_mask if layer == 1 else s.layer2_mask
    offset = 0 if layer == 1 else s.n1
    width = s.n1 if layer == 1 else s.n2
    restricted = maximal_sets(m & cut for m in p.pattern.masks)
    rows = [[e - 1 - offset for e in _edges(m)] for m in restricted]
    return _covering_lp_bound(width, rows)


def max_bound(a: Bound, b: Bound) -> Bound:
    if a is NONE_SECURE or b is NONE_SECURE:
        return NONE_SECURE
    return max(a, b)


def cutset_bound(p: WiretapProblem) -> Bound:
    if not p.pattern.masks:
        return Fraction(0)
    return max_bound(cut_bound(p, 1), cut_bound(p, 2))


def routing_bound(p: WiretapProblem) -> Bound:
    """Cut-set bound of the n1*n2 path network; path (i, j) has index (i-1)*n2 + j."""
    s = p.spec
    if not p.pattern.masks:
        return Fraction(0)
    rows = []
    for m in p.pattern.masks:
        row = [
            (i - 1) * s.n2 + (j - 1)
            for i in range(1, s.n1 + 1)
            for j in range(1, s.n2 + 1)
            if m >> (i - 1) & 1 or m >> (s.n1 + j - 1) & 1
        ]
        rows.append(row)
    return _covering_lp_bound(s.n1 * s.n2, rows)


def shannon_bound_of(p: WiretapProblem) -> Bound:
    if not p.pattern.masks:
        return Fraction(0)
    val = shannon.shannon_bound(build_constraints(p), key_var(p.spec), msg_var(p.spec))
    return NONE_SECURE if val is None else val


def classify(cutset: Bound, routing: Bound, shannon_value: Bound | None) -> str:
    if cutset == routing:
        return TIGHT_BY_CUTSET
    return SHANNON_EQUALS_ROUTING if shannon_value == routing else GAP_FOUND


def bound_report(p: WiretapProblem, lazy_shannon: bool = False) -> BoundReport:
    """All three bounds; with ``lazy_shannon`` the Shannon LP is skipped when cut-set meets routing."""
    c = cutset_bound(p)
    r = routing_bound(p)
    if c == r and lazy_shannon:
        return BoundReport(c, r, r, TIGHT_BY_CUTSET, shannon_solved=False)
    sh = shannon_bound_of(p)
    return BoundReport(c, r, sh, classify(c, r, sh))


def bound_le(a: Bound, b: Bound) -> bool:
    """Order on bounds with NONE_SECURE as +infinity."""
    if b is NONE_SECURE:
        return True
    if a is NONE_SECURE:
        return False
    return a <= b

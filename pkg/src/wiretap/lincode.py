"""Linear codes over a prime field for the two-layer wiretap network.

Source symbols are ``m`` message symbols followed by ``k`` key symbols, all
uniform and independent over F_q. Each edge carries ``d_e`` linear
combinations of them (a ``d_e x (m+k)`` matrix, possibly with no rows).
Every entropy is then a rank: H(X_S) = rank(stacked rows of S) * log q.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import flint

from .entropy import VarSet
from .network import KEY, MSG, NetworkSpec, WiretapProblem

log = logging.getLogger(__name__)

Matrix = tuple[tuple[int, ...], ...]
Part = Union[int, str]  # an edge number, or "M" / "K"


class CodeDimensionError(ValueError):
    pass


@dataclass(frozen=True)
class FieldPrime:
    q: int

    def __post_init__(self) -> None:
        if self.q < 2 or not flint.fmpz(self.q).is_prime():
            raise ValueError(f"field size {self.q} is not a prime")


def rank_mod(rows: Sequence[Sequence[int]], q: int) -> int:
    if not rows or not rows[0]:
        return 0
    return flint.nmod_mat([list(r) for r in rows], q).rank()


@dataclass(frozen=True)
class LinearCode:
    q: int
    m: int
    k: int
    edge_maps: tuple[Matrix, ...]  # edge e is edge_maps[e - 1]

    def __post_init__(self) -> None:
        FieldPrime(self.q)
        if self.m < 1 or self.k < 0:
            raise CodeDimensionError("need m >= 1 message symbols and k >= 0 key symbols")
        width = self.m + self.k
        reduced = []
        for e, mat in enumerate(self.edge_maps, start=1):
            rows = []
            for row in mat:
                if len(row) != width:
                    raise CodeDimensionError(
                        f"edge {e}: row of length {len(row)}, expected m+k={width}"
                    )
                rows.append(tuple(int(v) % self.q for v in row))
            reduced.append(tuple(rows))
        object.__setattr__(self, "edge_maps", tuple(reduced))

    @classmethod
    def from_edges(
        cls, q: int, m: int, k: int, edges: dict[int, Sequence[Sequence[int]]], n_edges: int
    ) -> "LinearCode":
        """Build from a sparse ``{edge: rows}`` map; missing edges carry nothing."""
        for e in edges:
            if not 1 <= e <= n_edges:
                raise CodeDimensionError(f"edge {e} outside 1..{n_edges}")
        maps = tuple(tuple(tuple(r) for r in edges.get(e, ())) for e in range(1, n_edges + 1))
        return cls(q, m, k, maps)

    @property
    def width(self) -> int:
        return self.m + self.k

    @property
    def n_edges(self) -> int:
        return len(self.edge_maps)

    def unit_rows(self, part: str) -> list[tuple[int, ...]]:
        idx = range(self.m) if part == "M" else range(self.m, self.width)
        return [tuple(1 if c == i else 0 for c in range(self.width)) for i in idx]

    def rows_of(self, parts: Iterable[Part]) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        for p in parts:
            if p in ("M", "K"):
                out += self.unit_rows(p)  # type: ignore[arg-type]
            elif isinstance(p, int) and 1 <= p <= self.n_edges:
                out += self.edge_maps[p - 1]
            else:
                raise CodeDimensionError(f"unknown code part {p!r}")
        return out


def subset_entropy(code: LinearCode, parts: Iterable[Part]) -> int:
    """H(X_S) in units of log q."""
    return rank_mod(code.rows_of(parts), code.q)


@dataclass(frozen=True)
class Failure:
    check: str  # "relay" | "decode" | "secrecy"
    message: str
    witness: tuple = ()

    def __str__(self) -> str:
        return self.message


@dataclass
class CodeReport:
    relay_ok: bool
    decode_ok: bool
    secrecy_ok: bool
    rate: Fraction
    entropy_profile: tuple[int, ...]
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.relay_ok and self.decode_ok and self.secrecy_ok

    def lines(self) -> list[str]:
        out = [
            f"relay={'ok' if self.relay_ok else 'fail'}",
            f"decode={'ok' if self.decode_ok else 'fail'}",
            f"secrecy={'ok' if self.secrecy_ok else 'fail'}",
            f"rate={self.rate}",
            "edge_entropy=" + ",".join(str(h) for h in self.entropy_profile),
        ]
        out += [f"failure {f.check}: {f.message}" for f in self.failures]
        return out


def _in_span(rows: list, extra: list, q: int) -> bool:
    return rank_mod(rows + extra, q) == rank_mod(rows, q)


def verify(code: LinearCode, p: WiretapProblem) -> CodeReport:
    s = p.spec
    if code.n_edges != s.edges:
        raise CodeDimensionError(f"code has {code.n_edges} edges, network has {s.edges}")
    q = code.q
    layer1 = list(range(1, s.n1 + 1))
    layer2 = list(range(s.n1 + 1, s.edges + 1))
    failures = []

    l1 = code.rows_of(layer1)
    for e in layer2:
        if not _in_span(l1, list(code.edge_maps[e - 1]), q):
            failures.append(Failure("relay", f"edge {e} not computable from layer 1", (e,)))
    relay_ok = not failures

    l2 = code.rows_of(layer2)
    m_ok = _in_span(l2, code.unit_rows("M"), q)
    k_ok = _in_span(l2, code.unit_rows("K"), q)
    if not m_ok:
        failures.append(Failure("decode", "M not decodable", ("M",)))
    if s.decoding == "II" and not k_ok:
        failures.append(Failure("decode", "K not decodable", ("K",)))
    decode_ok = m_ok and (k_ok or s.decoding == "I")

    secrecy_ok = True
    for a in p.pattern.sets:
        rows = code.rows_of(a)
        # I(M; X_A) = 0  iff  rank(A) + m == rank(A + M)
        if rank_mod(rows, q) + code.m != rank_mod(rows + code.unit_rows("M"), q):
            secrecy_ok = False
            label = "{" + ",".join(str(e) for e in a) + "}"
            failures.append(Failure("secrecy", f"wiretap set {label} leaks M", a))

    profile = tuple(subset_entropy(code, [e]) for e in range(1, s.edges + 1))
    return CodeReport(relay_ok, decode_ok, secrecy_ok, Fraction(code.k, code.m), profile, failures)


def entropy_vector(code: LinearCode) -> dict[VarSet, Fraction]:
    """Full entropy vector over the ground set (M, K, edges), in units of log q."""
    n = code.n_edges + 2
    out = {}
    for mask in range(1, 1 << n):
        parts: list[Part] = []
        if mask >> MSG & 1:
            parts.append("M")
        if mask >> KEY & 1 and code.k:
            parts.append("K")
        parts += [e for e in range(1, code.n_edges + 1) if mask >> (e + 1) & 1]
        out[VarSet(n, mask)] = Fraction(subset_entropy(code, parts))
    return out


# --------------------------------------------------------------------------
# brute-force search


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, space: int):
        super().__init__(f"search budget exhausted after {nodes} nodes (space size {space})")
        self.nodes = nodes
        self.space = space


def search_space_size(spec: NetworkSpec, q: int, m: int, k: int, edge_dims: Sequence[int]) -> int:
    d1 = sum(edge_dims[: spec.n1])
    d2 = sum(edge_dims[spec.n1 :])
    return q ** ((m + k) * d1 + d1 * d2)


def _vectors(q: int, length: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(q), repeat=length)


def search_small(
    p: WiretapProblem,
    q: int,
    m: int,
    k: int,
    edge_dims: Sequence[int],
    budget: int = 1_000_000,
) -> LinearCode | None:
    """First code (in a fixed enumeration order) that passes :func:`verify`, or None.

    Edges are filled one at a time. Layer-1 edges range over all matrices;
    layer-2 edges over all combinations of the stacked layer-1 rows, so relay
    computability holds by construction. A branch is cut as soon as some
    wiretap set leaks M through the edges assigned so far (leakage can only
    grow as edges are added) or, once layer 1 is complete, when it cannot
    support decoding. ``budget`` caps the number of search nodes.
    """
    s = p.spec
    FieldPrime(q)
    if len(edge_dims) != s.edges or any(d < 0 for d in edge_dims):
        raise CodeDimensionError("edge_dims must give a nonnegative dimension per edge")
    width = m + k
    space = search_space_size(s, q, m, k, edge_dims)
    m_rows = [tuple(1 if c == i else 0 for c in range(width)) for i in range(m)]
    all_units = [tuple(1 if c == i else 0 for c in range(width)) for i in range(width)]
    need = m_rows if s.decoding == "I" else all_units
    sets = p.pattern.sets
    nodes = 0

    def leaks(assigned: list[Matrix], upto: int) -> bool:
        for a in sets:
            rows = [r for e in a if e <= upto for r in assigned[e - 1]]
            if rank_mod(rows, q) + m != rank_mod(rows + m_rows, q):
                return True
        return False

    def extend(assigned: list[Matrix]) -> LinearCode | None:
        nonlocal nodes
        e = len(assigned) + 1
        if e > s.edges:
            code = LinearCode(q, m, k, tuple(assigned))
            return code if verify(code, p).ok else None
        d = edge_dims[e - 1]
        if e <= s.n1:
            choices = (
                tuple(tuple(flat[i * width : (i + 1) * width]) for i in range(d))
                for flat in _vectors(q, d * width)
            )
        else:
            l1 = [r for mat in assigned[: s.n1] for r in mat]
            choices = (
                tuple(
                    tuple(
                        sum(coef[i * len(l1) + j] * l1[j][c] for j in range(len(l1))) % q
                        for c in range(width)
                    )
                    for i in range(d)
                )
                for coef in _vectors(q, d * len(l1))
            )
        for mat in choices:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(nodes - 1, space)
            trial = assigned + [mat]
            if leaks(trial, e):
                continue
            if e == s.n1:
                l1 = [r for mt in trial for r in mt]
                if not _in_span(l1, need, q):
                    continue
            found = extend(trial)
            if found is not None:
                return found
        return None

    result = extend([])
    log.info("search_small: %d nodes, space %d, %s", nodes, space, "found" if result else "exhausted")
    return result

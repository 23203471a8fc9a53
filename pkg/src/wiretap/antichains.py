"""Antichain enumeration, symmetry reduction and the bound-gap sweep.

An antichain over a ground set of size ``g`` is a tuple of subset bitmasks in
increasing numeric order, no one contained in another. Wiretap patterns over
edges 1..n1+n2 use bit ``e-1`` for edge ``e``.
"""

from __future__ import annotations

import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice, permutations
from pathlib import Path
from typing import Iterator

from .network import (
    GAP_FOUND,
    NONE_SECURE,
    SHANNON_EQUALS_ROUTING,
    TIGHT_BY_CUTSET,
    BoundReport,
    NetworkSpec,
    WiretapPattern,
    WiretapProblem,
    bound_report,
    format_bound,
    set_key,
)

log = logging.getLogger(__name__)

MAX_ENUM_GROUND = 8
SYMMETRIES = ("none", "within-layer", "within-layer+layer-swap")
GAP_CLASSES = (TIGHT_BY_CUTSET, SHANNON_EQUALS_ROUTING, GAP_FOUND)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def enumerate_antichains(
    ground: int, size_min: int | None = None, size_max: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Every antichain of subsets of ``{0..ground-1}`` exactly once.

    Depth-first over subsets in increasing mask order: each child adds a set
    larger than the last one chosen and incomparable with all chosen so far.
    The empty antichain and ``(0,)`` (the antichain holding the empty set)
    are included. Optional bounds filter by antichain cardinality.
    """
    if not 0 <= ground <= MAX_ENUM_GROUND:
        raise ValueError(f"ground size must be in 0..{MAX_ENUM_GROUND}")
    lo = 0 if size_min is None else size_min
    nsub = 1 << ground
    hi = nsub if size_max is None else size_max
    comparable = []
    for s in range(nsub):
        bits = 0
        for t in range(nsub):
            if s & t == s or s & t == t:
                bits |= 1 << t
        comparable.append(bits)
    full = (1 << nsub) - 1
    above = [full & ~((1 << (t + 1)) - 1) for t in range(nsub)]

    stack: list[tuple[tuple[int, ...], int]] = [((), full)]
    pop, push = stack.pop, stack.append
    while stack:
        chain, allowed = pop()
        size = len(chain)
        if size >= lo:
            yield chain
        if size < hi and allowed:
            for t in reversed(_bits(allowed)):
                push((chain + (t,), allowed & ~comparable[t] & above[t]))


def count_antichains(ground: int, size_min: int | None = None, size_max: int | None = None) -> int:
    n = 0
    for _ in enumerate_antichains(ground, size_min, size_max):
        n += 1
    return n


# --------------------------------------------------------------------------
# symmetry


def edge_permutations(spec: NetworkSpec, symmetry: str) -> list[tuple[int, ...]]:
    """Edge relabelings as tuples ``perm[e-1] = image of edge e`` (1-based images)."""
    if symmetry not in SYMMETRIES:
        raise ValueError(f"unknown symmetry {symmetry!r}")
    n1, n2 = spec.n1, spec.n2
    if symmetry == "none":
        return [tuple(range(1, n1 + n2 + 1))]
    if symmetry == "within-layer+layer-swap" and n1 != n2:
        raise ValueError("layer swap requires n1 == n2")
    perms = []
    for p1 in permutations(range(1, n1 + 1)):
        for p2 in permutations(range(n1 + 1, n1 + n2 + 1)):
            perms.append(p1 + p2)
    if symmetry == "within-layer+layer-swap":
        swapped = []
        for p in perms:
            # edge i (layer 1) -> layer-2 slot, edge n1+j -> layer-1 slot
            swapped.append(tuple(p[i] + n1 if i < n1 else p[i] - n1 for i in range(n1 + n2)))
        perms += swapped
    return perms


class SymmetryGroup:
    def __init__(self, spec: NetworkSpec, symmetry: str):
        self.spec = spec
        self.symmetry = symmetry
        perms = edge_permutations(spec, symmetry)
        ne = spec.edges
        self.tables = []
        for p in perms:
            table = []
            for m in range(1 << ne):
                img = 0
                for b in _bits(m):
                    img |= 1 << (p[b] - 1)
                table.append(img)
            self.tables.append(table)

    @property
    def order(self) -> int:
        return len(self.tables)

    def canonicalize(self, masks: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
        """Least image (by sorted edge tuples) of a pattern and its orbit size."""
        images = set()
        best = None
        best_key = None
        for t in self.tables:
            img = tuple(sorted((t[m] for m in masks), key=set_key))
            if img in images:
                continue
            images.add(img)
            key = tuple(set_key(m) for m in img)
            if best_key is None or key < best_key:
                best, best_key = img, key
        return best, len(images)


def canonicalize(
    pattern: WiretapPattern, symmetry: str, spec: NetworkSpec
) -> tuple[WiretapPattern, int]:
    if symmetry == "within-layer+layer-swap" and spec.decoding != "II":
        raise ValueError("layer swap is only a symmetry of Class-II networks")
    group = SymmetryGroup(spec, symmetry)
    masks, orbit = group.canonicalize(pattern.masks)
    return WiretapPattern.from_masks(masks), orbit


# --------------------------------------------------------------------------
# sweep


@dataclass
class SweepConfig:
    spec: NetworkSpec
    size_min: int | None = None
    size_max: int | None = None
    symmetry: str = "within-layer"
    lazy_shannon: bool = True
    workers: int = 1
    batch: int = 256
    checkpoint: str | None = None
    checkpoint_every: int = 1000

    def __post_init__(self) -> None:
        if self.symmetry not in SYMMETRIES:
            raise ValueError(f"unknown symmetry {self.symmetry!r}")
        if self.symmetry == "within-layer+layer-swap":
            if self.spec.n1 != self.spec.n2 or self.spec.decoding != "II":
                raise ValueError("layer swap needs n1 == n2 and Class-II decoding")


@dataclass
class SweepRecord:
    pattern: tuple[tuple[int, ...], ...]
    orbit_size: int
    report: BoundReport

    def to_json(self) -> dict:
        r = self.report
        return {
            "pattern": [list(s) for s in self.pattern],
            "cutset": format_bound(r.cutset),
            "routing": format_bound(r.routing),
            "shannon": format_bound(r.shannon),
            "shannon_solved": r.shannon_solved,
            "gap_class": r.gap_class,
            "orbit_size": self.orbit_size,
        }


@dataclass
class SweepTally:
    orbits: Counter = field(default_factory=Counter)
    patterns: Counter = field(default_factory=Counter)
    gaps_by_size: Counter = field(default_factory=Counter)
    none_secure: int = 0
    position: int = 0  # antichains consumed from the enumeration

    def add(self, rec: SweepRecord, size: int) -> None:
        g = rec.report.gap_class
        self.orbits[g] += 1
        self.patterns[g] += rec.orbit_size
        if g == GAP_FOUND:
            self.gaps_by_size[size] += rec.orbit_size
        if rec.report.routing is NONE_SECURE:
            self.none_secure += rec.orbit_size

    def merge(self, other: "SweepTally") -> None:
        self.orbits.update(other.orbits)
        self.patterns.update(other.patterns)
        self.gaps_by_size.update(other.gaps_by_size)
        self.none_secure += other.none_secure

    def to_json(self) -> dict:
        total = sum(self.patterns.values())
        return {
            "total_patterns": total,
            "total_orbits": sum(self.orbits.values()),
            "patterns": {g: self.patterns.get(g, 0) for g in GAP_CLASSES},
            "orbits": {g: self.orbits.get(g, 0) for g in GAP_CLASSES},
            "gaps_by_size": {str(k): v for k, v in sorted(self.gaps_by_size.items())},
            "none_secure_patterns": self.none_secure,
            "position": self.position,
        }

    @classmethod
    def from_json(cls, d: dict) -> "SweepTally":
        t = cls()
        t.patterns = Counter({k: v for k, v in d["patterns"].items() if v})
        t.orbits = Counter({k: v for k, v in d["orbits"].items() if v})
        t.gaps_by_size = Counter({int(k): v for k, v in d["gaps_by_size"].items()})
        t.none_secure = d["none_secure_patterns"]
        t.position = d["position"]
        return t


def _evaluate(args: tuple[NetworkSpec, tuple[int, ...], bool]) -> BoundReport:
    spec, masks, lazy = args
    return bound_report(WiretapProblem(spec, WiretapPattern.from_masks(masks)), lazy)


def _config_key(cfg: SweepConfig) -> dict:
    return {
        "n1": cfg.spec.n1,
        "n2": cfg.spec.n2,
        "class": cfg.spec.decoding,
        "size_min": cfg.size_min,
        "size_max": cfg.size_max,
        "symmetry": cfg.symmetry,
        "lazy_shannon": cfg.lazy_shannon,
    }


def write_checkpoint(path: str, cfg: SweepConfig, tally: SweepTally, last: tuple[int, ...] | None) -> None:
    payload = {
        "version": 1,
        "config": _config_key(cfg),
        "last_pattern": None if last is None else [list(set_key(m)) for m in last],
        "tallies": tally.to_json(),
    }
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def read_checkpoint(path: str, cfg: SweepConfig) -> SweepTally | None:
    if not Path(path).exists():
        return None
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("version") != 1:
        raise ValueError(f"unsupported checkpoint version {payload.get('version')!r}")
    if payload["config"] != _config_key(cfg):
        raise ValueError("checkpoint was written for a different sweep configuration")
    return SweepTally.from_json(payload["tallies"])


def sweep(cfg: SweepConfig, tally: SweepTally | None = None) -> Iterator[SweepRecord]:
    """Classify every (canonical) antichain pattern; records come out in enumeration order.

    Pass a fresh :class:`SweepTally` to collect totals. If ``cfg.checkpoint``
    names an existing checkpoint, the sweep resumes after its position and
    continues from its tallies (records before that point are not re-emitted).
    """
    tally = tally if tally is not None else SweepTally()
    if cfg.checkpoint:
        prev = read_checkpoint(cfg.checkpoint, cfg)
        if prev is not None:
            tally.merge(prev)
            tally.position = prev.position
    group = SymmetryGroup(cfg.spec, cfg.symmetry)
    ground = cfg.spec.edges
    source = enumerate_antichains(ground, cfg.size_min, cfg.size_max)
    if tally.position:
        source = islice(source, tally.position, None)

    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    since_ckpt = 0
    last = None
    try:
        while True:
            batch = []  # (masks, orbit, size)
            consumed = 0
            for chain in source:
                consumed += 1
                masks = tuple(sorted((m for m in chain if m), key=set_key))
                canon, orbit = group.canonicalize(masks)
                if canon != masks:
                    continue
                batch.append((masks, orbit, len(chain)))
                if len(batch) >= cfg.batch:
                    break
            if not batch and not consumed:
                break
            args = [(cfg.spec, masks, cfg.lazy_shannon) for masks, _, _ in batch]
            reports = pool.map(_evaluate, args) if pool else map(_evaluate, args)
            for (masks, orbit, size), rep in zip(batch, reports):
                rec = SweepRecord(tuple(set_key(m) for m in masks), orbit, rep)
                tally.add(rec, size)
                last = masks
                yield rec
            tally.position += consumed
            since_ckpt += len(batch)
            if cfg.checkpoint and since_ckpt >= cfg.checkpoint_every:
                write_checkpoint(cfg.checkpoint, cfg, tally, last)
                since_ckpt = 0
        if cfg.checkpoint:
            write_checkpoint(cfg.checkpoint, cfg, tally, last)
    finally:
        if pool:
            pool.shutdown()

"""Entropy coordinates, linear information expressions and elemental inequalities.

Joint entropies are indexed by nonempty subsets of a ground set ``{0..n-1}``.
A subset is stored as an integer bitmask; :class:`VarSet` wraps the mask
together with the ground size so that mixing ground sets is caught early.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Union

MAX_GROUND = 16

Number = Union[int, Fraction]


class GroundMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VarSet:
    n: int
    mask: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GROUND:
            raise ValueError(f"ground size {self.n} outside 1..{MAX_GROUND}")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} not a subset of a {self.n}-element ground set")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "VarSet":
        mask = 0
        for i in members:
            if not 0 <= i < n:
                raise ValueError(f"index {i} outside ground set of size {n}")
            mask |= 1 << i
        return cls(n, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.mask >> i & 1)

    def __or__(self, other: "VarSet") -> "VarSet":
        _same_ground(self.n, other.n)
        return VarSet(self.n, self.mask | other.mask)

    def __and__(self, other: "VarSet") -> "VarSet":
        _same_ground(self.n, other.n)
        return VarSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "VarSet") -> "VarSet":
        _same_ground(self.n, other.n)
        return VarSet(self.n, self.mask & ~other.mask)

    def __le__(self, other: "VarSet") -> bool:  # type: ignore[override]
        _same_ground(self.n, other.n)
        return self.mask & ~other.mask == 0

    def __bool__(self) -> bool:
        return self.mask != 0

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __repr__(self) -> str:
        return f"VarSet({self.n}, {set(self.members) or '{}'})"


def _same_ground(a: int, b: int) -> None:
    if a != b:
        raise GroundMismatch(f"ground sizes differ: {a} vs {b}")


class EntropyFunctional:
    """A rational linear form sum_S c_S * H(X_S) over nonempty subsets S.

    Immutable. Coefficients are kept in a dict keyed by subset mask with no
    zero entries, so two functionals compare equal iff they are the same form.
    """

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[int, Number] | None = None):
        if not 1 <= n <= MAX_GROUND:
            raise ValueError(f"ground size {n} outside 1..{MAX_GROUND}")
        clean: dict[int, Fraction] = {}
        for mask, c in (coeffs or {}).items():
            if mask <= 0 or mask >> n:
                raise ValueError(f"invalid coordinate mask {mask:#x} for ground size {n}")
            c = Fraction(c)
            if c:
                clean[mask] = clean.get(mask, Fraction(0)) + c
                if not clean[mask]:
                    del clean[mask]
        self.n = n
        self._coeffs = clean

    @classmethod
    def _trusted(cls, n: int, coeffs: dict[int, Fraction]) -> "EntropyFunctional":
        f = object.__new__(cls)
        f.n = n
        f._coeffs = coeffs
        return f

    @property
    def coeffs(self) -> Mapping[int, Fraction]:
        """Coefficients keyed by subset bitmask (read-only view)."""
        return dict(self._coeffs)

    @property
    def terms(self) -> dict[VarSet, Fraction]:
        return {VarSet(self.n, m): c for m, c in self._coeffs.items()}

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._coeffs.items()))

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EntropyFunctional):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._coeffs.items())))

    def __add__(self, other: "EntropyFunctional") -> "EntropyFunctional":
        if not isinstance(other, EntropyFunctional):
            return NotImplemented
        _same_ground(self.n, other.n)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return EntropyFunctional._trusted(self.n, out)

    def __neg__(self) -> "EntropyFunctional":
        return EntropyFunctional._trusted(self.n, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other: "EntropyFunctional") -> "EntropyFunctional":
        if not isinstance(other, EntropyFunctional):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: Number) -> "EntropyFunctional":
        k = Fraction(k)
        if not k:
            return EntropyFunctional._trusted(self.n, {})
        return EntropyFunctional._trusted(self.n, {m: c * k for m, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"EntropyFunctional({self.n}, {format_functional(self)})"


def format_functional(f: EntropyFunctional, names: list[str] | None = None) -> str:
    names = names or [f"X{i}" for i in range(f.n)]
    parts = []
    for mask, c in f.items():
        label = "H(" + ",".join(names[i] for i in range(f.n) if mask >> i & 1) + ")"
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign} {'' if mag == 1 else str(mag) + '*'}{label}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def joint(v: VarSet) -> EntropyFunctional:
    if not v:
        return EntropyFunctional(v.n)
    return EntropyFunctional._trusted(v.n, {v.mask: Fraction(1)})


def expand_measure(kind: str, *args: VarSet) -> EntropyFunctional:
    """Expand a Shannon measure into joint entropies.

    ``kind`` is one of ``"H"`` (joint entropy, one set), ``"H|"`` (conditional
    entropy H(X|Y)), ``"I"`` (mutual information I(X;Y)) or ``"I|"``
    (conditional mutual information I(X;Y|Z)).
    """
    arity = {"H": 1, "H|": 2, "I": 2, "I|": 3}
    if kind not in arity:
        raise ValueError(f"unknown measure kind {kind!r}")
    if len(args) != arity[kind]:
        raise ValueError(f"{kind} takes {arity[kind]} arguments, got {len(args)}")
    n = args[0].n
    for a in args[1:]:
        _same_ground(n, a.n)
    if kind in ("H", "I") and not all(args):
        raise ValueError("measure arguments must be nonempty")
    if kind in ("H|", "I|") and not all(args[:-1]):
        raise ValueError("measure arguments must be nonempty")

    if kind == "H":
        return joint(args[0])
    if kind == "H|":
        x, y = args
        return joint(x | y) - joint(y)
    if kind == "I":
        x, y = args
        return joint(x) + joint(y) - joint(x | y)
    x, y, z = args
    return joint(x | z) + joint(y | z) - joint(x | y | z) - joint(z)


def H(x: VarSet, given: VarSet | None = None) -> EntropyFunctional:
    return expand_measure("H|", x, given) if given else expand_measure("H", x)


def I(x: VarSet, y: VarSet, given: VarSet | None = None) -> EntropyFunctional:  # noqa: E743
    return expand_measure("I|", x, y, given) if given else expand_measure("I", x, y)


def elemental_count(n: int) -> int:
    if n == 1:
        return 1
    return n + (n * (n - 1) // 2) * 2 ** (n - 2)


def elemental_masks(n: int) -> list[dict[int, int]]:
    """Elemental inequalities as raw ``{mask: int coeff}`` rows (fast path for LP building)."""
    if not 1 <= n <= MAX_GROUND:
        raise ValueError(f"ground size {n} outside 1..{MAX_GROUND}")
    full = (1 << n) - 1
    rows: list[dict[int, int]] = []
    for i in range(n):
        rest = full & ~(1 << i)
        rows.append({full: 1, rest: -1} if rest else {full: 1})
    for i, j in combinations(range(n), 2):
        others = [b for b in range(n) if b != i and b != j]
        for r in range(len(others) + 1):
            for ks in combinations(others, r):
                k = 0
                for b in ks:
                    k |= 1 << b
                row: dict[int, int] = {}
                for m, c in ((k | 1 << i, 1), (k | 1 << j, 1), (k | 1 << i | 1 << j, -1), (k, -1)):
                    if m:
                        row[m] = row.get(m, 0) + c
                rows.append(row)
    return rows


def elemental_inequalities(n: int) -> list[EntropyFunctional]:
    """All elemental Shannon inequalities on ``n`` variables, each meaning ``f >= 0``.

    These are H(X_i | X_rest) for every i and I(X_i; X_j | X_K) for every pair
    i < j and every K drawn from the remaining indices.
    """
    return [
        EntropyFunctional._trusted(n, {m: Fraction(c) for m, c in row.items()})
        for row in elemental_masks(n)
    ]


def evaluate(f: EntropyFunctional, h: Mapping[VarSet, Number] | Mapping[int, Number]) -> Fraction:
    """Exact value of ``f`` on the entropy vector ``h``.

    ``h`` may be keyed by :class:`VarSet` or by raw subset mask.
    """
    total = Fraction(0)
    for mask, c in f.items():
        if mask in h:
            v = h[mask]  # type: ignore[index]
        else:
            key = VarSet(f.n, mask)
            if key not in h:
                raise KeyError(f"entropy vector has no value for {key!r}")
            v = h[key]  # type: ignore[index]
        total += c * Fraction(v)
    return total

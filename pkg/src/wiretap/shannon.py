"""Shannon-type inequality prover and optimizer over the polymatroid cone.

The feasible region is the set of entropy-like vectors ``h`` (one coordinate
per nonempty subset) satisfying every elemental inequality plus the linear
equalities of a :class:`ConstraintSet`. Everything is an exact LP over that
region solved by :mod:`wiretap.ratlp`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from . import ratlp
from .entropy import (
    EntropyFunctional,
    GroundMismatch,
    VarSet,
    elemental_masks,
    joint,
)

PROVABLE = "provable"
NOT_PROVABLE = "not-provable"


class InvariantBreach(RuntimeError):
    """An internal consistency check failed (e.g. a certificate did not verify)."""


class InfeasibleConstraints(ValueError):
    pass


@dataclass(frozen=True)
class ConstraintSet:
    n: int
    equalities: tuple[EntropyFunctional, ...] = ()

    def __post_init__(self) -> None:
        for f in self.equalities:
            if f.n != self.n:
                raise GroundMismatch(f"equality over ground {f.n}, constraint set over {self.n}")

    def with_equalities(self, extra: Sequence[EntropyFunctional]) -> "ConstraintSet":
        return ConstraintSet(self.n, self.equalities + tuple(extra))

    def __len__(self) -> int:
        return len(self.equalities)


@dataclass(frozen=True)
class Verdict:
    status: str
    # provable: target == sum(elemental[i] * m) + sum(equalities[j] * y_j)
    elemental_multipliers: dict[int, Fraction] = field(default_factory=dict)
    equality_multipliers: tuple[Fraction, ...] = ()
    # not-provable: a cone point where the target is negative, keyed by subset mask
    witness: dict[int, Fraction] | None = None

    @property
    def provable(self) -> bool:
        return self.status == PROVABLE


@lru_cache(maxsize=None)
def _elemental_rows(n: int) -> tuple[tuple[ratlp.Row, Fraction], ...]:
    zero = Fraction(0)
    return tuple(
        (tuple(sorted((m - 1, Fraction(c)) for m, c in row.items())), zero)
        for row in elemental_masks(n)
    )


def _row(f: EntropyFunctional) -> ratlp.Row:
    return tuple((m - 1, c) for m, c in f.items())


Extra = Union[EntropyFunctional, tuple[EntropyFunctional, Union[int, Fraction]]]


def _normalize_extra(n: int, extra: Sequence[Extra]) -> list[tuple[EntropyFunctional, Fraction]]:
    out = []
    for e in extra:
        f, rhs = (e, Fraction(0)) if isinstance(e, EntropyFunctional) else (e[0], Fraction(e[1]))
        if f.n != n:
            raise GroundMismatch(f"functional over ground {f.n}, constraint set over {n}")
        out.append((f, rhs))
    return out


def cone_program(
    cs: ConstraintSet,
    objective: EntropyFunctional,
    sense: str = "min",
    extra: Sequence[Extra] = (),
) -> ratlp.LinearProgram:
    """LP over the constrained Shannon cone.

    Variable ``mask - 1`` is the joint entropy of subset ``mask``. Inequality
    rows are the elemental inequalities (in :func:`elemental_masks` order);
    equality rows are ``cs.equalities`` followed by ``extra``.
    """
    if objective.n != cs.n:
        raise GroundMismatch(f"objective over ground {objective.n}, constraint set over {cs.n}")
    nv = (1 << cs.n) - 1
    obj = [Fraction(0)] * nv
    for m, c in objective.items():
        obj[m - 1] = c
    eqs = [(_row(f), Fraction(0)) for f in cs.equalities]
    eqs += [(_row(f), rhs) for f, rhs in _normalize_extra(cs.n, extra)]
    return ratlp.LinearProgram(
        nv, tuple(obj), sense, tuple(eqs), _elemental_rows(cs.n), (False,) * nv
    )


def _solve(lp: ratlp.LinearProgram) -> ratlp.LPOutcome:
    try:
        return ratlp.solve(lp)
    except ratlp.CertificateError as exc:
        raise InvariantBreach(str(exc)) from exc


def _vector(x: Sequence[Fraction]) -> dict[int, Fraction]:
    return {i + 1: v for i, v in enumerate(x)}


def prove_inequality(cs: ConstraintSet, target: EntropyFunctional) -> Verdict:
    """Decide whether ``target >= 0`` follows from Shannon-type inequalities and ``cs``."""
    lp = cone_program(cs, target, "min")
    out = _solve(lp)
    if out.status == ratlp.OPTIMAL:
        if out.value != 0:
            raise InvariantBreach(f"cone minimum {out.value} is neither 0 nor unbounded")
        mult = {i: v for i, v in enumerate(out.dual_ineq) if v}
        verdict = Verdict(PROVABLE, mult, tuple(out.dual_eq))
        if reconstruct(cs, verdict) != target:
            raise InvariantBreach("dual certificate does not reproduce the target")
        return verdict
    if out.status == ratlp.UNBOUNDED:
        return Verdict(NOT_PROVABLE, witness=_vector(out.ray))
    raise InvariantBreach("homogeneous cone program reported infeasible")


def reconstruct(cs: ConstraintSet, verdict: Verdict) -> EntropyFunctional:
    """Rebuild the nonnegative combination recorded in a provable verdict."""
    rows = elemental_masks(cs.n)
    coeffs: dict[int, Fraction] = {}
    for i, lam in verdict.elemental_multipliers.items():
        for m, c in rows[i].items():
            coeffs[m] = coeffs.get(m, Fraction(0)) + lam * c
    total = EntropyFunctional(cs.n, coeffs)
    for y, f in zip(verdict.equality_multipliers, cs.equalities):
        total = total + f * y
    return total


def shannon_bound(cs: ConstraintSet, key: VarSet, msg: VarSet) -> Fraction | None:
    """Minimum of H(key) over the constrained cone with H(msg) = 1.

    Returns None when the constraints force H(msg) = 0 (no normalized point).
    """
    for v in (key, msg):
        if v.n != cs.n:
            raise GroundMismatch(f"variable over ground {v.n}, constraint set over {cs.n}")
        if len(v) != 1:
            raise ValueError("key and msg must be single ground variables")
    lp = cone_program(cs, joint(key), "min", [(joint(msg), 1)])
    out = _solve(lp)
    if out.status == ratlp.INFEASIBLE:
        return None
    if out.status != ratlp.OPTIMAL:
        raise InvariantBreach("entropy minimization cannot be unbounded below")
    return out.value


def functional_range(
    cs: ConstraintSet, extra: Sequence[Extra], f: EntropyFunctional
) -> tuple[Fraction | float, Fraction | float]:
    """Exact (min, max) of ``f`` over the cone slice; infinities as ``math.inf``."""
    lo = _solve(cone_program(cs, f, "min", extra))
    if lo.status == ratlp.INFEASIBLE:
        raise InfeasibleConstraints("constraint slice is empty")
    hi = _solve(cone_program(cs, f, "max", extra))
    low = lo.value if lo.status == ratlp.OPTIMAL else -math.inf
    high = hi.value if hi.status == ratlp.OPTIMAL else math.inf
    return low, high


def extreme_point(
    cs: ConstraintSet, extra: Sequence[Extra], f: EntropyFunctional, sense: str = "max"
) -> dict[int, Fraction] | None:
    """An optimal cone point for ``f`` (None if infeasible or unbounded)."""
    out = _solve(cone_program(cs, f, sense, extra))
    if out.status != ratlp.OPTIMAL:
        return None
    return _vector(out.primal)


def implied_zero(cs: ConstraintSet, extra: Sequence[Extra], f: EntropyFunctional) -> bool:
    return functional_range(cs, extra, f) == (0, 0)

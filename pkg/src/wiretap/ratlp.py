"""Exact rational linear programming with checkable certificates.

Programs are stated in a general form::

    minimize / maximize  c . x
    subject to           E x  = e        (eq_rows)
                         G x >= g        (ineq_rows)
                         x_j >= 0        for j with nonneg[j]

and every outcome carries a certificate expressed against that form (see
:class:`LPOutcome`). Internally the program is brought to the standard form
``min c z, A z = b, z >= 0`` either directly or through its dual, whichever
has fewer rows, and solved by a two-phase simplex with Bland's rule in
``fractions.Fraction`` arithmetic.

Large programs may be warm-started from a floating-point basis (HiGHS). The
basis is only a hint: it is re-solved exactly, and pivoting continues in exact
arithmetic until the exact optimality conditions hold, so the returned value
never depends on floating-point rounding.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

log = logging.getLogger(__name__)

Number = Union[int, Fraction]
Row = tuple[tuple[int, Fraction], ...]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

# Standard forms with at least this many rows get a floating-point warm start.
WARM_START_ROWS = 40

ZERO = Fraction(0)
ONE = Fraction(1)


class InvalidProgram(ValueError):
    pass


class CertificateError(RuntimeError):
    """Raised when the solver's own certificate fails exact re-verification."""


def _as_row(row: Sequence[Number] | Mapping[int, Number], n: int) -> Row:
    if isinstance(row, Mapping):
        items = row.items()
    else:
        if len(row) != n:
            raise InvalidProgram(f"row has length {len(row)}, expected {n}")
        items = enumerate(row)
    out = {}
    for j, v in items:
        if not 0 <= j < n:
            raise InvalidProgram(f"column index {j} outside 0..{n - 1}")
        v = Fraction(v)
        if v:
            out[j] = out.get(j, ZERO) + v
    return tuple(sorted((j, v) for j, v in out.items() if v))


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    objective: tuple[Fraction, ...]
    sense: str = "min"
    eq_rows: tuple[tuple[Row, Fraction], ...] = ()
    ineq_rows: tuple[tuple[Row, Fraction], ...] = ()
    nonneg: tuple[bool, ...] = ()

    def __post_init__(self) -> None:
        if self.sense not in ("min", "max"):
            raise InvalidProgram(f"sense must be 'min' or 'max', not {self.sense!r}")
        if len(self.objective) != self.num_vars:
            raise InvalidProgram("objective length does not match num_vars")
        if len(self.nonneg) != self.num_vars:
            raise InvalidProgram("nonneg flags do not match num_vars")
        for row, _ in self.eq_rows + self.ineq_rows:
            if row and not 0 <= row[-1][0] < self.num_vars:
                raise InvalidProgram("row references a column outside the program")

    @classmethod
    def build(
        cls,
        num_vars: int,
        objective: Sequence[Number] | Mapping[int, Number],
        sense: str = "min",
        eq: Iterable[tuple[Sequence[Number] | Mapping[int, Number], Number]] = (),
        ge: Iterable[tuple[Sequence[Number] | Mapping[int, Number], Number]] = (),
        le: Iterable[tuple[Sequence[Number] | Mapping[int, Number], Number]] = (),
        nonneg: bool | Sequence[bool] = True,
    ) -> "LinearProgram":
        """Convenience constructor accepting dense or sparse rows.

        ``le`` rows are negated into ``>=`` rows.
        """
        if num_vars < 0:
            raise InvalidProgram("num_vars must be nonnegative")
        obj = dict(_as_row(objective, num_vars))
        objective_t = tuple(obj.get(j, ZERO) for j in range(num_vars))
        eq_t = tuple((_as_row(r, num_vars), Fraction(b)) for r, b in eq)
        ge_t = [(_as_row(r, num_vars), Fraction(b)) for r, b in ge]
        for r, b in le:
            row = _as_row(r, num_vars)
            ge_t.append((tuple((j, -v) for j, v in row), -Fraction(b)))
        if isinstance(nonneg, bool):
            nn = (nonneg,) * num_vars
        else:
            nn = tuple(bool(f) for f in nonneg)
        return cls(num_vars, objective_t, sense, eq_t, tuple(ge_t), nn)

    @property
    def min_objective(self) -> tuple[Fraction, ...]:
        """Objective of the equivalent minimization problem."""
        return self.objective if self.sense == "min" else tuple(-c for c in self.objective)


@dataclass(frozen=True)
class LPOutcome:
    """Result of :func:`solve`.

    Certificates refer to the minimization form of the program (objective
    negated when ``sense == "max"``):

    * optimal: ``primal`` is feasible; ``dual_eq`` (y) and ``dual_ineq``
      (lambda >= 0) satisfy ``c - E^T y - G^T lambda`` >= 0 on nonnegative
      columns and = 0 on free ones, with ``e.y + g.lambda`` equal to the
      minimization value.
    * infeasible: ``dual_eq``/``dual_ineq`` form a Farkas vector: lambda >= 0,
      ``E^T y + G^T lambda`` <= 0 on nonnegative columns and = 0 on free ones,
      and ``e.y + g.lambda > 0``.
    * unbounded: ``primal`` is feasible and ``ray`` satisfies ``E d = 0``,
      ``G d >= 0``, ``d_j >= 0`` on nonnegative columns and ``c.d < 0``.
    """

    status: str
    value: Fraction | None = None
    primal: tuple[Fraction, ...] | None = None
    dual_eq: tuple[Fraction, ...] | None = None
    dual_ineq: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None
    pivots: int = field(default=0, compare=False)

    @property
    def certificate(self):
        if self.status == UNBOUNDED:
            return self.ray
        return (self.dual_eq, self.dual_ineq)


# --------------------------------------------------------------------------
# standard-form simplex


@dataclass
class _Std:
    """min c.z  s.t.  rows z = b,  z >= 0  (rows are sparse dicts over columns)."""

    ncols: int
    rows: list[dict[int, Fraction]]
    b: list[Fraction]
    c: list[Fraction]


@dataclass
class _StdResult:
    status: str
    z: list[Fraction] | None = None
    pi: list[Fraction] | None = None  # multipliers: A^T pi <= c, b.pi = c.z
    ray: dict[int, Fraction] | None = None  # A d = 0, d >= 0, c.d < 0
    farkas: list[Fraction] | None = None  # A^T s <= 0, b.s > 0
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols, m):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols  # real columns; artificials are ncols..ncols+m-1
        self.m = m
        self.pivots = 0

    def pivot(self, r: int, j: int, obj: dict[int, Fraction]) -> None:
        prow = self.rows[r]
        p = prow[j]
        if p != 1:
            inv = 1 / p
            prow = {k: v * inv for k, v in prow.items()}
            self.rows[r] = prow
            self.rhs[r] *= inv
        pr = self.rhs[r]
        items = list(prow.items())
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(j)
            if f is None:
                continue
            for k, v in items:
                nv = row.get(k, ZERO) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            if pr:
                self.rhs[i] -= f * pr
        f = obj.get(j)
        if f is not None:
            for k, v in items:
                nv = obj.get(k, ZERO) - f * v
                if nv:
                    obj[k] = nv
                else:
                    obj.pop(k, None)
            obj["value"] = obj.get("value", ZERO) - f * pr  # type: ignore[index]
        self.basis[r] = j
        self.pivots += 1

    def run(self, obj: dict, allowed: int) -> int | None:
        """Bland's-rule simplex on ``obj``; columns >= ``allowed`` never enter.

        Returns None at optimality, or the entering column proving unboundedness.
        """
        while True:
            enter = None
            for k, v in obj.items():
                if k != "value" and k < allowed and v < 0 and (enter is None or k < enter):
                    enter = k
            if enter is None:
                return None
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(enter)
                if a is not None and a > 0:
                    ratio = self.rhs[i] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leave])
                    ):
                        best, leave = ratio, i
            if leave is None:
                return enter
            self.pivot(leave, enter, obj)

    def objective_row(self, cost: Mapping[int, Fraction]) -> dict:
        obj: dict = {k: v for k, v in cost.items() if v}
        obj["value"] = ZERO
        for i, bv in enumerate(self.basis):
            cb = cost.get(bv)
            if not cb:
                continue
            for k, v in self.rows[i].items():
                nv = obj.get(k, ZERO) - cb * v
                if nv:
                    obj[k] = nv
                else:
                    obj.pop(k, None)
            obj["value"] -= cb * self.rhs[i]
        return obj

    def drive_out_artificials(self, obj: dict) -> None:
        for r in range(self.m):
            if self.basis[r] >= self.ncols and self.rhs[r] == 0:
                cols = [k for k in self.rows[r] if k < self.ncols]
                if cols:
                    self.pivot(r, min(cols), obj)


def _simplex(std: _Std, hint: list[int] | None = None) -> _StdResult:
    m, n = len(std.rows), std.ncols
    flip = [bi < 0 for bi in std.b]
    rows = [
        {k: (-v if flip[i] else v) for k, v in row.items()} for i, row in enumerate(std.rows)
    ]
    rhs = [(-bi if flip[i] else bi) for i, bi in enumerate(std.b)]
    cost = {j: cj for j, cj in enumerate(std.c) if cj}

    tab = None
    if hint is not None:
        res = _try_warm(std, rows, rhs, cost, hint, flip)
        if isinstance(res, _StdResult):
            return res
        tab = res  # tableau at a feasible basis, or None
        if tab is None:
            log.warning("warm-start basis rejected; solving %dx%d program from scratch", m, n)

    if tab is None:
        for i in range(m):
            rows[i][n + i] = ONE
        tab = _Tableau(rows, rhs, list(range(n, n + m)), n, m)
        phase1 = tab.objective_row({n + i: ONE for i in range(m)})
        tab.run(phase1, n)
        if phase1["value"] != 0:  # holds -(sum of artificials)
            sigma = [ONE - phase1.get(n + i, ZERO) for i in range(m)]
            farkas = [-s if flip[i] else s for i, s in enumerate(sigma)]
            return _StdResult(INFEASIBLE, farkas=farkas, pivots=tab.pivots)
        tab.drive_out_artificials(phase1)

    obj = tab.objective_row(cost)
    enter = tab.run(obj, n)
    z = [ZERO] * n
    for i, bv in enumerate(tab.basis):
        if bv < n:
            z[bv] = tab.rhs[i]
    if enter is not None:
        ray = {enter: ONE}
        for i, bv in enumerate(tab.basis):
            a = tab.rows[i].get(enter)
            if a:
                ray[bv] = -a
        return _StdResult(UNBOUNDED, z=z, ray=ray, pivots=tab.pivots)
    pi = [-obj.get(n + i, ZERO) for i in range(m)]
    pi = [-p if flip[i] else p for i, p in enumerate(pi)]
    return _StdResult(OPTIMAL, z=z, pi=pi, pivots=tab.pivots)


def _try_warm(std, rows, rhs, cost, hint, flip):
    """Exact evaluation of a proposed basis.

    Returns an optimal _StdResult directly when the basis is exactly optimal, a
    _Tableau positioned at the (feasible) basis when further pivots are needed,
    or None when the basis is unusable.
    """
    import flint

    m, n = len(rows), std.ncols
    if len(hint) != m or len(set(hint)) != m:
        return None
    cols: list[dict[int, Fraction]] = [dict() for _ in range(m)]
    colmap = {bv: p for p, bv in enumerate(hint)}
    for i, row in enumerate(rows):
        for k, v in row.items():
            p = colmap.get(k)
            if p is not None:
                cols[p][i] = v
    for bv, p in colmap.items():
        if bv >= n:
            cols[p][bv - n] = ONE
    B = flint.fmpq_mat(m, m)
    for p, col in enumerate(cols):
        for i, v in col.items():
            B[i, p] = flint.fmpq(v.numerator, v.denominator)
    bvec = flint.fmpq_mat(m, 1, [flint.fmpq(v.numerator, v.denominator) for v in rhs])
    try:
        xb = B.solve(bvec)
    except ZeroDivisionError:
        return None
    xB = [Fraction(int(xb[i, 0].p), int(xb[i, 0].q)) for i in range(m)]
    if any(v < 0 for v in xB):
        return None
    if any(bv >= n and xB[p] != 0 for p, bv in enumerate(hint)):
        return None
    cb = [cost.get(bv, ZERO) if bv < n else ZERO for bv in hint]
    cB = flint.fmpq_mat(m, 1, [flint.fmpq(v.numerator, v.denominator) for v in cb])
    try:
        pim = B.transpose().solve(cB)
    except ZeroDivisionError:
        return None
    pi = [Fraction(int(pim[i, 0].p), int(pim[i, 0].q)) for i in range(m)]
    # reduced costs over real columns
    red = dict(cost)
    for i, row in enumerate(rows):
        p = pi[i]
        if not p:
            continue
        for k, v in row.items():
            red[k] = red.get(k, ZERO) - p * v
    if all(v >= 0 for v in red.values()):
        z = [ZERO] * n
        for p, bv in enumerate(hint):
            if bv < n:
                z[bv] = xB[p]
        pi_orig = [-v if flip[i] else v for i, v in enumerate(pi)]
        return _StdResult(OPTIMAL, z=z, pi=pi_orig, pivots=0)

    # Not optimal: build the full tableau B^{-1}[A | I] at this feasible basis.
    log.info("warm-start basis feasible but not optimal; continuing exact pivots")
    full = flint.fmpq_mat(m, n + m)
    for i, row in enumerate(rows):
        for k, v in row.items():
            full[i, k] = flint.fmpq(v.numerator, v.denominator)
        full[i, n + i] = 1
    T = B.solve(full)
    trows = []
    for i in range(m):
        d = {}
        for k in range(n + m):
            e = T[i, k]
            if e != 0:
                d[k] = Fraction(int(e.p), int(e.q))
        trows.append(d)
    tab = _Tableau(trows, list(xB), list(hint), n, m)
    tab.drive_out_artificials({})
    return tab


def _highs_basis(std: _Std) -> list[int] | None:
    try:
        import highspy
        import numpy as np
    except ImportError:  # pragma: no cover - optional accelerator
        return None
    m, n = len(std.rows), std.ncols
    cols: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for i, row in enumerate(std.rows):
        for k, v in row.items():
            cols[k].append((i, float(v)))
    start = [0]
    index: list[int] = []
    value: list[float] = []
    for col in cols:
        for i, v in col:
            index.append(i)
            value.append(v)
        start.append(len(index))
    lp = highspy.HighsLp()
    lp.num_col_ = n
    lp.num_row_ = m
    lp.col_cost_ = np.array([float(v) for v in std.c])
    lp.col_lower_ = np.zeros(n)
    lp.col_upper_ = np.full(n, highspy.kHighsInf)
    bb = np.array([float(v) for v in std.b])
    lp.row_lower_ = bb
    lp.row_upper_ = bb.copy()
    lp.a_matrix_.format_ = highspy.MatrixFormat.kColwise
    lp.a_matrix_.start_ = np.array(start, dtype=np.int32)
    lp.a_matrix_.index_ = np.array(index, dtype=np.int32)
    lp.a_matrix_.value_ = np.array(value)
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    h.setOptionValue("random_seed", 0)
    h.setOptionValue("simplex_strategy", 4)  # primal simplex: fastest on the cone duals
    h.passModel(lp)
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        return None
    basis = h.getBasis()
    kb = highspy.HighsBasisStatus.kBasic
    # each attribute access copies the whole list out of the extension
    col_status, row_status = list(basis.col_status), list(basis.row_status)
    hint = [j for j in range(n) if col_status[j] == kb]
    hint += [n + i for i in range(m) if row_status[i] == kb]
    return hint if len(hint) == m else None


def _solve_std(std: _Std, warm_start: bool | None) -> _StdResult:
    use_warm = warm_start if warm_start is not None else len(std.rows) >= WARM_START_ROWS
    hint = _highs_basis(std) if use_warm and std.rows else None
    if use_warm and hint is None:
        return _StdResult("float-unknown")
    return _simplex(std, hint)


# --------------------------------------------------------------------------
# general form


def _primal_std(lp: LinearProgram, c: Sequence[Fraction]):
    n = lp.num_vars
    pos: list[int] = []
    neg: list[int | None] = []
    col = 0
    for j in range(n):
        pos.append(col)
        col += 1
        if lp.nonneg[j]:
            neg.append(None)
        else:
            neg.append(col)
            col += 1
    slack0 = col
    ncols = col + len(lp.ineq_rows)
    rows: list[dict[int, Fraction]] = []
    b: list[Fraction] = []
    for row, rhs in lp.eq_rows:
        d = {}
        for j, v in row:
            d[pos[j]] = v
            if neg[j] is not None:
                d[neg[j]] = -v
        rows.append(d)
        b.append(rhs)
    for i, (row, rhs) in enumerate(lp.ineq_rows):
        d = {}
        for j, v in row:
            d[pos[j]] = v
            if neg[j] is not None:
                d[neg[j]] = -v
        d[slack0 + i] = -ONE
        rows.append(d)
        b.append(rhs)
    cost = [ZERO] * ncols
    for j in range(n):
        cost[pos[j]] = c[j]
        if neg[j] is not None:
            cost[neg[j]] = -c[j]
    return _Std(ncols, rows, b, cost), pos, neg


def _dual_std(lp: LinearProgram, c: Sequence[Fraction]):
    """Standard form of the dual:  min -(e.y + g.lam)  s.t.  E^T y + G^T lam + mu = c."""
    n = lp.num_vars
    rows: list[dict[int, Fraction]] = [dict() for _ in range(n)]
    cost: list[Fraction] = []
    col = 0
    for row, rhs in lp.eq_rows:
        for j, v in row:
            rows[j][col] = v
            rows[j][col + 1] = -v
        cost += [-rhs, rhs]
        col += 2
    lam0 = col
    for row, rhs in lp.ineq_rows:
        for j, v in row:
            rows[j][col] = v
        cost.append(-rhs)
        col += 1
    mu0 = col
    for j in range(n):
        if lp.nonneg[j]:
            rows[j][col] = ONE
            cost.append(ZERO)
            col += 1
    return _Std(col, rows, list(c), cost), lam0, mu0


def _dot(row: Row, x: Sequence[Fraction]) -> Fraction:
    return sum((v * x[j] for j, v in row), ZERO)


def solve(lp: LinearProgram, warm_start: bool | None = None) -> LPOutcome:
    """Solve ``lp`` exactly and attach a certificate, verified before returning.

    ``warm_start`` forces (True) or disables (False) the floating-point basis
    hint; by default it is used for standard forms with many rows. Raises
    :class:`CertificateError` if the certificate does not check out, which
    would indicate a solver bug.
    """
    out = _solve(lp, warm_start)
    if not verify_certificate(lp, out):
        raise CertificateError(f"certificate for {out.status} outcome failed verification")
    return out


def _solve(lp: LinearProgram, warm_start: bool | None, _aux: bool = False) -> LPOutcome:
    c = lp.min_objective
    n = lp.num_vars
    m_primal = len(lp.eq_rows) + len(lp.ineq_rows)
    sign = 1 if lp.sense == "min" else -1

    if m_primal <= n:
        std, pos, neg = _primal_std(lp, c)
        res = _solve_std(std, warm_start)
        if res.status == "float-unknown":
            res = _simplex(std)
        ne = len(lp.eq_rows)

        def to_x(z):
            return tuple(
                z[pos[j]] - (z[neg[j]] if neg[j] is not None else ZERO) for j in range(n)
            )

        if res.status == OPTIMAL:
            x = to_x(res.z)
            val = sum((cj * xj for cj, xj in zip(lp.objective, x)), ZERO)
            return LPOutcome(
                OPTIMAL, val, x, tuple(res.pi[:ne]), tuple(res.pi[ne:]), pivots=res.pivots
            )
        if res.status == INFEASIBLE:
            f = res.farkas
            return LPOutcome(INFEASIBLE, dual_eq=tuple(f[:ne]), dual_ineq=tuple(f[ne:]), pivots=res.pivots)
        ray_z = [res.ray.get(k, ZERO) for k in range(std.ncols)]
        return LPOutcome(UNBOUNDED, primal=to_x(res.z), ray=to_x(ray_z), pivots=res.pivots)

    std, lam0, mu0 = _dual_std(lp, c)
    res = _solve_std(std, warm_start)
    ne = len(lp.eq_rows)
    if res.status == OPTIMAL:
        x = tuple(-p for p in res.pi)
        val = sum((cj * xj for cj, xj in zip(lp.objective, x)), ZERO)
        y = tuple(res.z[2 * i] - res.z[2 * i + 1] for i in range(ne))
        lam = tuple(res.z[lam0:mu0])
        return LPOutcome(OPTIMAL, val, x, y, lam, pivots=res.pivots)
    if res.status == UNBOUNDED:
        r = [res.ray.get(k, ZERO) for k in range(std.ncols)]
        y = tuple(r[2 * i] - r[2 * i + 1] for i in range(ne))
        return LPOutcome(INFEASIBLE, dual_eq=y, dual_ineq=tuple(r[lam0:mu0]), pivots=res.pivots)
    if _aux:
        # Auxiliary programs are always feasible and bounded; a non-optimal
        # float answer means the hint was useless, so solve exactly.
        return _solve(lp, False)
    ray = None
    if res.status == INFEASIBLE:
        ray = tuple(-s for s in res.farkas)
    return _resolve_unbounded_or_infeasible(lp, ray, warm_start)


def _resolve_unbounded_or_infeasible(lp, ray, warm_start) -> LPOutcome:
    """Distinguish infeasible from unbounded using bounded auxiliary programs."""
    n = lp.num_vars
    ne, ng = len(lp.eq_rows), len(lp.ineq_rows)
    nn_idx = [j for j in range(n) if lp.nonneg[j]]
    # F:  max e.y + g.lam  s.t.  E^T y + G^T lam + mu = 0,  e.y + g.lam <= 1.
    nf = ne + ng + len(nn_idx)
    eqF: list[tuple[dict[int, Fraction], Fraction]] = [(dict(), ZERO) for _ in range(n)]
    for i, (row, _) in enumerate(lp.eq_rows):
        for j, v in row:
            eqF[j][0][i] = v
    for l, (row, _) in enumerate(lp.ineq_rows):
        for j, v in row:
            eqF[j][0][ne + l] = v
    for t, j in enumerate(nn_idx):
        eqF[j][0][ne + ng + t] = ONE
    objF = {i: rhs for i, (_, rhs) in enumerate(lp.eq_rows)}
    objF.update({ne + l: rhs for l, (_, rhs) in enumerate(lp.ineq_rows)})
    F = LinearProgram.build(
        nf,
        objF,
        "max",
        eq=eqF,
        le=[(objF, 1)],
        nonneg=[False] * ne + [True] * (ng + len(nn_idx)),
    )
    outF = _solve(F, warm_start, _aux=True)
    if outF.status != OPTIMAL:
        raise CertificateError(f"bounded Farkas program reported {outF.status}")
    if outF.value > 0:
        w = outF.primal
        return LPOutcome(INFEASIBLE, dual_eq=tuple(w[:ne]), dual_ineq=tuple(w[ne : ne + ng]))
    x0 = tuple(-u for u in outF.dual_eq)
    if ray is None:
        c = lp.min_objective
        crow = {j: v for j, v in enumerate(c) if v}
        R = LinearProgram.build(
            n,
            c,
            "min",
            eq=[(dict(r), 0) for r, _ in lp.eq_rows],
            ge=[(dict(r), 0) for r, _ in lp.ineq_rows] + [(crow, -1)],
            nonneg=lp.nonneg,
        )
        outR = _solve(R, warm_start, _aux=True)
        if outR.status != OPTIMAL:
            raise CertificateError(f"bounded ray program reported {outR.status}")
        if outR.value >= 0:
            log.warning("float solver disagreed with exact analysis; re-solving from scratch")
            return _solve(lp, False)
        ray = outR.primal
    return LPOutcome(UNBOUNDED, primal=x0, ray=ray)


def verify_certificate(lp: LinearProgram, out: LPOutcome) -> bool:
    """Exact check that ``out`` proves its claimed status (and value) for ``lp``."""
    n = lp.num_vars
    c = lp.min_objective
    try:
        if out.status == OPTIMAL:
            x, y, lam = out.primal, out.dual_eq, out.dual_ineq
            if x is None or y is None or lam is None or out.value is None:
                return False
            if len(x) != n or len(y) != len(lp.eq_rows) or len(lam) != len(lp.ineq_rows):
                return False
            if not _primal_feasible(lp, x):
                return False
            if any(v < 0 for v in lam):
                return False
            red = list(c)
            for yi, (row, _) in zip(y, lp.eq_rows):
                if yi:
                    for j, v in row:
                        red[j] -= yi * v
            for li, (row, _) in zip(lam, lp.ineq_rows):
                if li:
                    for j, v in row:
                        red[j] -= li * v
            for j in range(n):
                if (lp.nonneg[j] and red[j] < 0) or (not lp.nonneg[j] and red[j] != 0):
                    return False
            dual_val = sum((yi * rhs for yi, (_, rhs) in zip(y, lp.eq_rows)), ZERO)
            dual_val += sum((li * rhs for li, (_, rhs) in zip(lam, lp.ineq_rows)), ZERO)
            primal_val = sum((cj * xj for cj, xj in zip(c, x)), ZERO)
            value = out.value if lp.sense == "min" else -out.value
            return primal_val == dual_val == value
        if out.status == INFEASIBLE:
            y, lam = out.dual_eq, out.dual_ineq
            if y is None or lam is None:
                return False
            if len(y) != len(lp.eq_rows) or len(lam) != len(lp.ineq_rows):
                return False
            if any(v < 0 for v in lam):
                return False
            comb = [ZERO] * n
            for yi, (row, _) in zip(y, lp.eq_rows):
                for j, v in row:
                    comb[j] += yi * v
            for li, (row, _) in zip(lam, lp.ineq_rows):
                for j, v in row:
                    comb[j] += li * v
            for j in range(n):
                if (lp.nonneg[j] and comb[j] > 0) or (not lp.nonneg[j] and comb[j] != 0):
                    return False
            rhs_val = sum((yi * rhs for yi, (_, rhs) in zip(y, lp.eq_rows)), ZERO)
            rhs_val += sum((li * rhs for li, (_, rhs) in zip(lam, lp.ineq_rows)), ZERO)
            return rhs_val > 0
        if out.status == UNBOUNDED:
            x, d = out.primal, out.ray
            if x is None or d is None or len(x) != n or len(d) != n:
                return False
            if not _primal_feasible(lp, x):
                return False
            if any(_dot(row, d) != 0 for row, _ in lp.eq_rows):
                return False
            if any(_dot(row, d) < 0 for row, _ in lp.ineq_rows):
                return False
            if any(lp.nonneg[j] and d[j] < 0 for j in range(n)):
                return False
            return sum((cj * dj for cj, dj in zip(c, d)), ZERO) < 0
    except (TypeError, IndexError):
        return False
    return False


def _primal_feasible(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    if any(lp.nonneg[j] and x[j] < 0 for j in range(lp.num_vars)):
        return False
    if any(_dot(row, x) != rhs for row, rhs in lp.eq_rows):
        return False
    return all(_dot(row, x) >= rhs for row, rhs in lp.ineq_rows)

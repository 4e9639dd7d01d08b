"""Two-phase tableau simplex over the rationals, Bland's pivoting rule.

The LP is ``max|min c.x`` subject to rows ``a_i.x (<=|=|>=) b_i`` and
per-variable lower bound 0 or free. The solution carries a dual vector y
with the convention that ``b.y`` equals the optimum, and both vectors are
re-checked against the original data before being returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import CertificateError, DomainError
from .exact import as_rat

LE, EQ, GE = "<=", "=", ">="
_SENSES = (LE, EQ, GE)


class Status(str, Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"


@dataclass
class ExactLP:
    objective: Sequence
    rows: Sequence[Sequence]
    senses: Sequence[str]
    rhs: Sequence
    free: Sequence[bool] | None = None
    maximize: bool = True

    def __post_init__(self):
        self.objective = [as_rat(c) for c in self.objective]
        nv = len(self.objective)
        self.rows = [[as_rat(a) for a in row] for row in self.rows]
        self.rhs = [as_rat(b) for b in self.rhs]
        self.senses = list(self.senses)
        if self.free is None:
            self.free = [False] * nv
        self.free = [bool(f) for f in self.free]
        if len(self.rows) != len(self.rhs) or len(self.rows) != len(self.senses):
            raise DomainError("rows, senses and rhs must have equal length")
        if len(self.free) != nv or any(len(r) != nv for r in self.rows):
            raise DomainError("every row and the bounds vector must match the objective length")
        if any(s not in _SENSES for s in self.senses):
            raise DomainError(f"senses must be drawn from {_SENSES}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass
class ExactLPSolution:
    status: Status
    optimum: Fraction | None = None
    primal: list[Fraction] = field(default_factory=list)
    dual: list[Fraction] = field(default_factory=list)
    pivots: int = 0


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


class _Tableau:
    """Rows hold [coefficients..., rhs]; basis[i] is the basic column of row i."""

    def __init__(self, rows, rhs, basis):
        self.T = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)
        self.pivots = 0

    def pivot(self, r: int, c: int, obj: list[Fraction]) -> None:
        T = self.T
        prow = T[r]
        p = prow[c]
        if p != 1:
            inv = 1 / p
            prow[:] = [v * inv if v else v for v in prow]
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(T):
            if i != r:
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = obj[c]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
        self.basis[r] = c
        self.pivots += 1

    def reduced_row(self, cost: list[Fraction]) -> list[Fraction]:
        # obj[j] = c_B B^-1 A_j - c_j ; last entry is the objective value
        ncols = len(self.T[0])
        obj = [-c for c in cost] + [Fraction(0)]
        for i, bcol in enumerate(self.basis):
            cb = cost[bcol]
            if cb:
                row = self.T[i]
                for j in range(ncols):
                    if row[j]:
                        obj[j] += cb * row[j]
        return obj

    def run(self, obj: list[Fraction], allowed: list[bool]) -> Status:
        """Maximize with Bland's rule given a reduced-cost row (negative = improving)."""
        T = self.T
        last = len(obj) - 1
        while True:
            enter = next((j for j in range(last) if allowed[j] and obj[j] < 0), None)
            if enter is None:
                return Status.OPTIMAL
            best = None
            for i, row in enumerate(T):
                a = row[enter]
                if a > 0:
                    ratio = row[last] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return Status.UNBOUNDED
            self.pivot(best[1], enter, obj)


def solve(lp: ExactLP) -> ExactLPSolution:
    nv = lp.num_vars
    sign = 1 if lp.maximize else -1
    # column layout: one column per variable, plus a mirrored column for free ones
    cols: list[tuple[int, int]] = []
    for j in range(nv):
        cols.append((j, 1))
        if lp.free[j]:
            cols.append((j, -1))
    cost = [sign * lp.objective[j] * s for j, s in cols]

    rows, rhs, senses, flips = [], [], [], []
    for row, sense, b in zip(lp.rows, lp.senses, lp.rhs):
        expanded = [row[j] * s for j, s in cols]
        flip = b < 0
        if flip:
            expanded = [-a for a in expanded]
            b = -b
            sense = {LE: GE, GE: LE, EQ: EQ}[sense]
        rows.append(expanded)
        rhs.append(b)
        senses.append(sense)
        flips.append(flip)

    m = len(rows)
    nstruct = len(cols)
    # surplus columns for >= rows, then one identity column per row (slack or artificial)
    surplus = [i for i in range(m) if senses[i] == GE]
    nsur = len(surplus)
    ident0 = nstruct + nsur
    total = ident0 + m
    full_rows = []
    for i in range(m):
        r = rows[i] + [Fraction(0)] * (nsur + m)
        if senses[i] == GE:
            r[nstruct + surplus.index(i)] = Fraction(-1)
        r[ident0 + i] = Fraction(1)
        full_rows.append(r)
    artificial = [senses[i] != LE for i in range(m)]
    tab = _Tableau(full_rows, rhs, [ident0 + i for i in range(m)])

    is_art = [False] * total
    for i in range(m):
        is_art[ident0 + i] = artificial[i]

    if any(artificial):
        phase1 = [Fraction(0)] * total
        for i in range(m):
            if artificial[i]:
                phase1[ident0 + i] = Fraction(-1)
        obj = tab.reduced_row(phase1)
        tab.run(obj, [True] * total)
        if obj[-1] < 0:
            return ExactLPSolution(Status.INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis where possible
        for i in range(m):
            if is_art[tab.basis[i]]:
                row = tab.T[i]
                c = next((j for j in range(ident0 + m) if not is_art[j] and row[j]), None)
                if c is not None:
                    tab.pivot(i, c, obj)

    full_cost = cost + [Fraction(0)] * (nsur + m)
    obj = tab.reduced_row(full_cost)
    status = tab.run(obj, [not a for a in is_art])
    if status is Status.UNBOUNDED:
        return ExactLPSolution(Status.UNBOUNDED, pivots=tab.pivots)

    xs = [Fraction(0)] * total
    for i, bcol in enumerate(tab.basis):
        xs[bcol] = tab.T[i][-1]
    primal = [Fraction(0)] * nv
    for c, (j, s) in enumerate(cols):
        primal[j] += s * xs[c]
    y = [obj[ident0 + i] for i in range(m)]
    dual = [sign * (-v if flip else v) for v, flip in zip(y, flips)]
    value = sign * obj[-1]
    sol = ExactLPSolution(Status.OPTIMAL, value, primal, dual, tab.pivots)
    check_solution(lp, sol)
    return sol


def check_solution(lp: ExactLP, sol: ExactLPSolution) -> None:
    """Re-verify primal/dual feasibility and strong duality against the raw LP data."""
    x, y = sol.primal, sol.dual
    for j in range(lp.num_vars):
        if not lp.free[j] and x[j] < 0:
            raise CertificateError(f"primal variable {j} negative")
    for i, (row, sense, b) in enumerate(zip(lp.rows, lp.senses, lp.rhs)):
        ax = _dot(row, x)
        if (sense == LE and ax > b) or (sense == GE and ax < b) or (sense == EQ and ax != b):
            raise CertificateError(f"primal row {i} violated")
    # dual signs for a max problem: <= rows y >= 0, >= rows y <= 0; reversed for min
    s = 1 if lp.maximize else -1
    for i, sense in enumerate(lp.senses):
        if (sense == LE and s * y[i] < 0) or (sense == GE and s * y[i] > 0):
            raise CertificateError(f"dual variable {i} has the wrong sign")
    for j in range(lp.num_vars):
        aty = sum((lp.rows[i][j] * y[i] for i in range(len(y)) if y[i]), Fraction(0))
        slack = s * (aty - lp.objective[j])
        if (lp.free[j] and slack != 0) or slack < 0:
            raise CertificateError(f"dual constraint for variable {j} violated")
    primal_value = _dot(lp.objective, x)
    dual_value = _dot(lp.rhs, y)
    if not (primal_value == dual_value == sol.optimum):
        raise CertificateError(f"duality gap: primal {primal_value} dual {dual_value}")

"""Dense two-phase simplex over floats or exact rationals.

Every linear program arriving here is tiny (tens of variables at most:
polytope membership systems, dual-cone feasibility, slack
maximization), so a dense tableau with Bland's anti-cycling rule is
both fast enough and easy to trust.  With ``Fraction`` data and
``tol=0`` every pivot decision is exact, which is what the rational
mode of the rest of the library relies on.

Conventions:

* the objective is maximized;
* inequality rows mean ``row . x >= rhs``;
* ``lower_bounds`` gives a per-variable lower bound, ``None`` entries
  (or the whole field being ``None``) mean the variable is free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .arith import Num, Vec, div, dot, num_finite, resolve_tol
from .errors import DimMismatch, IterationCapExceeded, ValidationError

ITERATION_CAP = 10_000

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple
    eq_lhs: tuple = ()
    eq_rhs: tuple = ()
    ge_lhs: tuple = ()
    ge_rhs: tuple = ()
    lower_bounds: Optional[tuple] = None

    def __post_init__(self):
        nv = len(self.objective)
        if len(self.eq_lhs) != len(self.eq_rhs):
            raise DimMismatch("equality matrix and rhs differ in row count")
        if len(self.ge_lhs) != len(self.ge_rhs):
            raise DimMismatch("inequality matrix and rhs differ in row count")
        for row in list(self.eq_lhs) + list(self.ge_lhs):
            if len(row) != nv:
                raise DimMismatch(f"row of length {len(row)}, expected {nv}")
        if self.lower_bounds is not None and len(self.lower_bounds) != nv:
            raise DimMismatch("lower_bounds length differs from variable count")
        for value in self._all_numbers():
            if not num_finite(value):
                raise ValidationError("non-finite coefficient in linear program")

    def _all_numbers(self):
        yield from self.objective
        for row in self.eq_lhs:
            yield from row
        for row in self.ge_lhs:
            yield from row
        yield from self.eq_rhs
        yield from self.ge_rhs
        if self.lower_bounds is not None:
            for b in self.lower_bounds:
                if b is not None:
                    yield b

    @property
    def num_vars(self) -> int:
        return len(self.objective)


def make_program(objective: Vec, equalities=None, inequalities=None,
                 lower_bounds=None) -> LinearProgram:
    """Convenience constructor from (matrix, rhs) pairs."""
    eq_lhs, eq_rhs = equalities if equalities else ((), ())
    ge_lhs, ge_rhs = inequalities if inequalities else ((), ())
    return LinearProgram(
        objective=tuple(objective),
        eq_lhs=tuple(tuple(r) for r in eq_lhs),
        eq_rhs=tuple(eq_rhs),
        ge_lhs=tuple(tuple(r) for r in ge_lhs),
        ge_rhs=tuple(ge_rhs),
        lower_bounds=None if lower_bounds is None else tuple(lower_bounds),
    )


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    point: Optional[tuple]
    infeasibility: Num  # phase-one optimum; > 0 exactly when infeasible


@dataclass(frozen=True)
class Outcome:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Optional[Num] = None
    point: Optional[tuple] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


class _Standard:
    """Equality-form program A z = b, z >= 0, maximize c.z + const."""

    __slots__ = ("rows", "rhs", "c", "const", "ncols", "col_map", "nv")

    def __init__(self, prog: LinearProgram):
        nv = prog.num_vars
        lbs = prog.lower_bounds if prog.lower_bounds is not None else (None,) * nv
        col_map = []
        ncols = 0
        for lb in lbs:
            if lb is None:
                col_map.append(("split", ncols, ncols + 1))
                ncols += 2
            else:
                col_map.append(("shift", ncols, lb))
                ncols += 1
        n_ge = len(prog.ge_lhs)
        slack0 = ncols
        ncols += n_ge

        def expand(row):
            out = [0] * ncols
            shift = 0
            for a, entry in zip(row, col_map):
                if entry[0] == "split":
                    out[entry[1]] = a
                    out[entry[2]] = -a
                else:
                    out[entry[1]] = a
                    shift += a * entry[2]
            return out, shift

        rows, rhs = [], []
        for row, b in zip(prog.eq_lhs, prog.eq_rhs):
            out, shift = expand(row)
            rows.append(out)
            rhs.append(b - shift)
        for k, (row, b) in enumerate(zip(prog.ge_lhs, prog.ge_rhs)):
            out, shift = expand(row)
            out[slack0 + k] = -1
            rows.append(out)
            rhs.append(b - shift)

        c, const = expand(prog.objective)
        self.rows, self.rhs, self.c, self.const = rows, rhs, c, const
        self.ncols, self.col_map, self.nv = ncols, col_map, nv

    def recover(self, z) -> tuple:
        out = []
        for entry in self.col_map:
            if entry[0] == "split":
                out.append(z[entry[1]] - z[entry[2]])
            else:
                out.append(z[entry[1]] + entry[2])
        return tuple(out)


def _pivot(tab, obj, r, c):
    prow = tab[r]
    piv = prow[c]
    tab[r] = prow = [div(v, piv) for v in prow]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            tab[i] = [v - f * p for v, p in zip(row, prow)]
    if obj[c] != 0:
        f = obj[c]
        for j, p in enumerate(prow):
            obj[j] -= f * p


def _run(tab, obj, basis, width, tol, cap):
    """Bland-rule simplex on a tableau whose rhs is the last column."""
    iterations = 0
    while True:
        iterations += 1
        if iterations > cap:
            raise IterationCapExceeded(f"simplex exceeded {cap} iterations")
        enter = None
        for j in range(width):
            if obj[j] < -tol:
                enter = j
                break
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > tol:
                ratio = div(row[-1], a)
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return UNBOUNDED
        _pivot(tab, obj, leave, enter)
        basis[leave] = enter


def _phase_one(std: _Standard, tol, cap):
    """Returns (tab, basis, infeasibility) with artificials eliminated."""
    m = len(std.rows)
    n = std.ncols
    tab = []
    for i in range(m):
        row = list(std.rows[i]) + [0] * m + [std.rhs[i]]
        if row[-1] < 0:
            row = [-v for v in row]
        row[n + i] = 1
        tab.append(row)
    basis = [n + i for i in range(m)]
    obj = [0] * n + [1] * m + [0]
    for row in tab:
        for j in range(n + m + 1):
            obj[j] -= row[j]
    _run(tab, obj, basis, n + m, tol, cap)
    infeasibility = -obj[-1]
    if infeasibility > tol:
        return None, None, infeasibility
    # Pivot leftover artificials out; a row with no real pivot is redundant.
    keep = []
    for i in range(m):
        if basis[i] >= n:
            pivot_col = None
            for j in range(n):
                if abs(tab[i][j]) > tol:
                    pivot_col = j
                    break
            if pivot_col is None:
                continue
            _pivot(tab, obj, i, pivot_col)
            basis[i] = pivot_col
        keep.append(i)
    tab = [tab[i][:n] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    return tab, basis, infeasibility


def _extract(std: _Standard, tab, basis) -> tuple:
    z = [0] * std.ncols
    for i, b in enumerate(basis):
        z[b] = tab[i][-1]
    return std.recover(z)


def lp_feasible(prog: LinearProgram, tol=None, cap=ITERATION_CAP) -> Feasibility:
    """Phase-one feasibility check; returns a witness point when feasible."""
    tol = resolve_tol(tol, *prog._all_numbers())
    std = _Standard(prog)
    tab, basis, infeas = _phase_one(std, tol, cap)
    if tab is None:
        return Feasibility(False, None, infeas)
    return Feasibility(True, _extract(std, tab, basis), infeas)


def lp_maximize(prog: LinearProgram, tol=None, cap=ITERATION_CAP) -> Outcome:
    tol = resolve_tol(tol, *prog._all_numbers())
    std = _Standard(prog)
    tab, basis, _ = _phase_one(std, tol, cap)
    if tab is None:
        return Outcome(INFEASIBLE)
    c = std.c
    obj = [-cj for cj in c] + [0]
    for i, row in enumerate(tab):
        cb = c[basis[i]]
        if cb != 0:
            for j in range(std.ncols + 1):
                obj[j] += cb * row[j]
    status = _run(tab, obj, basis, std.ncols, tol, cap)
    if status == UNBOUNDED:
        return Outcome(UNBOUNDED)
    return Outcome(OPTIMAL, obj[-1] + std.const, _extract(std, tab, basis))


def check_point(prog: LinearProgram, point: Sequence[Num], tol=None) -> bool:
    """Verify that a point satisfies every constraint within tolerance."""
    tol = resolve_tol(tol, *prog._all_numbers())
    for row, b in zip(prog.eq_lhs, prog.eq_rhs):
        if abs(dot(row, point) - b) > tol:
            return False
    for row, b in zip(prog.ge_lhs, prog.ge_rhs):
        if dot(row, point) < b - tol:
            return False
    if prog.lower_bounds is not None:
        for x, lb in zip(point, prog.lower_bounds):
            if lb is not None and x < lb - tol:
                return False
    return True

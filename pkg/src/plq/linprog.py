"""Exact rational linear-programming feasibility with strict rows.

A :class:`LinSystem` holds rows ``sum_j coeffs[j] * x_j REL const`` with
``REL`` either ``>=`` or ``>``, over variables that are implicitly
nonnegative.  :func:`lin_feasible` decides feasibility exactly over the
rationals and returns a witness satisfying every row exactly (strict
rows strictly), or ``None``.

Strict rows are handled by maximizing a slack ``t`` with the strict rows
relaxed to ``>= const + t`` and ``t <= 1``; the system is strictly
feasible iff the optimum is positive.  The optimizer is a dense
two-phase simplex over ``Fraction`` with Bland's anti-cycling rule, so
termination is guaranteed; the pivot count is asserted against the
number of possible bases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

__all__ = ["LinRow", "LinSystem", "SimplexStats", "lin_feasible"]


@dataclass(frozen=True)
class LinRow:
    coeffs: Tuple[Fraction, ...]
    const: Fraction
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "const", Fraction(self.const))

    def holds(self, point: Sequence[Fraction]) -> bool:
        lhs = sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0))
        return lhs > self.const if self.strict else lhs >= self.const


@dataclass(frozen=True)
class LinSystem:
    variables: Tuple[str, ...]
    rows: Tuple[LinRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "rows", tuple(self.rows))
        for row in self.rows:
            if len(row.coeffs) != len(self.variables):
                raise ValueError("row arity does not match variable count")

    def holds(self, point: Dict[str, Fraction]) -> bool:
        vec = [Fraction(point[v]) for v in self.variables]
        return all(x >= 0 for x in vec) and all(r.holds(vec) for r in self.rows)


@dataclass
class SimplexStats:
    pivots: int = 0
    phases: int = 0


class _Unbounded(Exception):
    pass


def _pivot(tableau: List[List[Fraction]], basis: List[int], row: int, col: int):
    piv = tableau[row][col]
    inv = 1 / piv
    tableau[row] = [v * inv for v in tableau[row]]
    prow = tableau[row]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            factor = r[col]
            tableau[i] = [v - factor * pv for v, pv in zip(r, prow)]
    basis[row - 1] = col


def _optimize(tableau: List[List[Fraction]], basis: List[int],
              stats: SimplexStats, pivot_bound: int):
    """Run simplex to optimality on a tableau whose row 0 holds reduced costs.

    Maximization: entering column = lowest index with positive reduced
    cost; leaving row = lowest basic index among minimum ratios (Bland).
    """
    m = len(tableau) - 1
    while True:
        obj = tableau[0]
        col = next((j for j in range(len(obj) - 1) if obj[j] > 0), None)
        if col is None:
            return
        best: Optional[Tuple[Fraction, int, int]] = None
        for i in range(1, m + 1):
            a = tableau[i][col]
            if a > 0:
                ratio = tableau[i][-1] / a
                key = (ratio, basis[i - 1])
                if best is None or key < (best[0], best[1]):
                    best = (ratio, basis[i - 1], i)
        if best is None:
            raise _Unbounded()
        _pivot(tableau, basis, best[2], col)
        stats.pivots += 1
        assert stats.pivots <= pivot_bound, "simplex exceeded the basis-count bound"


def _simplex_max(A: List[List[Fraction]], b: List[Fraction], c: List[Fraction],
                 stats: SimplexStats) -> Optional[List[Fraction]]:
    """Maximize ``c@z`` over ``Az = b, z >= 0``; returns an optimal ``z``.

    ``None`` when infeasible; raises :class:`_Unbounded` when unbounded.
    """
    m = len(A)
    n = len(c)
    if m == 0:
        if any(ci > 0 for ci in c):
            raise _Unbounded()
        return [Fraction(0)] * n
    # make rhs nonnegative, append artificial identity
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-v for v in A[i]])
            rhs.append(-b[i])
        else:
            rows.append(list(A[i]))
            rhs.append(b[i])
    total = n + m  # artificials occupy columns n..n+m-1
    tableau: List[List[Fraction]] = [[Fraction(0)] * (total + 1)]
    basis = []
    for i in range(m):
        row = rows[i] + [Fraction(0)] * m + [rhs[i]]
        row[n + i] = Fraction(1)
        tableau.append(row)
        basis.append(n + i)
    # phase 1: maximize -sum(artificials); reduced costs = sum of rows
    obj = tableau[0]
    for j in range(total + 1):
        s = Fraction(0)
        for i in range(1, m + 1):
            s += tableau[i][j]
        obj[j] = s
    for i in range(m):
        obj[n + i] = Fraction(0)
    pivot_bound = 2 * math.comb(total, m) + total + 2
    stats.phases += 1
    _optimize(tableau, basis, stats, pivot_bound)
    if tableau[0][-1] != 0:
        return None  # some artificial stuck positive: infeasible
    # drive leftover artificials out of the basis, then drop their columns
    for i in range(1, m + 1):
        if basis[i - 1] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, i, col)
                stats.pivots += 1
    keep_rows = [i for i in range(1, m + 1) if basis[i - 1] < n]
    tableau = [[row[j] for j in range(n)] + [row[-1]]
               for row in ([tableau[0]] + [tableau[i] for i in keep_rows])]
    basis = [basis[i - 1] for i in keep_rows]
    # phase 2 on the original columns
    obj = tableau[0]
    for j in range(n):
        obj[j] = c[j]
    obj[-1] = Fraction(0)
    for i in range(1, len(tableau)):
        cb = c[basis[i - 1]]
        if cb != 0:
            for j in range(n + 1):
                obj[j] -= cb * tableau[i][j]
    stats.phases += 1
    _optimize(tableau, basis, stats, pivot_bound)
    z = [Fraction(0)] * n
    for i in range(1, len(tableau)):
        z[basis[i - 1]] = tableau[i][-1]
    return z


def lin_feasible(system: LinSystem, stats: Optional[SimplexStats] = None
                 ) -> Optional[Dict[str, Fraction]]:
    """Exact witness for the system, or ``None`` when infeasible.

    The returned point is re-checked against every row before being
    returned; strict rows hold strictly.
    """
    if stats is None:
        stats = SimplexStats()
    n = len(system.variables)
    strict_rows = [r for r in system.rows if r.strict]
    # columns: x_1..x_n, t (only if strict rows), then one slack per row
    with_t = bool(strict_rows)
    nt = n + (1 if with_t else 0)
    m = len(system.rows) + (1 if with_t else 0)
    ncols = nt + m
    A: List[List[Fraction]] = []
    b: List[Fraction] = []
    for k, row in enumerate(system.rows):
        line = [Fraction(0)] * ncols
        for j, cj in enumerate(row.coeffs):
            line[j] = cj
        if with_t and row.strict:
            line[n] = Fraction(-1)  # coeffs@x - t >= const
        line[nt + k] = Fraction(-1)  # surplus: lhs - s = const
        A.append(line)
        b.append(row.const)
    if with_t:
        line = [Fraction(0)] * ncols
        line[n] = Fraction(1)
        line[nt + len(system.rows)] = Fraction(1)  # t + slack = 1
        A.append(line)
        b.append(Fraction(1))
    c = [Fraction(0)] * ncols
    if with_t:
        c[n] = Fraction(1)  # maximize t
    z = _simplex_max(A, b, c, stats)
    if z is None:
        return None
    if with_t and z[n] <= 0:
        return None
    witness = {name: z[j] for j, name in enumerate(system.variables)}
    assert system.holds(witness), "simplex returned a point violating the system"
    return witness

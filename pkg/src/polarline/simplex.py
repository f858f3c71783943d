"""Exact linear programming over the rationals.

A small dense two-phase simplex with Bland's rule (anti-cycling).  Problem
sizes here are tiny (tens of variables and rows), so a cycling-safe, fully
exact tableau beats anything clever.  All variables are free; they are split
into nonnegative pairs internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    pivot_row = tableau[row]
    for r, line in enumerate(tableau):
        if r == row:
            continue
        factor = line[col]
        if factor:
            tableau[r] = [v - factor * p for v, p in zip(line, pivot_row)]
    basis[row] = col


def _reduced_costs(
    tableau: list[list[Fraction]], basis: list[int], costs: list[Fraction]
) -> list[Fraction]:
    # costs has one entry per column plus the objective constant at the end
    row = list(costs)
    for r, b in enumerate(basis):
        cb = costs[b]
        if cb:
            line = tableau[r]
            for j in range(len(row)):
                row[j] -= cb * line[j]
    return row


def _minimize(
    tableau: list[list[Fraction]],
    basis: list[int],
    costs: list[Fraction],
    allowed: int,
) -> str:
    """Run simplex minimization in place; `allowed` caps entering columns."""
    cost_row = _reduced_costs(tableau, basis, costs)
    while True:
        enter = -1
        for j in range(allowed):
            if cost_row[j] < ZERO:
                enter = j
                break  # Bland: smallest eligible index
        if enter < 0:
            return OPTIMAL
        leave = -1
        best = None
        for r, line in enumerate(tableau):
            coef = line[enter]
            if coef > ZERO:
                ratio = line[-1] / coef
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave < 0:
            return UNBOUNDED
        _pivot(tableau, basis, leave, enter)
        factor = cost_row[enter]
        pivot_row = tableau[leave]
        cost_row = [v - factor * p for v, p in zip(cost_row, pivot_row)]


def solve_lp(
    objective: Sequence[Fraction],
    a_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    a_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
    maximize: bool = False,
) -> LPResult:
    """Optimize objective . x over free variables x subject to
    a_ub . x <= b_ub and a_eq . x = b_eq."""
    nf = len(objective)
    n_ub = len(a_ub)
    rows = [list(r) + [True] for r in a_ub]  # trailing flag: needs slack
    rhs = [Fraction(v) for v in b_ub] + [Fraction(v) for v in b_eq]
    rows += [list(r) + [False] for r in a_eq]
    n_rows = len(rows)

    # columns: x+ (nf), x- (nf), slacks (n_ub), artificials (n_rows)
    n_cols = 2 * nf + n_ub + n_rows
    tableau: list[list[Fraction]] = []
    slack_at = 0
    for r, row in enumerate(rows):
        coeffs = [Fraction(v) for v in row[:-1]]
        line = [ZERO] * (n_cols + 1)
        for j, v in enumerate(coeffs):
            line[j] = v
            line[nf + j] = -v
        if row[-1]:
            line[2 * nf + slack_at] = ONE
            slack_at += 1
        line[-1] = rhs[r]
        if line[-1] < ZERO:
            line = [-v for v in line]
        line[2 * nf + n_ub + r] = ONE
        tableau.append(line)
    basis = [2 * nf + n_ub + r for r in range(n_rows)]

    # phase 1: minimize the sum of artificials
    phase1 = [ZERO] * (n_cols + 1)
    for r in range(n_rows):
        phase1[2 * nf + n_ub + r] = ONE
    status = _minimize(tableau, basis, phase1, n_cols)
    assert status == OPTIMAL  # phase 1 is always bounded below by 0
    infeas = sum((tableau[r][-1] for r in range(n_rows) if basis[r] >= 2 * nf + n_ub), ZERO)
    if infeas != ZERO:
        return LPResult(INFEASIBLE)

    # drive any lingering zero-level artificials out of the basis
    r = 0
    while r < len(tableau):
        if basis[r] >= 2 * nf + n_ub:
            for j in range(2 * nf + n_ub):
                if tableau[r][j] != ZERO:
                    _pivot(tableau, basis, r, j)
                    break
            else:
                del tableau[r], basis[r]  # redundant row
                continue
        r += 1

    # phase 2 over real columns only
    sign = -ONE if maximize else ONE
    costs = [ZERO] * (n_cols + 1)
    for j in range(nf):
        costs[j] = sign * Fraction(objective[j])
        costs[nf + j] = -sign * Fraction(objective[j])
    status = _minimize(tableau, basis, costs, 2 * nf + n_ub)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)

    values = [ZERO] * n_cols
    for r, b in enumerate(basis):
        values[b] = tableau[r][-1]
    x = tuple(values[j] - values[nf + j] for j in range(nf))
    value = sum((Fraction(objective[j]) * x[j] for j in range(nf)), ZERO)
    return LPResult(OPTIMAL, value, x)


def feasible(
    a_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    a_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
    n_vars: int | None = None,
) -> bool:
    """Phase-1 feasibility of a_ub . x <= b_ub, a_eq . x = b_eq (x free)."""
    if n_vars is None:
        first = a_ub[0] if a_ub else a_eq[0]
        n_vars = len(first)
    result = solve_lp([ZERO] * n_vars, a_ub, b_ub, a_eq, b_eq)
    return result.status != INFEASIBLE

"""Exact linear feasibility over the rationals.

A small phase-one simplex: minimize the sum of artificial variables for
``A x = b, x >= 0`` with every coefficient a `fractions.Fraction`.  Bland's
rule (lowest eligible index enters, ties on the ratio test broken by the
lowest basis index) guarantees termination without any tolerance games.

The systems solved here are tiny (tens of variables), so a dense tableau
is the simplest thing that can possibly work.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def solve_equality_feasibility(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> list[Fraction] | None:
    """Find x >= 0 with rows @ x == rhs, or None when the system is infeasible.

    Redundant equations are fine: their artificial variables simply stay
    basic at zero.
    """
    m = len(rows)
    if m == 0:
        return []
    nvars = len(rows[0])
    if any(len(r) != nvars for r in rows) or len(rhs) != m:
        raise ValueError("ragged constraint system")

    # Tableau columns: structural vars, artificial vars, rhs.
    width = nvars + m + 1
    tableau: list[list[Fraction]] = []
    for i in range(m):
        flip = -ONE if rhs[i] < 0 else ONE
        row = [flip * c for c in rows[i]]
        row.extend(ONE if j == i else ZERO for j in range(m))
        row.append(flip * rhs[i])
        tableau.append(row)
    basis = [nvars + i for i in range(m)]
    cost = [ZERO] * nvars + [ONE] * m

    while True:
        # Reduced costs under the current basis for the phase-one objective.
        entering = -1
        for j in range(nvars + m):
            reduced = cost[j] - sum(
                cost[basis[i]] * tableau[i][j] for i in range(m)
            )
            if reduced < 0:
                entering = j
                break
        if entering < 0:
            break
        leaving = -1
        best_ratio = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            # A feasibility objective is bounded below by zero, so an
            # unbounded improving direction cannot occur.
            raise RuntimeError("phase-one simplex lost boundedness")
        _pivot(tableau, leaving, entering)
        basis[leaving] = entering

    objective = sum(cost[basis[i]] * tableau[i][-1] for i in range(m))
    if objective != 0:
        return None
    solution = [ZERO] * nvars
    for i in range(m):
        if basis[i] < nvars:
            solution[basis[i]] = tableau[i][-1]
    return solution


def _pivot(tableau: list[list[Fraction]], row: int, col: int) -> None:
    pivot_row = tableau[row]
    inv = ONE / pivot_row[col]
    tableau[row] = [c * inv for c in pivot_row]
    pivot_row = tableau[row]
    for i, other in enumerate(tableau):
        if i == row:
            continue
        factor = other[col]
        if factor != 0:
            tableau[i] = [c - factor * p for c, p in zip(other, pivot_row)]

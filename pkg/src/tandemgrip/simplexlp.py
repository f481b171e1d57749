"""Small dense simplex solver.

Maximizes c.x subject to A_eq x = b_eq, A_ub x <= b_ub, x >= 0, using a
two-phase dense tableau with Bland's anti-cycling rule. Problem sizes in
this toolkit stay tiny (tens of variables), so clarity and determinism win
over sparse machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LpNumericalFailure

_TOL = 1e-9


@dataclass
class LpResult:
    status: str           # "optimal" | "unbounded" | "infeasible"
    objective: float
    x: np.ndarray         # original variables only


def _pivot(tab: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    for r in range(tab.shape[0]):
        if r != row and abs(tab[r, col]) > 0.0:
            tab[r] -= tab[r, col] * tab[row]
    basis[row] = col


def _bland_iterate(tab: np.ndarray, basis: list[int], cost: np.ndarray,
                   ncols: int, maxiter: int) -> str:
    """Run simplex iterations on the tableau for the given cost row.

    ``cost`` is the current reduced-cost row (to be maximized). Mutates
    tab/basis/cost in place. Returns "optimal" or "unbounded".
    """
    m = tab.shape[0]
    for _ in range(maxiter):
        enter = -1
        for j in range(ncols):
            if cost[j] > _TOL:
                enter = j
                break
        if enter < 0:
            return "optimal"
        # min ratio, Bland tie-break on basis variable index
        leave, best, best_var = -1, np.inf, -1
        for r in range(m):
            a = tab[r, enter]
            if a > _TOL:
                ratio = tab[r, -1] / a
                if ratio < best - _TOL or (abs(ratio - best) <= _TOL and basis[r] < best_var):
                    leave, best, best_var = r, ratio, basis[r]
        if leave < 0:
            return "unbounded"
        _pivot(tab, basis, leave, enter)
        cost -= cost[enter] * tab[leave]
    raise LpNumericalFailure(
        f"simplex exceeded {maxiter} iterations; basis={basis}"
    )


def solve_lp(
    c: np.ndarray,
    a_eq: np.ndarray | None = None,
    b_eq: np.ndarray | None = None,
    a_ub: np.ndarray | None = None,
    b_ub: np.ndarray | None = None,
) -> LpResult:
    """Maximize c.x with equality/inequality constraints and x >= 0."""
    c = np.asarray(c, dtype=float)
    n = c.size
    rows = []
    rhs = []
    n_slack = 0
    slack_of_row = []
    if a_eq is not None and len(np.atleast_1d(b_eq)) > 0:
        a_eq = np.atleast_2d(np.asarray(a_eq, dtype=float))
        for i, bi in enumerate(np.atleast_1d(np.asarray(b_eq, dtype=float))):
            rows.append(a_eq[i].copy())
            rhs.append(float(bi))
            slack_of_row.append(-1)
    if a_ub is not None and len(np.atleast_1d(b_ub)) > 0:
        a_ub = np.atleast_2d(np.asarray(a_ub, dtype=float))
        for i, bi in enumerate(np.atleast_1d(np.asarray(b_ub, dtype=float))):
            rows.append(a_ub[i].copy())
            rhs.append(float(bi))
            slack_of_row.append(n_slack)
            n_slack += 1
    m = len(rows)
    if m == 0:
        # unconstrained beyond x >= 0: bounded only if no positive cost
        if np.any(c > _TOL):
            return LpResult("unbounded", np.inf, np.zeros(n))
        return LpResult("optimal", 0.0, np.zeros(n))

    ncols = n + n_slack
    tab = np.zeros((m, ncols + m + 1))
    basis = [-1] * m
    need_artificial = []
    for r in range(m):
        a = rows[r]
        b = rhs[r]
        sl = slack_of_row[r]
        sign = 1.0
        if b < 0.0:
            sign = -1.0
            b = -b
            a = -a
        tab[r, :n] = a
        if sl >= 0:
            tab[r, n + sl] = sign
        tab[r, -1] = b
        if sl >= 0 and sign > 0:
            basis[r] = n + sl
        else:
            need_artificial.append(r)

    # phase 1: artificial columns for rows lacking a basic variable
    art_cols = []
    for r in need_artificial:
        col = ncols + len(art_cols)
        tab[r, col] = 1.0
        basis[r] = col
        art_cols.append(col)
    total_cols = ncols + len(art_cols)
    work = tab[:, list(range(total_cols)) + [-1]].copy()

    maxiter = 200 * (total_cols + m + 1)
    if art_cols:
        cost1 = np.zeros(total_cols + 1)
        for col in art_cols:
            cost1[col] = -1.0
        for r in range(m):
            if basis[r] in art_cols:
                cost1 += work[r]   # price out the basic artificials
        status = _bland_iterate(work, basis, cost1, ncols, maxiter)
        if status != "optimal" or cost1[-1] > 1e-7:
            return LpResult("infeasible", np.nan, np.full(n, np.nan))
        # drive leftover zero-value artificials out of the basis
        for r in range(m):
            if basis[r] >= ncols:
                for j in range(ncols):
                    if abs(work[r, j]) > _TOL:
                        _pivot(work, basis, r, j)
                        break

    # phase 2
    cost2 = np.zeros(total_cols + 1)
    cost2[:n] = c
    for col in art_cols:
        cost2[col] = -1e18  # never re-enter
    for r in range(m):
        cost2 -= cost2[basis[r]] * work[r]
    status = _bland_iterate(work, basis, cost2, ncols, maxiter)
    if status == "unbounded":
        return LpResult("unbounded", np.inf, np.full(n, np.nan))

    x = np.zeros(total_cols)
    for r in range(m):
        if basis[r] < total_cols:
            x[basis[r]] = work[r, -1]
    return LpResult("optimal", float(c @ x[:n]), x[:n])

"""Dense two-phase simplex with Bland's anti-cycling rule.

Small and exact enough for the handful of 5-variable linear programs
this package needs: strength maximization under the cost cap, and
phase-one feasibility tests for cone membership.  Problems are stated
as ``A x <= b`` with ``x >= 0``; equality systems are supported by the
feasibility-only entry point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "InfeasibleError",
    "UnboundedError",
    "LPResult",
    "simplex_lp",
    "solve_nonneg_system",
]

_TOL = 1e-9


class InfeasibleError(ValueError):
    """The constraint system admits no feasible point."""


class UnboundedError(ValueError):
    """The objective is unbounded over the feasible region."""


@dataclass(frozen=True)
class LPResult:
    value: float
    x: tuple[float, ...]


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and abs(tableau[r, col]) > 0.0:
            tableau[r] -= tableau[r, col] * tableau[row]


def _bland_solve(tableau: np.ndarray, basis: list[int], n_cols: int) -> None:
    """Run primal simplex to optimality on a feasible tableau (in place).

    Maximization convention: the last row holds reduced profits and the
    negated objective value in its right-hand cell.  Entering variable:
    largest reduced profit (ties toward the lowest index); after a long
    run of degenerate pivots the rule switches to Bland's lowest-index
    rule, which guarantees termination.  Leaving variable: minimum
    ratio, ties broken toward the lowest basis index.
    """
    m = tableau.shape[0] - 1
    degenerate_run = 0
    bland_after = 4 * (n_cols + m)
    while True:
        obj = tableau[-1, :n_cols]
        enter = -1
        if degenerate_run <= bland_after:
            best = _TOL
            for j in range(n_cols):
                if obj[j] > best:
                    best = obj[j]
                    enter = j
        else:
            for j in range(n_cols):
                if obj[j] > _TOL:
                    enter = j
                    break
        if enter < 0:
            return
        ratios = []
        for i in range(m):
            a = tableau[i, enter]
            if a > _TOL:
                ratios.append((tableau[i, -1] / a, basis[i], i))
        if not ratios:
            raise UnboundedError("objective unbounded along an edge")
        ratio, _, leave = min(ratios)
        degenerate_run = degenerate_run + 1 if ratio <= _TOL else 0
        _pivot(tableau, leave, enter)
        basis[leave] = enter


def simplex_lp(
    objective: Sequence[float],
    constraints: Sequence[tuple[Sequence[float], float]],
    sense: str = "max",
    canonical: bool = True,
) -> LPResult:
    """Optimize ``objective . x`` subject to ``row . x <= bound`` and x >= 0.

    Returns one optimal vertex.  Raises :class:`InfeasibleError` or
    :class:`UnboundedError` accordingly.

    Degenerate problems have many optimal vertices and the pivot path
    alone would pick an index-order-dependent one.  With ``canonical``
    the reported vertex is pinned by a lexicographic refinement:
    within the optimal face, variables carrying the objective are
    maximized one at a time (largest coefficient first), then the rest.
    """
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    cvec = np.asarray(objective, dtype=float)
    n = cvec.size
    if sense == "min":
        cvec = -cvec
    rows = [np.asarray(r, dtype=float) for r, _ in constraints]
    bounds = np.asarray([b for _, b in constraints], dtype=float)
    m = len(rows)
    amat = np.vstack(rows) if m else np.zeros((0, n))
    if m and amat.shape[1] != n:
        raise ValueError("constraint row length does not match objective")

    # Rows with negative bounds are flipped so every right-hand side is
    # nonnegative; flipped rows carry a surplus variable and need an
    # artificial one for the phase-one start.
    flip = bounds < 0.0
    amat = np.where(flip[:, None], -amat, amat) if m else amat
    bounds = np.abs(bounds)
    n_art = int(np.count_nonzero(flip))

    n_slack_cols = n + m
    n_cols = n_slack_cols + n_art
    tableau = np.zeros((m + 1, n_cols + 1))
    tableau[:m, :n] = amat
    art_col = n_slack_cols
    basis: list[int] = []
    for i in range(m):
        tableau[i, n + i] = -1.0 if flip[i] else 1.0
        if flip[i]:
            tableau[i, art_col] = 1.0
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(n + i)
        tableau[i, -1] = bounds[i]

    if n_art:
        # Phase one: maximize -(sum of artificials).  Expressed through
        # the starting basis, the reduced objective row is the sum of
        # the artificial rows with the artificial columns zeroed out.
        tableau[-1, :] = 0.0
        for i in range(m):
            if basis[i] >= n_slack_cols:
                tableau[-1, :] += tableau[i, :]
        tableau[-1, n_slack_cols:n_cols] = 0.0
        _bland_solve(tableau, basis, n_cols)
        if tableau[-1, -1] > _TOL:
            raise InfeasibleError("no feasible point")
        drop: list[int] = []
        for i in range(len(basis)):
            if basis[i] >= n_slack_cols:
                # Artificial still basic at zero: pivot it out, or drop
                # the row entirely if it has become redundant.
                row = tableau[i, :n_slack_cols]
                j = next((k for k in range(n_slack_cols) if abs(row[k]) > _TOL), None)
                if j is None:
                    drop.append(i)
                else:
                    _pivot(tableau, i, j)
                    basis[i] = j
        if drop:
            tableau = np.delete(tableau, drop, axis=0)
            keep = set(range(len(basis))) - set(drop)
            basis = [basis[i] for i in sorted(keep)]
        tableau = np.delete(tableau, np.s_[n_slack_cols:n_cols], axis=1)
        n_cols = n_slack_cols

    # Phase two with the real objective expressed in the current basis.
    tableau[-1, :] = 0.0
    tableau[-1, :n] = cvec
    for i in range(len(basis)):
        if basis[i] < n and abs(cvec[basis[i]]) > 0.0:
            tableau[-1, :] -= cvec[basis[i]] * tableau[i, :]
    _bland_solve(tableau, basis, n_cols)

    x = np.zeros(n_cols)
    for i in range(len(basis)):
        x[basis[i]] = tableau[i, -1]
    signed_value = float(-tableau[-1, -1])
    xout = x[:n]

    if canonical:
        xout = _canonical_vertex(cvec, constraints, signed_value, xout)

    value = -signed_value if sense == "min" else signed_value
    return LPResult(value=value + 0.0, x=tuple(float(v) + 0.0 for v in xout))


def _canonical_vertex(
    cvec: np.ndarray,
    constraints: Sequence[tuple[Sequence[float], float]],
    signed_value: float,
    fallback: np.ndarray,
) -> np.ndarray:
    """Lexicographic refinement over the optimal face.

    Sequentially maximizes each variable (objective support first, by
    descending |coefficient| then index) subject to the original
    constraints plus the pinned optimal value and previously pinned
    variables.  Skips a step quietly if the face is unbounded in that
    variable.
    """
    n = cvec.size
    order = sorted(range(n), key=lambda j: (-abs(cvec[j]), j))
    pinned: list[tuple[tuple[float, ...], float]] = list(
        (tuple(np.asarray(r, dtype=float)), float(b)) for r, b in constraints
    )
    pinned.append((tuple(-cvec), -signed_value))  # objective . x >= optimum
    best = fallback
    for j in order:
        unit = np.zeros(n)
        unit[j] = 1.0
        try:
            step = simplex_lp(unit, pinned, "max", canonical=False)
        except UnboundedError:
            return fallback
        except InfeasibleError:  # numerical slack exhausted; keep what we have
            return best
        best = np.asarray(step.x)
        pinned.append((tuple(-unit), -step.value))  # x_j >= attained max
    return best


def solve_nonneg_system(
    a_eq: Sequence[Sequence[float]],
    b_eq: Sequence[float],
    tol: float = _TOL,
) -> tuple[float, ...] | None:
    """Find x >= 0 with ``A x = b``, or None if no such x exists.

    Phase-one simplex: minimize the sum of artificial variables.  Used
    for conic membership tests.
    """
    amat = np.asarray(a_eq, dtype=float)
    bvec = np.asarray(b_eq, dtype=float)
    if amat.ndim != 2 or amat.shape[0] != bvec.size:
        raise ValueError("inconsistent system dimensions")
    m, n = amat.shape
    sign = np.where(bvec < 0.0, -1.0, 1.0)
    amat = amat * sign[:, None]
    bvec = bvec * sign

    n_cols = n + m
    tableau = np.zeros((m + 1, n_cols + 1))
    tableau[:m, :n] = amat
    tableau[:m, -1] = bvec
    basis = []
    for i in range(m):
        tableau[i, n + i] = 1.0
        basis.append(n + i)
    for i in range(m):
        tableau[-1, :] += tableau[i, :]
    tableau[-1, n:n_cols] = 0.0
    _bland_solve(tableau, basis, n_cols)
    if tableau[-1, -1] > tol:
        return None
    x = np.zeros(n_cols)
    for i in range(m):
        x[basis[i]] = tableau[i, -1]
    if np.any(x[n:] > tol):
        return None
    return tuple(float(v) for v in x[:n])

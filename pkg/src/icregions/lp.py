"""Small dense two-phase simplex over exact rationals.

Solves   maximize c.x   s.t.   A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0
with exact rational arithmetic throughout, so feasibility and optimality
answers are proofs, not tolerance judgments.  Bland's rule guarantees
termination.  Problem sizes here are tiny (tens of rows).  gmpy2's mpq is
used for tableau arithmetic when available (identical semantics to
``fractions.Fraction``, much faster); results are returned as Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

ZERO = _Q(0)
ONE = _Q(1)


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None
    x: list | None


def _pivot(T, basis, r, c):
    piv = T[r][c]
    T[r] = [v / piv for v in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            coef = row[c]
            T[i] = [v - coef * w for v, w in zip(row, T[r])]
    basis[r] = c


def _simplex_phase(T, basis, ncols):
    """Maximize the objective stored in the last tableau row (Bland's rule)."""
    while True:
        obj = T[-1]
        col = next((j for j in range(ncols) if obj[j] > 0), None)
        if col is None:
            return "optimal"
        best_r, best_ratio = None, None
        for i in range(len(T) - 1):
            if T[i][col] > 0:
                ratio = T[i][-1] / T[i][col]
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_r])):
                    best_r, best_ratio = i, ratio
        if best_r is None:
            return "unbounded"
        _pivot(T, basis, best_r, col)


def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None) -> LPResult:
    """Maximize c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0."""
    A_ub = [[_Q(v) for v in row] for row in (A_ub or [])]
    b_ub = [_Q(v) for v in (b_ub or [])]
    A_eq = [[_Q(v) for v in row] for row in (A_eq or [])]
    b_eq = [_Q(v) for v in (b_eq or [])]
    c = [_Q(v) for v in c]
    n = len(c)
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq

    # columns: n structural | m_ub slacks | m artificials | rhs
    nslack = m_ub
    nart = m
    width = n + nslack + nart + 1
    T = []
    basis = []
    for i in range(m_ub):
        row = [ZERO] * width
        sign = ONE if b_ub[i] >= 0 else -ONE
        for j in range(n):
            row[j] = sign * A_ub[i][j]
        row[n + i] = sign  # slack
        row[n + nslack + i] = ONE
        row[-1] = sign * b_ub[i]
        T.append(row)
        basis.append(n + nslack + i)
    for k in range(m_eq):
        i = m_ub + k
        row = [ZERO] * width
        sign = ONE if b_eq[k] >= 0 else -ONE
        for j in range(n):
            row[j] = sign * A_eq[k][j]
        row[n + nslack + i] = ONE
        row[-1] = sign * b_eq[k]
        T.append(row)
        basis.append(n + nslack + i)

    # phase 1: maximize -(sum of artificials)
    obj = [ZERO] * width
    for row in T:
        for j in range(n + nslack):
            obj[j] += row[j]
        obj[-1] += row[-1]
    T.append(obj)
    _simplex_phase(T, basis, n + nslack)
    if T[-1][-1] != 0:
        return LPResult("infeasible", None, None)
    # drive any artificial still in the basis out (degenerate rows)
    for i in range(m):
        if basis[i] >= n + nslack:
            col = next((j for j in range(n + nslack) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)
    T.pop()

    # phase 2
    obj = [ZERO] * width
    for j in range(n):
        obj[j] = c[j]
    for i in range(m):
        if basis[i] < n and obj[basis[i]] != 0:
            coef = obj[basis[i]]
            obj = [v - coef * w for v, w in zip(obj, T[i])]
    T.append(obj)
    status = _simplex_phase(T, basis, n + nslack)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    return LPResult("optimal", _to_fraction(-T[-1][-1]),
                    [_to_fraction(v) for v in x])


def feasible(A_ub=None, b_ub=None, A_eq=None, b_eq=None) -> bool:
    """Exact feasibility of {x >= 0 : A_ub x <= b_ub, A_eq x = b_eq}."""
    ncols = 0
    for rows in (A_ub or []), (A_eq or []):
        for r in rows:
            ncols = max(ncols, len(r))
    res = solve_lp([ZERO] * ncols, A_ub, b_ub, A_eq, b_eq)
    return res.status == "optimal"


def _to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))

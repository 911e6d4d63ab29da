"""Exact-rational half-space polyhedra over the rate variables.

Term values measured in bits are snapped once to rationals with denominator
2**48; everything downstream (binding, vertex enumeration, containment,
area) is exact.  Cross-region comparisons that combine independently
snapped values use a generous eps of 2**-30.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lp import solve_lp
from .linsys import LinearSystem

F = Fraction

SNAP_DEN = 2**48
DEFAULT_EPS = F(1, 2**30)


class UnboundedRegionError(ValueError):
    pass


def snap_terms(term_values: dict) -> dict:
    """Round each term (bits) to the nearest multiple of 2**-48, floored at 0."""
    out = {}
    for k, v in term_values.items():
        r = F(round(v * SNAP_DEN), SNAP_DEN)
        out[k] = r if r > 0 else F(0)
    return out


@dataclass(frozen=True)
class HPoly:
    """Intersection of half-spaces a.x <= b with implicit x >= 0."""

    dims: tuple  # rate-variable names, fixing coordinate order
    rows: tuple  # ((coeffs aligned with dims), Fraction rhs)

    def contains_point(self, point, eps=F(0)) -> bool:
        if any(x < -eps for x in point):
            return False
        return all(
            sum(c * x for c, x in zip(lhs, point)) <= rhs + eps
            for lhs, rhs in self.rows
        )

    def maximize(self, objective):
        """Exact max of objective.x over the polytope (x >= 0 implicit)."""
        res = solve_lp(
            [F(v) for v in objective],
            A_ub=[list(lhs) for lhs, _ in self.rows],
            b_ub=[rhs for _, rhs in self.rows],
        )
        return res


def bind(system: LinearSystem, binding: dict) -> HPoly:
    """Evaluate every rhs combo at the binding, yielding a numeric polytope."""
    dims = tuple(system.rate_vars)
    rows = []
    for ineq in system.inequalities:
        lhs = ineq.lhs_dict()
        try:
            rhs = ineq.rhs.evaluate(binding)
        except KeyError as exc:
            raise ValueError(f"binding is missing term symbol {exc.args[0]!r}") from None
        rows.append((tuple(lhs.get(v, F(0)) for v in dims), rhs))
    return HPoly(dims, tuple(rows))


def _all_rows(p: HPoly):
    """Explicit rows plus the nonnegativity rows -x_i <= 0."""
    n = len(p.dims)
    rows = list(p.rows)
    for i in range(n):
        rows.append((tuple(F(-1) if j == i else F(0) for j in range(n)), F(0)))
    return rows


def vertices2(p: HPoly):
    """Exact vertex list of a bounded 2-D polytope.

    All pairwise intersections of constraint lines are filtered by
    feasibility, then hull-ordered counterclockwise starting at the
    lexicographically smallest vertex.  Empty region -> empty list.
    """
    if len(p.dims) != 2:
        raise ValueError("vertices2 requires a 2-D polytope")
    feas = p.maximize([F(0), F(0)])
    if feas.status == "infeasible":
        return []
    for obj in ([F(1), F(0)], [F(0), F(1)]):
        if p.maximize(obj).status != "optimal":
            raise UnboundedRegionError("2-D region is unbounded; missing a box constraint")
    rows = _all_rows(p)
    pts = set()
    for i in range(len(rows)):
        (a1, b1), c1 = rows[i]
        for j in range(i + 1, len(rows)):
            (a2, b2), c2 = rows[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x = (c1 * b2 - c2 * b1) / det
            y = (a1 * c2 - a2 * c1) / det
            if p.contains_point((x, y)):
                pts.add((x, y))
    if not pts:
        return []
    return _hull_ccw(sorted(pts))


def _hull_ccw(pts):
    """Andrew monotone chain; returns CCW hull starting at lex-smallest."""
    if len(pts) <= 2:
        return list(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for pt in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    upper = []
    for pt in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    hull = lower[:-1] + upper[:-1]
    if not hull:  # fully collinear input
        hull = [pts[0], pts[-1]]
    # monotone chain already starts at the lexicographically smallest point
    return hull


def area2(p: HPoly) -> Fraction:
    """Exact shoelace area of the 2-D region (0 for empty/degenerate)."""
    vs = vertices2(p)
    if len(vs) < 3:
        return F(0)
    total = F(0)
    for (x1, y1), (x2, y2) in zip(vs, vs[1:] + vs[:1]):
        total += x1 * y2 - x2 * y1
    return total / 2


def contains(outer: HPoly, inner: HPoly, eps=F(0)) -> bool:
    """True iff inner is inside outer slackened by eps (exact test).

    2-D uses vertex enumeration; higher dimensions maximize each outer
    constraint over inner via exact LP."""
    if set(outer.dims) != set(inner.dims):
        raise ValueError("polytopes are over different rate variables")
    if outer.dims != inner.dims:
        perm = [inner.dims.index(d) for d in outer.dims]
        inner = HPoly(outer.dims,
                      tuple((tuple(lhs[i] for i in perm), rhs) for lhs, rhs in inner.rows))
    eps = F(eps)
    if len(outer.dims) == 2:
        return all(outer.contains_point(v, eps) for v in vertices2(inner))
    for lhs, rhs in outer.rows:
        res = inner.maximize(list(lhs))
        if res.status == "infeasible":
            return True  # empty inner
        if res.status == "unbounded":
            return False
        if res.value > rhs + eps:
            return False
    return True


def poly_equal(p: HPoly, q: HPoly, eps=F(0)) -> bool:
    return contains(p, q, eps) and contains(q, p, eps)


def fm_eliminate_numeric(p: HPoly, dim: str) -> HPoly:
    """Exact Fourier-Motzkin projection of a numeric polytope.

    The implicit dim >= 0 row participates as a lower bound."""
    if dim not in p.dims:
        raise ValueError(f"{dim!r} is not a coordinate of this polytope")
    k = p.dims.index(dim)
    keep, uppers, lowers = [], [], []
    rows = list(p.rows)
    n = len(p.dims)
    rows.append((tuple(F(-1) if j == k else F(0) for j in range(n)), F(0)))
    for lhs, rhs in rows:
        c = lhs[k]
        if c == 0:
            keep.append((lhs, rhs))
        elif c > 0:
            uppers.append((lhs, rhs))
        else:
            lowers.append((lhs, rhs))
    new = [( _drop(lhs, k), rhs) for lhs, rhs in keep]
    for ulhs, urhs in uppers:
        a = ulhs[k]
        for llhs, lrhs in lowers:
            b = -llhs[k]
            comb = tuple(b * u + a * l for u, l in zip(ulhs, llhs))
            new.append((_drop(comb, k), b * urhs + a * lrhs))
    dims = tuple(d for d in p.dims if d != dim)
    # drop vacuous 0 <= rhs rows and exact duplicates
    dedup = []
    seen = set()
    for lhs, rhs in new:
        if all(c == 0 for c in lhs):
            if rhs < 0:
                raise ValueError("projection produced an infeasible constant row")
            continue
        key = _canon_row(lhs, rhs)
        if key not in seen:
            seen.add(key)
            dedup.append(key)
    return HPoly(dims, tuple(dedup))


def substitute_rate_sums_numeric(p: HPoly) -> HPoly:
    """Numeric analogue of the symbolic S_i := R_i - T_i substitution."""
    if p.dims != ("S1", "T1", "S2", "T2"):
        raise ValueError("expected a quadruple polytope over (S1, T1, S2, T2)")
    dims = ("R1", "T1", "R2", "T2")
    rows = []
    for (s1, t1, s2, t2), rhs in p.rows:
        rows.append(((s1, t1 - s1, s2, t2 - s2), rhs))
    rows.append(((F(-1), F(1), F(0), F(0)), F(0)))  # T1 <= R1
    rows.append(((F(0), F(0), F(-1), F(1)), F(0)))  # T2 <= R2
    return HPoly(dims, tuple(rows))


def _drop(t, k):
    return t[:k] + t[k + 1:]


def _canon_row(lhs, rhs):
    from math import gcd, lcm

    vals = [v for v in lhs if v != 0] + ([rhs] if rhs != 0 else [])
    dens = [v.denominator for v in vals]
    nums = [abs(v.numerator) for v in vals]
    scale = F(lcm(*dens), gcd(*nums)) if len(nums) > 1 else F(dens[0], nums[0])
    return (tuple(v * scale for v in lhs), rhs * scale)

"""Symbolic linear-inequality systems over rate variables.

An ``Inequality`` is   sum_v lhs[v] * v  <=  Combo   where the right-hand
side is a formal rational combination of the information-term symbols.
Composite symbols (B, C, F) are expanded into base + rho at construction,
so all arithmetic happens in the 16-symbol base space.

``fm_eliminate`` is exact Fourier-Motzkin projection; ``prune_redundant``
removes an inequality only when an exact rational LP certifies it as a
nonnegative combination of the remaining inequalities, the rate-variable
nonnegativity facts, the term-symbol nonnegativity facts and the supplied
axioms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .lp import feasible
from .terms import BASE_SYMBOLS, COMPOSITE_EXPANSION

RATE_VARS = ("S1", "T1", "S2", "T2", "R1", "R2")

F = Fraction


def _clean(d: dict) -> dict:
    return {k: F(v) for k, v in d.items() if F(v) != 0}


@dataclass(frozen=True)
class Combo:
    """Formal rational combination of term symbols plus a constant."""

    coeffs: tuple = ()
    const: Fraction = F(0)

    @staticmethod
    def of(d: dict | None = None, const=0) -> "Combo":
        d = dict(d or {})
        const = F(const)
        for comp, (base, rho) in COMPOSITE_EXPANSION.items():
            if comp in d:
                c = F(d.pop(comp))
                d[base] = F(d.get(base, 0)) + c
                d[rho] = F(d.get(rho, 0)) + c
        d = _clean(d)
        unknown = set(d) - set(BASE_SYMBOLS)
        if unknown:
            raise ValueError(f"unknown term symbols: {sorted(unknown)}")
        return Combo(tuple(sorted(d.items())), const)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, other: "Combo") -> "Combo":
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, F(0)) + v
        return Combo(tuple(sorted(_clean(d).items())), self.const + other.const)

    def scale(self, s) -> "Combo":
        s = F(s)
        return Combo(tuple((k, v * s) for k, v in self.coeffs), self.const * s)

    def __neg__(self) -> "Combo":
        return self.scale(-1)

    def evaluate(self, binding: dict) -> Fraction:
        return sum((F(binding[k]) * v for k, v in self.coeffs), self.const)

    def is_zero(self) -> bool:
        return not self.coeffs and self.const == 0


@dataclass(frozen=True)
class Inequality:
    """lhs . rates <= rhs (rhs a Combo).  All-zero lhs is a pure term-fact."""

    lhs: tuple  # sorted ((var, Fraction), ...)
    rhs: Combo

    @staticmethod
    def of(lhs: dict, rhs: Combo | dict, const=0) -> "Inequality":
        if not isinstance(rhs, Combo):
            rhs = Combo.of(rhs, const)
        lhs = _clean(lhs)
        unknown = set(lhs) - set(RATE_VARS)
        if unknown:
            raise ValueError(f"unknown rate variables: {sorted(unknown)}")
        return Inequality(tuple(sorted(lhs.items())), rhs)

    def lhs_dict(self) -> dict:
        return dict(self.lhs)

    def coeff(self, v) -> Fraction:
        return dict(self.lhs).get(v, F(0))

    def is_term_fact(self) -> bool:
        return not self.lhs

    def canonical(self) -> "Inequality":
        """Scale by the unique positive rational giving integer content 1."""
        nums, dens = [], []
        for _, v in list(self.lhs) + list(self.rhs.coeffs) + [(None, self.rhs.const)]:
            if v != 0:
                nums.append(abs(v.numerator))
                dens.append(v.denominator)
        if not nums:
            return self
        scale = F(lcm(*dens), gcd(*nums)) if len(nums) > 1 else F(dens[0], nums[0])
        return Inequality(tuple((k, v * scale) for k, v in self.lhs),
                          self.rhs.scale(scale))

    def key(self):
        c = self.canonical()
        return (c.lhs, c.rhs.coeffs, c.rhs.const)


@dataclass(frozen=True)
class LinearSystem:
    """Inequalities plus implicit rate nonnegativity and pure term-facts."""

    rate_vars: tuple
    inequalities: tuple
    term_facts: tuple = field(default=())  # Combos asserted >= 0

    @staticmethod
    def of(rate_vars, inequalities, term_facts=()) -> "LinearSystem":
        seen, ineqs, facts = set(), [], []
        for ineq in inequalities:
            if ineq.is_term_fact():
                facts.append(ineq.rhs)
                continue
            k = ineq.key()
            if k not in seen:
                seen.add(k)
                ineqs.append(ineq.canonical())
        fseen, ffacts = set(), []
        for c in list(term_facts) + facts:
            if c.is_zero():
                continue
            if (c.coeffs, c.const) not in fseen:
                fseen.add((c.coeffs, c.const))
                ffacts.append(c)
        ineqs.sort(key=lambda i: i.key())
        return LinearSystem(tuple(rate_vars), tuple(ineqs), tuple(ffacts))


def fm_eliminate(system: LinearSystem, v: str) -> LinearSystem:
    """Project out rate variable ``v`` (its implicit v >= 0 supplies a lower
    bound); pure term-facts generated by pairing are kept as facts."""
    keep, uppers, lowers = [], [], []
    for ineq in system.inequalities:
        c = ineq.coeff(v)
        if c == 0:
            keep.append(ineq)
        elif c > 0:
            uppers.append(ineq)
        else:
            lowers.append(ineq)
    if v in system.rate_vars:
        # -v <= 0
        lowers.append(Inequality.of({v: F(-1)}, Combo.of()))
    new = list(keep)
    for up in uppers:
        a = up.coeff(v)
        for lo in lowers:
            b = -lo.coeff(v)
            lhs = up.lhs_dict()
            lo_lhs = lo.lhs_dict()
            combined = {k: b * val for k, val in lhs.items()}
            for k, val in lo_lhs.items():
                combined[k] = combined.get(k, F(0)) + a * val
            combined.pop(v, None)
            new.append(Inequality.of(combined, up.rhs.scale(b) + lo.rhs.scale(a)))
    rv = tuple(r for r in system.rate_vars if r != v)
    return LinearSystem.of(rv, new, system.term_facts)


def substitute_rate_sums(system: LinearSystem) -> LinearSystem:
    """Rewrite the (S1,T1,S2,T2) system over (R1,T1,R2,T2) via R_i = S_i + T_i.

    S_i >= 0 materializes as T_i <= R_i."""
    for ineq in system.inequalities:
        if ineq.coeff("R1") or ineq.coeff("R2"):
            raise ValueError("system already mentions R variables")
    out = []
    for ineq in system.inequalities:
        lhs = ineq.lhs_dict()
        for s, r, t in (("S1", "R1", "T1"), ("S2", "R2", "T2")):
            c = lhs.pop(s, F(0))
            if c:
                lhs[r] = lhs.get(r, F(0)) + c
                lhs[t] = lhs.get(t, F(0)) - c
        out.append(Inequality.of(lhs, ineq.rhs))
    out.append(Inequality.of({"T1": F(1), "R1": F(-1)}, Combo.of()))
    out.append(Inequality.of({"T2": F(1), "R2": F(-1)}, Combo.of()))
    return LinearSystem.of(("R1", "T1", "R2", "T2"), out, system.term_facts)


# --- axioms -----------------------------------------------------------------

def _side_axioms(i: int) -> list:
    a, b, c, d, e, f, g, rho = (f"a{i}", f"b{i}", f"c{i}", f"d{i}", f"e{i}",
                                f"f{i}", f"g{i}", f"rho{i}")
    raw = [
        # chain-rule monotonicity (true for every joint)
        {d: 1, a: -1}, {d: 1, b: -1}, {e: 1, a: -1}, {e: 1, c: -1},
        {f: 1, b: -1}, {f: 1, c: -1}, {g: 1, d: -1}, {g: 1, e: -1},
        {g: 1, f: -1},
        # true for every factorization with (U_i,W_i) independent of W_j
        # given Q (the correlated-input form and all its special cases)
        {a: 1, b: 1, rho: 1, d: -1},            # d <= a + b + rho
        {a: 1, c: 1, e: -1},                    # e <= a + c
        {b: 1, c: 1, f: -1},                    # f <= b + c
        {c: 1, d: 1, g: -1},                    # g <= c + d
        {b: 1, e: 1, rho: 1, g: -1},            # g <= b + e + rho
        {a: 1, f: 1, rho: 1, g: -1},            # g <= a + f + rho
        {d: 1, f: 1, b: -1, g: -1},             # g + b <= d + f
        {d: 1, e: 1, a: -1, g: -1},             # g + a <= d + e
    ]
    return [Combo.of(d_) for d_ in raw]


def _indep_axioms(i: int) -> list:
    """Facts that additionally need U_i independent of W_i given Q."""
    c, e, f, g, rho = f"c{i}", f"e{i}", f"f{i}", f"g{i}", f"rho{i}"
    return [
        Combo.of({e: 1, f: 1, c: -1, g: -1}),   # c + g <= e + f
        Combo.of({e: 1, c: -1, rho: -1}),       # C <= e
        Combo.of({rho: -1}),                    # rho = 0 (with rho >= 0)
    ]


AXIOMS_CHAIN = tuple(_side_axioms(1) + _side_axioms(2))
AXIOMS_HK_INDEP = AXIOMS_CHAIN + tuple(_indep_axioms(1) + _indep_axioms(2))

AXIOM_SETS = {"chain": AXIOMS_CHAIN, "hk-indep": AXIOMS_HK_INDEP}


# --- redundancy pruning -----------------------------------------------------

def _implied_by(target: Inequality, others, axioms, rate_vars,
                used_out: list | None = None) -> bool:
    """Exact certificate: target = nonneg. combination of others + facts."""
    symbols = list(BASE_SYMBOLS)
    rows = {v: [] for v in rate_vars}
    srows = {s: [] for s in symbols}
    crow = []

    def add_column(lhs: dict, rhs: Combo):
        for v in rate_vars:
            rows[v].append(lhs.get(v, F(0)))
        rd = rhs.as_dict()
        for s in symbols:
            srows[s].append(rd.get(s, F(0)))
        crow.append(rhs.const)

    cols = []
    for o in others:
        add_column(o.lhs_dict(), o.rhs)
        cols.append(("ineq", o))
    for v in rate_vars:  # -v <= 0
        add_column({v: F(-1)}, Combo.of())
        cols.append(("ratefact", v))
    for ax in axioms:  # 0 <= ax  contributes +ax to the certified rhs
        add_column({}, ax)
        cols.append(("axiom", ax))
    for s in symbols:  # 0 <= s
        add_column({}, Combo.of({s: 1}))
        cols.append(("symbol", s))
    add_column({}, Combo.of({}, 1))  # nonnegative constant slack
    cols.append(("const", None))

    A_eq, b_eq = [], []
    tl = target.lhs_dict()
    td = target.rhs.as_dict()
    for v in rate_vars:
        A_eq.append(rows[v])
        b_eq.append(tl.get(v, F(0)))
    for s in symbols:
        A_eq.append(srows[s])
        b_eq.append(td.get(s, F(0)))
    A_eq.append(crow)
    b_eq.append(target.rhs.const)
    ok = feasible(A_eq=A_eq, b_eq=b_eq)
    if ok and used_out is not None:
        used_out.append(cols)  # caller may re-solve for the certificate
    return ok


def prune_redundant(system: LinearSystem, axioms) -> LinearSystem:
    """Remove every inequality provably implied by the rest plus axioms.

    Inequalities are visited in canonical order, so the result is
    deterministic."""
    axioms = tuple(axioms) + system.term_facts
    remaining = list(system.inequalities)
    for ineq in list(system.inequalities):
        others = [o for o in remaining if o is not ineq]
        if _implied_by(ineq, others, axioms, system.rate_vars):
            remaining = others
    return LinearSystem.of(system.rate_vars, remaining, system.term_facts)


def prune_report(system: LinearSystem, axioms) -> dict:
    """Like prune_redundant but records which inequalities were removed."""
    axioms_all = tuple(axioms) + system.term_facts
    remaining = list(system.inequalities)
    removed = []
    for ineq in list(system.inequalities):
        others = [o for o in remaining if o is not ineq]
        if _implied_by(ineq, others, axioms_all, system.rate_vars):
            remaining = others
            removed.append(ineq)
    return {
        "pruned": LinearSystem.of(system.rate_vars, remaining, system.term_facts),
        "removed": tuple(removed),
    }


def substitute_zero(system: LinearSystem, symbols) -> LinearSystem:
    """Set the given term symbols to zero in every combo (e.g. rho_i := 0,
    which turns the composite B/C/F bounds back into b/c/f)."""
    symbols = set(symbols)

    def strip(combo: Combo) -> Combo:
        return Combo(tuple((k, v) for k, v in combo.coeffs if k not in symbols),
                     combo.const)

    ineqs = [Inequality(i.lhs, strip(i.rhs)) for i in system.inequalities]
    facts = [strip(c) for c in system.term_facts]
    return LinearSystem.of(system.rate_vars, ineqs, facts)


def system_equal(sys_a: LinearSystem, sys_b: LinearSystem):
    """Canonical-set equality plus a diff of one-sided inequalities."""
    if set(sys_a.rate_vars) != set(sys_b.rate_vars):
        raise ValueError("systems are over different rate variables")
    ka = {i.key(): i for i in sys_a.inequalities}
    kb = {i.key(): i for i in sys_b.inequalities}
    only_a = tuple(ka[k] for k in sorted(ka.keys() - kb.keys()))
    only_b = tuple(kb[k] for k in sorted(kb.keys() - ka.keys()))
    return (not only_a and not only_b), {"only_a": only_a, "only_b": only_b}


def derive_region(system_id: str, axioms_id: str = "chain") -> LinearSystem:
    """Substitute R_i = S_i + T_i, eliminate T1 and T2, then prune.

    system_id: one of hk, hk-mod, cmg, hod (the bundled quadruple systems);
    hk-mod drops the two cross T-bounds from the HK system."""
    from . import regions

    quad = {
        "hk": "HK_Q",
        "hk-mod": "HK_Q_MODIFIED",
        "cmg": "CMG_Q",
        "hod": "HOD_Q",
    }
    if system_id not in quad:
        raise ValueError(f"unknown system id {system_id!r}")
    if axioms_id not in AXIOM_SETS:
        raise ValueError(f"unknown axiom set {axioms_id!r}")
    sys0 = regions.build_system(quad[system_id])
    sys1 = substitute_rate_sums(sys0)
    sys2 = fm_eliminate(fm_eliminate(sys1, "T1"), "T2")
    return prune_redundant(sys2, AXIOM_SETS[axioms_id])


# --- JSON interchange -------------------------------------------------------

def _frac_to_obj(v: Fraction):
    return int(v) if v.denominator == 1 else {"num": v.numerator, "den": v.denominator}


def _obj_to_frac(o) -> Fraction:
    if isinstance(o, dict):
        return F(o["num"], o["den"])
    return F(o)


def system_to_json(system: LinearSystem) -> dict:
    return {
        "rate_vars": list(system.rate_vars),
        "inequalities": [
            {
                "lhs": {k: _frac_to_obj(v) for k, v in i.lhs},
                "rhs": {k: _frac_to_obj(v) for k, v in i.rhs.coeffs},
                "const": _frac_to_obj(i.rhs.const),
            }
            for i in system.inequalities
        ],
        "term_facts": [
            {
                "coeffs": {k: _frac_to_obj(v) for k, v in c.coeffs},
                "const": _frac_to_obj(c.const),
            }
            for c in system.term_facts
        ],
    }


def system_from_json(d: dict) -> LinearSystem:
    ineqs = [
        Inequality.of(
            {k: _obj_to_frac(v) for k, v in i["lhs"].items()},
            Combo.of({k: _obj_to_frac(v) for k, v in i["rhs"].items()},
                     _obj_to_frac(i.get("const", 0))),
        )
        for i in d["inequalities"]
    ]
    facts = [
        Combo.of({k: _obj_to_frac(v) for k, v in c["coeffs"].items()},
                 _obj_to_frac(c.get("const", 0)))
        for c in d.get("term_facts", [])
    ]
    return LinearSystem.of(tuple(d["rate_vars"]), ineqs, facts)

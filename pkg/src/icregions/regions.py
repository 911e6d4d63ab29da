"""Golden inequality systems for the named achievable rate regions.

These systems are hard-coded data, not derived, so the Fourier-Motzkin
pipeline has an independent target to reproduce.  Quadruple systems are
over (S1, T1, S2, T2); rate-pair systems over (R1, R2).
"""

from __future__ import annotations

from .dist import FactorSpec, Form, build_joint
from .linsys import Combo, Inequality, LinearSystem
from .polytope import HPoly, bind, snap_terms
from .terms import eval_terms

QUAD_VARS = ("S1", "T1", "S2", "T2")
PAIR_VARS = ("R1", "R2")

REGION_IDS = (
    "HK_Q", "HK_Q_MODIFIED", "HK_R", "HK_R_MODIFIED",
    "CMG_Q", "CMG_R", "COMPACT_R", "HOD_Q", "HOD_R",
)


def _sys(rate_vars, rows, term_facts=()):
    return LinearSystem.of(
        rate_vars, [Inequality.of(lhs, rhs) for lhs, rhs in rows], term_facts)


# Theorem-1-form distributions make U_i and W_i independent given Q, so the
# HK quadruple systems carry rho_i = 0 as intrinsic term-facts.
_RHO_ZERO = (Combo.of({"rho1": -1}), Combo.of({"rho2": -1}))


def _hk_q_rows(b="b", c="c", f="f"):
    """Theorem-1-shaped quadruple rows; the Hodtani variant swaps in the
    composite B/C/F bounds on the T rates."""
    return [
        ({"S1": 1}, {"a1": 1}),
        ({"T1": 1}, {f"{b}1": 1}),
        ({"T2": 1}, {f"{c}1": 1}),
        ({"S1": 1, "T1": 1}, {"d1": 1}),
        ({"S1": 1, "T2": 1}, {"e1": 1}),
        ({"T1": 1, "T2": 1}, {f"{f}1": 1}),
        ({"S1": 1, "T1": 1, "T2": 1}, {"g1": 1}),
        ({"S2": 1}, {"a2": 1}),
        ({"T2": 1}, {f"{b}2": 1}),
        ({"T1": 1}, {f"{c}2": 1}),
        ({"S2": 1, "T2": 1}, {"d2": 1}),
        ({"S2": 1, "T1": 1}, {"e2": 1}),
        ({"T1": 1, "T2": 1}, {f"{f}2": 1}),
        ({"S2": 1, "T1": 1, "T2": 1}, {"g2": 1}),
    ]


_CMG_Q_ROWS = [
    ({"S1": 1}, {"a1": 1}),
    ({"S1": 1, "T1": 1}, {"d1": 1}),
    ({"S1": 1, "T2": 1}, {"e1": 1}),
    ({"S1": 1, "T1": 1, "T2": 1}, {"g1": 1}),
    ({"S2": 1}, {"a2": 1}),
    ({"S2": 1, "T2": 1}, {"d2": 1}),
    ({"S2": 1, "T1": 1}, {"e2": 1}),
    ({"S2": 1, "T1": 1, "T2": 1}, {"g2": 1}),
]

_HK_R_ROWS = [
    ({"R1": 1}, {"d1": 1}),
    ({"R1": 1}, {"a1": 1, "c2": 1}),
    ({"R2": 1}, {"d2": 1}),
    ({"R2": 1}, {"a2": 1, "c1": 1}),
    ({"R1": 1, "R2": 1}, {"a1": 1, "g2": 1}),
    ({"R1": 1, "R2": 1}, {"a2": 1, "g1": 1}),
    ({"R1": 1, "R2": 1}, {"e1": 1, "e2": 1}),
    ({"R1": 2, "R2": 1}, {"a1": 1, "g1": 1, "e2": 1}),
    ({"R1": 1, "R2": 2}, {"a2": 1, "g2": 1, "e1": 1}),
]

# The two inequalities that are redundant given independent U_i, W_i.
HK_R_REDUNDANT = (
    Inequality.of({"R1": 2, "R2": 1}, {"a1": 2, "e2": 1, "f2": 1}),
    Inequality.of({"R1": 1, "R2": 2}, {"a2": 2, "e1": 1, "f1": 1}),
)

_HK_R_MODIFIED_ROWS = [
    ({"R1": 1}, {"d1": 1}),
    ({"R1": 1}, {"a1": 1, "e2": 1}),
    ({"R1": 1}, {"a1": 1, "f2": 1}),
    ({"R2": 1}, {"d2": 1}),
    ({"R2": 1}, {"a2": 1, "e1": 1}),
    ({"R2": 1}, {"a2": 1, "f1": 1}),
    ({"R1": 1, "R2": 1}, {"a2": 1, "g1": 1}),
    ({"R1": 1, "R2": 1}, {"a1": 1, "g2": 1}),
    ({"R1": 1, "R2": 1}, {"e1": 1, "e2": 1}),
    ({"R1": 2, "R2": 1}, {"a1": 1, "g1": 1, "e2": 1}),
    ({"R1": 2, "R2": 1}, {"a1": 2, "e2": 1, "f2": 1}),
    ({"R1": 1, "R2": 2}, {"a2": 1, "g2": 1, "e1": 1}),
    ({"R1": 1, "R2": 2}, {"a2": 2, "e1": 1, "f1": 1}),
]

_CMG_R_ROWS = [
    ({"R1": 1}, {"d1": 1}),
    ({"R1": 1}, {"a1": 1, "e2": 1}),
    ({"R2": 1}, {"d2": 1}),
    ({"R2": 1}, {"a2": 1, "e1": 1}),
    ({"R1": 1, "R2": 1}, {"a1": 1, "g2": 1}),
    ({"R1": 1, "R2": 1}, {"a2": 1, "g1": 1}),
    ({"R1": 1, "R2": 1}, {"e1": 1, "e2": 1}),
    ({"R1": 2, "R2": 1}, {"a1": 1, "g1": 1, "e2": 1}),
    ({"R1": 1, "R2": 2}, {"a2": 1, "g2": 1, "e1": 1}),
]

_COMPACT_R_ROWS = [
    ({"R1": 1}, {"d1": 1}),
    ({"R2": 1}, {"d2": 1}),
    ({"R1": 1, "R2": 1}, {"a1": 1, "g2": 1}),
    ({"R1": 1, "R2": 1}, {"a2": 1, "g1": 1}),
    ({"R1": 1, "R2": 1}, {"e1": 1, "e2": 1}),
    ({"R1": 2, "R2": 1}, {"a1": 1, "g1": 1, "e2": 1}),
    ({"R1": 1, "R2": 2}, {"a2": 1, "g2": 1, "e1": 1}),
]

_HOD_R_ROWS = [
    ({"R1": 1}, {"d1": 1}),
    ({"R1": 1}, {"a1": 1, "C2": 1}),
    ({"R1": 1}, {"a1": 1, "e2": 1}),
    ({"R2": 1}, {"d2": 1}),
    ({"R2": 1}, {"a2": 1, "C1": 1}),
    ({"R2": 1}, {"a2": 1, "e1": 1}),
    ({"R1": 1, "R2": 1}, {"a2": 1, "g1": 1}),
    ({"R1": 1, "R2": 1}, {"a1": 1, "g2": 1}),
    ({"R1": 1, "R2": 1}, {"e1": 1, "e2": 1}),
    ({"R1": 2, "R2": 1}, {"a1": 1, "g1": 1, "e2": 1}),
    ({"R1": 2, "R2": 1}, {"a1": 2, "e2": 1, "F2": 1}),
    ({"R1": 1, "R2": 2}, {"a2": 1, "g2": 1, "e1": 1}),
    ({"R1": 1, "R2": 2}, {"a2": 2, "e1": 1, "F1": 1}),
]


def build_system(region_id: str) -> LinearSystem:
    """Return the named golden system (verbatim inequality list)."""
    if region_id == "HK_Q":
        return _sys(QUAD_VARS, _hk_q_rows(), _RHO_ZERO)
    if region_id == "HK_Q_MODIFIED":
        dropped = (({"T2": 1}, {"c1": 1}), ({"T1": 1}, {"c2": 1}))
        rows = [r for r in _hk_q_rows() if r not in dropped]
        return _sys(QUAD_VARS, rows, _RHO_ZERO)
    if region_id == "HOD_Q":
        return _sys(QUAD_VARS, _hk_q_rows(b="B", c="C", f="F"))
    if region_id == "CMG_Q":
        return _sys(QUAD_VARS, _CMG_Q_ROWS)
    if region_id == "HK_R":
        return _sys(PAIR_VARS, _HK_R_ROWS)
    if region_id == "HK_R_MODIFIED":
        return _sys(PAIR_VARS, _HK_R_MODIFIED_ROWS)
    if region_id == "CMG_R":
        return _sys(PAIR_VARS, _CMG_R_ROWS)
    if region_id == "COMPACT_R":
        return _sys(PAIR_VARS, _COMPACT_R_ROWS)
    if region_id == "HOD_R":
        return _sys(PAIR_VARS, _HOD_R_ROWS)
    raise ValueError(f"unknown region id {region_id!r}")


def hk_r_with_redundant() -> LinearSystem:
    """The eleven-inequality rate-pair system before independence pruning."""
    base = build_system("HK_R")
    return LinearSystem.of(PAIR_VARS, list(base.inequalities) + list(HK_R_REDUNDANT))


_ALLOWED_FORMS = {
    "HK_Q": {Form.HK2},
    "HK_Q_MODIFIED": {Form.HK2},
    "HK_R": {Form.HK2},
    "HK_R_MODIFIED": {Form.HK2},
    "CMG_Q": {Form.CMG9},
    "CMG_R": {Form.CMG9},
    "COMPACT_R": {Form.HK2, Form.CMG9},
    "HOD_Q": {Form.HOD16, Form.GENERAL1, Form.HK2},
    "HOD_R": {Form.HOD16, Form.GENERAL1, Form.HK2},
}


class FormMismatchError(ValueError):
    pass


def region_for(spec: FactorSpec, region_id: str) -> HPoly:
    """build_joint -> eval_terms -> snap -> bind for a named region."""
    allowed = _ALLOWED_FORMS.get(region_id)
    if allowed is None:
        raise ValueError(f"unknown region id {region_id!r}")
    if spec.form not in allowed:
        hint = ""
        if spec.form in (Form.HOD16, Form.GENERAL1):
            hint = " (apply independence_projection first)"
        raise FormMismatchError(
            f"region {region_id} does not accept form {spec.form.value}{hint}")
    binding = snap_terms(eval_terms(build_joint(spec)))
    return bind(build_system(region_id), binding)

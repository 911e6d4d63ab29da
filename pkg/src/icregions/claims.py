"""Batch verification of the region-comparison claims on sampled specs.

Every report is reproducible bit-for-bit from (claim id, seed, n): sample
``i`` uses the generator seed ``[seed, i]``.  Hard claims contribute to the
verify exit code; exploratory reports never do (they cover statements that
are only meaningful for unions over all input distributions, which a
per-distribution harness cannot decide).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dist import (Form, Var, build_joint, cond_mutual_info,
                   independence_projection, spec_to_json)
from .linsys import AXIOMS_HK_INDEP, derive_region, prune_redundant, \
    substitute_zero, system_equal
from .polytope import DEFAULT_EPS, bind, contains, poly_equal, snap_terms
from .regions import build_system, hk_r_with_redundant, region_for
from .sampler import binary_alphabets, cmg_as_hod, sample_spec
from .terms import eval_terms

F = Fraction

HARD_CLAIMS = (
    "reduction-independence",
    "redundancy-relations",
    "cmg-subset-hod",
    "hod-extra-terms",
    "fm-reproduction",
)
EXPLORATORY_CLAIMS = ("compact-equivalence", "remark2-data")
ALL_CLAIMS = HARD_CLAIMS + EXPLORATORY_CLAIMS


@dataclass
class ClaimReport:
    claim_id: str
    seed: int
    n: int
    tolerance: str
    hard: bool
    samples: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, index: int, ok: bool | None, witness: dict, spec=None):
        rec = {"index": index, "ok": ok, **witness}
        if ok is False and spec is not None:
            rec["spec"] = spec_to_json(spec)
        self.samples.append(rec)

    @property
    def passed(self) -> int:
        return sum(1 for s in self.samples if s["ok"] is True)

    @property
    def failed(self) -> int:
        return sum(1 for s in self.samples if s["ok"] is False)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "claim": self.claim_id,
            "seed": self.seed,
            "n": self.n,
            "tolerance": self.tolerance,
            "hard": self.hard,
            "passed": self.passed,
            "failed": self.failed,
            "ok": self.ok,
            "notes": self.notes,
            "samples": self.samples,
        }


def _hk2(seed, i):
    return sample_spec(binary_alphabets(), Form.HK2, [seed, i])


def _cmg9(seed, i):
    return sample_spec(binary_alphabets(), Form.CMG9, [seed, i])


def _hod16(seed, i):
    return sample_spec(binary_alphabets(), Form.HOD16, [seed, i])


def claim_reduction_independence(n: int, seed: int, specs=None) -> ClaimReport:
    """Independent U_i, W_i: the composite bounds collapse (B=b, C=c, F=f)
    and the correlated-form region equals the HK region."""
    rep = ClaimReport("reduction-independence", seed, n,
                      "rho<=1e-12, composite gaps<=1e-9, polytopes at 2^-30",
                      hard=True)
    for i in range(n):
        spec = specs[i] if specs is not None else _hk2(seed, i)
        if spec.form is not Form.HK2:
            rep.add(i, False, {"form_violation": spec.form.value})
            continue
        tv = eval_terms(build_joint(spec))
        gaps = {
            "rho1": tv["rho1"], "rho2": tv["rho2"],
            "B1-b1": tv["B1"] - tv["b1"], "C1-c1": tv["C1"] - tv["c1"],
            "F1-f1": tv["F1"] - tv["f1"], "B2-b2": tv["B2"] - tv["b2"],
            "C2-c2": tv["C2"] - tv["c2"], "F2-f2": tv["F2"] - tv["f2"],
        }
        terms_ok = (tv["rho1"] <= 1e-12 and tv["rho2"] <= 1e-12
                    and all(abs(v) <= 1e-9 for v in gaps.values()))
        hod = region_for(spec, "HOD_R")
        hk = region_for(spec, "HK_R")
        poly_ok = poly_equal(hod, hk, DEFAULT_EPS)
        rep.add(i, bool(terms_ok and poly_ok),
                {"terms_ok": terms_ok, "polytopes_equal": poly_ok, **gaps},
                spec)
    return rep


def claim_redundancy_relations(n: int, seed: int, specs=None) -> ClaimReport:
    """The two conditioning relations behind the redundancy of the two
    extra sum-rate inequalities, plus the polytope-level redundancy."""
    rep = ClaimReport("redundancy-relations", seed, n,
                      "slack>=-1e-9, polytopes at eps=0", hard=True)
    sys9 = build_system("HK_R")
    sys11 = hk_r_with_redundant()
    for i in range(n):
        spec = specs[i] if specs is not None else _hk2(seed, i)
        joint = build_joint(spec)
        tv = eval_terms(joint)
        # relation (I(Y;U|Q) <= I(Y;U|QW)) per receiver
        slack6 = {
            "side1": cond_mutual_info(joint, {Var.Y1}, {Var.U1}, {Var.Q, Var.W1})
            - cond_mutual_info(joint, {Var.Y1}, {Var.U1}, {Var.Q}),
            "side2": cond_mutual_info(joint, {Var.Y2}, {Var.U2}, {Var.Q, Var.W2})
            - cond_mutual_info(joint, {Var.Y2}, {Var.U2}, {Var.Q}),
        }
        slack7 = {
            "side1": tv["e1"] + tv["f1"] - tv["c1"] - tv["g1"],
            "side2": tv["e2"] + tv["f2"] - tv["c2"] - tv["g2"],
        }
        if spec.form is not Form.HK2:
            rep.notes.append(
                f"sample {i}: form {spec.form.value} is out of contract; the "
                "conditioning relations may legitimately fail there")
            rep.add(i, None, {"slack6": slack6, "slack7": slack7,
                              "out_of_contract": True})
            continue
        slack_ok = all(v >= -1e-9 for v in slack6.values()) and \
            all(v >= -1e-9 for v in slack7.values())
        binding = snap_terms(tv)
        poly_ok = poly_equal(bind(sys9, binding), bind(sys11, binding), F(0))
        rep.add(i, bool(slack_ok and poly_ok),
                {"slack6": slack6, "slack7": slack7,
                 "polytopes_equal": poly_ok}, spec)
    return rep


def claim_cmg_subset_hod(n: int, seed: int, specs=None) -> ClaimReport:
    """Containment of the superposition quadruple region in the correlated
    quadruple region of the re-expressed spec (exact LP per constraint)."""
    rep = ClaimReport("cmg-subset-hod", seed, n, "eps=2^-30", hard=True)
    for i in range(n):
        spec = specs[i] if specs is not None else _cmg9(seed, i)
        if spec.form is not Form.CMG9:
            rep.add(i, False, {"form_violation": spec.form.value})
            continue
        tv = eval_terms(build_joint(spec))
        cmg = region_for(spec, "CMG_Q")
        hod = region_for(cmg_as_hod(spec), "HOD_Q")
        ok = contains(hod, cmg, DEFAULT_EPS)
        witness = {
            "rho1": tv["rho1"], "rho2": tv["rho2"],
            "B1": tv["B1"], "C1": tv["C1"], "B2": tv["B2"], "C2": tv["C2"],
            "d1": tv["d1"], "d2": tv["d2"], "e1": tv["e1"], "e2": tv["e2"],
        }
        if tv["rho1"] <= 1e-12 and tv["rho2"] <= 1e-12:
            witness["rho_zero_equality_case"] = True
        rep.add(i, bool(ok), witness, spec)
    if rep.failed:
        rep.notes.append(
            "the containment is a statement about unions over all input "
            "distributions; per-distribution counterexamples occur when the "
            "re-expressed common-rate bound I(X_i;W_i|Q) is smaller than the "
            "T-rate range the superposition region leaves unbounded")
    return rep


def claim_hod_extra_terms(n: int, seed: int) -> ClaimReport:
    """Every T-rate bound grows by exactly the correlation penalty while the
    S-involving bounds are unchanged relative to the independent formulas."""
    rep = ClaimReport("hod-extra-terms", seed, n, "1e-9", hard=True)
    for i in range(n):
        spec = _hod16(seed, i)
        joint = build_joint(spec)
        tv = eval_terms(joint)
        rho = {
            1: cond_mutual_info(joint, {Var.U1}, {Var.W1}, {Var.Q}),
            2: cond_mutual_info(joint, {Var.U2}, {Var.W2}, {Var.Q}),
        }
        growth = {}
        ok = True
        for side in (1, 2):
            for comp, base in ((f"B{side}", f"b{side}"), (f"C{side}", f"c{side}"),
                               (f"F{side}", f"f{side}")):
                growth[f"{comp}-{base}"] = tv[comp] - tv[base]
                ok &= abs(tv[comp] - tv[base] - rho[side]) <= 1e-9
        # S-involving bounds must equal the plain conditional MI formulas
        s_bounds = {
            "a1": cond_mutual_info(joint, {Var.Y1}, {Var.U1}, {Var.W1, Var.W2, Var.Q}),
            "d1": cond_mutual_info(joint, {Var.Y1}, {Var.U1, Var.W1}, {Var.W2, Var.Q}),
            "e1": cond_mutual_info(joint, {Var.Y1}, {Var.U1, Var.W2}, {Var.W1, Var.Q}),
            "g1": cond_mutual_info(joint, {Var.Y1}, {Var.U1, Var.W1, Var.W2}, {Var.Q}),
            "a2": cond_mutual_info(joint, {Var.Y2}, {Var.U2}, {Var.W1, Var.W2, Var.Q}),
            "d2": cond_mutual_info(joint, {Var.Y2}, {Var.U2, Var.W2}, {Var.W1, Var.Q}),
            "e2": cond_mutual_info(joint, {Var.Y2}, {Var.U2, Var.W1}, {Var.W2, Var.Q}),
            "g2": cond_mutual_info(joint, {Var.Y2}, {Var.U2, Var.W1, Var.W2}, {Var.Q}),
        }
        ok &= all(abs(tv[k] - v) <= 1e-9 for k, v in s_bounds.items())
        rep.add(i, bool(ok),
                {"rho1": rho[1], "rho2": rho[2], **growth}, spec)
    return rep


def claim_fm_reproduction() -> ClaimReport:
    """Purely symbolic: the elimination pipeline reproduces the golden
    systems, and the superposition/HK rate-pair systems differ exactly in
    the two cross bounds."""
    rep = ClaimReport("fm-reproduction", 0, 0, "exact", hard=True)
    cases = [
        ("hk->11", derive_region("hk", "chain"), hk_r_with_redundant()),
        ("hk->9", derive_region("hk", "hk-indep"), build_system("HK_R")),
        ("hk-mod->13", derive_region("hk-mod", "hk-indep"),
         build_system("HK_R_MODIFIED")),
        ("cmg->9", derive_region("cmg", "chain"), build_system("CMG_R")),
        ("hod->13", derive_region("hod", "chain"), build_system("HOD_R")),
    ]
    for idx, (name, got, want) in enumerate(cases):
        eq, diff = system_equal(got, want)
        rep.add(idx, bool(eq),
                {"case": name, "derived": len(got.inequalities),
                 "golden": len(want.inequalities),
                 "diff": _diff_json(diff)})
    eq, diff = system_equal(build_system("CMG_R"), build_system("HK_R"))
    expected = {
        "only_a": {"R1<=a1+e2", "R2<=a2+e1"},
        "only_b": {"R1<=a1+c2", "R2<=a2+c1"},
    }
    got_diff = {k: set(_ineq_str(i) for i in v) for k, v in diff.items()}
    rep.add(len(cases), bool(not eq and got_diff == expected),
            {"case": "cmg-vs-hk-diff", "diff": _diff_json(diff)})
    # the correlated rate-pair system at rho=0 prunes to the HK system
    hod0 = substitute_zero(build_system("HOD_R"), {"rho1", "rho2"})
    eq, diff = system_equal(prune_redundant(hod0, AXIOMS_HK_INDEP),
                            build_system("HK_R"))
    rep.add(len(cases) + 1, bool(eq),
            {"case": "hod-rho0->hk", "diff": _diff_json(diff)})
    return rep


def compact_equivalence_report(n: int, seed: int) -> ClaimReport:
    """Exploratory: containments around the seven-inequality description.

    The forced directions (dropping constraints only enlarges) are checked;
    the reverse direction is recorded as data because the equivalence is a
    statement about unions over distributions."""
    rep = ClaimReport("compact-equivalence", seed, n, "eps=0", hard=False)
    compact = build_system("COMPACT_R")
    for i in range(n):
        hk_spec = _hk2(seed, i)
        binding = snap_terms(eval_terms(build_joint(hk_spec)))
        hk = bind(build_system("HK_R"), binding)
        comp = bind(compact, binding)
        forced = contains(comp, hk, F(0))
        reverse = contains(hk, comp, F(0))
        cmg_spec = _cmg9(seed, i)
        binding2 = snap_terms(eval_terms(build_joint(cmg_spec)))
        cmg = bind(build_system("CMG_R"), binding2)
        comp2 = bind(compact, binding2)
        forced2 = contains(comp2, cmg, F(0))
        reverse2 = contains(cmg, comp2, F(0))
        rep.add(i, bool(forced and forced2),
                {"hk_in_compact": forced, "compact_in_hk": reverse,
                 "cmg_in_compact": forced2, "compact_in_cmg": reverse2})
    return rep


def remark2_report(n: int, seed: int) -> ClaimReport:
    """Exploratory: per-sample term relations used informally in the
    equivalence argument for the seven-inequality description."""
    rep = ClaimReport("remark2-data", seed, n, "data only", hard=False)
    for i in range(n):
        spec = _hk2(seed, i)
        tv = eval_terms(build_joint(spec))
        rep.add(i, None, {
            "e1<=a1+c1": bool(tv["e1"] <= tv["a1"] + tv["c1"] + 1e-9),
            "e2<=a2+c2": bool(tv["e2"] <= tv["a2"] + tv["c2"] + 1e-9),
            "e1-a1-c1": tv["e1"] - tv["a1"] - tv["c1"],
            "e2-a2-c2": tv["e2"] - tv["a2"] - tv["c2"],
            "a1+c2_vs_e1+e2": tv["a1"] + tv["c2"] - tv["e1"] - tv["e2"],
            "a2+c1_vs_e1+e2": tv["a2"] + tv["c1"] - tv["e1"] - tv["e2"],
        })
    return rep


def run_claim(claim_id: str, n: int, seed: int) -> ClaimReport:
    if claim_id == "reduction-independence":
        return claim_reduction_independence(n, seed)
    if claim_id == "redundancy-relations":
        return claim_redundancy_relations(n, seed)
    if claim_id == "cmg-subset-hod":
        return claim_cmg_subset_hod(n, seed)
    if claim_id == "hod-extra-terms":
        return claim_hod_extra_terms(n, seed)
    if claim_id == "fm-reproduction":
        return claim_fm_reproduction()
    if claim_id == "compact-equivalence":
        return compact_equivalence_report(n, seed)
    if claim_id == "remark2-data":
        return remark2_report(n, seed)
    raise ValueError(f"unknown claim {claim_id!r}")


def run_all(n: int, seed: int) -> dict:
    reports = [run_claim(c, n, seed) for c in ALL_CLAIMS]
    hard_ok = all(r.ok for r in reports if r.hard)
    return {"ok": hard_ok, "reports": [r.to_json() for r in reports]}


def _ineq_str(ineq) -> str:
    lhs = "+".join(f"{'' if v == 1 else v}{k}" for k, v in ineq.lhs)
    rhs = "+".join(f"{'' if v == 1 else v}{k}" for k, v in ineq.rhs.coeffs)
    return f"{lhs}<={rhs}"


def _diff_json(diff: dict) -> dict:
    return {k: [_ineq_str(i) for i in v] for k, v in diff.items()}

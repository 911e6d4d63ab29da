"""Command-line front end.

Subcommands: terms, region, derive, verify, search, project.  All outputs
are deterministic given identical inputs and seeds.  Exit codes: 0 success,
1 hard-claim failure (verify), 2 invalid spec file, 3 region/form mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .claims import ALL_CLAIMS, run_all, run_claim
from .dist import SpecError, Var, build_joint, load_spec, spec_to_json
from .linsys import AXIOM_SETS, derive_region, system_from_json, system_to_json
from .polytope import HPoly, bind, fm_eliminate_numeric, snap_terms, vertices2
from .regions import FormMismatchError, build_system, region_for
from .sampler import SearchConfig, binary_alphabets, improvement_search
from .terms import eval_terms

_REGION_BY_NAME = {
    "hk": "HK_R", "cmg": "CMG_R", "hod": "HOD_R", "compact": "COMPACT_R",
}


def _frac(v: Fraction):
    return int(v) if v.denominator == 1 else {"num": v.numerator, "den": v.denominator}


def _write_json(path: str, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_terms(args) -> int:
    spec = load_spec(args.spec)
    tv = eval_terms(build_joint(spec))
    _write_json(args.out, tv)
    return 0


def _cmd_region(args) -> int:
    spec = load_spec(args.spec)
    poly = region_for(spec, _REGION_BY_NAME[args.which])
    with open(args.emit, "w") as fh:
        fh.write("R1,R2\n")
        for v in vertices2(poly):
            fh.write(f"{float(v[0]):.12g},{float(v[1]):.12g}\n")
    if args.out:
        _write_json(args.out, _poly_json(poly))
    return 0


def _cmd_derive(args) -> int:
    system = derive_region(args.system, args.axioms)
    _write_json(args.out, system_to_json(system))
    return 0


def _cmd_verify(args) -> int:
    if args.claim == "all":
        result = run_all(args.samples, args.seed)
        _write_json(args.out, result)
        return 0 if result["ok"] else 1
    rep = run_claim(args.claim, args.samples, args.seed)
    _write_json(args.out, rep.to_json())
    return 0 if (rep.ok or not rep.hard) else 1


def _cmd_search(args) -> int:
    cfg = SearchConfig(alphabets=_parse_alphabets(args.alphabets),
                       budget=args.budget, restarts=args.restarts,
                       step=args.step, seed=args.seed,
                       objective=args.objective)
    res = improvement_search(cfg)
    _write_json(args.out, {
        "objective_id": cfg.objective,
        "objective": _frac(Fraction(res.objective)),
        "objective_float": float(res.objective),
        "restart": res.restart,
        "trace": res.trace,
        "hod_vertices": [[_frac(a), _frac(b)] for a, b in res.hod_vertices],
        "hk_vertices": [[_frac(a), _frac(b)] for a, b in res.hk_vertices],
        "best_spec": spec_to_json(res.best_spec),
        "baseline": "HK region of the independence projection of best_spec",
    })
    return 0


def _cmd_project(args) -> int:
    with open(args.system) as fh:
        system = system_from_json(json.load(fh))
    binding = {}
    if args.terms:
        with open(args.terms) as fh:
            binding = snap_terms(json.load(fh))
    poly = bind(system, binding)
    for v in args.eliminate.split(","):
        v = v.strip()
        if v not in poly.dims:
            raise SystemExit(f"variable {v!r} not in system dims {poly.dims}")
        poly = fm_eliminate_numeric(poly, v)
    _write_json(args.out, _poly_json(poly))
    return 0


def _poly_json(poly: HPoly) -> dict:
    return {
        "dims": list(poly.dims),
        "rows": [{"coeffs": [_frac(c) for c in coeffs], "rhs": _frac(rhs)}
                 for coeffs, rhs in poly.rows],
        "implicit": "all coordinates nonnegative",
    }


def _parse_alphabets(text: str):
    overrides = {}
    for part in text.split(","):
        key, _, val = part.strip().partition("=")
        if not val:
            raise SystemExit(f"bad alphabet item {part!r}, expected name=size")
        n = int(val)
        key = key.strip().upper()
        if key in ("U", "W", "X", "Y"):
            overrides[f"{key}1"] = n
            overrides[f"{key}2"] = n
        elif key in Var.__members__:
            overrides[key] = n
        else:
            raise SystemExit(f"unknown alphabet name {key!r}")
    return binary_alphabets(**overrides)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="icregions")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("terms", help="evaluate the 22 information terms")
    t.add_argument("--spec", required=True)
    t.add_argument("--out", required=True)
    t.set_defaults(func=_cmd_terms)

    r = sub.add_parser("region", help="rate-pair region vertices of a spec")
    r.add_argument("--spec", required=True)
    r.add_argument("--which", required=True, choices=sorted(_REGION_BY_NAME))
    r.add_argument("--emit", required=True, help="vertex CSV path")
    r.add_argument("--out", help="optional H-representation JSON path")
    r.set_defaults(func=_cmd_region)

    d = sub.add_parser("derive", help="symbolic Fourier-Motzkin derivation")
    d.add_argument("--system", required=True,
                   choices=("hk", "hk-mod", "cmg", "hod"))
    d.add_argument("--axioms", default="chain", choices=sorted(AXIOM_SETS))
    d.add_argument("--out", required=True)
    d.set_defaults(func=_cmd_derive)

    v = sub.add_parser("verify", help="run the claim harness")
    v.add_argument("--claim", default="all", choices=("all",) + ALL_CLAIMS)
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--out", required=True)
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("search", help="search for a correlated-gain example")
    s.add_argument("--alphabets", default="q=2,u=2,w=2,x=2,y=2")
    s.add_argument("--budget", type=int, default=100)
    s.add_argument("--restarts", type=int, default=4)
    s.add_argument("--step", type=float, default=0.25)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--objective", default="area", choices=("area", "sumrate"))
    s.add_argument("--out", required=True)
    s.set_defaults(func=_cmd_search)

    j = sub.add_parser("project", help="numeric projection of a system JSON")
    j.add_argument("--system", required=True)
    j.add_argument("--terms", help="terms JSON to bind before projecting")
    j.add_argument("--eliminate", required=True,
                   help="comma-separated variables to eliminate")
    j.add_argument("--out", required=True)
    j.set_defaults(func=_cmd_project)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return 2
    except FormMismatchError as exc:
        print(f"form mismatch: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

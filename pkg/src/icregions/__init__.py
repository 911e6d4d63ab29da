"""Achievable rate regions for the two-user discrete memoryless
interference channel: finite-alphabet joints, information terms, exact
Fourier-Motzkin derivations and rational rate-region polytopes."""

from .dist import (
    AlphabetSpec,
    FactorSpec,
    Form,
    JointDist,
    SpecError,
    Var,
    build_joint,
    check_markov_chains,
    cmg9_spec,
    cond_mutual_info,
    entropy,
    hk2_spec,
    independence_projection,
    load_spec,
    save_spec,
)
from .linsys import (
    AXIOM_SETS,
    AXIOMS_CHAIN,
    AXIOMS_HK_INDEP,
    Combo,
    Inequality,
    LinearSystem,
    derive_region,
    fm_eliminate,
    prune_redundant,
    substitute_rate_sums,
    system_equal,
)
from .polytope import (
    HPoly,
    area2,
    bind,
    contains,
    fm_eliminate_numeric,
    poly_equal,
    snap_terms,
    vertices2,
)
from .claims import ClaimReport, run_all, run_claim
from .regions import FormMismatchError, build_system, region_for
from .sampler import (SearchConfig, SearchResult, binary_alphabets,
                      cmg_as_hod, improvement_search, sample_spec)
from .terms import ALL_SYMBOLS, cmg_identity_report, eval_terms

__version__ = "0.1.0"

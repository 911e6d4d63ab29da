"""Finite-alphabet factored distributions for the two-user interference channel.

The nine random variables live on a fixed, canonically ordered axis layout:

    Q, U1, W1, U2, W2, X1, X2, Y1, Y2

Q is the time-sharing variable, W_i carry the common messages, U_i the
private messages, X_i are the channel inputs and Y_i the outputs.  A
``FactorSpec`` declares one of four factorization forms; ``build_joint``
multiplies the factors into a dense joint tensor from which entropies and
conditional mutual informations are computed (all in bits).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

NORM_TOL = 1e-12
JOINT_TOL = 1e-10
MAX_JOINT_ENTRIES = 10**8


class Var(enum.Enum):
    """The nine variables, in canonical tensor-axis order."""

    Q = 0
    U1 = 1
    W1 = 2
    U2 = 3
    W2 = 4
    X1 = 5
    X2 = 6
    Y1 = 7
    Y2 = 8


VARS = tuple(Var)


class Form(enum.Enum):
    GENERAL1 = "general1"  # p(q) p(w1|q) p(u1|q,w1) ... with product encoders
    HK2 = "hk2"            # u_i independent of w_i given q
    CMG9 = "cmg9"          # no separate U variables; U_i is a copy of X_i
    HOD16 = "hod16"        # u_i correlated with w_i given q


class SpecError(ValueError):
    """A factor table violates its declared shape or normalization."""


@dataclass(frozen=True)
class AlphabetSpec:
    sizes: Mapping[Var, int]

    def __post_init__(self):
        for v in VARS:
            if v not in self.sizes:
                raise SpecError(f"alphabet size missing for {v.name}")
            if self.sizes[v] < 1:
                raise SpecError(f"alphabet size for {v.name} must be >= 1")

    def size(self, v: Var) -> int:
        return self.sizes[v]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.sizes[v] for v in VARS)

    def joint_entries(self) -> int:
        n = 1
        for v in VARS:
            n *= self.sizes[v]
        return n


def _check_rows(name: str, table: np.ndarray, shape: tuple[int, ...]):
    """Every slice along the last axis must be a probability vector."""
    if table.shape != shape:
        raise SpecError(f"factor {name}: expected shape {shape}, got {table.shape}")
    if np.any(table < 0):
        idx = np.unravel_index(int(np.argmin(table)), table.shape)
        raise SpecError(f"factor {name}: negative entry at {idx}")
    sums = np.atleast_1d(table.sum(axis=-1))
    bad = np.argwhere(np.abs(sums - 1.0) > NORM_TOL)
    if bad.size:
        cond = tuple(int(i) for i in bad[0])
        raise SpecError(
            f"factor {name}: row {cond} sums to {sums[tuple(bad[0])]:.15g}, not 1"
        )


@dataclass(frozen=True)
class FactorSpec:
    """A factored input distribution plus encoders and channel.

    Table layouts (conditioning axes first, conditioned variable last):

    ==================  =============================
    q                   (nQ,)
    w1_given_q          (nQ, nW1)
    u1_given_q_w1       (nQ, nW1, nU1)   [absent for CMG9]
    x1_given_q_u1_w1    (nQ, nU1, nW1, nX1)
    channel             (nX1, nX2, nY1, nY2)
    ==================  =============================

    HK2 stores ``u1_given_q_w1`` with the W1 axis constant (built from a
    (nQ, nU1) table).  CMG9 reuses the U axes as copies of the X axes:
    ``u1_given_q_w1`` is the spec's ``x1_given_q_w1`` table and the encoder
    is the identity indicator.
    """

    form: Form
    alphabets: AlphabetSpec
    q: np.ndarray
    w1_given_q: np.ndarray
    u1_given_q_w1: np.ndarray
    w2_given_q: np.ndarray
    u2_given_q_w2: np.ndarray
    x1_given_q_u1_w1: np.ndarray
    x2_given_q_u2_w2: np.ndarray
    channel: np.ndarray

    def __post_init__(self):
        n = {v: self.alphabets.size(v) for v in VARS}
        if self.form is Form.CMG9:
            if n[Var.U1] != n[Var.X1] or n[Var.U2] != n[Var.X2]:
                raise SpecError("CMG9 requires U alphabets equal to X alphabets")
        _check_rows("q", self.q, (n[Var.Q],))
        _check_rows("w1_given_q", self.w1_given_q, (n[Var.Q], n[Var.W1]))
        _check_rows("w2_given_q", self.w2_given_q, (n[Var.Q], n[Var.W2]))
        _check_rows("u1_given_q_w1", self.u1_given_q_w1, (n[Var.Q], n[Var.W1], n[Var.U1]))
        _check_rows("u2_given_q_w2", self.u2_given_q_w2, (n[Var.Q], n[Var.W2], n[Var.U2]))
        _check_rows(
            "x1_given_q_u1_w1",
            self.x1_given_q_u1_w1,
            (n[Var.Q], n[Var.U1], n[Var.W1], n[Var.X1]),
        )
        _check_rows(
            "x2_given_q_u2_w2",
            self.x2_given_q_u2_w2,
            (n[Var.Q], n[Var.U2], n[Var.W2], n[Var.X2]),
        )
        _check_rows(
            "channel",
            self.channel.reshape(self.channel.shape[:2] + (-1,)),
            (n[Var.X1], n[Var.X2], n[Var.Y1] * n[Var.Y2]),
        )
        if self.form is Form.HK2:
            # the stored conditional must not actually depend on W1/W2
            if not np.allclose(self.u1_given_q_w1, self.u1_given_q_w1[:, :1, :], atol=NORM_TOL):
                raise SpecError("HK2 spec: u1_given_q_w1 depends on w1")
            if not np.allclose(self.u2_given_q_w2, self.u2_given_q_w2[:, :1, :], atol=NORM_TOL):
                raise SpecError("HK2 spec: u2_given_q_w2 depends on w2")


def hk2_spec(alphabets, q, w1_given_q, u1_given_q, w2_given_q, u2_given_q,
             x1_given_q_u1_w1, x2_given_q_u2_w2, channel) -> FactorSpec:
    """Build an HK2 FactorSpec from p(u_i|q) tables."""
    nw1 = alphabets.size(Var.W1)
    nw2 = alphabets.size(Var.W2)
    u1 = np.repeat(np.asarray(u1_given_q)[:, None, :], nw1, axis=1)
    u2 = np.repeat(np.asarray(u2_given_q)[:, None, :], nw2, axis=1)
    return FactorSpec(Form.HK2, alphabets, np.asarray(q), np.asarray(w1_given_q), u1,
                      np.asarray(w2_given_q), u2, np.asarray(x1_given_q_u1_w1),
                      np.asarray(x2_given_q_u2_w2), np.asarray(channel))


def cmg9_spec(alphabets, q, w1_given_q, x1_given_q_w1, w2_given_q, x2_given_q_w2,
              channel) -> FactorSpec:
    """Build a CMG9 FactorSpec; the U axes mirror the X axes."""
    nq = alphabets.size(Var.Q)
    nx1, nx2 = alphabets.size(Var.X1), alphabets.size(Var.X2)
    nw1, nw2 = alphabets.size(Var.W1), alphabets.size(Var.W2)
    eye1 = np.broadcast_to(np.eye(nx1)[None, :, None, :], (nq, nx1, nw1, nx1)).copy()
    eye2 = np.broadcast_to(np.eye(nx2)[None, :, None, :], (nq, nx2, nw2, nx2)).copy()
    return FactorSpec(Form.CMG9, alphabets, np.asarray(q), np.asarray(w1_given_q),
                      np.asarray(x1_given_q_w1), np.asarray(w2_given_q),
                      np.asarray(x2_given_q_w2), eye1, eye2, np.asarray(channel))


@dataclass(frozen=True)
class JointDist:
    """Dense joint probability tensor over the nine variables."""

    alphabets: AlphabetSpec
    tensor: np.ndarray

    def __post_init__(self):
        if self.tensor.shape != self.alphabets.shape:
            raise SpecError("joint tensor shape does not match alphabets")
        if np.any(self.tensor < 0):
            raise SpecError("joint tensor has a negative entry")
        if abs(float(self.tensor.sum()) - 1.0) > JOINT_TOL:
            raise SpecError(f"joint tensor sums to {self.tensor.sum():.15g}")


def build_joint(spec: FactorSpec) -> JointDist:
    """Multiply the declared factors into the full nine-variable joint."""
    if spec.alphabets.joint_entries() > MAX_JOINT_ENTRIES:
        raise SpecError("joint tensor would exceed the 1e8 entry limit")
    t = np.einsum(
        "q,qw,qwu,qv,qvm,quwx,qmvz,xzab->quwmvxzab",
        spec.q,
        spec.w1_given_q,
        spec.u1_given_q_w1,
        spec.w2_given_q,
        spec.u2_given_q_w2,
        spec.x1_given_q_u1_w1,
        spec.x2_given_q_u2_w2,
        spec.channel,
        optimize=True,
    )
    return JointDist(spec.alphabets, t)


def marginal_tensor(joint: JointDist, keep: Iterable[Var]) -> np.ndarray:
    """Sum out all axes not in ``keep``; result keeps canonical axis order."""
    keep = set(keep)
    if not keep:
        raise ValueError("keep set must be nonempty")
    drop = tuple(v.value for v in VARS if v not in keep)
    return joint.tensor.sum(axis=drop)


def entropy(joint: JointDist, A: Iterable[Var]) -> float:
    """Shannon entropy H(A) in bits, with 0 log 0 := 0."""
    p = marginal_tensor(joint, A).ravel()
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


def _entropy_of(joint: JointDist, s: frozenset) -> float:
    if not s:
        return 0.0
    return entropy(joint, s)


def cond_mutual_info(joint: JointDist, A, B, C=()) -> float:
    """I(A;B|C) in bits; tiny negative round-off is clamped to 0."""
    A, B, C = frozenset(A), frozenset(B), frozenset(C)
    if not A or not B:
        raise ValueError("A and B must be nonempty")
    if A & B or A & C or B & C:
        raise ValueError("A, B, C must be pairwise disjoint")
    val = (
        _entropy_of(joint, A | C)
        + _entropy_of(joint, B | C)
        - _entropy_of(joint, A | B | C)
        - _entropy_of(joint, C)
    )
    if val < 0:
        if val < -1e-12:
            raise ArithmeticError(f"conditional MI evaluated to {val}")
        val = 0.0
    return val


def independence_projection(spec: FactorSpec) -> FactorSpec:
    """Replace p(u_i|q,w_i) by its w_i-mixture p(u_i|q), yielding an HK2 spec.

    All other factors are unchanged, so the projected joint has the same
    p(q), p(w_i|q) and the same encoders and channel.
    """
    if spec.form is not Form.HOD16:
        raise SpecError(f"independence_projection requires HOD16, got {spec.form}")
    # p(u1|q) = sum_w1 p(w1|q) p(u1|q,w1)
    u1_q = np.einsum("qw,qwu->qu", spec.w1_given_q, spec.u1_given_q_w1)
    u2_q = np.einsum("qv,qvm->qm", spec.w2_given_q, spec.u2_given_q_w2)
    return hk2_spec(spec.alphabets, spec.q, spec.w1_given_q, u1_q, spec.w2_given_q,
                    u2_q, spec.x1_given_q_u1_w1, spec.x2_given_q_u2_w2, spec.channel)


def check_markov_chains(joint: JointDist) -> dict:
    """Report the two Markov-chain residuals of the superposition form.

    For a joint built from a CMG9 spec, both must be ~0:
    I(W1; Y1 | Q W2 X1) and I(W2; Y2 | Q W1 X2).
    """
    r1 = cond_mutual_info(joint, {Var.W1}, {Var.Y1}, {Var.Q, Var.W2, Var.X1})
    r2 = cond_mutual_info(joint, {Var.W2}, {Var.Y2}, {Var.Q, Var.W1, Var.X2})
    return {
        "I(W1;Y1|QW2X1)": r1,
        "I(W2;Y2|QW1X2)": r2,
        "ok": bool(r1 <= 1e-10 and r2 <= 1e-10),
    }


# --- JSON interchange -------------------------------------------------------

_FORM_NAMES = {f.value: f for f in Form}


def spec_to_json(spec: FactorSpec) -> dict:
    d = {
        "form": spec.form.value,
        "alphabets": {v.name: spec.alphabets.size(v) for v in VARS},
    }
    if spec.form is Form.CMG9:
        factors = {
            "q": spec.q,
            "w1_given_q": spec.w1_given_q,
            "x1_given_q_w1": spec.u1_given_q_w1,
            "w2_given_q": spec.w2_given_q,
            "x2_given_q_w2": spec.u2_given_q_w2,
            "channel_y1y2_given_x1x2": spec.channel,
        }
    elif spec.form is Form.HK2:
        factors = {
            "q": spec.q,
            "w1_given_q": spec.w1_given_q,
            "u1_given_q": spec.u1_given_q_w1[:, 0, :],
            "w2_given_q": spec.w2_given_q,
            "u2_given_q": spec.u2_given_q_w2[:, 0, :],
            "x1_given_q_u1_w1": spec.x1_given_q_u1_w1,
            "x2_given_q_u2_w2": spec.x2_given_q_u2_w2,
            "channel_y1y2_given_x1x2": spec.channel,
        }
    else:
        factors = {
            "q": spec.q,
            "w1_given_q": spec.w1_given_q,
            "u1_given_q_w1": spec.u1_given_q_w1,
            "w2_given_q": spec.w2_given_q,
            "u2_given_q_w2": spec.u2_given_q_w2,
            "x1_given_q_u1_w1": spec.x1_given_q_u1_w1,
            "x2_given_q_u2_w2": spec.x2_given_q_u2_w2,
            "channel_y1y2_given_x1x2": spec.channel,
        }
    d["factors"] = {k: np.asarray(v).tolist() for k, v in factors.items()}
    return d


def spec_from_json(d: dict) -> FactorSpec:
    try:
        form = _FORM_NAMES[d["form"].lower()]
    except KeyError:
        raise SpecError(f"unknown form {d.get('form')!r}") from None
    sizes = {Var[name]: int(n) for name, n in d["alphabets"].items()}
    alph = AlphabetSpec(sizes)
    f = {k: np.asarray(v, dtype=float) for k, v in d["factors"].items()}
    ch = f["channel_y1y2_given_x1x2"]
    if form is Form.CMG9:
        return cmg9_spec(alph, f["q"], f["w1_given_q"], f["x1_given_q_w1"],
                         f["w2_given_q"], f["x2_given_q_w2"], ch)
    if form is Form.HK2:
        return hk2_spec(alph, f["q"], f["w1_given_q"], f["u1_given_q"],
                        f["w2_given_q"], f["u2_given_q"],
                        f["x1_given_q_u1_w1"], f["x2_given_q_u2_w2"], ch)
    return FactorSpec(form, alph, f["q"], f["w1_given_q"], f["u1_given_q_w1"],
                      f["w2_given_q"], f["u2_given_q_w2"],
                      f["x1_given_q_u1_w1"], f["x2_given_q_u2_w2"], ch)


def load_spec(path) -> FactorSpec:
    with open(path) as fh:
        return spec_from_json(json.load(fh))


def save_spec(spec: FactorSpec, path):
    with open(path, "w") as fh:
        json.dump(spec_to_json(spec), fh, indent=1)

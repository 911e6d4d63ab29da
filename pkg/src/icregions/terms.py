"""The named information terms of the two-user rate regions.

Receiver 1 sees Y1 and cares about (U1, W1) plus the interfering common
message W2; receiver 2 symmetrically.  The seven per-receiver terms are the
conditional mutual informations

    a_i  I(Y_i; U_i | W_1 W_2 Q)        d_i  I(Y_i; U_i W_i | W_j Q)
    b_i  I(Y_i; W_i | U_i W_j Q)        e_i  I(Y_i; U_i W_j | W_i Q)
    c_i  I(Y_i; W_j | U_i W_i Q)        f_i  I(Y_i; W_1 W_2 | U_i Q)
    g_i  I(Y_i; U_i W_1 W_2 | Q)

with j the other index.  The correlation penalty rho_i = I(U_i; W_i | Q)
produces the composite bounds B_i = b_i + rho_i, C_i = c_i + rho_i,
F_i = f_i + rho_i that replace b, c, f when U_i and W_i are allowed to be
correlated given Q.
"""

from __future__ import annotations

from .dist import JointDist, Var, cond_mutual_info

BASE_SYMBOLS = (
    "a1", "b1", "c1", "d1", "e1", "f1", "g1",
    "a2", "b2", "c2", "d2", "e2", "f2", "g2",
    "rho1", "rho2",
)
COMPOSITE_SYMBOLS = ("B1", "C1", "F1", "B2", "C2", "F2")
ALL_SYMBOLS = BASE_SYMBOLS + COMPOSITE_SYMBOLS

# Composite symbol -> (base symbol, rho symbol); the expansion basis for all
# exact symbolic work.
COMPOSITE_EXPANSION = {
    "B1": ("b1", "rho1"),
    "C1": ("c1", "rho1"),
    "F1": ("f1", "rho1"),
    "B2": ("b2", "rho2"),
    "C2": ("c2", "rho2"),
    "F2": ("f2", "rho2"),
}


def eval_terms(joint: JointDist) -> dict[str, float]:
    """Evaluate all 22 term symbols (in bits) from the full joint."""
    I = lambda A, B, C: cond_mutual_info(joint, A, B, C)  # noqa: E731
    Q, U1, W1, U2, W2, Y1, Y2 = (
        Var.Q, Var.U1, Var.W1, Var.U2, Var.W2, Var.Y1, Var.Y2)
    t = {
        "a1": I({Y1}, {U1}, {W1, W2, Q}),
        "b1": I({Y1}, {W1}, {U1, W2, Q}),
        "c1": I({Y1}, {W2}, {U1, W1, Q}),
        "d1": I({Y1}, {U1, W1}, {W2, Q}),
        "e1": I({Y1}, {U1, W2}, {W1, Q}),
        "f1": I({Y1}, {W1, W2}, {U1, Q}),
        "g1": I({Y1}, {U1, W1, W2}, {Q}),
        "a2": I({Y2}, {U2}, {W1, W2, Q}),
        "b2": I({Y2}, {W2}, {U2, W1, Q}),
        "c2": I({Y2}, {W1}, {U2, W2, Q}),
        "d2": I({Y2}, {U2, W2}, {W1, Q}),
        "e2": I({Y2}, {U2, W1}, {W2, Q}),
        "f2": I({Y2}, {W1, W2}, {U2, Q}),
        "g2": I({Y2}, {U2, W1, W2}, {Q}),
        "rho1": I({U1}, {W1}, {Q}),
        "rho2": I({U2}, {W2}, {Q}),
    }
    for comp, (base, rho) in COMPOSITE_EXPANSION.items():
        t[comp] = t[base] + t[rho]
    return t


# The eight identities tying the U-form and X-form of the superposition
# region's terms: (name, (M, AB-with-U, C), (M, AB-with-X, C)).
_CMG_IDENTITIES = [
    ("a1", ({Var.Y1}, {Var.U1}, {Var.W1, Var.W2, Var.Q}),
            ({Var.Y1}, {Var.X1}, {Var.W1, Var.W2, Var.Q})),
    ("d1", ({Var.Y1}, {Var.U1, Var.W1}, {Var.W2, Var.Q}),
            ({Var.Y1}, {Var.X1}, {Var.W2, Var.Q})),
    ("e1", ({Var.Y1}, {Var.U1, Var.W2}, {Var.W1, Var.Q}),
            ({Var.Y1}, {Var.X1, Var.W2}, {Var.W1, Var.Q})),
    ("g1", ({Var.Y1}, {Var.U1, Var.W1, Var.W2}, {Var.Q}),
            ({Var.Y1}, {Var.X1, Var.W2}, {Var.Q})),
    ("a2", ({Var.Y2}, {Var.U2}, {Var.W1, Var.W2, Var.Q}),
            ({Var.Y2}, {Var.X2}, {Var.W1, Var.W2, Var.Q})),
    ("d2", ({Var.Y2}, {Var.U2, Var.W2}, {Var.W1, Var.Q}),
            ({Var.Y2}, {Var.X2}, {Var.W1, Var.Q})),
    ("e2", ({Var.Y2}, {Var.U2, Var.W1}, {Var.W2, Var.Q}),
            ({Var.Y2}, {Var.X2, Var.W1}, {Var.W2, Var.Q})),
    ("g2", ({Var.Y2}, {Var.U2, Var.W1, Var.W2}, {Var.Q}),
            ({Var.Y2}, {Var.X2, Var.W1}, {Var.Q})),
]


def cmg_identity_report(joint: JointDist) -> dict:
    """Both sides of the eight U-vs-X term identities, with differences.

    Under the CMG representation (U axes are copies of the X axes) every
    difference must vanish to ~1e-10.
    """
    rows = {}
    worst = 0.0
    for name, (mA, bA, cA), (mX, bX, cX) in _CMG_IDENTITIES:
        lhs = cond_mutual_info(joint, mA, bA, cA)
        rhs = cond_mutual_info(joint, mX, bX, cX)
        diff = abs(lhs - rhs)
        worst = max(worst, diff)
        rows[name] = {"u_form": lhs, "x_form": rhs, "abs_diff": diff}
    return {"identities": rows, "max_abs_diff": worst, "ok": bool(worst <= 1e-10)}

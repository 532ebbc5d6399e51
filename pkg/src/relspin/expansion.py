"""Low-energy limit: expanded Hamiltonian, expanded brackets, and the
coordinate change that makes positions commute again.

Everything here is accurate through order 1/c^2 relative to the leading
term of each quantity.  The expanded bracket table is checked against
the exact Dirac brackets on a ladder of growing c with the physical
data (momentum, spin, fields) held fixed: each residual, multiplied by
the quoted power c^k, must still fall as c doubles, which pins the
order of the first neglected term.

The primed chart

    x = x' - (P' x S')/(2 m^2 c^2),   P = P' - (e/c) A(x'),   S = S'

has canonically commuting positions at this order; its practical payoff
appears on the quantum side, where the same shift moves the spin-orbit
coupling strength from g to (g - 1).
"""

from __future__ import annotations

import numpy as np

from .fields import make_background
from .minkowski import EPS3
from .phase import (Model, Observable, field_data, init_state,
                    kinetic_momentum, obs_coord, obs_kinetic, obs_spin,
                    spin_vector)
from .brackets import dirac_bracket, dirac_core

LADDER_ORDERS = {"xx": 2, "xP": 2, "xS": 1, "PP": 3, "PS": 2, "SS": 1}


def obs_spin3(k):
    """Spin 3-vector component S_k = eps_{kij} S^{ij} / 4 as an observable."""
    i, j = ((2, 3), (3, 1), (1, 2))[k - 1]
    base = obs_spin(i, j)
    return Observable(f"Svec{k}",
                      lambda z, m: 0.5 * base(z, m),
                      lambda z, m: 0.5 * base.grad(z, m))


# ---------------------------------------------------------------------------
# expanded Hamiltonian


def hamiltonian_expanded(z, model):
    """Rest energy, kinetic terms, potential, and the spin couplings.

    H = m c^2 + P^2/2m - P^4/8 m^3 c^2 + e A^0
        + (e g / 2 m c) [ S.(P x E)/(m c) - B.S ]
    """
    fd = field_data(model, z.x)
    m, c, e, g = model.m, model.c, model.e, model.g
    P = kinetic_momentum(z, model, fd)[1:]
    p2 = float(P @ P)
    E = fd.F[0, 1:]
    B = 0.5 * np.einsum("ijk,jk->i", EPS3, fd.F[1:, 1:])
    S = spin_vector(z) if not z.spinless else np.zeros(3)
    out = m * c**2 + p2 / (2 * m) - p2**2 / (8 * m**3 * c**2) + e * fd.A[0]
    out += (e * g / (2 * m * c)) * (float(S @ np.cross(P, E)) / (m * c)
                                    - float(B @ S))
    return float(out)


# ---------------------------------------------------------------------------
# expanded bracket table (leading order of each pair family)


def expanded_bracket(kind, i, j, z, model):
    """Leading-order bracket of the physical 3-vector pairs.

    kind is one of xx, xP, PP, xS, PS, SS; i, j are 1-based vector
    indices.  xS means {x_i, S_j} and PS means {P_i, S_j}.
    """
    fd = field_data(model, z.x)
    m, c, e = model.m, model.c, model.e
    S = spin_vector(z)
    P = kinetic_momentum(z, model, fd)[1:]
    ii, jj = i - 1, j - 1
    if kind == "xx":
        return float(EPS3[ii, jj] @ S) / (m * c) ** 2
    if kind == "xP":
        return 1.0 if i == j else 0.0
    if kind == "PP":
        B = 0.5 * np.einsum("ijk,jk->i", EPS3, fd.F[1:, 1:])
        return (e / c) * float(EPS3[ii, jj] @ B)
    if kind == "xS":
        return (S[jj] * P[ii] - (1.0 if i == j else 0.0) * float(P @ S)) / (m * c) ** 2
    if kind == "PS":
        return 0.0
    if kind == "SS":
        return float(EPS3[ii, jj] @ S)
    raise ValueError(f"unknown pair family {kind!r}")


def exact_bracket(kind, i, j, z, model, core=None):
    """The same pair evaluated with the full Dirac bracket."""
    core = core or dirac_core(z, model)
    xs = obs_coord("x", i)
    Ps = obs_kinetic(i)
    Ss = obs_spin3(i)
    second = {"x": obs_coord("x", j), "P": obs_kinetic(j), "S": obs_spin3(j)}
    first = {"x": xs, "P": Ps, "S": Ss}[kind[0]]
    return dirac_bracket(first, second[kind[1]], z, model, core)


def _ladder_state(c, background, m=1.0, g=2.0):
    if background == "crossed":
        bg = make_background("crossed", e=1.0, c=c, E=(0.2, 0.0, 0.1),
                             B=(0.0, 0.0, 1.0))
        x3 = (0.3, -0.2, 0.5)
    elif background == "coulomb":
        bg = make_background("coulomb", e=1.0, c=c, q=1.0)
        x3 = (1.6, -0.8, 1.1)
    else:
        raise ValueError(f"no ladder preset for background {background!r}")
    model = Model(background=bg, m=m, g=g)
    z = init_state(model, x3=x3, P3=(0.4, 0.3, -0.2), spin_dir=(0.3, -1.0, 0.5))
    return model, z


def bracket_ladder(background="crossed", cs=(10.0, 20.0, 40.0, 80.0)):
    """Residuals of the expanded table on a ladder of c values.

    Returns {family: {"residuals": [...], "scaled": [...], "order": k}}
    where scaled[n] = residual[n] * c_n^k must decrease strictly (down
    to a floating-point floor) if the table captures every term below
    order c^{-k}.
    """
    out = {fam: {"residuals": [], "order": k, "cs": list(cs)}
           for fam, k in LADDER_ORDERS.items()}
    h_res = []
    for c in cs:
        model, z = _ladder_state(c, background)
        core = dirac_core(z, model)
        fd = field_data(model, z.x)
        h_exact = model.c * kinetic_momentum(z, model, fd)[0] + model.e * fd.A[0]
        h_res.append(abs(h_exact - hamiltonian_expanded(z, model)))
        for fam in LADDER_ORDERS:
            worst = 0.0
            for i in (1, 2, 3):
                for j in (1, 2, 3):
                    d = abs(exact_bracket(fam, i, j, z, model, core)
                            - expanded_bracket(fam, i, j, z, model))
                    worst = max(worst, d)
            out[fam]["residuals"].append(worst)
    for fam, k in LADDER_ORDERS.items():
        out[fam]["scaled"] = [r * c**k for r, c in zip(out[fam]["residuals"], cs)]
    out["H"] = {"residuals": h_res, "order": 2, "cs": list(cs),
                "scaled": [r * c**2 for r, c in zip(h_res, cs)]}
    return out


def ladder_decreasing(entry, floor=1e-12):
    """Strict decrease of the scaled residuals, with an absolute floor
    below which rounding noise is not adjudicated."""
    s = entry["scaled"]
    return all(b < a or (a < floor and b < floor) for a, b in zip(s, s[1:]))


# ---------------------------------------------------------------------------
# the commuting-coordinates chart


def from_primed(xp, Pp, Sp, model):
    """Map primed (canonical) data to physical (x, P, S).

    x = x' - (P' x S')/(2 m^2 c^2); P is the kinetic momentum,
    P = P' - (e/c) A(x'); spin is untouched.
    """
    xp = np.asarray(xp, float)
    Pp = np.asarray(Pp, float)
    Sp = np.asarray(Sp, float)
    m, c, e = model.m, model.c, model.e
    x = xp - np.cross(Pp, Sp) / (2.0 * m**2 * c**2)
    x4 = np.array([0.0, *xp])
    A3 = model.background.A(x4)[1:]
    P = Pp - (e / c) * A3
    return x, P, Sp.copy()


def to_primed(x, P, S, model, tol=1e-14, max_iter=100):
    """Inverse chart by fixed-point iteration; composition with
    from_primed returns the input to 1e-12 or better."""
    x = np.asarray(x, float)
    P = np.asarray(P, float)
    S = np.asarray(S, float)
    m, c, e = model.m, model.c, model.e
    xp = x.copy()
    for _ in range(max_iter):
        A3 = model.background.A(np.array([0.0, *xp]))[1:]
        Pp = P + (e / c) * A3
        xp_new = x + np.cross(Pp, S) / (2.0 * m**2 * c**2)
        if np.max(np.abs(xp_new - xp)) < tol:
            xp = xp_new
            break
        xp = xp_new
    A3 = model.background.A(np.array([0.0, *xp]))[1:]
    return xp, P + (e / c) * A3, S.copy()


def primed_shift_example(model, P3=(1.0, 0.0, 0.0), S3=(0.0, 0.0, np.sqrt(3) / 2)):
    """Reference displacement of the chart at momentum P and spin S.

    With P along x1 and S along x3 of length sqrt(3)/2 (so the 12 spin
    tensor component is sqrt(3)), at m = 1, c = 10 the second coordinate
    obeys x'_2 - x_2 = -sqrt(3)/400.
    """
    shift = -np.cross(np.asarray(P3, float), np.asarray(S3, float))
    shift /= 2.0 * model.m**2 * model.c**2
    # x = x' + shift  <=>  x' - x = -shift
    return {"x_minus_xprime": shift.tolist(),
            "xprime_minus_x": (-shift).tolist()}

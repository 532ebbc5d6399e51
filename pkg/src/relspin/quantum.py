"""Pauli-level operator realization of the reduced phase space.

Canonical (x, p, sigma) carry the standard commutators.  The physical
position acquires a spin shift,

    xhat_i = x_i - (hbar cinv^2 / 4 m^2) eps_{ijk} P_j sigma_k,

which reproduces the classical position noncommutativity at its leading
order; kinetic momentum is p - e cinv A(xhat), spin is hbar sigma / 2,
and the electric dipole follows the constraint-resolved classical form
D = 2 (P x S) / (m c).

The payoff assembled here: re-expanding e A^0(xhat) around the
canonical position produces, for a linear potential exactly,

    e A^0(xhat) = e A^0(x) - (e cinv^2 / 2 m^2) S.(P x E),

which interferes with the covariant g-proportional coupling of the
expanded Hamiltonian and leaves spin-orbit strength e (g-1) / 2 m^2 c^2.
The classical counterpart of the same mechanism is the primed chart of
the expansion module; the quantum ordering corrections vanish for the
Coulomb field as well (the epsilon contraction kills them), which is
used by the hydrogen module.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy as sp

from .weyl import (Op, I2, anticommutator, commutator, cinv, cross, dot, e,
                   hbar, m)

g_sym = sp.Symbol("g", real=True)
B_SYM = sp.symbols("B1 B2 B3", real=True)
E_SYM = sp.symbols("E1 E2 E3", real=True)

EPS = {}
for _i in range(3):
    for _j in range(3):
        for _k in range(3):
            EPS[(_i, _j, _k)] = int((_i - _j) * (_j - _k) * (_k - _i) / 2)

FIELD_KINDS = ("free", "uniform-E", "uniform-B", "crossed")


def _eps_combo(vec_j, vec_k):
    """eps_{ijk} vec_j vec_k as a 3-tuple of Ops (i free)."""
    out = []
    for i in range(3):
        acc = Op()
        for j in range(3):
            for k in range(3):
                if EPS[(i, j, k)]:
                    acc = acc + (vec_j[j] * vec_k[k]).scale(EPS[(i, j, k)])
        out.append(acc)
    return tuple(out)


def _eps_combo_rev(vec_k, vec_j):
    """eps_{ijk} vec_k vec_j: same index pattern, reversed product order."""
    out = []
    for i in range(3):
        acc = Op()
        for j in range(3):
            for k in range(3):
                if EPS[(i, j, k)]:
                    acc = acc + (vec_k[k] * vec_j[j]).scale(EPS[(i, j, k)])
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class PauliSet:
    """Operator family for one uniform background."""

    kind: str
    x: tuple
    p: tuple
    sigma: tuple
    S: tuple
    P0hat: tuple
    xhat: tuple
    Phat: tuple
    Dhat: tuple
    Shat: dict
    E: tuple
    B: tuple
    A0: Op
    A0_hat: Op


def _vector_potential(B, pos):
    """A = B x r / 2 componentwise on operator positions."""
    out = []
    for i in range(3):
        acc = Op()
        for j in range(3):
            for k in range(3):
                if EPS[(i, j, k)] and B[j] != 0:
                    acc = acc + pos[k].scale(sp.Rational(EPS[(i, j, k)], 2) * B[j])
        out.append(acc)
    return tuple(out)


def build_operators(kind="uniform-B"):
    """All operators of the realization for a uniform background."""
    if kind not in FIELD_KINDS:
        raise ValueError(f"unknown field kind {kind!r}; use one of {FIELD_KINDS}")
    Bv = B_SYM if kind in ("uniform-B", "crossed") else (0, 0, 0)
    Ev = E_SYM if kind in ("uniform-E", "crossed") else (0, 0, 0)

    x = tuple(Op.x(i) for i in (1, 2, 3))
    p = tuple(Op.p(i) for i in (1, 2, 3))
    sig = tuple(Op.sigma(i) for i in (1, 2, 3))
    S = tuple(s.scale(hbar / 2) for s in sig)

    A_at_x = _vector_potential(Bv, x)
    P0hat = tuple(p[i] - A_at_x[i].scale(e * cinv) for i in range(3))

    shift = _eps_combo(P0hat, sig)
    xhat = tuple(x[i] - shift[i].scale(hbar * cinv**2 / (4 * m**2))
                 for i in range(3))

    A_at_xhat = _vector_potential(Bv, xhat)
    Phat = tuple(p[i] - A_at_xhat[i].scale(e * cinv) for i in range(3))

    # symmetrized: A(xhat) inside Phat carries sigma, so the bare
    # product would miss hermiticity at higher order
    Dhat = tuple(
        (op + opT).scale(hbar * cinv / (2 * m))
        for op, opT in zip(_eps_combo(Phat, sig), _eps_combo_rev(sig, Phat)))

    Shat = {}
    for i in range(3):
        for j in range(3):
            if i != j:
                k = 3 - i - j
                Shat[(i + 1, j + 1)] = sig[k].scale(hbar * EPS[(i, j, k)])

    A0 = Op()
    A0_hat = Op()
    for i in range(3):
        if Ev[i] != 0:
            A0 = A0 - x[i].scale(Ev[i])
            A0_hat = A0_hat - xhat[i].scale(Ev[i])

    return PauliSet(kind=kind, x=x, p=p, sigma=sig, S=S, P0hat=P0hat,
                    xhat=xhat, Phat=Phat, Dhat=Dhat, Shat=Shat,
                    E=Ev, B=Bv, A0=A0, A0_hat=A0_hat)


# ---------------------------------------------------------------------------
# correspondence with the expanded classical brackets


def _by_ihbar(op):
    return op.scale(1 / (sp.I * hbar))


def _target_xx(ps, i, j):
    acc = Op()
    for k in range(3):
        if EPS[(i - 1, j - 1, k)]:
            acc = acc + ps.sigma[k].scale(EPS[(i - 1, j - 1, k)])
    return acc.scale(hbar * cinv**2 / (2 * m**2))


def _target_PP(ps, i, j):
    val = 0
    for k in range(3):
        if EPS[(i - 1, j - 1, k)] and ps.B[k] != 0:
            val += EPS[(i - 1, j - 1, k)] * ps.B[k]
    return Op.scalar(e * cinv * val)


def _target_xS(ps, i, j):
    out = ps.S[j - 1] * ps.Phat[i - 1]
    if i == j:
        out = out - dot(ps.S, ps.Phat)
    return out.scale(cinv**2 / m**2)


def _target_SS(ps, i, j):
    acc = Op()
    for k in range(3):
        if EPS[(i - 1, j - 1, k)]:
            acc = acc + ps.S[k].scale(EPS[(i - 1, j - 1, k)])
    return acc


def correspondence_residuals(ps):
    """Residual operator of each pair family: commutator / (i hbar)
    minus the operator transcription of the expanded classical bracket.
    Keyed by family; values are Ops (zero Op = exact agreement)."""
    res = {}
    worst = {"xx": None, "xP": None, "PP": None, "xS": None, "PS": None,
             "SS": None}

    def keep(fam, op):
        o = op.min_cinv_order()
        if o is not None and (worst[fam] is None or o < worst[fam]):
            worst[fam] = o
            res[fam] = op

    for i in (1, 2, 3):
        for j in (1, 2, 3):
            keep("xx", _by_ihbar(commutator(ps.xhat[i - 1], ps.xhat[j - 1]))
                 - _target_xx(ps, i, j))
            keep("xP", _by_ihbar(commutator(ps.xhat[i - 1], ps.Phat[j - 1]))
                 - Op.scalar(1 if i == j else 0))
            keep("PP", _by_ihbar(commutator(ps.Phat[i - 1], ps.Phat[j - 1]))
                 - _target_PP(ps, i, j))
            keep("xS", _by_ihbar(commutator(ps.xhat[i - 1], ps.S[j - 1]))
                 - _target_xS(ps, i, j))
            keep("PS", _by_ihbar(commutator(ps.Phat[i - 1], ps.S[j - 1])))
            keep("SS", _by_ihbar(commutator(ps.S[i - 1], ps.S[j - 1]))
                 - _target_SS(ps, i, j))
    return {fam: res.get(fam) for fam in worst}


CORRESPONDENCE_FLOORS = {
    # minimal cinv order the residual of each family may contain;
    # None means the residual must vanish identically
    "free":      {"xx": 4, "xP": None, "PP": None, "xS": 2, "PS": None, "SS": None},
    "uniform-E": {"xx": 4, "xP": None, "PP": None, "xS": 2, "PS": None, "SS": None},
    "uniform-B": {"xx": 4, "xP": 3, "PP": 4, "xS": 2, "PS": 3, "SS": None},
    "crossed":   {"xx": 4, "xP": 3, "PP": 4, "xS": 2, "PS": 3, "SS": None},
}


def correspondence_report(kind="uniform-B"):
    """Minimal cinv order of each residual family vs. the quoted floor."""
    ps = build_operators(kind)
    rep = {}
    floors = CORRESPONDENCE_FLOORS[kind]
    for fam, op in correspondence_residuals(ps).items():
        order = None if op is None or op.is_zero() else op.min_cinv_order()
        floor = floors[fam]
        ok = order is None if floor is None else (order is not None and order >= floor)
        rep[fam] = {"min_order": order, "floor": floor, "ok": bool(ok)}
    return rep


# ---------------------------------------------------------------------------
# the potential re-expansion and the g - 1 assembly


def potential_shift(ps):
    """e A^0(xhat) - e A^0(x); exact as an operator for linear A^0."""
    return (ps.A0_hat - ps.A0).scale(e)


def shift_identity_residual(ps):
    """potential_shift + (e cinv^2 / 2 m^2) S.(P x E); zero for a
    uniform electric field."""
    PxE = _eps_combo(ps.P0hat, tuple(Op.scalar(v) for v in ps.E))
    target = dot(ps.S, PxE).scale(-e * cinv**2 / (2 * m**2))
    return potential_shift(ps) - target


def covariant_spin_orbit(ps, g=g_sym):
    """(e g / 2 m^2 c^2) S.(P x E), the coupling the expanded
    Hamiltonian inherits from the covariant dipole term."""
    PxE = _eps_combo(ps.P0hat, tuple(Op.scalar(v) for v in ps.E))
    return dot(ps.S, PxE).scale(e * g * cinv**2 / (2 * m**2))


def assembled_spin_orbit(ps, g=g_sym):
    """Covariant coupling plus the potential shift: the full spin-orbit
    operator of the realization."""
    return covariant_spin_orbit(ps, g) + potential_shift(ps)


def g_minus_one_residual(ps, g=g_sym):
    """assembled - (g-1)/g * covariant; identically zero iff the
    noncommutative shift converts the coupling g -> g - 1."""
    return assembled_spin_orbit(ps, g) - covariant_spin_orbit(ps, g).scale(
        sp.Rational(1) * (g - 1) / g)


def pauli_hamiltonian(kind="uniform-E", g=g_sym, include_so=True):
    """Operator Hamiltonian of the realization for a uniform background,
    with the constant rest energy dropped (it carries cinv^{-2} and is
    a multiple of the identity).

        H = P^2/2m - P^4 c^{-2}/8m^3 + e A^0(xhat)
            + (e g / 2 m c) [ S.(P x E)/(m c) - B.S ]

    Spin factors are symmetrized against momentum factors so the result
    is Hermitian by construction.
    """
    ps = build_operators(kind)
    P2 = dot(ps.Phat, ps.Phat)
    H = P2.scale(sp.Rational(1, 2) / m)
    H = H - (P2 * P2).scale(cinv**2 / (8 * m**3))
    H = H + ps.A0_hat.scale(e)
    if include_so:
        PxE = _eps_combo(ps.Phat, tuple(Op.scalar(v) for v in ps.E))
        so = Op()
        for k in range(3):
            so = so + anticommutator(ps.S[k], PxE[k]).scale(sp.Rational(1, 2))
        H = H + so.scale(e * g * cinv**2 / (2 * m**2))
        BS = Op()
        for k in range(3):
            if ps.B[k] != 0:
                BS = BS + ps.S[k].scale(ps.B[k])
        H = H - BS.scale(e * g * cinv / (2 * m))
    return H

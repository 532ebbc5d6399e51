"""Phase space of the spinning particle.

Coordinates are the 16-tuple z = (x^mu, p^mu, omega^mu, pi^mu): position,
canonical momentum, and the internal vector pair whose antisymmetrized
product is the spin tensor

    S^{mu nu} = 2 (omega^mu pi^nu - omega^nu pi^mu).

The canonical Poisson structure is {x^mu, p_nu} = delta^mu_nu and
{omega^mu, pi_nu} = delta^mu_nu, i.e. with upper-index storage
{x^mu, p^nu} = eta^{mu nu}.  Gradients of scalar observables are stored
as flat (16,) arrays in the block order (x, p, omega, pi), each block
differentiated with respect to the upper-index components.

The kinetic momentum is calP^i = p^i - (e/c) A^i together with the
energy function

    calP^0 = sqrt( calP_i calP_i - (e g / 4 c) (F S) + m^2 c^2 ),

which is used *as a function of z* inside the second-class constraint
pair

    T3 = -calP^0 omega^0 + calP^i omega^i,
    T4 = -calP^0 pi^0    + calP^i pi^i,

and in the covariant Hamiltonian H = c calP^0 + e A^0.  The remaining
first-class pair is T2 = omega.pi and T5 = pi^2 - alpha/omega^2; on
T2 = T5 = 0 the spin magnitude is fixed, S_{mu nu} S^{mu nu} = 8 alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fields import FieldBackground, make_background
from .minkowski import ETA_DIAG, boost_matrix, contract_2, lower2, mdot

BLOCKS = ("x", "p", "omega", "pi")


@dataclass
class PhaseState:
    """One phase-space point; vec is the flat 16-vector (x, p, omega, pi)."""

    vec: np.ndarray
    spinless: bool = False

    @classmethod
    def from_parts(cls, x, p, w, pi, spinless=False):
        vec = np.concatenate([np.asarray(b, dtype=float) for b in (x, p, w, pi)])
        if vec.shape != (16,):
            raise ValueError("each of x, p, omega, pi must have 4 components")
        return cls(vec=vec, spinless=spinless)

    @property
    def x(self):
        return self.vec[0:4]

    @property
    def p(self):
        return self.vec[4:8]

    @property
    def w(self):
        return self.vec[8:12]

    @property
    def pi(self):
        return self.vec[12:16]

    def copy(self):
        return PhaseState(vec=self.vec.copy(), spinless=self.spinless)

    def as_dict(self):
        return {
            "x": self.x.tolist(),
            "p": self.p.tolist(),
            "omega": self.w.tolist(),
            "pi": self.pi.tolist(),
            "spinless": self.spinless,
        }

    @classmethod
    def from_dict(cls, d):
        return cls.from_parts(d["x"], d["p"], d["omega"], d["pi"],
                              spinless=bool(d.get("spinless", False)))


@dataclass(frozen=True)
class Model:
    """Particle constants plus the background they move in."""

    background: FieldBackground
    m: float = 1.0
    g: float = 2.0
    hbar: float = 1.0
    alpha: float = None  # spin invariant; default 3 hbar^2 / 4 (spin one-half)

    def __post_init__(self):
        if self.alpha is None:
            object.__setattr__(self, "alpha", 0.75 * self.hbar**2)
        if self.m <= 0:
            raise ValueError("mass must be positive")

    @property
    def e(self):
        return self.background.e

    @property
    def c(self):
        return self.background.c


def free_model(m=1.0, g=2.0, c=10.0, e=1.0, hbar=1.0, alpha=None):
    return Model(background=make_background("zero", e=e, c=c), m=m, g=g,
                 hbar=hbar, alpha=alpha)


@dataclass(frozen=True)
class FieldsAt:
    """Background tensors evaluated once at a point."""

    A: np.ndarray
    dA: np.ndarray
    F: np.ndarray
    dF: np.ndarray
    F_low: np.ndarray   # F_{mu nu}
    dF_low: np.ndarray  # d_lam F_{mu nu}


def field_data(model, x4):
    bg = model.background
    F = bg.F(x4)
    dF = bg.dF(x4)
    return FieldsAt(A=bg.A(x4), dA=bg.dA(x4), F=F, dF=dF,
                    F_low=lower2(F),
                    dF_low=ETA_DIAG[None, :, None] * dF * ETA_DIAG[None, None, :])


# ---------------------------------------------------------------------------
# spin tensor and constraint values


def spin_tensor(z):
    w, pi = z.w, z.pi
    return 2.0 * (np.outer(w, pi) - np.outer(pi, w))


def spin_vector(z):
    S = spin_tensor(z)
    return 0.5 * np.array([S[2, 3], S[3, 1], S[1, 2]])


def dipole_vector(z):
    return spin_tensor(z)[1:, 0].copy()


def spin_square(z):
    S = spin_tensor(z)
    return contract_2(S, S)


def kinetic_momentum(z, model, fd=None):
    """Four-vector (calP^0, calP^i) with calP^0 the energy function."""
    fd = fd or field_data(model, z.x)
    e, c, m, g = model.e, model.c, model.m, model.g
    P3 = z.p[1:] - (e / c) * fd.A[1:]
    if z.spinless:
        rad = P3 @ P3 + (m * c) ** 2
    else:
        rad = P3 @ P3 - (e * g / (4 * c)) * contract_2(fd.F, spin_tensor(z)) + (m * c) ** 2
    if rad <= 0.0:
        raise ValueError(f"energy radicand {rad} is not positive; state outside model range")
    out = np.empty(4)
    out[0] = np.sqrt(rad)
    out[1:] = P3
    return out


def t2(z, model=None):
    return mdot(z.w, z.pi)


def t5(z, model):
    w2 = mdot(z.w, z.w)
    if w2 == 0.0:
        raise ValueError("T5 undefined at omega^2 = 0")
    return mdot(z.pi, z.pi) - model.alpha / w2


def t3(z, model, fd=None):
    P = kinetic_momentum(z, model, fd)
    return float(np.dot(ETA_DIAG * P, z.w))


def t4(z, model, fd=None):
    P = kinetic_momentum(z, model, fd)
    return float(np.dot(ETA_DIAG * P, z.pi))


def ssc_vector(z, model, fd=None):
    """S^{mu nu} calP_nu; vanishes when T3 = T4 = 0."""
    P = kinetic_momentum(z, model, fd)
    return spin_tensor(z) @ (ETA_DIAG * P)


def constraint_residuals(z, model):
    """All constraint values at z (exact zeros define the surface)."""
    if z.spinless:
        return {"T2": 0.0, "T3": 0.0, "T4": 0.0, "T5": 0.0, "ssc": 0.0, "spin2": 0.0}
    fd = field_data(model, z.x)
    return {
        "T2": t2(z),
        "T3": t3(z, model, fd),
        "T4": t4(z, model, fd),
        "T5": t5(z, model),
        "ssc": float(np.max(np.abs(ssc_vector(z, model, fd)))),
        "spin2": spin_square(z) - 8.0 * model.alpha,
    }


# ---------------------------------------------------------------------------
# observables with exact gradients


class Observable:
    """Named scalar on phase space with an exact 16-gradient.

    grad returns d(obs)/dz as a flat (16,) array in block order
    (x, p, omega, pi); exactness (vs. finite differences) is a tested
    contract because Dirac brackets are built from these gradients.
    """

    __slots__ = ("name", "_f", "_g")

    def __init__(self, name: str, f: Callable, g: Callable):
        self.name = name
        self._f = f
        self._g = g

    def __call__(self, z, model):
        return float(self._f(z, model))

    def grad(self, z, model):
        return self._g(z, model)

    def __repr__(self):
        return f"Observable({self.name})"


def _grad_w_rad(z, model, fd):
    """Gradient of the squared energy radicand W = calP^0 ** 2."""
    e, c, g = model.e, model.c, model.g
    P3 = z.p[1:] - (e / c) * fd.A[1:]
    S = spin_tensor(z)
    out = np.zeros(16)
    # x block: chain rule through A^i and F
    out[0:4] = -(2 * e / c) * (P3 @ fd.dA[1:, :])
    out[0:4] += -(e * g / (4 * c)) * np.einsum("lmn,mn->l", fd.dF_low, S)
    out[5:8] = 2.0 * P3
    out[8:12] = -(e * g / c) * (fd.F_low @ z.pi)
    out[12:16] = (e * g / c) * (fd.F_low @ z.w)
    return out


def _p0_and_grad(z, model, fd):
    P = kinetic_momentum(z, model, fd)
    return P, _grad_w_rad(z, model, fd) / (2.0 * P[0])


def _t34_grad(z, model, fd, v, v_index):
    """Gradient of -calP^0 v^0 + calP^i v^i for v = omega (index 8) or pi (12)."""
    e, c = model.e, model.c
    P, gP0 = _p0_and_grad(z, model, fd)
    out = -v[0] * gP0
    out[0:4] += -(e / c) * (v[1:] @ fd.dA[1:, :])
    out[5:8] += v[1:]
    out[v_index] += -P[0]
    out[v_index + 1:v_index + 4] += P[1:]
    return out


def obs_coord(block, mu):
    idx = 4 * BLOCKS.index(block) + mu
    one = np.zeros(16)
    one[idx] = 1.0
    name = {"x": "x", "p": "p", "omega": "omega", "pi": "pi"}[block] + f"^{mu}"
    return Observable(name, lambda z, model: z.vec[idx], lambda z, model: one.copy())


def obs_kinetic(i):
    """calP^i for spatial i in 1..3."""
    if i not in (1, 2, 3):
        raise ValueError("kinetic momentum observable is spatial, i in 1..3")

    def f(z, model):
        fd = field_data(model, z.x)
        return z.p[i] - (model.e / model.c) * fd.A[i]

    def grd(z, model):
        fd = field_data(model, z.x)
        out = np.zeros(16)
        out[4 + i] = 1.0
        out[0:4] = -(model.e / model.c) * fd.dA[i, :]
        return out

    return Observable(f"calP^{i}", f, grd)


def obs_energy():
    """calP^0 as a phase-space function."""

    def f(z, model):
        return kinetic_momentum(z, model)[0]

    def grd(z, model):
        fd = field_data(model, z.x)
        return _p0_and_grad(z, model, fd)[1]

    return Observable("calP^0", f, grd)


def obs_spin(mu, nu):
    def f(z, model):
        return 2.0 * (z.w[mu] * z.pi[nu] - z.w[nu] * z.pi[mu])

    def grd(z, model):
        out = np.zeros(16)
        out[8 + mu] += 2.0 * z.pi[nu]
        out[8 + nu] += -2.0 * z.pi[mu]
        out[12 + nu] += 2.0 * z.w[mu]
        out[12 + mu] += -2.0 * z.w[nu]
        return out

    return Observable(f"S^{mu}{nu}", f, grd)


def obs_t2():
    def grd(z, model):
        out = np.zeros(16)
        out[8:12] = ETA_DIAG * z.pi
        out[12:16] = ETA_DIAG * z.w
        return out

    return Observable("T2", lambda z, model: t2(z), grd)


def obs_t5():
    def grd(z, model):
        w2 = mdot(z.w, z.w)
        out = np.zeros(16)
        out[8:12] = 2.0 * model.alpha * (ETA_DIAG * z.w) / w2**2
        out[12:16] = 2.0 * ETA_DIAG * z.pi
        return out

    return Observable("T5", lambda z, model: t5(z, model), grd)


def obs_t3():
    def grd(z, model):
        fd = field_data(model, z.x)
        return _t34_grad(z, model, fd, z.w, 8)

    return Observable("T3", lambda z, model: t3(z, model), grd)


def obs_t4():
    def grd(z, model):
        fd = field_data(model, z.x)
        return _t34_grad(z, model, fd, z.pi, 12)

    return Observable("T4", lambda z, model: t4(z, model), grd)


def obs_hamiltonian():
    """Covariant Hamiltonian H = c calP^0 + e A^0 (lab-time generator)."""

    def f(z, model):
        fd = field_data(model, z.x)
        return model.c * kinetic_momentum(z, model, fd)[0] + model.e * fd.A[0]

    def grd(z, model):
        fd = field_data(model, z.x)
        out = model.c * _p0_and_grad(z, model, fd)[1]
        out[0:4] += model.e * fd.dA[0, :]
        return out

    return Observable("H", f, grd)


def poisson_bracket(A, B, z, model):
    """Canonical bracket {A, B} at z from the exact gradients."""
    return pair_gradients(A.grad(z, model), B.grad(z, model))


def pair_gradients(ga, gb):
    ax, ap, aw, aq = ga[0:4], ga[4:8], ga[8:12], ga[12:16]
    bx, bp, bw, bq = gb[0:4], gb[4:8], gb[8:12], gb[12:16]
    return float(ax @ (ETA_DIAG * bp) - ap @ (ETA_DIAG * bx)
                 + aw @ (ETA_DIAG * bq) - aq @ (ETA_DIAG * bw))


def symplectic_apply(gb):
    """J grad(B): the 16-vector of {z^k, B} for all coordinates."""
    out = np.empty(16)
    out[0:4] = ETA_DIAG * gb[4:8]
    out[4:8] = -ETA_DIAG * gb[0:4]
    out[8:12] = ETA_DIAG * gb[12:16]
    out[12:16] = -ETA_DIAG * gb[8:12]
    return out


# ---------------------------------------------------------------------------
# constrained initial data


def _rest_spin_pair(spin_dir, alpha):
    """Unit omega and orthogonal pi with omega x pi = sqrt(alpha) spin_dir.

    Gauge choice |omega| = 1 (T5 then forces |pi|^2 = alpha).  The
    in-plane direction is the coordinate axis least aligned with
    spin_dir, orthonormalized, which keeps the construction
    deterministic.
    """
    n = np.asarray(spin_dir, dtype=float)
    nn = np.linalg.norm(n)
    if nn == 0.0:
        raise ValueError("spin_dir must be a nonzero three-vector")
    n = n / nn
    axis = np.argmin(np.abs(n))
    a = np.zeros(3)
    a[axis] = 1.0
    a -= (a @ n) * n
    a /= np.linalg.norm(a)
    b = np.sqrt(alpha) * np.cross(n, a)
    return a, b


def init_state(model, x3, P3, spin_dir=(0, 0, 1.0), t=0.0):
    """Constrained state with given position, spatial kinetic momentum, spin.

    The internal pair is built in the rest frame (rest spin vector
    sqrt(alpha) spin_dir, |omega| = 1 gauge) and boosted with the pure
    boost that maps the rest momentum to (calP^0, P3).  Because the
    energy function feeds (F S) back into calP^0, the boost is solved
    by a short fixed-point iteration.  alpha = 0 returns a spinless
    flagged state instead (omega = pi = 0 would make T5 singular).
    """
    m, c, e, g = model.m, model.c, model.e, model.g
    x4 = np.concatenate([[c * t], np.asarray(x3, dtype=float)])
    P3 = np.asarray(P3, dtype=float)
    fd = field_data(model, x4)

    if model.alpha == 0.0:
        P0 = np.sqrt(P3 @ P3 + (m * c) ** 2)
        p = np.concatenate([[P0], P3]) + (e / c) * fd.A
        return PhaseState.from_parts(x4, p, np.zeros(4), np.zeros(4), spinless=True)

    a3, b3 = _rest_spin_pair(spin_dir, model.alpha)
    w_rest = np.concatenate([[0.0], a3])
    pi_rest = np.concatenate([[0.0], b3])

    fs = 0.0
    w = pi = None
    for _ in range(200):
        mstar2 = (m * c) ** 2 - (e * g / (4 * c)) * fs
        if mstar2 <= 0.0:
            raise ValueError("field-spin coupling exceeds the mass shell at this point")
        P0 = np.sqrt(P3 @ P3 + mstar2)
        u = np.concatenate([[P0], P3]) / np.sqrt(mstar2)
        L = boost_matrix(u)
        w, pi = L @ w_rest, L @ pi_rest
        fs_new = contract_2(fd.F, 2.0 * (np.outer(w, pi) - np.outer(pi, w)))
        if abs(fs_new - fs) <= 1e-15 * (1.0 + abs(fs_new)):
            fs = fs_new
            break
        fs = fs_new
    else:
        raise RuntimeError("field-spin fixed point did not converge")

    mstar2 = (m * c) ** 2 - (e * g / (4 * c)) * fs
    P0 = np.sqrt(P3 @ P3 + mstar2)
    p = np.concatenate([[P0], P3]) + (e / c) * fd.A
    z = PhaseState.from_parts(x4, p, w, pi)

    res = constraint_residuals(z, model)
    worst = max(abs(v) for v in res.values())
    if worst > 1e-10 * (1.0 + (m * c) ** 2):
        raise RuntimeError(f"init_state left residuals {res}")
    return z


def random_constrained_state(model, rng, p_scale=0.15, x_box=1.0):
    """Random exactly-constrained state, used by tests and selftests."""
    if model.background.kind == "coulomb":
        u = rng.normal(size=3)
        x3 = (1.5 + 2.0 * rng.random()) * u / np.linalg.norm(u)
    else:
        x3 = x_box * (2.0 * rng.random(3) - 1.0)
    P3 = p_scale * model.m * model.c * rng.normal(size=3)
    n = rng.normal(size=3)
    return init_state(model, x3, P3, spin_dir=n / np.linalg.norm(n))

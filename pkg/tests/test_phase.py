"""Phase-space layer: constrained state construction, observables and
their exact gradients.  Gradients are pinned two independent ways, by
central finite differences and by the forward-mode dual-number route,
because every bracket downstream is assembled from them."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relspin import duals
from relspin.phase import (Model, PhaseState, constraint_residuals,
                           dipole_vector, field_data, init_state,
                           kinetic_momentum, obs_coord, obs_energy,
                           obs_hamiltonian, obs_kinetic, obs_spin, obs_t2,
                           obs_t3, obs_t4, obs_t5, poisson_bracket,
                           random_constrained_state, spin_square, spin_tensor,
                           spin_vector, ssc_vector)
from relspin.minkowski import ETA_DIAG, contract_2

from conftest import BACKGROUND_PARAMS, build_model, state_batch


def _fd_grad16(obs, z, model, h=1e-6):
    out = np.empty(16)
    for k in range(16):
        vp, vm = z.vec.copy(), z.vec.copy()
        vp[k] += h
        vm[k] -= h
        out[k] = (obs(PhaseState(vec=vp), model)
                  - obs(PhaseState(vec=vm), model)) / (2 * h)
    return out


# ---------------------------------------------------------------------------
# state construction


@pytest.mark.parametrize("kind", sorted(BACKGROUND_PARAMS))
def test_init_state_sits_on_surface(kind):
    model = build_model(kind)
    z = init_state(model, x3=(1.2, -0.4, 0.8), P3=(0.3, 0.2, -0.5),
                   spin_dir=(0.4, -1.0, 0.2))
    res = constraint_residuals(z, model)
    for key, val in res.items():
        assert abs(val) < 1e-11, (key, val)


@pytest.mark.parametrize("kind", sorted(BACKGROUND_PARAMS))
def test_random_states_sit_on_surface(kind):
    model = build_model(kind)
    for z in state_batch(model, 12, seed=5):
        res = constraint_residuals(z, model)
        for key, val in res.items():
            assert abs(val) < 1e-10, (key, val)


def test_rest_spin_length():
    # at rest the spin three-vector has length sqrt(alpha)
    model = build_model("zero", g=2.0)
    z = init_state(model, x3=(0, 0, 0), P3=(0, 0, 0), spin_dir=(0, 0, 1.0))
    S = spin_vector(z)
    assert np.allclose(S, [0, 0, np.sqrt(model.alpha)])
    assert np.isclose(spin_square(z), 8.0 * model.alpha)
    # dipole part vanishes at rest
    assert np.allclose(dipole_vector(z), 0.0)


def test_dipole_ssc_identity():
    # on the surface P_mu S^{mu nu} = 0 forces D = 2 (P x S) / P^0
    model = build_model("crossed")
    for z in state_batch(model, 8, seed=11):
        P = kinetic_momentum(z, model)
        S = spin_vector(z)
        D = dipole_vector(z)
        assert np.allclose(D, 2.0 * np.cross(P[1:], S) / P[0], atol=1e-11)
        assert np.max(np.abs(ssc_vector(z, model))) < 1e-11


def test_spin_tensor_layout():
    model = build_model("zero")
    z = init_state(model, x3=(0, 0, 0), P3=(0.5, -0.2, 0.1),
                   spin_dir=(0.3, 0.7, -0.2))
    S = spin_tensor(z)
    assert np.allclose(S, -S.T)
    Svec = spin_vector(z)
    # S^{ij} = 2 eps^{ijk} S_k
    assert np.isclose(S[1, 2], 2 * Svec[2])
    assert np.isclose(S[2, 3], 2 * Svec[0])
    assert np.isclose(S[3, 1], 2 * Svec[1])


def test_energy_radicand_guard():
    model = build_model("coulomb")
    # close to the center, with a large dipole component along E, the
    # g (F S) term overwhelms (mc)^2 and the square root must refuse
    z = PhaseState.from_parts(x=(0.0, 1e-2, 0.0, 0.0), p=(0.0, 0.0, 0.0, 0.0),
                              w=(1.0, 0.0, 0.0, 0.0), pi=(0.0, -1.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        kinetic_momentum(z, model)


def test_mass_shell_identity():
    # (P^0)^2 - P.P = (mc)^2 - (e g / 4c) (F S) by construction
    model = build_model("crossed", g=2.7)
    for z in state_batch(model, 6, seed=2):
        fd = field_data(model, z.x)
        P = kinetic_momentum(z, model, fd)
        fs = contract_2(fd.F, spin_tensor(z))
        lhs = P[0] ** 2 - P[1:] @ P[1:]
        rhs = (model.m * model.c) ** 2 - model.e * model.g / (4 * model.c) * fs
        assert np.isclose(lhs, rhs, rtol=1e-13)


# ---------------------------------------------------------------------------
# observable gradients: finite differences and duals


OBS_FACTORIES = [
    ("P1", lambda: obs_kinetic(1)),
    ("P0", lambda: obs_energy()),
    ("S01", lambda: obs_spin(0, 1)),
    ("S23", lambda: obs_spin(2, 3)),
    ("T2", lambda: obs_t2()),
    ("T3", lambda: obs_t3()),
    ("T4", lambda: obs_t4()),
    ("T5", lambda: obs_t5()),
    ("H", lambda: obs_hamiltonian()),
]


@pytest.mark.parametrize("name,make", OBS_FACTORIES)
@pytest.mark.parametrize("kind", ["crossed", "coulomb"])
def test_observable_gradients_match_fd(kind, name, make):
    model = build_model(kind, g=2.4)
    obs = make()
    for z in state_batch(model, 3, seed=7):
        g_exact = obs.grad(z, model)
        g_fd = _fd_grad16(obs, z, model)
        assert np.allclose(g_exact, g_fd, rtol=1e-6, atol=1e-7), name


DUAL_EXPRS = [
    ("P0", obs_energy, duals.energy_expr),
    ("T3", obs_t3, duals.t3_expr),
    ("T4", obs_t4, duals.t4_expr),
    ("H", obs_hamiltonian, duals.hamiltonian_expr),
]


@pytest.mark.parametrize("name,make,expr", DUAL_EXPRS)
@pytest.mark.parametrize("kind", ["uniform-B", "coulomb"])
def test_observable_gradients_match_duals(kind, name, make, expr):
    """Dual-number forward AD is the second, independent gradient route;
    agreement here is exact up to roundoff, no FD truncation error."""
    model = build_model(kind, g=2.4)
    hand = make()
    dual = duals.dual_observable(name, expr)
    for z in state_batch(model, 4, seed=13):
        assert np.isclose(hand(z, model), dual(z, model), rtol=1e-12)
        gh = hand.grad(z, model)
        gd = dual.grad(z, model)
        assert np.allclose(gh, gd, rtol=1e-11, atol=1e-13), name


# ---------------------------------------------------------------------------
# Poisson layer


def test_canonical_pairs():
    model = build_model("zero")
    z = state_batch(model, 1, seed=3)[0]
    x1 = obs_coord("x", 1)
    p1 = obs_coord("p", 1)
    w2 = obs_coord("omega", 2)
    pi2 = obs_coord("pi", 2)
    assert np.isclose(poisson_bracket(x1, p1, z, model), 1.0)
    assert np.isclose(poisson_bracket(w2, pi2, z, model), 1.0)
    assert np.isclose(poisson_bracket(x1, w2, z, model), 0.0)
    assert np.isclose(poisson_bracket(x1, x1, z, model), 0.0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3),
       st.integers(0, 3))
def test_spin_algebra_so31(a, b, c_, d):
    """{S^{ab}, S^{cd}} closes on the Lorentz algebra of spin tensors:
    2(eta^{ac} S^{bd} - eta^{bc} S^{ad} - eta^{ad} S^{bc} + eta^{bd} S^{ac}),
    the factor 2 coming from S = 2 (omega pi - pi omega)."""
    model = build_model("zero")
    z = state_batch(model, 1, seed=9)[0]
    S = spin_tensor(z)
    eta = ETA_DIAG
    lhs = poisson_bracket(obs_spin(a, b), obs_spin(c_, d), z, model)
    rhs = 2.0 * ((eta[a] if a == c_ else 0.0) * S[b, d]
                 - (eta[b] if b == c_ else 0.0) * S[a, d]
                 - (eta[a] if a == d else 0.0) * S[b, c_]
                 + (eta[b] if b == d else 0.0) * S[a, c_])
    assert np.isclose(lhs, rhs, atol=1e-12)

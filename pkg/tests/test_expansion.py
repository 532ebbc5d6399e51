"""Order counting of the expanded bracket table and the commuting chart."""

import numpy as np
import pytest

from relspin.brackets import dirac_core
from relspin.expansion import (LADDER_ORDERS, bracket_ladder, exact_bracket,
                               expanded_bracket, from_primed,
                               hamiltonian_expanded, ladder_decreasing,
                               obs_spin3, primed_shift_example, to_primed,
                               _ladder_state)
from relspin.fields import make_background
from relspin.phase import Model, init_state, spin_vector


@pytest.mark.parametrize("background", ["crossed", "coulomb"])
def test_ladder_every_family_decreases(background):
    lad = bracket_ladder(background, cs=(10.0, 20.0, 40.0, 80.0))
    for fam in list(LADDER_ORDERS) + ["H"]:
        assert ladder_decreasing(lad[fam]), (fam, lad[fam]["scaled"])


def test_ladder_residuals_fall_fast_enough():
    # consistency with the quoted orders: residuals must fall by at
    # least 2^k per doubling of c once above the rounding floor
    lad = bracket_ladder("crossed", cs=(10.0, 20.0, 40.0))
    for fam, k in LADDER_ORDERS.items():
        res = lad[fam]["residuals"]
        for a, b in zip(res, res[1:]):
            if a < 1e-12:
                continue
            assert b < a / 2**k * 1.05, (fam, res)


def test_ladder_decreasing_helper():
    assert ladder_decreasing({"scaled": [1.0, 0.5, 0.25]})
    assert not ladder_decreasing({"scaled": [1.0, 1.1, 0.2]})
    # both below floor: rounding noise is not adjudicated
    assert ladder_decreasing({"scaled": [1.0, 1e-14, 3e-14]})


def test_expanded_bracket_values_free():
    bg = make_background("zero", e=1.0, c=10.0)
    model = Model(background=bg, m=1.0, g=2.0, alpha=0.75)
    z = init_state(model, x3=(0.1, 0.2, -0.3), P3=(0.4, -0.1, 0.2),
                   spin_dir=(0.2, 0.5, -1.0))
    S = spin_vector(z)
    assert np.isclose(expanded_bracket("xx", 1, 2, z, model),
                      S[2] / (model.m * model.c) ** 2, rtol=0, atol=1e-15)
    assert expanded_bracket("xP", 1, 1, z, model) == 1.0
    assert expanded_bracket("xP", 1, 2, z, model) == 0.0
    assert expanded_bracket("PP", 2, 3, z, model) == 0.0
    assert expanded_bracket("PS", 1, 3, z, model) == 0.0
    assert np.isclose(expanded_bracket("SS", 1, 2, z, model), S[2],
                      rtol=0, atol=1e-15)
    with pytest.raises(ValueError):
        expanded_bracket("qq", 1, 1, z, model)


def test_obs_spin3_matches_spin_vector():
    model, z = _ladder_state(10.0, "crossed")
    S = spin_vector(z)
    for k in (1, 2, 3):
        assert np.isclose(obs_spin3(k)(z, model), S[k - 1], atol=1e-14)


def test_primed_positions_commute_to_higher_order():
    # {x'_1, x'_2} assembled by Leibniz from the pair table must be
    # O(c^-4), two powers beyond the O(c^-2) physical-position bracket
    res = []
    for c in (10.0, 20.0, 40.0):
        model, z = _ladder_state(c, "crossed")
        core = dirac_core(z, model)
        S = spin_vector(z)
        from relspin.phase import field_data, kinetic_momentum
        P = kinetic_momentum(z, model, field_data(model, z.x))[1:]
        eps = np.zeros((3, 3, 3))
        for a, b, cc, s in ((0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
                            (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1)):
            eps[a, b, cc] = s
        i, j = 1, 2
        val = exact_bracket("xx", i, j, z, model, core)
        pref = 1.0 / (2.0 * model.m**2 * c**2)
        for k in range(3):
            for l in range(3):
                if eps[j - 1, k, l]:
                    val += pref * eps[j - 1, k, l] * (
                        exact_bracket("xP", i, k + 1, z, model, core) * S[l]
                        + P[k] * exact_bracket("xS", i, l + 1, z, model, core))
                if eps[i - 1, k, l]:
                    val -= pref * eps[i - 1, k, l] * (
                        exact_bracket("xP", j, k + 1, z, model, core) * S[l]
                        + P[k] * exact_bracket("xS", j, l + 1, z, model, core))
        res.append(abs(val))
    assert res[0] < 1e-4
    assert res[1] < res[0] / 8.0
    assert res[2] < res[1] / 8.0


def test_chart_roundtrip_both_ways():
    bg = make_background("coulomb", e=1.0, c=10.0, q=1.0)
    model = Model(background=bg, m=1.0, g=2.0, alpha=0.75)
    rng = np.random.default_rng(7)
    for _ in range(20):
        x = rng.uniform(0.5, 2.0, 3) * rng.choice([-1.0, 1.0], 3)
        P = rng.normal(0.0, 0.6, 3)
        S = rng.normal(0.0, 0.5, 3)
        xp, Pp, Sp = to_primed(x, P, S, model)
        x2, P2, S2 = from_primed(xp, Pp, Sp, model)
        assert np.max(np.abs(x2 - x)) < 1e-12
        assert np.max(np.abs(P2 - P)) < 1e-12
        assert np.array_equal(S2, S)
        x3, P3, S3 = from_primed(x, P, S, model)
        xb, Pb, Sb = to_primed(x3, P3, S3, model)
        assert np.max(np.abs(xb - x)) < 1e-12
        assert np.max(np.abs(Pb - P)) < 1e-12


def test_primed_shift_reference_value():
    bg = make_background("zero", e=1.0, c=10.0)
    model = Model(background=bg, m=1.0, g=2.0, alpha=0.75)
    out = primed_shift_example(model)
    assert np.isclose(out["xprime_minus_x"][1], -np.sqrt(3.0) / 400.0,
                      rtol=0, atol=1e-16)
    assert out["xprime_minus_x"][0] == 0.0
    assert out["xprime_minus_x"][2] == 0.0


def test_expanded_hamiltonian_nonrelativistic_pieces():
    # raise c so only the leading kinetic + potential + magnetic moment
    # terms matter, then check them against hand values
    bg = make_background("uniform-B", e=1.0, c=1e4, B=(0.0, 0.0, 0.7))
    model = Model(background=bg, m=2.0, g=2.0, alpha=0.75)
    z = init_state(model, x3=(0.1, -0.2, 0.3), P3=(0.3, 0.1, -0.2),
                   spin_dir=(0.0, 0.0, 1.0))
    S = spin_vector(z)
    h = hamiltonian_expanded(z, model)
    p2 = 0.3**2 + 0.1**2 + 0.2**2
    expect = (model.m * model.c**2 + p2 / (2 * model.m)
              - model.g / (2 * model.m * model.c) * 0.7 * S[2])
    assert np.isclose(h, expect, rtol=0, atol=1e-10)

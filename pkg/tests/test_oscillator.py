import cmath
import math

import numpy as np
import pytest

from kgconformal.core import QuantumNumberError, SpaceTimePoint, natural_units
from kgconformal.harness import Grid
from kgconformal import oscillator as ho

MODEL = ho.OscillatorModel(omega=1.0, units=natural_units())
POINTS = Grid(r_min=0.1, r_max=4.0, shells=8).points()


def test_spectrum_frozen_oracles():
    # E_n = sqrt(2 Omega (3/2 + n) + 1) in natural units with Omega = 1:
    # n = 0..3 gives 2, sqrt(6), sqrt(8), sqrt(10)
    assert ho.energy(MODEL, 0) == pytest.approx(2.0, abs=1e-15)
    assert ho.energy(MODEL, 1) == pytest.approx(2.449489742783178, abs=1e-14)
    assert ho.energy(MODEL, 2) == pytest.approx(2.8284271247461903, abs=1e-14)
    assert ho.energy(MODEL, 3) == pytest.approx(3.1622776601683795, abs=1e-14)


def test_spectrum_units_scaling():
    u = natural_units()
    m2 = ho.OscillatorModel(omega=0.5, units=u)
    assert ho.energy(m2, 0) == pytest.approx(math.sqrt(2.0 * 0.5 * 1.5 + 1.0))


def test_state_enumeration():
    for n in range(5):
        states = list(ho.states_with_n(MODEL, n))
        assert len(states) == (n + 1) * (n + 2) // 2
        assert all(s.n == n for s in states)
        assert len({s.ls for s in states}) == len(states)


def test_state_validation():
    with pytest.raises(QuantumNumberError):
        ho.make_state(MODEL, -1, 0, 0)


def test_map_scale():
    cmap = ho.oscillator_map(MODEL, ho.energy(MODEL, 0))
    assert cmap.a == 0.0
    assert cmap.lam == 2.0
    assert cmap.b == pytest.approx(math.sqrt(2.0), abs=1e-15)  # sqrt(2 hbar c / Omega)


def test_eigenfunction_x_separable_form():
    """psi = prod_j H_lj(xi_j) exp(-xi^2/2) exp(-iEt), xi = x sqrt(Omega)."""
    state = ho.make_state(MODEL, 2, 0, 1)
    fld = ho.eigenfunction_x(MODEL, state)
    p = SpaceTimePoint(x=(0.7, -0.4, 1.1), t=0.3)
    xi = [v * MODEL.xi_scale for v in p.x]
    from kgconformal.specfun import hermite

    want = (
        hermite(2, xi[0]) * hermite(0, xi[1]) * hermite(1, xi[2])
        * math.exp(-0.5 * sum(v * v for v in xi))
        * cmath.exp(-1j * state.energy * p.t)
    )
    # allow an overall constant normalization: the ratio to the separable
    # form must be the same at unrelated spacetime points
    ratio = complex(fld.at(p)) / want
    q = SpaceTimePoint(x=(0.1, 0.9, -0.2), t=-0.6)
    xi_q = [v * MODEL.xi_scale for v in q.x]
    want_q = (
        hermite(2, xi_q[0]) * hermite(0, xi_q[1]) * hermite(1, xi_q[2])
        * math.exp(-0.5 * sum(v * v for v in xi_q))
        * cmath.exp(-1j * state.energy * q.t)
    )
    assert complex(fld.at(q)) / want_q == pytest.approx(ratio, rel=1e-12)


def test_kg_residual_x_ground_state(exact_cfg):
    case = ho.kg_residual_x(MODEL, ho.make_state(MODEL, 0, 0, 0), POINTS, exact_cfg, 1e-10)
    assert case.passed
    assert case.max_residual < 1e-13


def test_kg_residual_x_detects_wrong_energy(exact_cfg):
    st = ho.make_state(MODEL, 0, 0, 0)
    case = ho.kg_residual_x(
        MODEL, st, POINTS, exact_cfg, 1e-10, energy_override=st.energy + 0.05
    )
    assert not case.passed


def test_kg_residual_z(exact_cfg):
    rep = ho.kg_residual_z(MODEL, ho.make_state(MODEL, 1, 1, 0), POINTS, exact_cfg, 1e-10)
    assert rep.passed
    assert len(rep.cases) == 2  # equation + energy-operator check


def test_z_eigenvalue_is_energy_shift():
    # the transformed equation carries E^2 - 3 hbar c Omega, not E^2
    st2 = ho.make_state(MODEL, 0, 1, 1)
    ev = st2.energy**2 - 3.0 * MODEL.units.hbar * MODEL.units.c * MODEL.omega
    assert ev == pytest.approx(8.0 - 3.0, abs=1e-12)


def test_pointwise_z_equals_x(exact_cfg):
    """eigenfunction_z composed with the map reproduces eigenfunction_x."""
    for n in range(3):
        for state in ho.states_with_n(MODEL, n):
            fx = ho.eigenfunction_x(MODEL, state)
            fz = ho.eigenfunction_z(MODEL, state)
            scale = max(abs(complex(fx.at(p))) for p in POINTS)
            for p in POINTS[::7]:
                assert abs(complex(fz.at(p)) - complex(fx.at(p))) < 1e-13 * scale


def test_ladder_annihilates_ground(exact_cfg):
    ground = ho.make_state(MODEL, 0, 0, 0)
    psi0 = ho.eigenfunction_x(MODEL, ground)
    p = SpaceTimePoint(x=(0.5, -0.3, 0.8), t=0.2)
    for i in range(3):
        assert abs(ho.ladder_apply(MODEL, ("lower", i), psi0, p, exact_cfg)) < 1e-13


def test_raise_then_lower_is_diagonal(exact_cfg):
    """a_i^dag a_i has eigenvalue l_i on the separable eigenfunctions."""
    state = ho.make_state(MODEL, 2, 1, 0)
    fld = ho.eigenfunction_x(MODEL, state)
    p = SpaceTimePoint(x=(0.4, 0.9, -0.2), t=0.1)
    val, err = ho.number_operator_apply(MODEL, fld, p, exact_cfg)
    assert val == pytest.approx(3.0 * complex(fld.at(p)), rel=1e-11)
    assert err == 0.0


def test_ladder_raises_degree(exact_cfg):
    """a_1^dag on the ground state is proportional to the (1,0,0) state."""
    ground = ho.make_state(MODEL, 0, 0, 0)
    psi0 = ho.eigenfunction_x(MODEL, ground)
    excited = ho.eigenfunction_x(MODEL, ho.make_state(MODEL, 1, 0, 0))
    p1 = SpaceTimePoint(x=(0.5, 0.2, 0.1), t=0.0)
    p2 = SpaceTimePoint(x=(1.1, -0.4, 0.3), t=0.0)
    r1 = ho.ladder_apply(MODEL, ("raise", 0), psi0, p1, exact_cfg) / complex(excited.at(p1))
    r2 = ho.ladder_apply(MODEL, ("raise", 0), psi0, p2, exact_cfg) / complex(excited.at(p2))
    assert r1 == pytest.approx(r2, rel=1e-11)
    assert abs(r1) > 1e-3

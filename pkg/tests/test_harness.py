import math

import pytest

from kgconformal.core import ConfigError, SpaceTimePoint
from kgconformal.diffengine import DiffConfig, MODE_EXACT, MODE_STENCIL
from kgconformal.harness import (
    Grid,
    SUITES,
    TestFieldSpec,
    default_tolerance,
    generate_test_field,
    run_suite,
    scaled_cfg,
)


def test_grid_shape():
    g = Grid(r_min=0.1, r_max=2.0, shells=5)
    pts = g.points()
    assert len(pts) == 5 * 6 * 2  # shells x directions x times
    radii = sorted({round(p.r, 12) for p in pts})
    assert radii[0] == pytest.approx(0.1)
    assert radii[-1] == pytest.approx(2.0)


def test_grid_validation():
    with pytest.raises(ConfigError):
        Grid(r_min=0.0, r_max=1.0)
    with pytest.raises(ConfigError):
        Grid(r_min=2.0, r_max=1.0)


def test_default_tolerance():
    assert default_tolerance(DiffConfig(mode=MODE_EXACT)) == 1e-10
    assert default_tolerance(DiffConfig(mode=MODE_STENCIL)) == 1e-8


def test_scaled_cfg():
    base = DiffConfig(mode=MODE_STENCIL, base_step=1e-2)
    scaled = scaled_cfg(base, 100.0)
    assert scaled.step(0) == pytest.approx(1.0)
    assert scaled.step(3) == pytest.approx(1e-2)  # time axis untouched
    # exact mode ignores steps entirely
    assert scaled_cfg(DiffConfig(mode=MODE_EXACT), 100.0).step_overrides is None


def test_generate_test_field_deterministic():
    a = generate_test_field(TestFieldSpec(seed=7))
    b = generate_test_field(TestFieldSpec(seed=7))
    c = generate_test_field(TestFieldSpec(seed=8))
    p = SpaceTimePoint(x=(0.4, -0.2, 0.1), t=0.3)
    assert complex(a.at(p)) == complex(b.at(p))
    assert complex(a.at(p)) != complex(c.at(p))
    assert a.energy_hint == b.energy_hint


def test_generate_test_field_decays_at_boundary():
    spec = TestFieldSpec(seed=3, r_max=3.0)
    fld = generate_test_field(spec)
    near = abs(complex(fld.at(SpaceTimePoint(x=(0.1, 0.1, 0.1), t=0.0))))
    far = abs(complex(fld.at(SpaceTimePoint(x=(3.0, 0.0, 0.0), t=0.0))))
    assert far < 1e-4 * max(near, 1e-30)


def test_unknown_suite_rejected():
    with pytest.raises(ConfigError):
        run_suite("no-such-suite")


@pytest.mark.parametrize("suite", ["holomorphy", "map-independence", "reductions"])
def test_cheap_suites_pass_exact(suite):
    rep = run_suite(suite, {}, DiffConfig(mode=MODE_EXACT))
    assert rep.suite == suite
    assert rep.passed
    probes = [c for c in rep.cases if c.is_probe]
    assert probes, "every suite carries at least one fail-probe"
    assert all(not c.passed for c in probes)


def test_suite_reports_are_deterministic():
    kw = ({"nmax": 1}, DiffConfig(mode=MODE_EXACT))
    a = run_suite("oscillator-x", *kw).with_wall_ms(0.0)
    b = run_suite("oscillator-x", *kw).with_wall_ms(0.0)
    assert a.to_json() == b.to_json()


def test_operator_identities_small():
    rep = run_suite("operator-identities", {"n_fields": 3}, DiffConfig(mode=MODE_EXACT))
    assert rep.passed
    names = [c.name for c in rep.cases]
    assert "qprop-oscillator" in names
    assert "d2z-coulomb" in names
    assert "probe:reversed-composition" in names


def test_ladder_suite_small():
    rep = run_suite("ladder", {"nmax": 1}, DiffConfig(mode=MODE_EXACT))
    assert rep.passed
    byname = {c.name: c for c in rep.cases}
    assert byname["annihilate-ground"].max_residual < 1e-12
    assert not byname["probe:number-operator-off-by-one"].passed


def test_all_suites_registered():
    assert len(SUITES) == 9
    assert len(set(SUITES)) == 9

import json

import numpy as np
import pytest

from kpo_spectro.config import (
    apply_overrides,
    config_hash,
    load_scenario,
    scenario_names,
    validate_config,
)
from kpo_spectro.errors import ConfigError
from kpo_spectro.units import to_mhz


def _minimal(**model_overrides):
    model = {
        "delta_over_2pi_MHz": 7.0,
        "chi_over_2pi_MHz": 30.0,
        "beta_over_2pi_MHz": 0.0,
        "kappa_ex_over_2pi_MHz": 0.4,
        "kappa_int_over_2pi_MHz": 4.0,
    }
    model.update(model_overrides)
    return {"schema": 1, "name": "test", "model": model}


def test_all_shipped_scenarios_validate():
    names = scenario_names()
    assert {"default", "fig2a", "fig2b", "fig2c", "fig2d", "fig3", "fig5",
            "fig7-eta", "fig7-wigner", "fig8", "appB-omega1", "appB-omega2",
            "appB-omega3", "appC-spectrum", "appC-nominal"} <= set(names)
    for name in names:
        scenario = validate_config(load_scenario(name))
        assert scenario.params.chi > 0


def test_minimal_model_config():
    scenario = validate_config(_minimal())
    assert to_mhz(scenario.params.delta) == pytest.approx(7.0)
    assert scenario.params.dim == 30
    assert scenario.probe_grid.size == 201
    assert scenario.beta_grid.size == 121


def test_circuit_config():
    raw = {
        "schema": 1,
        "name": "circuit-test",
        "circuit": {
            "e_c_over_h_GHz": 3.0,
            "e_j_over_h_GHz": 100.0 / 2.4,
            "n_squid": 10,
            "delta_e_j_over_h_GHz": 100.0 / 2.4 * 0.016,
            "omega_p_over_2pi_GHz": 2 * (10.0 - 0.030 - 0.007),
            "kappa_ex_over_2pi_MHz": 0.4,
            "kappa_int_over_2pi_MHz": 4.0,
        },
    }
    scenario = validate_config(raw)
    assert to_mhz(scenario.params.chi) == pytest.approx(30.0, rel=1e-12)
    assert to_mhz(scenario.params.beta) == pytest.approx(20.0, rel=1e-12)
    assert to_mhz(scenario.params.delta) == pytest.approx(7.0, rel=1e-9)


def test_model_and_circuit_mutually_exclusive():
    raw = _minimal()
    raw["circuit"] = {"e_c_over_h_GHz": 1.0}
    with pytest.raises(ConfigError, match="exactly one"):
        validate_config(raw)
    with pytest.raises(ConfigError, match="exactly one"):
        validate_config({"schema": 1, "name": "x"})


def test_unknown_keys_rejected():
    raw = _minimal()
    raw["model"]["chi_MHz"] = 1.0
    with pytest.raises(ConfigError, match="chi_MHz"):
        validate_config(raw)
    raw = _minimal()
    raw["extra"] = {}
    with pytest.raises(ConfigError, match="extra"):
        validate_config(raw)


def test_schema_version_checked():
    raw = _minimal()
    raw["schema"] = 2
    with pytest.raises(ConfigError, match="schema"):
        validate_config(raw)


def test_bad_grid_rejected():
    raw = _minimal()
    raw["sweep"] = {"omega_in": {"start_over_2pi_MHz": 5.0,
                                 "stop_over_2pi_MHz": -5.0, "num": 11}}
    with pytest.raises(ConfigError, match="ascending"):
        validate_config(raw)
    raw["sweep"] = {"omega_in": {"start_over_2pi_MHz": 0.0,
                                 "stop_over_2pi_MHz": 1.0, "num": 0}}
    with pytest.raises(ConfigError, match="num"):
        validate_config(raw)


def test_model_bounds_reported_as_config_error():
    raw = _minimal(chi_over_2pi_MHz=-1.0)
    with pytest.raises(ConfigError, match="chi"):
        validate_config(raw)


def test_level_cut_bounds():
    raw = _minimal()
    raw["solver"] = {"dim": 10, "level_cut": 11}
    with pytest.raises(ConfigError, match="level_cut"):
        validate_config(raw)


def test_overrides_bare_and_dotted():
    raw = _minimal()
    out = apply_overrides(raw, ["beta_over_2pi_MHz=5.5", "solver.dim=12"])
    assert out["model"]["beta_over_2pi_MHz"] == 5.5
    assert raw["model"]["beta_over_2pi_MHz"] == 0.0  # original untouched
    scenario = validate_config(out)
    assert scenario.params.dim == 12
    assert to_mhz(scenario.params.beta) == pytest.approx(5.5)


def test_override_unknown_key():
    with pytest.raises(ConfigError, match="not found"):
        apply_overrides(_minimal(), ["nonsense=1"])
    with pytest.raises(ConfigError, match="form"):
        apply_overrides(_minimal(), ["no-equals-sign"])


def test_hash_tracks_content():
    raw = _minimal()
    h1 = config_hash(raw)
    assert h1 == config_hash(json.loads(json.dumps(raw)))
    out = apply_overrides(raw, ["beta_over_2pi_MHz=1.0"])
    assert config_hash(out) != h1


def test_load_scenario_rejects_unknown_name():
    with pytest.raises(ConfigError, match="neither"):
        load_scenario("does-not-exist")


def test_grids_in_rad_per_s():
    scenario = validate_config(_minimal())
    assert np.isclose(to_mhz(scenario.probe_grid[0]), -60.0)
    assert np.isclose(to_mhz(scenario.probe_grid[-1]), 60.0)

"""
Tests for scenario configuration loading, overrides, validation and the
factory that turns a configuration into domain objects.
"""
import json
import math
from dataclasses import replace

import numpy as np
import pytest

from domain.entities.controller_kind import ControllerKind
from domain.errors import ConfigError
from infrastructure.config.scenario_config import (
    ScenarioConfig,
    TuningSection,
    apply_overrides,
    build_config,
    config_to_dict,
    load_config,
    parse_override,
)
from infrastructure.config.scenario_factory import ScenarioFactory
from infrastructure.persistence.csv_trajectory_repository import CsvTrajectoryRepository


def test_defaults():
    config = load_config()
    assert config == ScenarioConfig()
    assert config.controller.kind == "indi_lpf"
    assert config.rates.f_int == 500.0
    assert config.tuning.nodes == 9
    assert config.campaign.case_ids is None


def test_load_from_file_with_overrides(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({"wind": {"sigma": 2.0}, "tuning": {"omega_theta": 3}}))
    config = load_config(path, ["wind.enabled=false", "controller.kind=pd"])
    assert config.wind.sigma == 2.0
    assert config.wind.enabled is False
    assert config.tuning.omega_theta == 3.0
    assert isinstance(config.tuning.omega_theta, float)
    assert config.controller.kind == "pd"


def test_parse_override():
    assert parse_override("campaign.case_ids=[1, 2]") == ("campaign", "case_ids", [1, 2])
    assert parse_override("controller.kind=pd") == ("controller", "kind", "pd")
    assert parse_override("trajectory.duration=null") == ("trajectory", "duration", None)
    for bad in ("nokey", "a=1", "a.b.c=1", ".b=1"):
        with pytest.raises(ConfigError):
            parse_override(bad)


def test_overrides_do_not_mutate_the_input():
    raw = {"wind": {"sigma": 1.0}}
    merged = apply_overrides(raw, ["wind.sigma=2", "seeds.master=5"])
    assert raw == {"wind": {"sigma": 1.0}}
    assert merged == {"wind": {"sigma": 2}, "seeds": {"master": 5}}


@pytest.mark.parametrize("raw, key", [
    ({"wind": {"speed": 3}}, "wind.speed"),
    ({"weather": {}}, "weather"),
    ({"tuning": {"zeta": "high"}}, "tuning.zeta"),
    ({"tuning": {"nodes": 2.5}}, "tuning.nodes"),
    ({"wind": {"enabled": 1}}, "wind.enabled"),
    ({"controller": {"kind": "lqr"}}, "controller.kind"),
    ({"rates": {"f_gnc": -25.0}}, "rates.f_gnc"),
    ({"rates": {"f_gnc": 30.0}}, "rates.f_int"),
    ({"campaign": {"case_ids": [0, 300]}}, "campaign.case_ids"),
    ({"campaign": {"case_ids": "all"}}, "campaign.case_ids"),
    ({"tuning": {"G0": 1.0}}, "tuning.G0"),
    ({"tuning": {"nodes": 1}}, "tuning.nodes"),
    ({"linearization": {"omega_min": 10.0, "omega_max": 1.0}}, "linearization.omega_min"),
    ({"sensors": {"gyro_3sigma_dps": -0.1}}, "sensors.gyro_3sigma_dps"),
])
def test_invalid_values_name_the_key(raw, key):
    with pytest.raises(ConfigError) as excinfo:
        build_config(raw)
    assert str(excinfo.value).startswith(key)


def test_invalid_json_is_a_config_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\"wind\": ")
    with pytest.raises(ConfigError):
        load_config(path)
    with pytest.raises(ConfigError):
        build_config([1, 2])


def test_config_to_dict_reloads_to_the_same_config():
    config = load_config(overrides=["campaign.case_ids=[4, 2]", "delays.tvc_samples=1"])
    assert build_config(json.loads(json.dumps(config_to_dict(config)))) == config


def test_factory_builds_a_scenario():
    config = load_config(overrides=[
        "controller.kind=indi", "sensors.gyro_3sigma_dps=0.1", "limits.beta_max_deg=5",
        "command.kind=step", "command.amplitude_deg=1", "trajectory.synthetic_duration=40",
    ])
    factory = ScenarioFactory(CsvTrajectoryRepository())
    scenario = factory.scenario(config)
    assert scenario.controller is ControllerKind.INDI
    assert scenario.table.end == 40.0
    assert scenario.sensors.gyro_3sigma == pytest.approx(math.radians(0.1))
    assert scenario.limits.beta_max == pytest.approx(math.radians(5.0))
    assert scenario.command.amplitude == pytest.approx(math.radians(1.0))
    assert scenario.case_id == 0


def test_factory_linearization_settings():
    config = load_config(overrides=["linearization.pade=true", "linearization.omega_points=10"])
    options = ScenarioFactory.linearization_options(config)
    assert options.pade and options.lpf is None
    omega = ScenarioFactory.omega_grid(config)
    assert len(omega) == 10
    assert omega[0] == pytest.approx(1e-2)
    assert np.all(np.diff(omega) > 0.0)


def test_factory_reports_tuning_errors_as_config_errors():
    config = replace(ScenarioConfig(), tuning=TuningSection(zeta=0.0))
    with pytest.raises(ConfigError):
        ScenarioFactory.tuning(config)

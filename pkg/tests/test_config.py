import sys
import os
import json

import pytest
from pydantic import ValidationError

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.config import (
    ChainConfig,
    CirclesConfig,
    ConfigManager,
    IntegrationConfig,
    Method,
    RunConfig,
    VerifyConfig,
)


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    monkeypatch.delenv("CHAINCRAFT_THREADS", raising=False)
    monkeypatch.setenv("CHAINCRAFT_CONFIG", str(tmp_path / "missing.json"))
    return tmp_path


def test_defaults_without_file(clean_env):
    manager = ConfigManager()
    assert manager.config_path == str(clean_env / "missing.json")
    assert manager.get("integration.method") == "dp54"
    assert manager.get("verify.threads") == 4
    assert manager.get("integration.max_step", 0.5) == 0.5
    assert manager.get("no.such.key", "x") == "x"


def test_file_values_merge_over_defaults(clean_env):
    path = clean_env / "config.json"
    path.write_text(json.dumps({"integration": {"method": "rk4", "h": 0.05}}))
    manager = ConfigManager(str(path))
    assert manager.get("integration.method") == "rk4"
    assert manager.get("integration.abs_tol") == 1e-10
    config = IntegrationConfig.from_manager(manager)
    assert config.method is Method.RK4
    assert config.h == 0.05


def test_bad_file_falls_back_to_defaults(clean_env):
    path = clean_env / "config.json"
    path.write_text("{not json")
    manager = ConfigManager(str(path))
    assert manager.get("integration.method") == "dp54"


def test_threads_from_environment(clean_env, monkeypatch):
    monkeypatch.setenv("CHAINCRAFT_THREADS", "7")
    assert VerifyConfig.from_manager(ConfigManager()).threads == 7
    monkeypatch.setenv("CHAINCRAFT_THREADS", "many")
    assert ConfigManager().get("verify.threads") == 4


def test_set_and_save(clean_env):
    manager = ConfigManager(str(clean_env / "sub" / "config.json"))
    manager.set("chain.delta_event", 1e-4)
    manager.save_config()
    reloaded = ConfigManager(str(clean_env / "sub" / "config.json"))
    assert ChainConfig.from_manager(reloaded).delta_event == 1e-4


def test_section_is_a_copy(clean_env):
    manager = ConfigManager()
    manager.section("verify")["threads"] = 99
    assert manager.get("verify.threads") == 4


def test_verify_overrides(clean_env):
    config = VerifyConfig.from_manager(ConfigManager(), threads=2, tol_scale=None, only="hooke")
    assert config.threads == 2
    assert config.tol_scale == 1.0
    assert config.only == "hooke"


def test_circles_config_reads_section(clean_env):
    manager = ConfigManager()
    manager.set("circles.turn_band", 0.2)
    assert CirclesConfig.from_manager(manager).turn_band == 0.2


def test_integration_config_rejects_bad_values():
    with pytest.raises(ValidationError):
        IntegrationConfig(h=0.0)
    with pytest.raises(ValidationError):
        IntegrationConfig(method="euler")
    with pytest.raises(ValidationError):
        IntegrationConfig().with_updates(max_steps=0)


def test_run_config_accepts_chain():
    run = RunConfig(command="chain", geometry="flat", init=[0, 0, 0, 1, 1], xmax=2.0)
    assert run.init == [0.0, 0.0, 0.0, 1.0, 1.0]


@pytest.mark.parametrize("fields", [
    dict(command="chain", init=[0, 0, 0, 1, 1], xmax=2.0),
    dict(command="chain", geometry="flat", expr="p^3", init=[0, 0, 0, 1, 1], xmax=2.0),
    dict(command="chain", geometry="flat", init=[0, 0, 0, 1], xmax=2.0),
    dict(command="chain", geometry="flat", init=[0, 0, 0, 1, 1], xmax=0.0),
    dict(command="chain", geometry="flat", init=[0, 0, 0, 1, 1]),
    dict(command="geodesic", geometry="flat", init=[0, 0, 0, 1, 1]),
    dict(command="geodesic", geometry="flat", init=[0, 0, 0, 1, 1, 1], format="svg"),
    dict(command="homog", model="hooke-sl2", r=0.0),
    dict(command="homog", model="horocycle", samples=1),
    dict(command="plot"),
])
def test_run_config_rejects(fields):
    with pytest.raises(ValidationError):
        RunConfig(**fields)


def test_run_config_checks_output_directory(tmp_path):
    RunConfig(command="homog", model="horocycle", out=str(tmp_path / "a.csv"))
    RunConfig(command="homog", model="horocycle", out="-")
    with pytest.raises(ValidationError, match="no such directory"):
        RunConfig(command="homog", model="horocycle", svg=str(tmp_path / "nope" / "a.svg"))

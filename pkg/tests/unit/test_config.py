"""Unit tests for configuration."""

import pytest

import app.config as config_module
from app.cell.models import VoltageLevels
from app.config import Settings, get_settings
from app.errors import InvalidLevels


@pytest.fixture(autouse=True)
def reset_settings():
    config_module._settings = None
    yield
    config_module._settings = None


def test_settings_loads_from_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that settings load from MTL_ prefixed environment variables."""
    monkeypatch.setenv("MTL_DEBUG", "true")
    monkeypatch.setenv("MTL_V_HIGH", "1.8")
    monkeypatch.setenv("MTL_CLA_GROUP", "2")

    settings = Settings()
    assert settings.debug is True
    assert settings.v_high == 1.8
    assert settings.cla_group == 2


def test_settings_defaults() -> None:
    """Test that default values are correct."""
    settings = Settings(_env_file=None)
    assert settings.app_name == "MTL Toolkit"
    assert settings.app_version == "0.1.0"
    assert settings.host == "0.0.0.0"
    assert settings.port == 8000
    assert settings.vref_delta_fraction == 0.05
    assert settings.vref_n_max == 10
    assert settings.opamp_fanin_threshold == 2
    assert settings.mtl_opamp_power_source == "TableIII"
    assert settings.calibration_file is None


def test_settings_factories() -> None:
    """Test that the factories derive domain values from the fields."""
    settings = Settings(_env_file=None, v_low=0.0, v_high=2.0)
    assert settings.levels() == VoltageLevels(v_low=0.0, v_high=2.0)
    assert settings.vref_policy().delta == pytest.approx(0.1)
    assert settings.analog_config().opamp_rail == 1.0
    assert settings.temperature_model().reference_temp == 27.0


def test_inverted_levels_are_rejected() -> None:
    """Test that v_low above v_high fails when the levels are built."""
    settings = Settings(_env_file=None, v_low=1.0, v_high=0.0)
    with pytest.raises(InvalidLevels):
        settings.levels()


def test_get_settings_singleton() -> None:
    """Test that get_settings returns the same instance (singleton pattern)."""
    settings1 = get_settings()
    settings2 = get_settings()

    assert settings1 is settings2

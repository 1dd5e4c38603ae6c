"""Configuration management using Pydantic Settings."""

import logging
from pathlib import Path
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict

from app.cell.models import AnalogConfig, VoltageLevels, VrefPolicy
from app.cost.models import DelayModel, TemperatureModel


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix ``MTL_``)."""

    # Application settings
    app_name: str = "MTL Toolkit"
    app_version: str = "0.1.0"
    debug: bool = False
    log_level: str = "INFO"

    # Server settings
    host: str = "0.0.0.0"
    port: int = 8000

    # Electrical operating point
    v_low: float = 0.0
    v_high: float = 1.0
    memristance_ohms: float = 1e6
    opamp_rail: float = 1.0
    vref_delta_fraction: float = 0.05
    vref_n_max: int = 10
    opamp_fanin_threshold: int = 2

    # Synthesis and simulation
    cla_group: int = 4
    sim_chunk: int = 8192
    mc_chunk: int = 4096

    # Cost model
    memristor_area_um2: float = 1e-4
    opamp_transistors: int = 8
    inverter_transistors: int = 2
    mtl_opamp_power_source: Literal["TableIII", "TableI"] = "TableIII"
    calibration_file: Path | None = None
    reference_temp_c: float = 27.0
    temp_slope_w_per_c: float = 0.0

    model_config = SettingsConfigDict(
        env_prefix="MTL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    def levels(self) -> VoltageLevels:
        return VoltageLevels(v_low=self.v_low, v_high=self.v_high)

    def vref_policy(self) -> VrefPolicy:
        """Reference policy with delta expressed as a fraction of the swing."""
        swing = self.v_high - self.v_low
        return VrefPolicy(delta=self.vref_delta_fraction * swing, n_max=self.vref_n_max)

    def analog_config(self) -> AnalogConfig:
        return AnalogConfig(opamp_rail=self.opamp_rail)

    def delay_model(self) -> DelayModel:
        return DelayModel()

    def temperature_model(self) -> TemperatureModel:
        return TemperatureModel(
            reference_temp=self.reference_temp_c,
            slope=self.temp_slope_w_per_c,
        )


# Global settings instance (singleton)
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get settings instance using singleton pattern."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def configure_logging(settings: Settings | None = None) -> None:
    """Install one stream handler on the root logger at the configured level."""
    settings = settings or get_settings()
    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )

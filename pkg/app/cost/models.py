"""Cost model value types: calibration rows, delay corners and reports."""

from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import CalibrationFormatError, MissingCalibration

Source = Literal["TableI", "TableIII", "TableIV", "user"]


class Corner(StrEnum):
    """Transistor speed pairing (NMOS, PMOS)."""

    SS = "SS"
    FF = "FF"
    SF = "SF"
    FS = "FS"


class Family(StrEnum):
    """Logic family or cell variant a calibration row describes."""

    CMOS = "CMOS"
    MTL_NO_OPAMP = "MTL_no_opamp"
    MTL_OPAMP = "MTL_opamp"
    RTL_NO_OPAMP = "RTL_no_opamp"
    RTL_OPAMP = "RTL_opamp"
    EEMTL = "EEMTL"
    RTLG = "RTLG"

    @property
    def memristive(self) -> bool:
        return self is not Family.CMOS


class ReportFamily(StrEnum):
    """Technology a whole netlist is costed in.

    MTL and RTL pick the op-amp or plain variant per cell.
    """

    MTL = "MTL"
    RTL = "RTL"
    CMOS = "CMOS"
    EEMTL = "EEMTL"
    RTLG = "RTLG"

    def variant(self, has_opamp: bool) -> Family:
        match self:
            case ReportFamily.MTL:
                return Family.MTL_OPAMP if has_opamp else Family.MTL_NO_OPAMP
            case ReportFamily.RTL:
                return Family.RTL_OPAMP if has_opamp else Family.RTL_NO_OPAMP
            case _:
                return Family(self.value)


class CalibrationEntry(BaseModel):
    """Measured figures of one 2-input NOR cell."""

    model_config = ConfigDict(frozen=True)

    area_um2: float = Field(..., description="Device area in square micrometres")
    power_w: float = Field(..., description="Power dissipation in watts")
    leakage_w: float = Field(..., description="Leakage power in watts")
    energy_j: float = Field(..., description="Energy per operation in joules")
    source: Source = "user"

    @model_validator(mode="after")
    def _positive(self) -> "CalibrationEntry":
        for name in ("area_um2", "power_w", "leakage_w", "energy_j"):
            if getattr(self, name) <= 0:
                raise CalibrationFormatError(f"{name} must be positive, got {getattr(self, name)}")
        return self


class CalibrationTable(BaseModel):
    """Per-family cell constants plus the device figures used to scale them."""

    model_config = ConfigDict(frozen=True)

    entries: dict[Family, CalibrationEntry]
    table_i_power_w: dict[Family, float] = Field(
        default_factory=dict, description="2-input NOR power ledger of the RTL/MTL comparison"
    )
    memristor_area_um2: float = 1e-4
    opamp_transistors: int = 8
    inverter_transistors: int = 2

    def entry(self, family: Family) -> CalibrationEntry:
        try:
            return self.entries[family]
        except KeyError:
            raise MissingCalibration(f"no calibration entry for {family.value}") from None


class DelayModel(BaseModel):
    """Single-cell delay d1 per process corner, in nanoseconds."""

    model_config = ConfigDict(frozen=True)

    d1: dict[Corner, float] = Field(
        default_factory=lambda: {
            Corner.SS: 0.89,
            Corner.FF: 0.23,
            Corner.SF: 0.50,
            Corner.FS: 0.52,
        }
    )

    @model_validator(mode="after")
    def _positive(self) -> "DelayModel":
        if any(d <= 0 for d in self.d1.values()):
            raise CalibrationFormatError(f"corner delays must be positive: {self.d1}")
        return self


class TemperatureModel(BaseModel):
    """Linear power drift with temperature."""

    model_config = ConfigDict(frozen=True)

    reference_temp: float = Field(27.0, description="Temperature of the calibration in C")
    slope: float = Field(0.0, description="Power change in W per degree C")


class CellCost(BaseModel):
    model_config = ConfigDict(frozen=True)

    area_um2: float
    power_w: float
    leakage_w: float
    energy_j: float


class CostReport(BaseModel):
    """Aggregated figures of one netlist in one technology."""

    model_config = ConfigDict(frozen=True)

    family: str = Field(..., description="Report family, or a cell variant forced on every cell")
    area_um2: float = 0.0
    power_w: float = 0.0
    leakage_w: float = 0.0
    energy_j: float = 0.0
    transistor_count: int = 0
    memristor_count: int = 0
    cell_count: int = 0
    depth: int = 0
    delay_ns: dict[Corner, float] = Field(default_factory=dict)


METRICS = (
    "area_um2",
    "power_w",
    "leakage_w",
    "energy_j",
    "transistor_count",
    "memristor_count",
    "cell_count",
    "depth",
)


class Comparison(BaseModel):
    """Per-metric ranking (ascending) and ratios against the first report."""

    model_config = ConfigDict(frozen=True)

    names: list[str]
    rankings: dict[str, list[str]]
    ratios: dict[str, dict[str, float]]

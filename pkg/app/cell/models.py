"""Value types for a single memristive threshold logic cell."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import (
    InvalidFanIn,
    InvalidLevels,
    LengthMismatch,
    NonPositiveMemristance,
    RailMisconfigured,
)

DEFAULT_MEMRISTANCE = 1e6


class CellKind(StrEnum):
    """Boolean function selected by the reference voltage."""

    NOR = "nor"
    NAND = "nand"


class VoltageLevels(BaseModel):
    """Logic-0 and logic-1 rail voltages."""

    model_config = ConfigDict(frozen=True)

    v_low: float = Field(0.0, description="Logic-0 level in volts")
    v_high: float = Field(1.0, description="Logic-1 level in volts")

    @model_validator(mode="after")
    def _ordered(self) -> "VoltageLevels":
        if not self.v_low < self.v_high:
            raise InvalidLevels(f"v_low {self.v_low} must be below v_high {self.v_high}")
        return self

    @property
    def swing(self) -> float:
        return self.v_high - self.v_low

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.v_low + self.v_high)


class ThresholdCell(BaseModel):
    """One averaging network, optional comparator and restoring inverter."""

    model_config = ConfigDict(frozen=True)

    kind: CellKind
    fan_in: int = Field(..., description="Number of inputs N")
    memristances: tuple[float, ...] = Field(..., description="Input memristances in ohms")
    v_ref: float = Field(..., description="Comparator reference in volts")
    has_opamp: bool = False

    @model_validator(mode="after")
    def _check(self) -> "ThresholdCell":
        if self.fan_in < 1:
            raise InvalidFanIn(f"fan_in must be >= 1, got {self.fan_in}")
        if len(self.memristances) != self.fan_in:
            raise LengthMismatch(
                f"{len(self.memristances)} memristances for fan_in {self.fan_in}"
            )
        if any(m <= 0 for m in self.memristances):
            raise NonPositiveMemristance(f"memristances must be positive: {self.memristances}")
        return self

    @classmethod
    def uniform(
        cls,
        kind: CellKind,
        fan_in: int,
        v_ref: float,
        has_opamp: bool = False,
        memristance: float = DEFAULT_MEMRISTANCE,
    ) -> "ThresholdCell":
        """Cell with all memristors equal."""
        return cls(
            kind=kind,
            fan_in=fan_in,
            memristances=(memristance,) * max(fan_in, 0),
            v_ref=v_ref,
            has_opamp=has_opamp,
        )

    @property
    def conductances(self) -> tuple[float, ...]:
        return tuple(1.0 / m for m in self.memristances)


class AnalogConfig(BaseModel):
    """Comparator and inverter parameters for voltage-level evaluation.

    ``v_th`` is the inverter switching threshold. When left unset, op-amp cells
    switch at 0 V (the rails are symmetric) and cells without an op-amp switch at
    their own reference, since there the inverter is the threshold element.
    """

    model_config = ConfigDict(frozen=True)

    v_th: float | None = Field(None, description="Inverter threshold override in volts")
    opamp_rail: float = Field(1.0, description="Comparator saturation magnitude in volts")

    @model_validator(mode="after")
    def _rail(self) -> "AnalogConfig":
        if self.opamp_rail <= 0:
            raise RailMisconfigured(f"opamp_rail must be positive, got {self.opamp_rail}")
        return self


class VrefPolicy(BaseModel):
    """Fixed-reference rule: V_REF sits delta away from the rail it guards."""

    model_config = ConfigDict(frozen=True)

    delta: float = Field(0.05, description="Offset from the rail in volts")
    n_max: int = Field(10, description="Largest fan-in the fixed reference must serve")

    @model_validator(mode="after")
    def _positive(self) -> "VrefPolicy":
        if self.delta <= 0:
            raise InvalidLevels(f"delta must be positive, got {self.delta}")
        if self.n_max < 1:
            raise InvalidFanIn(f"n_max must be >= 1, got {self.n_max}")
        return self


class CellTrace(BaseModel):
    """Intermediate voltages of one analog cell evaluation."""

    model_config = ConfigDict(frozen=True)

    v_a: float = Field(..., description="Averaged node voltage")
    comparator_out: float
    v_out: float
    logic_out: int

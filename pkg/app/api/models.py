"""Pydantic models for API requests and responses."""

from pydantic import BaseModel, Field

from app.netlist.io import NetlistDocument


class SynthRequest(BaseModel):
    """Netlist generation request."""

    target: str = Field(..., description="Target such as 'cla:8', 'vedic:4' or 'gate:nor:3'")


class NetlistSummary(BaseModel):
    cells: int
    depth: int
    inputs: int
    outputs: int
    transistors_mtl: int = Field(..., description="Transistor count with MTL cells")


class SynthResponse(BaseModel):
    netlist: NetlistDocument
    summary: NetlistSummary


class SimulateRequest(BaseModel):
    """Boolean simulation of explicit input bit rows."""

    netlist: NetlistDocument
    vectors: list[list[int]] = Field(..., description="One bit row per vector, in input order")


class SimulateResponse(BaseModel):
    outputs: list[str]
    rows: list[list[int]]


class VariabilityRequest(BaseModel):
    input_noise: float = Field(0.0, description="Uniform input noise, fraction of the swing")
    mem_tolerance: float = Field(0.0, description="Relative memristance tolerance")
    vth_shift: float = Field(0.0, description="Threshold shift bound in volts")
    seed: int = 0


class AnalogRequest(BaseModel):
    netlist: NetlistDocument
    rows: list[list[float]] = Field(..., description="Input voltages, one row per vector")
    variability: VariabilityRequest = Field(default_factory=VariabilityRequest)
    trial: int = 0


class AnalogResponse(BaseModel):
    outputs: list[str]
    volts: list[list[float]]
    logic: list[list[int]]


class MonteCarloRequest(BaseModel):
    netlist: NetlistDocument
    noise: float = 0.0
    mem_tol: float = 0.0
    vth_shift: float = 0.0
    trials: int
    seed: int
    vectors: list[list[int]] | None = Field(
        None, description="Reference bit rows; every input combination when omitted"
    )


class CostRequest(BaseModel):
    netlist: NetlistDocument
    family: str = Field("MTL", description="MTL, RTL, CMOS, EEMTL, RTLG or a cell variant")
    corner: str | None = Field(None, description="Restrict delay to one process corner")


class ErrorResponse(BaseModel):
    """Error response model."""

    error: str = Field(..., description="Error message")
    detail: str | None = Field(None, description="Additional error details")

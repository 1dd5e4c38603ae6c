"""Netlist data structures: cell instances over named nets."""

from collections import Counter
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.cell.models import ThresholdCell
from app.errors import (
    ArityMismatch,
    CombinationalCycle,
    InvalidFanIn,
    InvalidVariability,
    WidthMismatch,
)

LOW = "$low"
HIGH = "$high"
CONSTANTS = (LOW, HIGH)

CellRole = Literal["gate", "inv"]


class Block(BaseModel):
    """Named sub-circuit recorded by a generator, e.g. ``mul_ll`` of kind ``vedic:4``."""

    model_config = ConfigDict(frozen=True)

    path: str
    kind: str

    @property
    def parent(self) -> str:
        return self.path.rpartition("/")[0]


class Net(BaseModel):
    """A named wire and what drives it: ``input``, ``constant`` or an instance id."""

    model_config = ConfigDict(frozen=True)

    name: str
    driver: str


class CellInstance(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    cell: ThresholdCell
    inputs: tuple[str, ...]
    output: str
    role: CellRole = Field("gate", description="'inv' marks an inverter-configured restore cell")

    @model_validator(mode="after")
    def _check(self) -> "CellInstance":
        if len(self.inputs) != self.cell.fan_in:
            raise ArityMismatch(
                f"instance {self.id}: {len(self.inputs)} input nets for fan_in {self.cell.fan_in}"
            )
        if self.output in self.inputs:
            raise CombinationalCycle(f"instance {self.id} drives its own input {self.output}")
        if self.role == "inv" and self.cell.fan_in != 1:
            raise InvalidFanIn(f"inverter instance {self.id} must have one input")
        return self


class Netlist(BaseModel):
    """Combinational circuit of threshold cells with ordered primary I/O.

    Nets are plain names. ``$low`` and ``$high`` are always available as
    constant nets. A primary output may name any driven net, including a
    primary input.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()
    instances: tuple[CellInstance, ...] = ()
    blocks: tuple[Block, ...] = ()

    @property
    def cell_count(self) -> int:
        return len(self.instances)

    def nets(self) -> list[Net]:
        """Every net with its first driver, in declaration order."""
        table = [Net(name=c, driver="constant") for c in CONSTANTS]
        table += [Net(name=n, driver="input") for n in self.inputs]
        table += [Net(name=inst.output, driver=inst.id) for inst in self.instances]
        return table

    def block_inventory(self, parent: str = "") -> Counter[str]:
        """Kinds of the blocks directly below ``parent`` (root when empty)."""
        return Counter(b.kind for b in self.blocks if b.parent == parent)

    def count_blocks(self, kind: str) -> int:
        return sum(1 for b in self.blocks if b.kind == kind)

    def instances_in(self, path: str) -> list[CellInstance]:
        prefix = f"{path}/"
        return [inst for inst in self.instances if inst.id.startswith(prefix)]


class VariabilitySpec(BaseModel):
    """Random perturbations applied per Monte Carlo trial.

    ``input_noise`` is a fraction of the logic swing drawn per primary input
    and per vector; ``mem_tolerance`` scales each memristor once per trial;
    ``vth_shift`` moves each cell's inverter threshold once per trial.
    """

    model_config = ConfigDict(frozen=True)

    input_noise: float = Field(0.0, description="Uniform input noise as a fraction of swing")
    mem_tolerance: float = Field(0.0, description="Uniform relative memristance tolerance")
    vth_shift: float = Field(0.0, description="Uniform inverter threshold shift in volts")
    seed: int = Field(0, description="Root seed; trial t draws from (seed, t)")

    @model_validator(mode="after")
    def _check(self) -> "VariabilitySpec":
        if self.input_noise < 0:
            raise InvalidVariability(f"input_noise must be >= 0, got {self.input_noise}")
        if not 0 <= self.mem_tolerance < 1:
            raise InvalidVariability(f"mem_tolerance must be in [0, 1), got {self.mem_tolerance}")
        if self.vth_shift < 0:
            raise InvalidVariability(f"vth_shift must be >= 0, got {self.vth_shift}")
        if not 0 <= self.seed < 2**64:
            raise InvalidVariability(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        return self


@dataclass(frozen=True)
class Schedule:
    """Instances grouped by combinational level, drivers before consumers."""

    levels: list[list[CellInstance]]

    @property
    def depth(self) -> int:
        return len(self.levels)

    def order(self) -> list[CellInstance]:
        return [inst for level in self.levels for inst in level]


@dataclass(frozen=True)
class Waveform:
    """Per-net value sequence indexed by vector number (bits or volts)."""

    nets: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        lengths = {len(values) for values in self.nets.values()}
        if len(lengths) > 1:
            raise WidthMismatch(f"waveform nets have differing lengths {sorted(lengths)}")

    @property
    def n_vectors(self) -> int:
        return len(next(iter(self.nets.values()))) if self.nets else 0

    def __getitem__(self, net: str) -> np.ndarray:
        return self.nets[net]

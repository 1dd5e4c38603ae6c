"""Value types of the FFT datapath generators and oracles."""

import math
from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import FormatMismatch, InvalidSignPattern, InvalidWidth


class Sign(StrEnum):
    POS = "+"
    NEG = "-"


class SignPattern(BaseModel):
    """Sign of each of the four operands of an FFT unit."""

    model_config = ConfigDict(frozen=True)

    signs: tuple[Sign, Sign, Sign, Sign]

    @classmethod
    def parse(cls, text: str) -> "SignPattern":
        """``"++--"`` style pattern."""
        if len(text) != 4 or set(text) - {"+", "-"}:
            raise InvalidSignPattern(f"sign pattern must be four of '+'/'-', got {text!r}")
        return cls(signs=tuple(Sign(c) for c in text))

    @property
    def negated(self) -> int:
        return sum(1 for s in self.signs if s is Sign.NEG)

    def apply(self, values: list[int]) -> int:
        return sum(-v if s is Sign.NEG else v for s, v in zip(self.signs, values, strict=True))

    def __str__(self) -> str:
        return "".join(s.value for s in self.signs)


class ComplexWord(BaseModel):
    """Complex sample with both parts reduced mod 2^width."""

    model_config = ConfigDict(frozen=True)

    re: int
    im: int
    width: int = Field(8, ge=1)

    @model_validator(mode="before")
    @classmethod
    def _reduce(cls, data: Any) -> Any:
        if isinstance(data, dict):
            width = int(data.get("width", 8))
            if width >= 1:
                mask = (1 << width) - 1
                data = {**data, **{k: int(data[k]) & mask for k in ("re", "im") if k in data}}
        return data

    @property
    def signed(self) -> tuple[int, int]:
        return to_signed(self.re, self.width), to_signed(self.im, self.width)


def to_signed(value: int, width: int) -> int:
    value &= (1 << width) - 1
    return value - (1 << width) if value >> (width - 1) else value


class FixedPointFormat(BaseModel):
    """Signed two's-complement fixed point of the twiddle multipliers."""

    model_config = ConfigDict(frozen=True)

    total_bits: int
    frac_bits: int

    @model_validator(mode="after")
    def _check(self) -> "FixedPointFormat":
        if self.total_bits < 1:
            raise InvalidWidth(f"total_bits must be >= 1, got {self.total_bits}")
        if not 0 <= self.frac_bits < self.total_bits:
            raise FormatMismatch(
                f"frac_bits must lie in [0, {self.total_bits}), got {self.frac_bits}"
            )
        return self


def default_format(width: int) -> FixedPointFormat:
    return FixedPointFormat(total_bits=width, frac_bits=width - 1)


def twiddle_coefficient(fmt: FixedPointFormat) -> int:
    """Magnitude of the real and imaginary parts of W8^1, quantized to ``fmt``."""
    return round(2**fmt.frac_bits / math.sqrt(2))

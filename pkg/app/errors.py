"""Domain exceptions shared by the library, the CLI and the HTTP API.

Every error carries the process exit code the CLI reports for it. None of them
derive from ``ValueError``: pydantic validators let them through unwrapped.
"""


class MTLError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 2


# Cell model


class CellError(MTLError):
    """Invalid threshold cell parameters or evaluation inputs."""


class InvalidLevels(CellError):
    pass


class EmptyInputs(CellError):
    pass


class LengthMismatch(CellError):
    pass


class NonPositiveMemristance(CellError):
    pass


class InvalidFanIn(CellError):
    pass


class DeltaTooLarge(CellError):
    pass


class VrefOutsideWindow(CellError):
    pass


class ArityMismatch(CellError):
    pass


class RailMisconfigured(CellError):
    pass


class FanInTooLarge(CellError):
    pass


# Netlist


class NetlistError(MTLError):
    """Structural or simulation error on a netlist."""


class CombinationalCycle(NetlistError):
    pass


class MultipleDrivers(NetlistError):
    pass


class DanglingInput(NetlistError):
    pass


class DuplicateInstance(NetlistError):
    pass


class WidthMismatch(NetlistError):
    pass


class InvalidTrials(NetlistError):
    exit_code = 1


class InvalidVariability(NetlistError):
    pass


# Generators


class SynthError(MTLError):
    """Generator precondition failure."""


class UnsupportedFanIn(SynthError):
    pass


class InvalidWidth(SynthError):
    pass


class NotPowerOfTwo(SynthError):
    pass


class WidthTooSmall(SynthError):
    pass


class InvalidTarget(SynthError):
    exit_code = 1


class FFTError(SynthError):
    """FFT datapath generator or oracle error."""


class InvalidSignPattern(FFTError):
    pass


class FormatMismatch(FFTError):
    pass


# Cost model


class CostError(MTLError):
    """Calibration lookup or aggregation error."""


class UnsupportedFamily(CostError):
    pass


class UnsupportedGate(CostError):
    pass


class MissingCalibration(CostError):
    pass


class TooFewReports(CostError):
    pass


class CalibrationFormatError(CostError):
    pass


# Verification


class VerificationMismatch(MTLError):
    """A netlist disagreed with its software oracle."""

    exit_code = 3

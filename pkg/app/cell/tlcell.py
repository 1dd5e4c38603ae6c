"""Averaging, threshold windows and evaluation of a single threshold cell.

Every function here is pure. The ``*_batch`` variants evaluate many input rows
at once on numpy arrays and are what the netlist simulators call per cell.
"""

from collections.abc import Sequence

import numpy as np

from app.cell.models import (
    AnalogConfig,
    CellKind,
    CellTrace,
    ThresholdCell,
    VoltageLevels,
    VrefPolicy,
)
from app.config import get_settings
from app.errors import (
    ArityMismatch,
    DeltaTooLarge,
    EmptyInputs,
    FanInTooLarge,
    InvalidFanIn,
    LengthMismatch,
    NonPositiveMemristance,
    RailMisconfigured,
    VrefOutsideWindow,
)

MAX_ENUMERATED_FAN_IN = 20


def _levels(levels: VoltageLevels | None) -> VoltageLevels:
    return levels if levels is not None else get_settings().levels()


def average_volts(volts: np.ndarray, conductances: np.ndarray) -> np.ndarray:
    """Conductance-weighted mean over the last axis, clipped to the input hull.

    Rounding in the weighted sum can land one ulp outside ``[min, max]``; the
    clip keeps the result a true convex combination.
    """
    averaged = np.sum(volts * conductances, axis=-1) / np.sum(conductances, axis=-1)
    return np.clip(averaged, volts.min(axis=-1), volts.max(axis=-1))


def weighted_average(voltages: Sequence[float], memristances: Sequence[float]) -> float:
    """Voltage at the averaging node of a star of memristors."""
    if len(voltages) == 0:
        raise EmptyInputs("at least one input voltage is required")
    if len(voltages) != len(memristances):
        raise LengthMismatch(f"{len(voltages)} voltages for {len(memristances)} memristances")
    if any(m <= 0 for m in memristances):
        raise NonPositiveMemristance(f"memristances must be positive: {list(memristances)}")
    conductances = 1.0 / np.asarray(memristances, dtype=float)
    return float(average_volts(np.asarray(voltages, dtype=float), conductances))


def threshold_window(
    kind: CellKind, fan_in: int, levels: VoltageLevels | None = None
) -> tuple[float, float]:
    """Open interval of references for which an N-input cell computes ``kind``."""
    if fan_in < 1:
        raise InvalidFanIn(f"fan_in must be >= 1, got {fan_in}")
    lv = _levels(levels)
    n = fan_in
    if kind is CellKind.NOR:
        return lv.v_low, ((n - 1) * lv.v_low + lv.v_high) / n
    return ((n - 1) * lv.v_high + lv.v_low) / n, lv.v_high


def in_window(
    kind: CellKind, fan_in: int, v_ref: float, levels: VoltageLevels | None = None
) -> bool:
    lo, hi = threshold_window(kind, fan_in, levels)
    return lo < v_ref < hi


def select_vref(
    kind: CellKind, policy: VrefPolicy | None = None, levels: VoltageLevels | None = None
) -> float:
    """Reference that serves every fan-in up to ``policy.n_max`` unchanged."""
    settings = get_settings()
    policy = policy if policy is not None else settings.vref_policy()
    lv = _levels(levels)
    narrowest = lv.swing / policy.n_max
    if policy.delta >= narrowest:
        raise DeltaTooLarge(
            f"delta {policy.delta} V does not fit the {policy.n_max}-input window "
            f"of width {narrowest} V"
        )
    if kind is CellKind.NOR:
        return lv.v_low + policy.delta
    return lv.v_high - policy.delta


def build_cell(
    kind: CellKind,
    fan_in: int,
    v_ref: float,
    levels: VoltageLevels | None = None,
    has_opamp: bool = False,
    memristance: float | None = None,
) -> ThresholdCell:
    """Uniform cell whose reference is checked against its threshold window."""
    if not in_window(kind, fan_in, v_ref, levels):
        lo, hi = threshold_window(kind, fan_in, levels)
        raise VrefOutsideWindow(
            f"v_ref {v_ref} V outside the {fan_in}-input {kind.value} window ({lo}, {hi})"
        )
    memristance = memristance if memristance is not None else get_settings().memristance_ohms
    return ThresholdCell.uniform(kind, fan_in, v_ref, has_opamp, memristance)


def evaluate_batch(
    cell: ThresholdCell, bits: np.ndarray, levels: VoltageLevels | None = None
) -> np.ndarray:
    """Boolean outputs for a ``(rows, fan_in)`` array of input bits.

    The comparator is LOW when V_A equals V_REF, so the output is HIGH iff
    ``V_A <= V_REF``.
    """
    if bits.shape[-1] != cell.fan_in:
        raise ArityMismatch(f"{bits.shape[-1]} inputs for a {cell.fan_in}-input cell")
    lv = _levels(levels)
    volts = np.where(bits.astype(bool), lv.v_high, lv.v_low)
    v_a = average_volts(volts, np.asarray(cell.conductances))
    return v_a <= cell.v_ref


def evaluate(
    cell: ThresholdCell, inputs: Sequence[int], levels: VoltageLevels | None = None
) -> int:
    if len(inputs) != cell.fan_in:
        raise ArityMismatch(f"{len(inputs)} inputs for a {cell.fan_in}-input cell")
    row = np.asarray([inputs], dtype=bool)
    return int(evaluate_batch(cell, row, levels)[0])


def inverter_threshold(
    cell: ThresholdCell, config: AnalogConfig, levels: VoltageLevels | None = None
) -> float:
    """Switching threshold of the restoring inverter for this cell."""
    lv = _levels(levels)
    if cell.has_opamp:
        v_th = 0.0 if config.v_th is None else config.v_th
        if not -config.opamp_rail < v_th < config.opamp_rail:
            raise RailMisconfigured(
                f"v_th {v_th} V outside the op-amp rails +/-{config.opamp_rail} V"
            )
        return v_th
    if config.v_th is None:
        return cell.v_ref
    if not lv.v_low < config.v_th < lv.v_high:
        raise RailMisconfigured(f"v_th {config.v_th} V outside ({lv.v_low}, {lv.v_high}) V")
    return config.v_th


def threshold_stage(
    cell: ThresholdCell,
    v_a: np.ndarray,
    v_th: np.ndarray | float,
    config: AnalogConfig,
    levels: VoltageLevels,
) -> tuple[np.ndarray, np.ndarray]:
    """Comparator and inverter applied to averaged voltages.

    Returns ``(comparator_out, v_out)``. Without an op-amp the comparator stage
    passes V_A straight to the inverter.
    """
    if cell.has_opamp:
        comparator = np.where(v_a > cell.v_ref, config.opamp_rail, -config.opamp_rail)
    else:
        comparator = v_a
    v_out = np.where(comparator <= v_th, levels.v_high, levels.v_low)
    return comparator, v_out


def analog_evaluate(
    cell: ThresholdCell,
    voltages: Sequence[float],
    config: AnalogConfig | None = None,
    levels: VoltageLevels | None = None,
) -> CellTrace:
    if len(voltages) != cell.fan_in:
        raise ArityMismatch(f"{len(voltages)} voltages for a {cell.fan_in}-input cell")
    config = config if config is not None else get_settings().analog_config()
    lv = _levels(levels)
    v_a = average_volts(np.asarray(voltages, dtype=float), np.asarray(cell.conductances))
    comparator, v_out = threshold_stage(cell, v_a, inverter_threshold(cell, config, lv), config, lv)
    return CellTrace(
        v_a=float(v_a),
        comparator_out=float(comparator),
        v_out=float(v_out),
        logic_out=int(float(v_out) >= lv.midpoint),
    )


def truth_rows(fan_in: int) -> np.ndarray:
    """All ``2**fan_in`` input rows, bit ``i`` of the row index feeding input ``i``."""
    index = np.arange(2**fan_in)[:, None]
    return ((index >> np.arange(fan_in)) & 1).astype(np.uint8)


def noise_margin(cell: ThresholdCell, levels: VoltageLevels | None = None) -> float:
    """Smallest distance from any nominal row's V_A to V_REF."""
    if cell.fan_in > MAX_ENUMERATED_FAN_IN:
        raise FanInTooLarge(
            f"fan_in {cell.fan_in} exceeds {MAX_ENUMERATED_FAN_IN} for row enumeration"
        )
    lv = _levels(levels)
    volts = np.where(truth_rows(cell.fan_in).astype(bool), lv.v_high, lv.v_low)
    v_a = average_volts(volts, np.asarray(cell.conductances))
    return float(np.min(np.abs(v_a - cell.v_ref)))

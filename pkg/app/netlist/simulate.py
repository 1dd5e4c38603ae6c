"""Levelized boolean and analog simulation, Monte Carlo and path delay.

Simulation is vectorized: each net carries a numpy array over all vectors (and,
for analog runs, over trials), and every cell is evaluated once per level pass.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.cell.models import AnalogConfig, CellTrace, VoltageLevels
from app.cell.tlcell import average_volts, evaluate_batch, inverter_threshold, threshold_stage
from app.config import get_settings
from app.cost.models import Corner, DelayModel
from app.errors import InvalidTrials, WidthMismatch
from app.netlist.graph import validate_and_levelize
from app.netlist.models import HIGH, LOW, Netlist, Schedule, VariabilitySpec, Waveform

logger = logging.getLogger(__name__)


def _as_rows(vectors: Sequence[Sequence[float]] | np.ndarray, width: int, dtype) -> np.ndarray:
    rows = np.asarray(vectors, dtype=dtype)
    if rows.size == 0:
        return rows.reshape(0, width)
    if rows.ndim != 2 or rows.shape[1] != width:
        raise WidthMismatch(f"vector rows have shape {rows.shape}, expected (*, {width})")
    return rows


def _propagate_bits(
    netlist: Netlist, schedule: Schedule, bits: np.ndarray, levels: VoltageLevels
) -> dict[str, np.ndarray]:
    n_vectors = bits.shape[0]
    values = {
        LOW: np.zeros(n_vectors, dtype=bool),
        HIGH: np.ones(n_vectors, dtype=bool),
    }
    for column, name in enumerate(netlist.inputs):
        values[name] = bits[:, column].astype(bool)
    for inst in schedule.order():
        stacked = np.stack([values[net] for net in inst.inputs], axis=-1)
        values[inst.output] = evaluate_batch(inst.cell, stacked, levels)
    return values


def simulate(
    netlist: Netlist,
    input_vectors: Sequence[Sequence[int]] | np.ndarray,
    levels: VoltageLevels | None = None,
    chunk: int | None = None,
) -> np.ndarray:
    """Output bit rows, one per input row, columns in ``netlist.outputs`` order."""
    settings = get_settings()
    levels = levels if levels is not None else settings.levels()
    chunk = chunk or settings.sim_chunk
    schedule = validate_and_levelize(netlist)
    bits = _as_rows(input_vectors, len(netlist.inputs), np.uint8)
    out = np.zeros((bits.shape[0], len(netlist.outputs)), dtype=np.uint8)
    if not netlist.outputs:
        return out
    for start in range(0, bits.shape[0], chunk):
        values = _propagate_bits(netlist, schedule, bits[start : start + chunk], levels)
        out[start : start + chunk] = np.stack([values[net] for net in netlist.outputs], axis=-1)
    return out


def simulate_waveform(
    netlist: Netlist,
    input_vectors: Sequence[Sequence[int]] | np.ndarray,
    levels: VoltageLevels | None = None,
) -> Waveform:
    """Boolean values of every net, for inspection of internal nodes."""
    levels = levels if levels is not None else get_settings().levels()
    schedule = validate_and_levelize(netlist)
    bits = _as_rows(input_vectors, len(netlist.inputs), np.uint8)
    values = _propagate_bits(netlist, schedule, bits, levels)
    return Waveform(nets={net: v.astype(np.uint8) for net, v in values.items()})


# Analog


@dataclass(frozen=True)
class TraceArrays:
    """Intermediate voltages of one instance over all vectors."""

    v_a: np.ndarray
    comparator_out: np.ndarray
    v_out: np.ndarray
    logic_out: np.ndarray


@dataclass(frozen=True)
class AnalogResult:
    volts: np.ndarray
    logic: np.ndarray
    traces: dict[str, TraceArrays] | None = None

    def trace(self, instance_id: str, vector: int) -> CellTrace:
        """Per-cell trace of one vector; requires ``record_traces=True``."""
        if self.traces is None:
            raise KeyError("traces were not recorded for this run")
        t = self.traces[instance_id]
        return CellTrace(
            v_a=float(t.v_a[vector]),
            comparator_out=float(t.comparator_out[vector]),
            v_out=float(t.v_out[vector]),
            logic_out=int(t.logic_out[vector]),
        )


def _device_layout(netlist: Netlist) -> dict[str, tuple[int, int]]:
    """Instance id -> (cell index, offset of its first memristor)."""
    layout: dict[str, tuple[int, int]] = {}
    offset = 0
    for index, inst in enumerate(netlist.instances):
        layout[inst.id] = (index, offset)
        offset += inst.cell.fan_in
    return layout


def draw_trial(
    netlist: Netlist,
    spec: VariabilitySpec,
    trial: int,
    n_vectors: int,
    levels: VoltageLevels,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Memristance scales, threshold shifts and input noise for one trial.

    The stream depends only on ``(spec.seed, trial)`` and is consumed in a fixed
    order, so any trial can be reproduced on its own.
    """
    rng = np.random.default_rng([spec.seed, trial])
    # one scale per memristor, flattened in instance order
    n_devices = sum(inst.cell.fan_in for inst in netlist.instances)
    tol = spec.mem_tolerance
    mem_scale = rng.uniform(1.0 - tol, 1.0 + tol, size=n_devices)
    # one shift per cell, shared by every vector of the trial
    vth = rng.uniform(-spec.vth_shift, spec.vth_shift, size=len(netlist.instances))
    noise = rng.uniform(
        -spec.input_noise, spec.input_noise, size=(n_vectors, len(netlist.inputs))
    )
    return mem_scale, vth, noise * levels.swing


def _propagate_analog(
    netlist: Netlist,
    schedule: Schedule,
    volts: np.ndarray,
    mem_scale: np.ndarray,
    vth: np.ndarray,
    config: AnalogConfig,
    levels: VoltageLevels,
    record: bool = False,
) -> tuple[dict[str, np.ndarray], dict[str, TraceArrays]]:
    """Propagate ``(trials, vectors, inputs)`` voltages through the netlist.

    Each cell passes its restored ``v_out`` downstream.
    """
    n_trials, n_vectors = volts.shape[:2]
    layout = _device_layout(netlist)
    values = {
        LOW: np.full((n_trials, n_vectors), levels.v_low),
        HIGH: np.full((n_trials, n_vectors), levels.v_high),
    }
    # every net carries a (trials, vectors) voltage array
    for column, name in enumerate(netlist.inputs):
        values[name] = volts[:, :, column]
    traces: dict[str, TraceArrays] = {}
    for inst in schedule.order():
        index, offset = layout[inst.id]
        cell = inst.cell
        # device scales vary by trial only; the vector axis is broadcast
        memristances = np.asarray(cell.memristances) * mem_scale[:, offset : offset + cell.fan_in]
        conductances = (1.0 / memristances)[:, None, :]
        stacked = np.stack([values[net] for net in inst.inputs], axis=-1)
        v_a = average_volts(stacked, conductances)
        # (trials, 1) threshold against (trials, vectors) averages
        v_th = inverter_threshold(cell, config, levels) + vth[:, index][:, None]
        comparator, v_out = threshold_stage(cell, v_a, v_th, config, levels)
        values[inst.output] = v_out
        if record:
            traces[inst.id] = TraceArrays(
                v_a=v_a,
                comparator_out=comparator,
                v_out=v_out,
                logic_out=(v_out >= levels.midpoint).astype(np.uint8),
            )
    return values, traces


def simulate_analog(
    netlist: Netlist,
    input_rows: Sequence[Sequence[float]] | np.ndarray,
    spec: VariabilitySpec | None = None,
    config: AnalogConfig | None = None,
    levels: VoltageLevels | None = None,
    trial: int = 0,
    record_traces: bool = False,
) -> AnalogResult:
    """Voltage-level simulation of one variability trial."""
    settings = get_settings()
    spec = spec if spec is not None else VariabilitySpec()
    config = config if config is not None else settings.analog_config()
    levels = levels if levels is not None else settings.levels()
    schedule = validate_and_levelize(netlist)
    rows = _as_rows(input_rows, len(netlist.inputs), float)
    mem_scale, vth, noise = draw_trial(netlist, spec, trial, rows.shape[0], levels)
    values, traces = _propagate_analog(
        netlist,
        schedule,
        (rows + noise)[None],
        mem_scale[None],
        vth[None],
        config,
        levels,
        record=record_traces,
    )
    if netlist.outputs:
        volts = np.stack([values[net][0] for net in netlist.outputs], axis=-1)
    else:
        volts = np.zeros((rows.shape[0], 0))
    squeezed = None
    if record_traces:
        squeezed = {
            key: TraceArrays(t.v_a[0], t.comparator_out[0], t.v_out[0], t.logic_out[0])
            for key, t in traces.items()
        }
    return AnalogResult(
        volts=volts,
        logic=(volts >= levels.midpoint).astype(np.uint8),
        traces=squeezed,
    )


class MonteCarloResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    trials: int
    errors: int
    error_rate: float


def monte_carlo(
    netlist: Netlist,
    spec: VariabilitySpec,
    trials: int,
    reference_vectors: Sequence[Sequence[int]] | np.ndarray,
    config: AnalogConfig | None = None,
    levels: VoltageLevels | None = None,
    chunk: int | None = None,
) -> MonteCarloResult:
    """Fraction of trials in which any output bit differs from nominal."""
    if trials < 1:
        raise InvalidTrials(f"trials must be >= 1, got {trials}")
    settings = get_settings()
    config = config if config is not None else settings.analog_config()
    levels = levels if levels is not None else settings.levels()
    chunk = chunk or settings.mc_chunk
    schedule = validate_and_levelize(netlist)
    bits = _as_rows(reference_vectors, len(netlist.inputs), np.uint8)
    nominal = simulate(netlist, bits, levels)
    nominal_volts = np.where(bits.astype(bool), levels.v_high, levels.v_low)

    errors = 0
    for start in range(0, trials, chunk):
        draws = [
            draw_trial(netlist, spec, t, bits.shape[0], levels)
            for t in range(start, min(start + chunk, trials))
        ]
        mem_scale = np.stack([d[0] for d in draws])
        vth = np.stack([d[1] for d in draws])
        volts = nominal_volts[None] + np.stack([d[2] for d in draws])
        values, _ = _propagate_analog(netlist, schedule, volts, mem_scale, vth, config, levels)
        if not netlist.outputs:
            continue
        logic = np.stack([values[net] >= levels.midpoint for net in netlist.outputs], axis=-1)
        errors += int(np.any(logic != nominal[None].astype(bool), axis=(1, 2)).sum())
        logger.debug("monte carlo %s: %d/%d trials done", netlist.name, start + len(draws), trials)

    result = MonteCarloResult(trials=trials, errors=errors, error_rate=errors / trials)
    logger.info(
        "monte carlo %s: %d errors in %d trials (noise=%s, tol=%s)",
        netlist.name,
        errors,
        trials,
        spec.input_noise,
        spec.mem_tolerance,
    )
    return result


def critical_delay(
    netlist: Netlist, corner: Corner | str, model: DelayModel | None = None
) -> float:
    """Depth times the single-cell delay of ``corner``, in nanoseconds."""
    model = model if model is not None else get_settings().delay_model()
    depth = validate_and_levelize(netlist).depth
    return depth * model.d1[Corner(corner)]

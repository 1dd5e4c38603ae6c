"""Differential checks of generated netlists against integer oracles.

An oracle string names the arithmetic a netlist must implement (``add:8``,
``mul:4``, ``dft4:8``, ``fft8:8[:frac]``). Cases are enumerated exhaustively or
drawn from a seeded generator; the first disagreeing case is reported.
"""

import logging
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.errors import InvalidTarget, WidthMismatch
from app.fft.models import FixedPointFormat, default_format
from app.fft.reference import dft4_batch, fft8_batch, pack_complex, read_complex
from app.netlist.models import Netlist
from app.netlist.ports import bus_width, pack_buses, read_bit, read_bus
from app.netlist.simulate import simulate

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_BITS = 24
MAX_WORD_BITS = 62

# cases, inputs, expected outputs, simulated outputs
_Run = tuple[int, dict[str, np.ndarray], dict[str, np.ndarray], dict[str, np.ndarray]]


class Counterexample(BaseModel):
    model_config = ConfigDict(frozen=True)

    inputs: dict[str, int | list[list[int]]]
    expected: dict[str, int | list[list[int]]]
    got: dict[str, int | list[list[int]]]


class VerificationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    netlist: str
    oracle: str
    mode: str
    cases: int
    passed: bool
    counterexample: Counterexample | None = None


def _parse_mode(mode: str) -> int | None:
    """``None`` for exhaustive, else the random case count."""
    if mode == "exhaustive":
        return None
    kind, _, count = mode.partition(":")
    if kind != "random" or not count.isdigit() or int(count) < 1:
        raise InvalidTarget(f"mode must be 'exhaustive' or 'random:<count>', got {mode!r}")
    return int(count)


def _rng(seed: int | None) -> np.random.Generator:
    if seed is None:
        raise InvalidTarget("random mode needs a seed")
    return np.random.default_rng(seed)


def _operands(widths: dict[str, int], mode: str, seed: int | None) -> dict[str, np.ndarray]:
    """Integer operands per bus, enumerated jointly or drawn one bus at a time."""
    count = _parse_mode(mode)
    if count is None:
        bits = sum(widths.values())
        if bits > MAX_EXHAUSTIVE_BITS:
            raise InvalidTarget(f"exhaustive check over {bits} input bits is too large")
        idx = np.arange(1 << bits, dtype=np.int64)
        operands, shift = {}, 0
        # first bus in the low bits of the case index
        for name, width in widths.items():
            operands[name] = (idx >> shift) & ((1 << width) - 1)
            shift += width
        return operands
    rng = _rng(seed)
    return {
        name: rng.integers(0, 1 << width, size=count, dtype=np.int64)
        for name, width in widths.items()
    }


def _require_word(bits: int, oracle: str) -> None:
    if bits > MAX_WORD_BITS:
        raise InvalidTarget(
            f"{oracle} produces {bits}-bit results, more than the {MAX_WORD_BITS} supported"
        )


def _require_bus(names: Sequence[str], prefix: str, width: int, what: str) -> None:
    found = bus_width(names, prefix)
    if found != width:
        raise WidthMismatch(f"{what} bus {prefix} has {found} bits, oracle expects {width}")


def _verify_add(netlist: Netlist, width: int, mode: str, seed: int | None) -> _Run:
    _require_word(width + 1, f"add:{width}")
    _require_bus(netlist.inputs, "A", width, "input")
    _require_bus(netlist.inputs, "B", width, "input")
    _require_bus(netlist.inputs, "C", 1, "input")
    _require_bus(netlist.outputs, "S", width, "output")
    mask = (1 << width) - 1
    operands = _operands({"A": width, "B": width, "C": 1}, mode, seed)
    rows = simulate(netlist, pack_buses(netlist, operands))
    total = operands["A"] + operands["B"] + operands["C"]
    expected = {"S": total & mask, "Cout": total >> width}
    got = {"S": read_bus(netlist, rows, "S"), "Cout": read_bit(netlist, rows, "Cout")}
    return total.size, operands, expected, got


def _verify_mul(netlist: Netlist, width: int, mode: str, seed: int | None) -> _Run:
    _require_word(2 * width, f"mul:{width}")
    _require_bus(netlist.inputs, "A", width, "input")
    _require_bus(netlist.inputs, "B", width, "input")
    port = "P" if bus_width(netlist.outputs, "P") else "S"
    _require_bus(netlist.outputs, port, 2 * width, "output")
    operands = _operands({"A": width, "B": width}, mode, seed)
    rows = simulate(netlist, pack_buses(netlist, operands))
    expected = {port: operands["A"] * operands["B"]}
    got = {port: read_bus(netlist, rows, port)}
    return expected[port].size, operands, expected, got


def _samples(points: int, width: int, mode: str, seed: int | None) -> np.ndarray:
    count = _parse_mode(mode)
    if count is None:
        words = _operands({f"w{i}": width for i in range(2 * points)}, mode, seed)
        return np.stack(list(words.values()), axis=-1).reshape(-1, points, 2)
    return _rng(seed).integers(0, 1 << width, size=(count, points, 2), dtype=np.int64)


def _verify_dft(
    netlist: Netlist,
    points: int,
    width: int,
    fmt: FixedPointFormat | None,
    mode: str,
    seed: int | None,
) -> _Run:
    # the quantized oracle forms double-width twiddle products
    _require_word(width + 2 if fmt is None else 2 * width, f"{points}-point transform")
    for n in range(points):
        _require_bus(netlist.inputs, f"x{n}_re_", width, "input")
        _require_bus(netlist.inputs, f"x{n}_im_", width, "input")
    samples = _samples(points, width, mode, seed)
    rows = simulate(netlist, pack_complex(netlist, samples))
    got = read_complex(netlist, rows, points)
    expected = dft4_batch(samples, width) if fmt is None else fft8_batch(samples, width, fmt)
    return len(samples), {"x": samples}, {"X": expected}, {"X": got}


def verify(
    netlist: Netlist, oracle: str, mode: str = "exhaustive", seed: int | None = None
) -> VerificationResult:
    """Compare ``netlist`` with ``oracle`` on every selected case."""
    name, *args = oracle.split(":")
    try:
        numbers = [int(a) for a in args]
    except ValueError:
        raise InvalidTarget(f"bad oracle {oracle!r}") from None
    match name, numbers:
        case "add", [width]:
            cases, inputs, expected, got = _verify_add(netlist, width, mode, seed)
        case "mul", [width]:
            cases, inputs, expected, got = _verify_mul(netlist, width, mode, seed)
        case "dft4", [width]:
            cases, inputs, expected, got = _verify_dft(netlist, 4, width, None, mode, seed)
        case "fft8", [width]:
            fmt = default_format(width)
            cases, inputs, expected, got = _verify_dft(netlist, 8, width, fmt, mode, seed)
        case "fft8", [width, frac]:
            fmt = FixedPointFormat(total_bits=width, frac_bits=frac)
            cases, inputs, expected, got = _verify_dft(netlist, 8, width, fmt, mode, seed)
        case _:
            raise InvalidTarget(
                f"unknown oracle {oracle!r}; expected add:<w> | mul:<w> | dft4:<w> | fft8:<w>[:frac]"
            )

    bad = np.zeros(cases, dtype=bool)
    for key, want in expected.items():
        diff = np.asarray(want) != np.asarray(got[key])
        bad |= diff.reshape(cases, -1).any(axis=1)
    counterexample = None
    if bad.any():
        i = int(np.argmax(bad))
        counterexample = Counterexample(
            inputs=_case(inputs, i),
            expected=_case(expected, i),
            got=_case(got, i),
        )
    result = VerificationResult(
        netlist=netlist.name,
        oracle=oracle,
        mode=mode,
        cases=cases,
        passed=counterexample is None,
        counterexample=counterexample,
    )
    logger.info(
        "verify %s against %s (%s): %d cases, %s",
        netlist.name,
        oracle,
        mode,
        cases,
        "pass" if result.passed else f"{int(bad.sum())} mismatches",
    )
    return result


def _case(values: dict[str, np.ndarray], index: int) -> dict[str, int | list[list[int]]]:
    case: dict[str, int | list[list[int]]] = {}
    for name, v in values.items():
        item = np.asarray(v)[index]
        case[name] = item.tolist() if item.ndim else int(item)
    return case

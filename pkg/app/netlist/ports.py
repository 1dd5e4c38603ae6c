"""Integer <-> bit-row conversion by port name.

Buses follow the ``<prefix><bit>`` convention with bit 0 the LSB, so the carry-in
``C0`` is the one-bit bus ``C`` and ``x2_im_5`` is bit 5 of bus ``x2_im_``.
"""

import re
from collections.abc import Mapping, Sequence

import numpy as np

from app.errors import WidthMismatch
from app.netlist.models import Netlist


def bus(prefix: str, width: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(width)]


def bus_width(names: Sequence[str], prefix: str) -> int:
    """Width of the contiguous bus ``prefix0..prefix{w-1}`` among ``names``."""
    pattern = re.compile(rf"^{re.escape(prefix)}(\d+)$")
    bits = sorted(int(m.group(1)) for name in names if (m := pattern.match(name)))
    if bits != list(range(len(bits))):
        raise WidthMismatch(f"bus {prefix} has non-contiguous bits {bits}")
    return len(bits)


def pack_buses(netlist: Netlist, values: Mapping[str, Sequence[int] | np.ndarray]) -> np.ndarray:
    """Input bit rows for per-bus integer values (all buses the same length)."""
    columns: dict[str, np.ndarray] = {}
    n_rows = None
    for prefix, raw in values.items():
        ints = np.asarray(raw, dtype=np.int64)
        n_rows = len(ints) if n_rows is None else n_rows
        if len(ints) != n_rows:
            raise WidthMismatch(f"bus {prefix} has {len(ints)} values, expected {n_rows}")
        for i, name in enumerate(bus(prefix, bus_width(netlist.inputs, prefix))):
            columns[name] = (ints >> i) & 1
    missing = [name for name in netlist.inputs if name not in columns]
    if missing:
        raise WidthMismatch(f"no values for inputs {missing}")
    if not netlist.inputs:
        return np.zeros((n_rows or 0, 0), dtype=np.uint8)
    return np.stack([columns[name] for name in netlist.inputs], axis=-1).astype(np.uint8)


def read_bus(netlist: Netlist, rows: np.ndarray, prefix: str) -> np.ndarray:
    """Unsigned integer value of output bus ``prefix`` for every row."""
    width = bus_width(netlist.outputs, prefix)
    if width == 0:
        raise WidthMismatch(f"netlist {netlist.name} has no output bus {prefix}")
    index = {name: i for i, name in enumerate(netlist.outputs)}
    total = np.zeros(rows.shape[0], dtype=np.int64)
    for i, name in enumerate(bus(prefix, width)):
        total |= rows[:, index[name]].astype(np.int64) << i
    return total


def read_bit(netlist: Netlist, rows: np.ndarray, port: str) -> np.ndarray:
    try:
        column = netlist.outputs.index(port)
    except ValueError:
        raise WidthMismatch(f"netlist {netlist.name} has no output {port}") from None
    return rows[:, column].astype(np.int64)

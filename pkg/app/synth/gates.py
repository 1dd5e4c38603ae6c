"""Single-gate, adder-cell and complement generators."""

from enum import StrEnum

from app.cell.models import VoltageLevels, VrefPolicy
from app.errors import InvalidWidth, UnsupportedFanIn
from app.netlist.models import Netlist
from app.synth.builder import NetlistBuilder


def check_width(width: int, minimum: int = 1) -> None:
    if width < minimum:
        raise InvalidWidth(f"width must be >= {minimum}, got {width}")


class GateKind(StrEnum):
    NOT = "not"
    NOR = "nor"
    NAND = "nand"
    OR = "or"
    AND = "and"
    XOR = "xor"


def gate(
    kind: GateKind | str,
    fan_in: int,
    policy: VrefPolicy | None = None,
    levels: VoltageLevels | None = None,
) -> Netlist:
    """One boolean gate over inputs ``A0..A{n-1}`` driving output ``Y``."""
    kind = GateKind(kind)
    b = NetlistBuilder(f"{kind.value}{fan_in}", policy=policy, levels=levels)
    if kind is GateKind.XOR and fan_in != 2:
        raise UnsupportedFanIn(f"xor is built for fan-in 2 only, got {fan_in}")
    if kind is GateKind.NOT and fan_in != 1:
        raise UnsupportedFanIn(f"not takes exactly one input, got {fan_in}")
    if not 1 <= fan_in <= b.policy.n_max:
        raise UnsupportedFanIn(f"fan-in {fan_in} outside [1, {b.policy.n_max}]")
    a = b.input_bus("A", fan_in)
    match kind:
        case GateKind.NOT:
            y = b.inv(a[0])
        case GateKind.NOR:
            y = b.nor(*a)
        case GateKind.NAND:
            y = b.nand(*a)
        case GateKind.OR:
            y = b.or_(*a)
        case GateKind.AND:
            y = b.and_(*a)
        case GateKind.XOR:
            y = b.xor(*a)
    b.output("Y", y)
    return b.build()


def add_half_adder(b: NetlistBuilder, x: str, y: str) -> tuple[str, str]:
    """Sum and carry nets of ``x + y``; four cells.

    The AND of the carry is shared with the XOR of the sum.
    """
    ng = b.nand(x, y)
    carry = b.inv(ng)
    s = b.nor(b.nor(x, y), carry)
    return s, carry


def add_full_adder(b: NetlistBuilder, x: str, y: str, cin: str) -> tuple[str, str]:
    ng1 = b.nand(x, y)
    p = b.nor(b.nor(x, y), b.inv(ng1))
    ng2 = b.nand(p, cin)
    s = b.nor(b.nor(p, cin), b.inv(ng2))
    # cout = g1 | (p & cin) = NAND(!g1, !(p & cin))
    cout = b.nand(ng1, ng2)
    return s, cout


def half_adder() -> Netlist:
    b = NetlistBuilder("half_adder")
    s, c = add_half_adder(b, b.input("a"), b.input("b"))
    b.output("sum", s)
    b.output("carry", c)
    return b.build()


def full_adder() -> Netlist:
    b = NetlistBuilder("full_adder")
    s, c = add_full_adder(b, b.input("a"), b.input("b"), b.input("cin"))
    b.output("sum", s)
    b.output("cout", c)
    return b.build()


def add_complement(b: NetlistBuilder, nets: list[str]) -> list[str]:
    return [b.inv(n) for n in nets]


def complement_unit(width: int) -> Netlist:
    """Bitwise NOT ``A -> S`` with one inverter cell per bit."""
    check_width(width)
    b = NetlistBuilder(f"complement:{width}")
    b.output_bus("S", add_complement(b, b.input_bus("A", width)))
    return b.build()

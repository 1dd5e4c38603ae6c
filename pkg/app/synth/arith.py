"""Carry-lookahead adders.

Bits are grouped (four by default). Inside a group every carry is a two-level
NAND-NAND sum of products over generate/propagate terms, so the widest cell has
``group + 1`` inputs; groups chain their carry-out into the next carry-in.
"""

from collections.abc import Sequence

from app.config import get_settings
from app.errors import UnsupportedFanIn, WidthMismatch
from app.netlist.models import HIGH, LOW, Netlist
from app.synth.builder import NetlistBuilder
from app.synth.gates import check_width


def _group_carries(
    b: NetlistBuilder,
    ng: Sequence[str],
    g: Sequence[str],
    p: Sequence[str],
    cin: str,
) -> list[str]:
    """Carries ``c1..c{size}`` of one group.

    c_k = g_{k-1} + p_{k-1} g_{k-2} + ... + p_{k-1}..p_0 cin, realized as
    NAND over the NANDs of each product (the first product is ``ng_{k-1}``).
    """
    carries = []
    for k in range(1, len(p) + 1):
        terms = [ng[k - 1]]
        for j in range(k - 2, -1, -1):
            terms.append(b.nand(*p[j + 1 : k], g[j]))
        terms.append(b.nand(*p[:k], cin))
        carries.append(b.nand(*terms))
    return carries


def add_cla(
    b: NetlistBuilder,
    x: Sequence[str],
    y: Sequence[str],
    cin: str,
    group: int | None = None,
) -> tuple[list[str], str]:
    """Sum nets and carry-out of ``x + y + cin`` (LSB first)."""
    if len(x) != len(y):
        raise WidthMismatch(f"cannot add {len(x)}-bit and {len(y)}-bit operands")
    check_width(len(x))
    group = group or get_settings().cla_group
    if group < 1 or group + 1 > b.policy.n_max:
        raise UnsupportedFanIn(
            f"lookahead group {group} needs fan-in {group + 1}, limit is {b.policy.n_max}"
        )

    ng, g, p = [], [], []
    for xi, yi in zip(x, y, strict=True):
        ng_i = b.nand(xi, yi)
        g_i = b.inv(ng_i)
        p_i = b.nor(b.nor(xi, yi), g_i)
        ng.append(ng_i)
        g.append(g_i)
        p.append(p_i)

    carries = [cin]
    for start in range(0, len(x), group):
        stop = min(start + group, len(x))
        carries += _group_carries(b, ng[start:stop], g[start:stop], p[start:stop], carries[-1])

    sums = [b.xor(p_i, c_i) for p_i, c_i in zip(p, carries, strict=False)]
    return sums, carries[-1]


def add_addsub(
    b: NetlistBuilder, x: Sequence[str], y: Sequence[str], subtract: bool
) -> list[str]:
    """``x + y`` or ``x - y`` mod 2^width; subtraction complements ``y``
    and sets the carry-in."""
    if subtract:
        return add_cla(b, x, [b.inv(n) for n in y], HIGH)[0]
    return add_cla(b, x, y, LOW)[0]


def cla(width: int, group: int | None = None) -> Netlist:
    """``A + B + C0 -> S, Cout`` over ``width`` bits."""
    check_width(width)
    b = NetlistBuilder(f"cla:{width}")
    a = b.input_bus("A", width)
    bb = b.input_bus("B", width)
    c0 = b.input("C0")
    sums, cout = add_cla(b, a, bb, c0, group)
    b.output_bus("S", sums)
    b.output("Cout", cout)
    return b.build()

"""Recursive vertical-and-crosswise (Urdhva Tiryakbhyam) multiplier.

An N-bit product is built from four N/2-bit products computed in parallel::

    LL = A_L*B_L   HL = A_H*B_L   LH = A_L*B_H   HH = A_H*B_H      (h = N/2)

    P[0:h]      = LL[0:h]
    T, t        = HL + LH                          (cla1, N bits)
    P[h:N+h], u = T + (LL[h:N] ++ HH[0:h])         (cla2, N bits)
    s, c        = u + t                            (half adder)
    P[N+h:2N]   = HH[h:N] + (s, c, 0, ...)         (cla3, h bits)

The base case is the 2-bit multiplier of four AND gates and two half adders.
"""

from collections.abc import Sequence

from app.errors import NotPowerOfTwo, WidthTooSmall
from app.netlist.models import LOW, Netlist
from app.synth.arith import add_cla
from app.synth.builder import NetlistBuilder
from app.synth.gates import add_half_adder


def check_vedic_width(width: int) -> None:
    if width < 2:
        raise WidthTooSmall(f"vedic multiplier needs width >= 2, got {width}")
    if width & (width - 1):
        raise NotPowerOfTwo(f"vedic multiplier width must be a power of two, got {width}")


def _vedic2(b: NetlistBuilder, a: Sequence[str], x: Sequence[str]) -> list[str]:
    s0 = b.and_(a[0], x[0])
    cross_hi = b.and_(a[1], x[0])
    cross_lo = b.and_(a[0], x[1])
    top = b.and_(a[1], x[1])
    with b.block("ha1", "half_adder"):
        s1, c = add_half_adder(b, cross_hi, cross_lo)
    with b.block("ha2", "half_adder"):
        s2, s3 = add_half_adder(b, top, c)
    return [s0, s1, s2, s3]


def add_vedic(b: NetlistBuilder, a: Sequence[str], x: Sequence[str]) -> list[str]:
    """Product nets (2N, LSB first) of unsigned operands ``a`` and ``x``."""
    width = len(a)
    check_vedic_width(width)
    if width == 2:
        return _vedic2(b, a, x)

    h = width // 2
    a_l, a_h = a[:h], a[h:]
    x_l, x_h = x[:h], x[h:]
    with b.block("mul_ll", f"vedic:{h}"):
        ll = add_vedic(b, a_l, x_l)
    with b.block("mul_hl", f"vedic:{h}"):
        hl = add_vedic(b, a_h, x_l)
    with b.block("mul_lh", f"vedic:{h}"):
        lh = add_vedic(b, a_l, x_h)
    with b.block("mul_hh", f"vedic:{h}"):
        hh = add_vedic(b, a_h, x_h)

    # cross terms first, then the middle bits of ll and hh on top
    with b.block("cla1", f"cla:{width}"):
        t_sum, t = add_cla(b, hl, lh, LOW)
    with b.block("cla2", f"cla:{width}"):
        mid, u = add_cla(b, t_sum, [*ll[h:], *hh[:h]], LOW)
    # both carries land on bit 3h and can sum to two
    with b.block("ha", "half_adder"):
        s, c = add_half_adder(b, u, t)
    # s and c pad out to h bits with LOW
    with b.block("cla3", f"cla:{h}"):
        top, _ = add_cla(b, hh[h:], [s, c, *[LOW] * (h - 2)], LOW)
    return [*ll[:h], *mid, *top]


def vedic2() -> Netlist:
    """2-bit multiplier ``A, B -> S0..S3``."""
    b = NetlistBuilder("vedic:2")
    a = b.input_bus("A", 2)
    x = b.input_bus("B", 2)
    b.output_bus("S", _vedic2(b, a, x))
    return b.build()


def vedic(width: int) -> Netlist:
    """``A * B -> P0..P{2w-1}``; width 2 returns :func:`vedic2` with ``S`` ports."""
    check_vedic_width(width)
    if width == 2:
        return vedic2()
    b = NetlistBuilder(f"vedic:{width}")
    a = b.input_bus("A", width)
    x = b.input_bus("B", width)
    b.output_bus("P", add_vedic(b, a, x))
    return b.build()

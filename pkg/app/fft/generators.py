"""FFT datapaths built from carry-lookahead adders and Vedic multipliers.

Arithmetic is two's complement mod 2^width end to end; carries out of the
datapath are dropped. Subtraction complements an operand and adds one through a
CLA carry-in.
"""

import logging
from collections.abc import Sequence

from app.errors import FormatMismatch, InvalidSignPattern, InvalidWidth
from app.fft.models import FixedPointFormat, Sign, SignPattern, default_format, twiddle_coefficient
from app.netlist.models import HIGH, LOW, Netlist
from app.synth.arith import add_addsub, add_cla
from app.synth.builder import NetlistBuilder
from app.synth.gates import add_complement, check_width
from app.synth.vedic import add_vedic

logger = logging.getLogger(__name__)

# Real and imaginary cross products of one nontrivial twiddle (|W_re| == |W_im|).
MULTIPLIERS_PER_TWIDDLE = 2

Bus = list[str]
Complex = tuple[Bus, Bus]

# (-j)^r applied to (re, im): source part and sign of each output part.
_ROTATIONS: dict[int, tuple[tuple[int, Sign], tuple[int, Sign]]] = {
    0: ((0, Sign.POS), (1, Sign.POS)),
    1: ((1, Sign.POS), (0, Sign.NEG)),
    2: ((0, Sign.NEG), (1, Sign.NEG)),
    3: ((1, Sign.NEG), (0, Sign.POS)),
}


def add_fft_unit(
    b: NetlistBuilder, operands: Sequence[Sequence[str]], signs: SignPattern
) -> tuple[Bus, str]:
    """``(+-a +-b +-c +-d) mod 2^w`` with three CLAs.

    Positive operands come first; negated ones are complemented and one +1 per
    negation is injected through the C0 pins of CLA1, CLA2 and CLA3 in turn.
    """
    if signs.negated > 3:
        raise InvalidSignPattern(f"at most three negated operands are supported, got {signs}")
    width = len(operands[0])
    ordered: list[Sequence[str]] = [
        op for op, s in zip(operands, signs.signs, strict=True) if s is Sign.POS
    ]
    negated = [op for op, s in zip(operands, signs.signs, strict=True) if s is Sign.NEG]
    for i, op in enumerate(negated):
        with b.block(f"neg{i}", f"complement:{width}"):
            ordered.append(add_complement(b, list(op)))
    carry_in = [HIGH if i < signs.negated else LOW for i in range(3)]

    with b.block("cla1", f"cla:{width}"):
        first, _ = add_cla(b, ordered[0], ordered[1], carry_in[0])
    with b.block("cla2", f"cla:{width}"):
        second, _ = add_cla(b, ordered[2], ordered[3], carry_in[1])
    with b.block("cla3", f"cla:{width}"):
        return add_cla(b, first, second, carry_in[2])


def fft_unit(width: int, signs: SignPattern | str) -> Netlist:
    """Inputs ``x0_*..x3_*``, outputs ``S*`` and ``Cout``."""
    check_width(width)
    if isinstance(signs, str):
        signs = SignPattern.parse(signs)
    b = NetlistBuilder(f"fft_unit:{width}")
    operands = [b.input_bus(f"x{k}_", width) for k in range(4)]
    total, cout = add_fft_unit(b, operands, signs)
    b.output_bus("S", total)
    b.output("Cout", cout)
    return b.build()


def dft4_terms(k: int) -> tuple[list[tuple[int, int, Sign]], list[tuple[int, int, Sign]]]:
    """Operands ``(n, part, sign)`` of the real and imaginary parts of X(k)."""
    re_terms, im_terms = [], []
    for n in range(4):
        (re_src, re_sign), (im_src, im_sign) = _ROTATIONS[(n * k) % 4]
        re_terms.append((n, re_src, re_sign))
        im_terms.append((n, im_src, im_sign))
    return re_terms, im_terms


def add_dft4(b: NetlistBuilder, samples: Sequence[Complex]) -> list[Complex]:
    width = len(samples[0][0])
    outputs: list[Complex] = []
    for k in range(4):
        parts = []
        for part, terms in zip(("re", "im"), dft4_terms(k), strict=True):
            with b.block(f"X{k}_{part}", f"fft_unit:{width}"):
                total, _ = add_fft_unit(
                    b,
                    [samples[n][src] for n, src, _ in terms],
                    SignPattern(signs=tuple(sign for _, _, sign in terms)),
                )
            parts.append(total)
        outputs.append((parts[0], parts[1]))
    return outputs


def _complex_inputs(b: NetlistBuilder, points: int, width: int) -> list[Complex]:
    return [
        (b.input_bus(f"x{n}_re_", width), b.input_bus(f"x{n}_im_", width))
        for n in range(points)
    ]


def _complex_outputs(b: NetlistBuilder, outputs: Sequence[Complex]) -> None:
    for k, (re, im) in enumerate(outputs):
        b.output_bus(f"X{k}_re_", re)
        b.output_bus(f"X{k}_im_", im)


def dft4(width: int) -> Netlist:
    """4-point DFT with trivial twiddles: eight FFT units, 24 CLAs."""
    check_width(width, minimum=2)
    b = NetlistBuilder(f"dft4:{width}")
    _complex_outputs(b, add_dft4(b, _complex_inputs(b, 4, width)))
    return b.build()


def add_constant_multiply(
    b: NetlistBuilder, a: Sequence[str], coefficient: int, frac_bits: int
) -> Bus:
    """``floor(a * coefficient / 2^frac_bits) mod 2^w`` for signed ``a``.

    The unsigned Vedic core multiplies the magnitude; the sign is reapplied on
    the double-width product before the fractional bits are dropped.
    """
    width = len(a)
    sign = a[-1]
    with b.block("abs", f"cla:{width}"):
        magnitude, _ = add_cla(b, [b.xor(n, sign) for n in a], [LOW] * width, sign)
    constant = [HIGH if (coefficient >> i) & 1 else LOW for i in range(width)]
    with b.block("mul", f"vedic:{width}"):
        product = add_vedic(b, magnitude, constant)
    with b.block("sign", f"cla:{2 * width}"):
        signed, _ = add_cla(b, [b.xor(n, sign) for n in product], [LOW] * (2 * width), sign)
    return signed[frac_bits : frac_bits + width]


def check_fft8_width(width: int, fmt: FixedPointFormat) -> None:
    if width < 4 or width & (width - 1):
        raise InvalidWidth(f"fft8 width must be a power of two >= 4, got {width}")
    if fmt.total_bits != width:
        raise FormatMismatch(f"format has {fmt.total_bits} bits, datapath has {width}")


def fft8(width: int, fmt: FixedPointFormat | None = None) -> Netlist:
    """Radix-2 decimation-in-time 8-point FFT.

    Two 4-point DFTs over the even and odd samples, then the twiddle stage:
    W^0 and W^2 = -j are routing and sign only; W^1 and W^3 use two constant
    multipliers each. Butterflies add or subtract the twiddled odd outputs.
    """
    fmt = fmt if fmt is not None else default_format(width)
    check_fft8_width(width, fmt)
    coefficient = twiddle_coefficient(fmt)
    b = NetlistBuilder(f"fft8:{width}")
    samples = _complex_inputs(b, 8, width)
    with b.block("even", f"dft4:{width}"):
        even = add_dft4(b, samples[0::2])
    with b.block("odd", f"dft4:{width}"):
        odd = add_dft4(b, samples[1::2])

    twiddled: dict[int, tuple[tuple[Bus, Sign], tuple[Bus, Sign]]] = {
        0: ((odd[0][0], Sign.POS), (odd[0][1], Sign.POS)),
        2: ((odd[2][1], Sign.POS), (odd[2][0], Sign.NEG)),
    }
    for k in (1, 3):
        re, im = odd[k]
        with b.block(f"tw{k}", "twiddle"):
            with b.block("cmul_re", f"cmul:{width}"):
                m_a = add_constant_multiply(b, re, coefficient, fmt.frac_bits)
            with b.block("cmul_im", f"cmul:{width}"):
                m_b = add_constant_multiply(b, im, coefficient, fmt.frac_bits)
            with b.block("sum", f"cla:{width}"):
                total = add_addsub(b, m_a, m_b, subtract=False)
            with b.block("diff", f"cla:{width}"):
                diff = add_addsub(b, m_b, m_a, subtract=True)
        if k == 1:
            twiddled[1] = ((total, Sign.POS), (diff, Sign.POS))
        else:
            twiddled[3] = ((diff, Sign.POS), (total, Sign.NEG))

    outputs: list[Complex] = [([], []) for _ in range(8)]
    for k in range(4):
        upper, lower = [], []
        for part in (0, 1):
            t_bus, t_sign = twiddled[k][part]
            with b.block(f"bf{k}_{'re' if part == 0 else 'im'}", "butterfly"):
                upper.append(add_addsub(b, even[k][part], t_bus, subtract=t_sign is Sign.NEG))
                lower.append(add_addsub(b, even[k][part], t_bus, subtract=t_sign is Sign.POS))
        outputs[k] = (upper[0], upper[1])
        outputs[k + 4] = (lower[0], lower[1])
    _complex_outputs(b, outputs)
    netlist = b.build()
    logger.debug(
        "fft8:%d uses coefficient %d with %d fractional bits", width, coefficient, fmt.frac_bits
    )
    return netlist


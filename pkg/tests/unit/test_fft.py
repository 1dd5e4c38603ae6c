"""Unit tests for the FFT unit, the 4-point DFT, the 8-point FFT and their oracles."""

import math

import numpy as np
import pytest
import pytest_check as check
from hypothesis import given, settings
from hypothesis import strategies as st

from app.errors import FFTError, FormatMismatch, InvalidSignPattern, InvalidWidth
from app.fft import generators
from app.fft.generators import MULTIPLIERS_PER_TWIDDLE, dft4, dft4_terms, fft8, fft_unit
from app.fft.models import (
    ComplexWord,
    FixedPointFormat,
    Sign,
    SignPattern,
    default_format,
    to_signed,
    twiddle_coefficient,
)
from app.fft.reference import dft4_batch, fft8_batch, pack_complex, read_complex, reference_dft
from app.netlist.ports import pack_buses, read_bus
from app.netlist.simulate import simulate

DFT4_8 = dft4(8)


def _unit(netlist, operands):
    values = {f"x{k}_": [v] for k, v in enumerate(operands)}
    rows = simulate(netlist, pack_buses(netlist, values))
    return int(read_bus(netlist, rows, "S")[0])


def _words(pairs, width=8):
    return [ComplexWord(re=re, im=im, width=width) for re, im in pairs]


def test_sign_pattern_parsing() -> None:
    """Test the textual sign pattern form."""
    pattern = SignPattern.parse("++--")
    check.equal(pattern.negated, 2)
    check.equal(str(pattern), "++--")
    check.equal(pattern.apply([10, 20, 3, 4]), 23)
    for text in ("+++", "++*-", "+++++"):
        with pytest.raises(InvalidSignPattern):
            SignPattern.parse(text)


def test_complex_word_reduction() -> None:
    """Test that parts are reduced modulo the width."""
    word = ComplexWord(re=-1, im=300, width=8)
    check.equal((word.re, word.im), (255, 44))
    check.equal(word.signed, (-1, 44))
    check.equal(to_signed(128, 8), -128)


def test_fixed_point_format() -> None:
    """Test format validation and the default twiddle coefficient."""
    check.equal(default_format(8), FixedPointFormat(total_bits=8, frac_bits=7))
    check.equal(twiddle_coefficient(default_format(8)), round(128 / math.sqrt(2)))
    check.equal(twiddle_coefficient(default_format(8)), 91)
    with pytest.raises(FormatMismatch):
        FixedPointFormat(total_bits=8, frac_bits=8)
    with pytest.raises(InvalidWidth):
        FixedPointFormat(total_bits=0, frac_bits=0)


def test_fft_unit_examples() -> None:
    """Test signed modular sums of four operands."""
    check.equal(_unit(fft_unit(8, "++--"), [10, 20, 3, 4]), 23)
    check.equal(_unit(fft_unit(8, "++++"), [5, 6, 7, 8]), 26)
    check.equal(_unit(fft_unit(8, "+-+-"), [0, 0, 0, 0]), 0)
    check.equal(_unit(fft_unit(8, "---+"), [1, 1, 1, 10]), 7)
    check.equal(_unit(fft_unit(8, "+---"), [0, 1, 0, 0]), 255)


def test_fft_unit_structure() -> None:
    """Test three CLAs and one complement block per negated operand."""
    netlist = fft_unit(4, "-+-+")
    inventory = netlist.block_inventory()
    check.equal(inventory, {"cla:4": 3, "complement:4": 2})
    carry_ins = {
        blk.path: [
            inst.inputs for inst in netlist.instances_in(blk.path) if "$high" in inst.inputs
        ]
        for blk in netlist.blocks
        if blk.kind == "cla:4"
    }
    check.is_true(carry_ins["cla1"] and carry_ins["cla2"])
    check.is_false(carry_ins["cla3"])
    with pytest.raises(InvalidSignPattern):
        fft_unit(4, "----")


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(0, 15), min_size=4, max_size=4),
    st.sampled_from(["++++", "++--", "+-+-", "-++-", "+---", "-+++"]),
)
def test_fft_unit_matches_signed_sum(operands, signs) -> None:
    """Test the 4-bit unit against the signed sum modulo 16."""
    expected = SignPattern.parse(signs).apply(operands) % 16
    assert _unit(fft_unit(4, signs), operands) == expected


def test_dft4_terms_follow_rotations() -> None:
    """Test the sign patterns of the four output bins."""
    re1, im1 = dft4_terms(1)
    check.equal(re1, [(0, 0, Sign.POS), (1, 1, Sign.POS), (2, 0, Sign.NEG), (3, 1, Sign.NEG)])
    check.equal(im1, [(0, 1, Sign.POS), (1, 0, Sign.NEG), (2, 1, Sign.NEG), (3, 0, Sign.POS)])
    for terms in dft4_terms(0):
        check.is_true(all(sign is Sign.POS for _, _, sign in terms))


def test_dft4_structure() -> None:
    """Test eight FFT units and twenty-four CLAs."""
    check.equal(DFT4_8.count_blocks("fft_unit:8"), 8)
    check.equal(DFT4_8.count_blocks("cla:8"), 24)
    check.equal(len(DFT4_8.inputs), 64)
    check.equal(DFT4_8.outputs[:2], ("X0_re_0", "X0_re_1"))
    with pytest.raises(InvalidWidth):
        dft4(1)


def test_dft4_impulse_and_dc() -> None:
    """Test the transforms of a unit impulse and a constant input."""
    samples = np.zeros((2, 4, 2), dtype=np.int64)
    samples[0, 0, 0] = 1
    samples[1, :, 0] = 1
    out = read_complex(DFT4_8, simulate(DFT4_8, pack_complex(DFT4_8, samples)), 4)
    check.equal(out[0].tolist(), [[1, 0]] * 4)
    check.equal(out[1].tolist(), [[4, 0], [0, 0], [0, 0], [0, 0]])


def test_dft4_matches_oracle_and_is_linear() -> None:
    """Test seeded random vectors and modular linearity through the netlist."""
    rng = np.random.default_rng(2024)
    a = rng.integers(0, 256, size=(200, 4, 2))
    b = rng.integers(0, 256, size=(200, 4, 2))

    def run(x):
        return read_complex(DFT4_8, simulate(DFT4_8, pack_complex(DFT4_8, x)), 4)

    np.testing.assert_array_equal(run(a), dft4_batch(a, 8))
    np.testing.assert_array_equal(run((a + b) % 256), (run(a) + run(b)) % 256)


def test_reference_dft_modes() -> None:
    """Test the exact 4-point and quantized 8-point oracle entry points."""
    delta = _words([(1, 0), (0, 0), (0, 0), (0, 0)])
    assert [(w.re, w.im) for w in reference_dft(4, delta)] == [(1, 0)] * 4
    dc = _words([(3, 0)] * 8)
    out = reference_dft(8, dc, default_format(8))
    assert [(w.re, w.im) for w in out] == [(24, 0)] + [(0, 0)] * 7
    with pytest.raises(FormatMismatch):
        reference_dft(8, dc)
    with pytest.raises(FFTError):
        reference_dft(4, delta[:3])
    with pytest.raises(FFTError):
        reference_dft(2, delta[:2])


def test_dft4_oracle_matches_floating_point_fft() -> None:
    """Test the exact oracle against a floating-point FFT rounded and wrapped."""
    rng = np.random.default_rng(31)
    samples = rng.integers(0, 256, size=(100, 4, 2))
    spectrum = np.fft.fft(samples[..., 0] + 1j * samples[..., 1], axis=1)
    expected = np.stack([np.rint(spectrum.real), np.rint(spectrum.imag)], axis=-1)
    np.testing.assert_array_equal(dft4_batch(samples, 8), expected.astype(np.int64) % 256)


def test_dft4_oracle_catches_a_wrong_rotation(monkeypatch) -> None:
    """Test that a corrupted rotation table makes the netlist disagree with the oracle."""
    monkeypatch.setitem(generators._ROTATIONS, 3, generators._ROTATIONS[1])
    netlist = dft4(4)
    rng = np.random.default_rng(5)
    samples = rng.integers(0, 16, size=(200, 4, 2))
    out = read_complex(netlist, simulate(netlist, pack_complex(netlist, samples)), 4)
    assert not np.array_equal(out, dft4_batch(samples, 4))


def test_reference_dft_linearity() -> None:
    """Test that the exact oracle is linear modulo 2^width."""
    rng = np.random.default_rng(9)
    a = rng.integers(0, 256, size=(50, 4, 2))
    b = rng.integers(0, 256, size=(50, 4, 2))
    np.testing.assert_array_equal(
        dft4_batch((a + b) % 256, 8), (dft4_batch(a, 8) + dft4_batch(b, 8)) % 256
    )


def test_fft8_structure() -> None:
    """Test the two 4-point stages and the twiddle multipliers."""
    netlist = fft8(4)
    check.equal(netlist.block_inventory(), {"dft4:4": 2, "twiddle": 2, "butterfly": 8})
    check.equal(netlist.count_blocks("cmul:4"), 2 * MULTIPLIERS_PER_TWIDDLE)
    check.equal(netlist.count_blocks("vedic:4"), 2 * MULTIPLIERS_PER_TWIDDLE)
    check.equal(netlist.block_inventory("tw1"), {"cmul:4": 2, "cla:4": 2})


def test_fft8_precondition_errors() -> None:
    """Test width and format checks of the 8-point generator."""
    with pytest.raises(InvalidWidth):
        fft8(6)
    with pytest.raises(InvalidWidth):
        fft8(2)
    with pytest.raises(FormatMismatch):
        fft8(8, FixedPointFormat(total_bits=4, frac_bits=3))


def test_fft8_matches_quantized_oracle() -> None:
    """Test bit-exact agreement with the quantized oracle at width 4."""
    netlist = fft8(4)
    fmt = default_format(4)
    rng = np.random.default_rng(77)
    samples = rng.integers(0, 16, size=(300, 8, 2))
    samples[0] = 0
    samples[0, 0, 0] = 1
    samples[1] = 0
    samples[1, :, 0] = 1
    out = read_complex(netlist, simulate(netlist, pack_complex(netlist, samples)), 8)
    np.testing.assert_array_equal(out, fft8_batch(samples, 4, fmt))
    check.equal(out[0].tolist(), [[1, 0]] * 8)
    check.equal(out[1].tolist(), [[8, 0]] + [[0, 0]] * 7)


def test_fft8_oracle_negative_products_floor() -> None:
    """Test that twiddle products of negative values round toward minus infinity."""
    fmt = FixedPointFormat(total_bits=8, frac_bits=7)
    samples = np.zeros((1, 8, 2), dtype=np.int64)
    samples[0, 1, 0] = 255
    out = fft8_batch(samples, 8, fmt)
    # W^1 * (-1): cmul(-1) = floor(-91 / 128) = -1, so re = -1 and im = 0 - (-1)
    assert out[0, 1].tolist() == [255, 1]

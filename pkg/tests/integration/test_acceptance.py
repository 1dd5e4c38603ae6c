"""End-to-end oracle, robustness and cost-ordering checks on full-size circuits."""

import numpy as np
import pytest
import pytest_check as check

import app.config
from app.cell.models import CellKind, ThresholdCell, VoltageLevels
from app.cell.tlcell import truth_rows
from app.cost.report import report
from app.fft.generators import dft4, fft8, fft_unit
from app.fft.models import SignPattern, default_format
from app.fft.reference import dft4_batch, fft8_batch, pack_complex, read_complex
from app.netlist.models import CellInstance, Netlist, VariabilitySpec
from app.netlist.ports import pack_buses, read_bus
from app.netlist.simulate import monte_carlo, simulate, simulate_analog
from app.synth.targets import build_target
from app.verify import verify

LEVELS = VoltageLevels(v_low=0.0, v_high=1.0)


@pytest.fixture(autouse=True)
def reset_settings():
    """Use default settings in every test."""
    app.config._settings = None
    yield
    app.config._settings = None


def _midwindow_cell(kind: CellKind) -> Netlist:
    v_ref = 0.25 if kind is CellKind.NOR else 0.75
    cell = ThresholdCell.uniform(kind, 2, v_ref, has_opamp=True)
    return Netlist(
        name=f"{kind.value}2",
        inputs=("a", "b"),
        outputs=("y",),
        instances=(CellInstance(id="u1", cell=cell, inputs=("a", "b"), output="y"),),
    )


def _sum_unit(netlist: Netlist, operands: np.ndarray) -> np.ndarray:
    values = {f"x{k}_": operands[:, k] for k in range(4)}
    rows = simulate(netlist, pack_buses(netlist, values))
    return read_bus(netlist, rows, "S")


@pytest.mark.parametrize("width, cases", [(4, 512), (8, 131_072)])
def test_cla_exhaustive(width: int, cases: int) -> None:
    """Test every (A, B, C0) of the 4- and 8-bit adders."""
    result = verify(build_target(f"cla:{width}"), f"add:{width}")
    assert result.passed
    assert result.cases == cases


@pytest.mark.parametrize("width, cases", [(2, 16), (4, 256), (8, 65_536)])
def test_vedic_exhaustive(width: int, cases: int) -> None:
    """Test every operand pair of the multipliers."""
    result = verify(build_target(f"vedic:{width}"), f"mul:{width}")
    assert result.passed
    assert result.cases == cases


def test_vedic8_inventory() -> None:
    """Test four 4-bit multipliers, two 8-bit CLAs, one 4-bit CLA and one half adder."""
    inventory = build_target("vedic:8").block_inventory()
    assert inventory == {"vedic:4": 4, "cla:8": 2, "cla:4": 1, "half_adder": 1}


@pytest.mark.parametrize("signs", ["++++", "++--", "+-+-", "-++-"])
def test_fft_unit_width4_exhaustive(signs: str) -> None:
    """Test all 65,536 operand combinations of the 4-bit unit."""
    idx = np.arange(1 << 16)
    operands = np.stack([(idx >> (4 * k)) & 0xF for k in range(4)], axis=-1)
    expected = SignPattern.parse(signs).apply([operands[:, k] for k in range(4)]) % 16
    np.testing.assert_array_equal(_sum_unit(fft_unit(4, signs), operands), expected)


def test_fft_unit_width8_random() -> None:
    """Test 10^5 seeded operand sets of the 8-bit unit."""
    rng = np.random.default_rng(51)
    operands = rng.integers(0, 256, size=(100_000, 4))
    for signs in ("+-+-", "+--+"):
        expected = SignPattern.parse(signs).apply([operands[:, k] for k in range(4)]) % 256
        np.testing.assert_array_equal(_sum_unit(fft_unit(8, signs), operands), expected)


def test_dft4_width8_oracle() -> None:
    """Test delta, DC and 10^4 seeded random vectors against the exact oracle."""
    netlist = dft4(8)
    rng = np.random.default_rng(4)
    samples = rng.integers(0, 256, size=(10_002, 4, 2))
    samples[0] = 0
    samples[0, 0, 0] = 1
    samples[1] = 0
    samples[1, :, 0] = 1
    out = read_complex(netlist, simulate(netlist, pack_complex(netlist, samples)), 4)
    np.testing.assert_array_equal(out, dft4_batch(samples, 8))
    check.equal(out[0].tolist(), [[1, 0]] * 4)
    check.equal(out[1].tolist(), [[4, 0]] + [[0, 0]] * 3)


def test_fft8_width8_quantized_oracle() -> None:
    """Test delta, DC and 10^3 seeded random vectors against the quantized oracle."""
    netlist = fft8(8)
    rng = np.random.default_rng(8)
    samples = rng.integers(0, 256, size=(1_002, 8, 2))
    samples[0] = 0
    samples[0, 0, 0] = 1
    samples[1] = 0
    samples[1, :, 0] = 1
    out = read_complex(netlist, simulate(netlist, pack_complex(netlist, samples)), 8)
    np.testing.assert_array_equal(out, fft8_batch(samples, 8, default_format(8)))
    check.equal(out[0].tolist(), [[1, 0]] * 8)
    check.equal(out[1].tolist(), [[8, 0]] + [[0, 0]] * 7)


@pytest.mark.parametrize("kind", [CellKind.NOR, CellKind.NAND])
def test_robustness_to_input_variability(kind: CellKind) -> None:
    """Test that 20% input noise never flips a midwindow cell while 60% does."""
    netlist = _midwindow_cell(kind)
    rows = truth_rows(2)
    calm = VariabilitySpec(input_noise=0.2, mem_tolerance=0.1, seed=2024)
    result = monte_carlo(netlist, calm, 100_000, rows, levels=LEVELS)
    assert result.errors == 0
    assert result.error_rate == 0.0
    rough = VariabilitySpec(input_noise=0.6, mem_tolerance=0.1, seed=2024)
    assert monte_carlo(netlist, rough, 100_000, rows, levels=LEVELS).error_rate > 0


@pytest.mark.parametrize("target", ["gate:nand:5", "cla:8", "vedic:4", "dft4:8"])
def test_analog_matches_boolean(target: str) -> None:
    """Test that zero-variability voltage simulation agrees with boolean simulation."""
    netlist = build_target(target)
    rng = np.random.default_rng(1)
    bits = rng.integers(0, 2, size=(1_000, len(netlist.inputs)), dtype=np.uint8)
    volts = np.where(bits.astype(bool), LEVELS.v_high, LEVELS.v_low)
    analog = simulate_analog(netlist, volts, levels=LEVELS)
    np.testing.assert_array_equal(analog.logic, simulate(netlist, bits, LEVELS))


@pytest.mark.parametrize("target", ["vedic:2", "vedic:8", "dft4:8"])
def test_mtl_smaller_but_hungrier_than_cmos(target: str) -> None:
    """Test the area, power and transistor orderings under the default calibration."""
    netlist = build_target(target)
    mtl, cmos = report(netlist, "MTL"), report(netlist, "CMOS")
    check.less(mtl.area_um2, cmos.area_um2)
    check.greater(mtl.power_w, cmos.power_w)
    check.less(mtl.transistor_count, cmos.transistor_count)
    check.equal(mtl.cell_count, cmos.cell_count)

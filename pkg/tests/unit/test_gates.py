"""Unit tests for gate, adder-cell and complement generators."""

import itertools

import pytest
import pytest_check as check

from app.cell.models import VrefPolicy
from app.cell.tlcell import truth_rows
from app.errors import InvalidTarget, InvalidWidth, NotPowerOfTwo, SynthError, UnsupportedFanIn
from app.netlist.graph import validate_and_levelize
from app.netlist.ports import pack_buses, read_bus
from app.netlist.simulate import simulate
from app.synth.builder import NetlistBuilder
from app.synth.gates import GateKind, complement_unit, full_adder, gate, half_adder
from app.synth.targets import build_target

FUNCTIONS = {
    GateKind.NOR: lambda row: int(not any(row)),
    GateKind.NAND: lambda row: int(not all(row)),
    GateKind.OR: lambda row: int(any(row)),
    GateKind.AND: lambda row: int(all(row)),
}


def _column(netlist, rows):
    return simulate(netlist, rows)[:, 0].tolist()


def test_gate_truth_tables() -> None:
    """Test that every gate kind matches its boolean function up to fan-in 8."""
    for kind, function in FUNCTIONS.items():
        for n in range(1, 9):
            rows = truth_rows(n)
            expected = [function(row) for row in rows.tolist()]
            check.equal(_column(gate(kind, n), rows), expected, f"{kind} N={n}")
    check.equal(_column(gate(GateKind.NOT, 1), truth_rows(1)), [1, 0])
    check.equal(_column(gate(GateKind.XOR, 2), truth_rows(2)), [0, 1, 1, 0])


def test_gate_structure() -> None:
    """Test the cell composition of each gate kind."""
    check.equal(gate(GateKind.NOR, 3).cell_count, 1)
    check.equal(gate(GateKind.OR, 2).cell_count, 2)
    check.equal(gate(GateKind.AND, 2).instances[1].role, "inv")
    check.equal(gate(GateKind.XOR, 2).cell_count, 4)
    check.equal(gate("nand", 2).inputs, ("A0", "A1"))
    check.equal(gate("nand", 2).outputs, ("Y",))


def test_opamp_follows_fan_in() -> None:
    """Test that only cells with more than two inputs carry an op-amp."""
    check.is_false(gate(GateKind.NOR, 2).instances[0].cell.has_opamp)
    check.is_true(gate(GateKind.NOR, 3).instances[0].cell.has_opamp)
    check.is_false(gate(GateKind.AND, 6).instances[1].cell.has_opamp)


def test_gate_fan_in_limits() -> None:
    """Test that unsupported fan-ins are refused."""
    with pytest.raises(UnsupportedFanIn):
        gate(GateKind.XOR, 3)
    with pytest.raises(UnsupportedFanIn):
        gate(GateKind.NOT, 2)
    with pytest.raises(UnsupportedFanIn):
        gate(GateKind.NOR, 11)
    with pytest.raises(UnsupportedFanIn):
        gate(GateKind.NAND, 0)
    assert gate(GateKind.NOR, 16, policy=VrefPolicy(delta=0.05, n_max=16)).cell_count == 1


def test_half_adder_rows() -> None:
    """Test sum and carry of the half adder."""
    netlist = half_adder()
    rows = simulate(netlist, [[1, 1], [1, 0], [0, 0]]).tolist()
    assert rows == [[0, 1], [1, 0], [0, 0]]
    assert netlist.cell_count == 4


def test_full_adder_exhaustive() -> None:
    """Test the full adder on all eight rows."""
    netlist = full_adder()
    for a, b, c in itertools.product((0, 1), repeat=3):
        total = a + b + c
        assert simulate(netlist, [[a, b, c]]).tolist() == [[total & 1, total >> 1]]


def test_complement_unit() -> None:
    """Test bitwise inversion across a bus."""
    netlist = complement_unit(8)
    rows = simulate(netlist, pack_buses(netlist, {"A": [0xFF, 0x00, 0xA5]}))
    assert read_bus(netlist, rows, "S").tolist() == [0x00, 0xFF, 0x5A]
    with pytest.raises(InvalidWidth):
        complement_unit(0)


def test_builder_blocks_and_ids() -> None:
    """Test that block scopes prefix instance ids and are recorded."""
    b = NetlistBuilder("scoped")
    x, y = b.input("x"), b.input("y")
    with b.block("outer", "wrapper"):
        with b.block("inner", "half_adder"):
            net = b.nor(x, y)
    b.output("z", net)
    netlist = b.build()
    check.equal(netlist.instances[0].id, "outer/inner/u1")
    check.equal(netlist.instances[0].output, "z")
    check.equal([blk.path for blk in netlist.blocks], ["outer", "outer/inner"])
    check.equal(netlist.block_inventory("outer"), {"half_adder": 1})


def test_builder_port_errors() -> None:
    """Test that ports cannot be declared or exposed twice."""
    b = NetlistBuilder("ports")
    x = b.input("x")
    with pytest.raises(SynthError):
        b.input("x")
    with pytest.raises(SynthError):
        b.output("renamed", x)
    net = b.inv(x)
    b.output("y", net)
    with pytest.raises(SynthError):
        b.output("y2", net)


def test_build_target_grammar() -> None:
    """Test that target strings resolve to the matching generator."""
    check.equal(build_target("gate:nor:2").cell_count, 1)
    check.equal(build_target("half_adder").name, "half_adder")
    check.equal(build_target("cla:4").name, "cla:4")
    check.equal(build_target("vedic:2").outputs, ("S0", "S1", "S2", "S3"))
    check.equal(build_target("fft_unit:4:++--").name, "fft_unit:4")
    check.equal(build_target(" complement:3 ").cell_count, 3)


def test_build_target_errors() -> None:
    """Test that malformed targets and generator preconditions are reported."""
    for text in ("", "cla", "cla:x", "gate:xnor:2", "vedic:4:2", "adder:8"):
        with pytest.raises(InvalidTarget):
            build_target(text)
    with pytest.raises(NotPowerOfTwo):
        build_target("vedic:3")


def test_generated_netlists_validate() -> None:
    """Test that every small target levelizes without structural errors."""
    for text in ("gate:xor:2", "full_adder", "cla:5", "vedic:4", "fft_unit:2:+-+-", "dft4:2"):
        assert validate_and_levelize(build_target(text)).depth > 0

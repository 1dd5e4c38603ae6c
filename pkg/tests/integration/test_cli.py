"""Integration tests for the ``mtl`` command line."""

import csv
import io
import json
from pathlib import Path

import numpy as np
import pytest

import app.config
from app.cli import main
from app.netlist.io import dump_netlist, load_netlist
from app.netlist.simulate import simulate
from app.synth.builder import NetlistBuilder


@pytest.fixture(autouse=True)
def reset_settings():
    """Use default settings in every test."""
    app.config._settings = None
    yield
    app.config._settings = None


@pytest.fixture
def synth(tmp_path: Path):
    """Synthesize a target into a file and return its path."""

    def run(target: str) -> Path:
        path = tmp_path / f"{target.replace(':', '_')}.json"
        assert main(["synth", target, "-o", str(path)]) == 0
        return path

    return run


def _rows(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


def test_synth_writes_netlist(synth, capsys) -> None:
    """Test the port structure of the 2-bit multiplier and the summary line."""
    path = synth("vedic:2")
    document = json.loads(path.read_text())
    assert document["inputs"] == ["A0", "A1", "B0", "B1"]
    assert document["outputs"] == ["S0", "S1", "S2", "S3"]
    assert "vedic:2: 16 cells" in capsys.readouterr().err


def test_synth_exit_codes(tmp_path: Path) -> None:
    """Test usage and generation failures."""
    assert main(["synth", "vedic:3", "-o", str(tmp_path / "x.json")]) == 2
    assert main(["synth", "adder:8"]) == 1
    assert main(["synth"]) == 1
    assert main(["frobnicate"]) == 1


def test_synth_to_stdout(capsys) -> None:
    """Test that the netlist goes to stdout without ``-o``."""
    assert main(["synth", "gate:nor:2"]) == 0
    assert len(json.loads(capsys.readouterr().out)["cells"]) == 1


def test_sim_matches_in_memory_simulation(synth, tmp_path: Path) -> None:
    """Test that a netlist read back from disk simulates like the original."""
    path = synth("cla:2")
    out = tmp_path / "sim.csv"
    assert main(["sim", str(path), "-o", str(out)]) == 0
    rows = _rows(out.read_text())
    assert rows[0] == ["A0", "A1", "B0", "B1", "C0", "S0", "S1", "Cout"]
    assert len(rows) == 1 + 32
    netlist = load_netlist(path)
    bits = np.array([[int(v) for v in row[:5]] for row in rows[1:]])
    expected = simulate(netlist, bits)
    assert [[int(v) for v in row[5:]] for row in rows[1:]] == expected.tolist()


def test_sim_vector_sources(synth, tmp_path: Path) -> None:
    """Test vector files and seeded random vectors."""
    path = synth("gate:nand:2")
    vectors = tmp_path / "v.csv"
    vectors.write_text("A1,A0\n1,1\n0,1\n")
    out = tmp_path / "out.csv"
    assert main(["sim", str(path), "--vectors", str(vectors), "-o", str(out)]) == 0
    assert _rows(out.read_text())[1:] == [["1", "1", "0"], ["1", "0", "1"]]
    assert main(["sim", str(path), "--random", "5"]) == 1
    assert main(["sim", str(path), "--random", "5", "--seed", "3", "-o", str(out)]) == 0
    assert len(_rows(out.read_text())) == 6
    vectors.write_text("A0\n1\n")
    assert main(["sim", str(path), "--vectors", str(vectors)]) == 1


def test_verify_pass_and_mismatch(synth, tmp_path: Path, capsys) -> None:
    """Test the pass report and the mismatch exit code."""
    path = synth("cla:4")
    assert main(["verify", str(path), "--oracle", "add:4"]) == 0
    assert "PASS cla:4 add:4 exhaustive: 512 cases" in capsys.readouterr().out

    b = NetlistBuilder("carry_blind")
    a0, b0 = b.input("A0"), b.input("B0")
    b.input("C0")
    b.output("S0", b.xor(a0, b0))
    b.output("Cout", b.and_(a0, b0))
    broken = tmp_path / "broken.json"
    dump_netlist(b.build(), broken)
    assert main(["verify", str(broken), "--oracle", "add:1"]) == 3
    assert "expected" in capsys.readouterr().err


def test_verify_wide_operands(synth) -> None:
    """Test seeded random checks of a 32-bit adder and the refusal of 64-bit products."""
    path = synth("cla:32")
    args = ["verify", str(path), "--mode", "random:10", "--seed", "1"]
    assert main([*args, "--oracle", "add:32"]) == 0
    assert main([*args, "--oracle", "mul:32"]) == 1


def test_verify_usage_and_port_errors(synth) -> None:
    """Test random mode without a seed and a mismatched oracle width."""
    path = synth("cla:4")
    assert main(["verify", str(path), "--oracle", "add:4", "--mode", "random:10"]) == 1
    assert main(["verify", str(path), "--oracle", "add:8"]) == 2
    assert main(["verify", str(path)]) == 1


def test_mc_reports_error_rate(synth, tmp_path: Path) -> None:
    """Test the JSON result, its determinism and the usage errors."""
    path = synth("gate:nor:3")
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["mc", str(path), "--noise", "0.5", "--mem-tol", "0.1", "--trials", "300"]
    assert main([*args, "--seed", "9", "-o", str(out1)]) == 0
    assert main([*args, "--seed", "9", "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    result = json.loads(out1.read_text())
    assert set(result) == {"trials", "errors", "error_rate"}
    assert result["trials"] == 300
    assert main(args) == 1
    assert main(["mc", str(path), "--trials", "0", "--seed", "1"]) == 1


def test_analog_csv(synth, tmp_path: Path) -> None:
    """Test the voltage and logic columns of one trial."""
    path = synth("gate:nor:2")
    out = tmp_path / "analog.csv"
    assert main(["analog", str(path), "-o", str(out)]) == 0
    rows = _rows(out.read_text())
    assert rows[0] == ["A0", "A1", "Y_v", "Y"]
    assert [row[-1] for row in rows[1:]] == ["1", "0", "0", "0"]
    assert main(["analog", str(path), "--noise", "0.1"]) == 1


def test_cost_json_and_table(synth, tmp_path: Path, capsys) -> None:
    """Test the single-cell power figure, corner selection and the table form."""
    path = synth("gate:nor:2")
    out = tmp_path / "cost.json"
    assert main(["cost", str(path), "--family", "MTL", "--corner", "SS", "-o", str(out)]) == 0
    document = json.loads(out.read_text())
    assert document["power_w"] == "3.00u"
    assert document["delay_ns"] == {"SS": 0.89}
    capsys.readouterr()
    assert main(["cost", str(path), "--format", "table"]) == 0
    assert "delay_ns[FF]" in capsys.readouterr().out
    assert main(["cost", str(path), "--family", "TTL"]) == 2
    assert main(["cost", str(path), "--corner", "XX"]) == 1


def test_compare_reports(synth, tmp_path: Path, capsys) -> None:
    """Test that MTL and CMOS reports of one netlist are ranked."""
    path = synth("dft4:4")
    mtl, cmos = tmp_path / "mtl.json", tmp_path / "cmos.json"
    assert main(["cost", str(path), "--family", "MTL", "-o", str(mtl)]) == 0
    assert main(["cost", str(path), "--family", "CMOS", "-o", str(cmos)]) == 0
    capsys.readouterr()
    assert main(["compare", str(mtl), str(cmos)]) == 0
    table = capsys.readouterr().out
    area = next(line for line in table.splitlines() if line.startswith("area_um2"))
    assert area.endswith("mtl < cmos")
    assert main(["compare", str(mtl), "--format", "json"]) == 2


def test_sweep_inside_and_outside_window(tmp_path: Path) -> None:
    """Test that NOR samples hold inside the window and are flagged outside it."""
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--gate", "nor:2", "--vref", "0.05,0.45,0.05", "-o", str(out)]) == 0
    rows = _rows(out.read_text())
    assert rows[0] == ["v_ref", "row0", "row1", "row2", "row3", "noise_margin", "flag"]
    assert len(rows) == 1 + 9
    for row in rows[1:]:
        assert row[1:5] == ["1", "0", "0", "0"]
        assert row[-1] == "ok"
    assert rows[5][0] == "0.25"
    assert float(rows[5][5]) == pytest.approx(0.25)

    assert main(["sweep", "--gate", "nor:2", "--vref", "0.55,0.95,0.1", "-o", str(out)]) == 0
    rows = _rows(out.read_text())
    assert len(rows) == 1 + 5
    for row in rows[1:]:
        assert row[1:5] == ["1", "1", "1", "0"]
        assert row[-1] == "out-of-window"


def test_sweep_usage_errors() -> None:
    """Test bad steps, empty ranges and gate specs."""
    assert main(["sweep", "--gate", "nor:2", "--vref", "0.1,0.4,0"]) == 1
    assert main(["sweep", "--gate", "nor:2", "--vref", "0.1,0.4,-0.1"]) == 1
    assert main(["sweep", "--gate", "nor:2", "--vref", "0.4,0.1,0.1"]) == 1
    assert main(["sweep", "--gate", "xor:2", "--vref", "0.1,0.4,0.1"]) == 1
    assert main(["sweep", "--gate", "nor:2", "--vref", "0.1,0.4"]) == 1


def test_export_formats(synth, tmp_path: Path) -> None:
    """Test DOT output and the byte-identical JSON round trip."""
    path = synth("cla:2")
    dot, again = tmp_path / "g.dot", tmp_path / "again.json"
    assert main(["export", str(path), "--format", "dot", "-o", str(dot)]) == 0
    assert dot.read_text().startswith('digraph "cla:2" {')
    assert main(["export", str(path), "--format", "json", "-o", str(again)]) == 0
    assert again.read_bytes() == path.read_bytes()
    assert main(["export", str(path), "--format", "svg"]) == 1
    assert main(["export", str(tmp_path / "missing.json")]) == 2


def test_calib_dump(capsys) -> None:
    """Test that the embedded calibration is printed as JSON."""
    assert main(["calib-dump"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["entries"]["CMOS"]["area_um2"] == 9.4

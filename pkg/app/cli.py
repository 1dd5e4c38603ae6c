"""Command-line interface: ``mtl <command> ...``.

Exit codes: 0 success, 1 usage, 2 validation or generation error, 3 verification
mismatch.
"""

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from app.cell.models import CellKind, ThresholdCell
from app.cell.tlcell import evaluate_batch, in_window, noise_margin, truth_rows
from app.config import configure_logging, get_settings
from app.cost.calibration import default_calibration, dump_calibration, load_calibration
from app.cost.models import Corner
from app.cost.report import (
    compare,
    format_comparison,
    format_table,
    report,
    report_from_json,
    report_to_json,
)
from app.errors import MTLError, VerificationMismatch
from app.netlist.io import dumps_netlist, load_netlist, to_dot
from app.netlist.models import Netlist, VariabilitySpec
from app.netlist.simulate import monte_carlo, simulate, simulate_analog
from app.synth.targets import TARGET_GRAMMAR, build_target
from app.verify import verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
MAX_EXHAUSTIVE_INPUTS = 20


class UsageError(Exception):
    """Bad command line; reported with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _write(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8", newline="\n")


def _csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


# Input vectors


def _vectors(netlist: Netlist, args: argparse.Namespace) -> np.ndarray:
    """Bit rows from ``--vectors FILE``, ``--random N`` (needs ``--seed``) or
    all input combinations."""
    n = len(netlist.inputs)
    if args.vectors is not None:
        return _read_vectors(args.vectors, netlist)
    if args.random is not None:
        if args.seed is None:
            raise UsageError("--random needs --seed")
        rng = np.random.default_rng(args.seed)
        return rng.integers(0, 2, size=(args.random, n), dtype=np.uint8)
    if n > MAX_EXHAUSTIVE_INPUTS:
        raise UsageError(f"{n} inputs are too many to enumerate; use --random N --seed S")
    return truth_rows(n).astype(np.uint8)


def _read_vectors(path: Path, netlist: Netlist) -> np.ndarray:
    """CSV with a header naming the inputs (any order) and one bit row per line."""
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        missing = set(netlist.inputs) - set(reader.fieldnames or [])
        if missing:
            raise UsageError(f"{path} lacks columns for inputs {sorted(missing)}")
        rows = [[int(float(row[name])) for name in netlist.inputs] for row in reader]
    return np.asarray(rows, dtype=np.uint8).reshape(-1, len(netlist.inputs))


def _variability(args: argparse.Namespace) -> VariabilitySpec:
    return VariabilitySpec(
        input_noise=args.noise,
        mem_tolerance=args.mem_tol,
        vth_shift=args.vth_shift,
        seed=args.seed if args.seed is not None else 0,
    )


# Commands


def cmd_synth(args: argparse.Namespace) -> int:
    netlist = build_target(args.target)
    _write(dumps_netlist(netlist), args.out)
    mtl = report(netlist, "MTL")
    print(
        f"{netlist.name}: {netlist.cell_count} cells, depth {mtl.depth}, "
        f"{mtl.transistor_count} transistors, {mtl.memristor_count} memristors (MTL)",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_sim(args: argparse.Namespace) -> int:
    netlist = load_netlist(args.netlist)
    vectors = _vectors(netlist, args)
    outputs = simulate(netlist, vectors)
    rows = np.concatenate([vectors, outputs], axis=1).tolist()
    _write(_csv([*netlist.inputs, *netlist.outputs], rows), args.out)
    return EXIT_OK


def cmd_analog(args: argparse.Namespace) -> int:
    netlist = load_netlist(args.netlist)
    if (args.noise or args.mem_tol or args.vth_shift) and args.seed is None:
        raise UsageError("variability needs --seed")
    levels = get_settings().levels()
    bits = _vectors(netlist, args)
    volts = np.where(bits.astype(bool), levels.v_high, levels.v_low)
    result = simulate_analog(netlist, volts, spec=_variability(args), trial=args.trial)
    header = [*netlist.inputs, *(f"{o}_v" for o in netlist.outputs), *netlist.outputs]
    rows = [
        [*map(int, b), *(f"{v:.6f}" for v in vs), *map(int, lg)]
        for b, vs, lg in zip(bits, result.volts, result.logic, strict=True)
    ]
    _write(_csv(header, rows), args.out)
    return EXIT_OK


def cmd_mc(args: argparse.Namespace) -> int:
    if args.seed is None:
        raise UsageError("mc needs --seed")
    netlist = load_netlist(args.netlist)
    result = monte_carlo(netlist, _variability(args), args.trials, _vectors(netlist, args))
    _write(json.dumps(result.model_dump(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.mode != "exhaustive" and args.seed is None:
        raise UsageError("random mode needs --seed")
    netlist = load_netlist(args.netlist)
    result = verify(netlist, args.oracle, args.mode, args.seed)
    if not result.passed:
        ce = result.counterexample
        raise VerificationMismatch(
            f"{netlist.name} disagrees with {args.oracle}: inputs {ce.inputs}, "
            f"expected {ce.expected}, got {ce.got}"
        )
    print(f"PASS {netlist.name} {args.oracle} {args.mode}: {result.cases} cases")
    return EXIT_OK


def cmd_cost(args: argparse.Namespace) -> int:
    netlist = load_netlist(args.netlist)
    calib = load_calibration(args.calib) if args.calib else None
    cost = report(netlist, args.family, calib)
    if args.format == "json":
        document = report_to_json(cost)
        if args.corner:
            document["delay_ns"] = {args.corner: document["delay_ns"][args.corner]}
        _write(json.dumps(document, indent=2) + "\n", args.out)
    else:
        _write(format_table(cost, args.corner), args.out)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    reports = {}
    for path in args.reports:
        reports[path.stem] = report_from_json(json.loads(path.read_text(encoding="utf-8")))
    comparison = compare(reports)
    if args.format == "json":
        _write(comparison.model_dump_json(indent=2) + "\n", args.out)
    else:
        _write(format_comparison(reports, comparison), args.out)
    return EXIT_OK


def _vref_samples(text: str) -> list[float]:
    try:
        start, stop, step = (float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--vref must be from,to,step; got {text!r}") from None
    if step <= 0:
        raise UsageError(f"--vref step must be positive, got {step}")
    if stop < start:
        raise UsageError(f"--vref range {start}..{stop} is empty")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def cmd_sweep(args: argparse.Namespace) -> int:
    kind_text, _, fan_text = args.gate.partition(":")
    try:
        kind, fan_in = CellKind(kind_text), int(fan_text)
    except ValueError:
        raise UsageError(f"--gate must be nor:<n> or nand:<n>, got {args.gate!r}") from None
    if not 1 <= fan_in <= MAX_EXHAUSTIVE_INPUTS:
        raise UsageError(f"fan-in {fan_in} out of range")
    settings = get_settings()
    levels = settings.levels()
    rows_in = truth_rows(fan_in)
    header = ["v_ref", *(f"row{i}" for i in range(len(rows_in))), "noise_margin", "flag"]
    rows = []
    for v_ref in _vref_samples(args.vref):
        cell = ThresholdCell.uniform(
            kind, fan_in, v_ref, fan_in > settings.opamp_fanin_threshold, settings.memristance_ohms
        )
        outputs = evaluate_batch(cell, rows_in, levels).astype(int).tolist()
        flag = "ok" if in_window(kind, fan_in, v_ref, levels) else "out-of-window"
        rows.append([f"{v_ref:g}", *outputs, f"{noise_margin(cell, levels):.6f}", flag])
    _write(_csv(header, rows), args.out)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    netlist = load_netlist(args.netlist)
    _write(to_dot(netlist) if args.format == "dot" else dumps_netlist(netlist), args.out)
    return EXIT_OK


def cmd_calib_dump(args: argparse.Namespace) -> int:
    table = load_calibration(args.calib) if args.calib else default_calibration()
    _write(dump_calibration(table), args.out)
    return EXIT_OK


# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mtl", description="Memristive threshold logic toolkit")
    parser.add_argument("--log-level", default=None, help="Override MTL_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("-o", "--out", type=Path, default=None, help="Output file (stdout)")
        return p

    def vector_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--vectors", type=Path, default=None, help="CSV of input bit rows")
        p.add_argument("--random", type=int, default=None, help="Random vector count")
        p.add_argument("--seed", type=int, default=None)

    def variability_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--noise", type=float, default=0.0, help="Input noise, fraction of swing")
        p.add_argument("--mem-tol", type=float, default=0.0, help="Memristance tolerance")
        p.add_argument("--vth-shift", type=float, default=0.0, help="Threshold shift in volts")

    p = command("synth", cmd_synth, "Generate a netlist")
    p.add_argument("target", help=TARGET_GRAMMAR)

    p = command("sim", cmd_sim, "Boolean simulation")
    p.add_argument("netlist", type=Path)
    vector_options(p)

    p = command("analog", cmd_analog, "Voltage-level simulation of one trial")
    p.add_argument("netlist", type=Path)
    vector_options(p)
    variability_options(p)
    p.add_argument("--trial", type=int, default=0)

    p = command("mc", cmd_mc, "Monte Carlo error rate under variability")
    p.add_argument("netlist", type=Path)
    vector_options(p)
    variability_options(p)
    p.add_argument("--trials", type=int, required=True)

    p = command("verify", cmd_verify, "Check a netlist against an arithmetic oracle")
    p.add_argument("netlist", type=Path)
    p.add_argument("--oracle", required=True, help="add:<w> | mul:<w> | dft4:<w> | fft8:<w>[:f]")
    p.add_argument("--mode", default="exhaustive", help="exhaustive | random:<count>")
    p.add_argument("--seed", type=int, default=None)

    p = command("cost", cmd_cost, "Cost report of a netlist")
    p.add_argument("netlist", type=Path)
    p.add_argument("--family", default="MTL", help="MTL, RTL, CMOS, EEMTL, RTLG or a cell variant")
    p.add_argument("--calib", type=Path, default=None)
    p.add_argument("--corner", choices=[c.value for c in Corner], default=None)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = command("compare", cmd_compare, "Rank saved JSON cost reports")
    p.add_argument("reports", type=Path, nargs="+")
    p.add_argument("--format", choices=["json", "table"], default="table")

    p = command("sweep", cmd_sweep, "Sweep V_REF of a single cell")
    p.add_argument("--gate", required=True, help="nor:<n> or nand:<n>")
    p.add_argument("--vref", required=True, help="from,to,step")

    p = command("export", cmd_export, "Re-emit a netlist as DOT or JSON")
    p.add_argument("netlist", type=Path)
    p.add_argument("--format", choices=["dot", "json"], default="json")

    p = command("calib-dump", cmd_calib_dump, "Print the calibration table")
    p.add_argument("--calib", type=Path, default=None)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = get_settings()
        if args.log_level:
            settings = settings.model_copy(update={"log_level": args.log_level})
        configure_logging(settings)
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MTLError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return MTLError.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Per-cell costs, transistor counts and netlist-level cost reports."""

from collections.abc import Mapping

from app.config import get_settings
from app.cost.calibration import get_calibration
from app.cost.models import (
    METRICS,
    CalibrationTable,
    CellCost,
    Comparison,
    Corner,
    CostReport,
    DelayModel,
    Family,
    ReportFamily,
    TemperatureModel,
)
from app.cost.units import format_si, parse_si
from app.errors import TooFewReports, UnsupportedFamily, UnsupportedGate
from app.netlist.graph import validate_and_levelize
from app.netlist.models import CellInstance, Netlist
from app.synth.gates import GateKind

_INVERTING = {GateKind.NOT, GateKind.NOR, GateKind.NAND}


def _family(family: Family | ReportFamily | str) -> Family | ReportFamily:
    if isinstance(family, Family | ReportFamily):
        return family
    for enum in (ReportFamily, Family):
        try:
            return enum(family)
        except ValueError:
            continue
    raise UnsupportedFamily(f"unknown family {family!r}")


def transistor_count(
    family: Family | ReportFamily | str,
    kind: GateKind | str,
    fan_in: int,
    calib: CalibrationTable | None = None,
) -> int:
    """Transistors of one gate; ``MTL`` or ``RTL`` alone means the op-amp cell.

    Resistive cells have the same op-amp and inverter as their memristive
    counterparts.
    """
    family = _family(family)
    kind = GateKind(kind)
    calib = calib or get_calibration()
    if kind is GateKind.XOR:
        raise UnsupportedGate("xor is a composite of four cells, count its cells instead")
    inverter = calib.inverter_transistors
    extra_inverter = 0 if kind in _INVERTING else inverter
    match family:
        case Family.MTL_OPAMP | Family.RTL_OPAMP | ReportFamily.MTL | ReportFamily.RTL:
            return calib.opamp_transistors + inverter + extra_inverter
        case Family.MTL_NO_OPAMP | Family.RTL_NO_OPAMP:
            return inverter + extra_inverter
        case Family.EEMTL:
            return 2 * fan_in + 8
        case Family.RTLG:
            return 24
        case Family.CMOS:
            return 2 if kind is GateKind.NOT else 2 * fan_in + extra_inverter
    raise UnsupportedFamily(f"no transistor count for {family.value}")


def cell_cost(variant: Family | str, fan_in: int, calib: CalibrationTable | None = None) -> CellCost:
    """Area, power, leakage and energy of one N-input cell.

    Calibration rows describe 2-input cells. Memristive cells add one memristor
    per extra input; CMOS area grows with the transistor stack (fan_in / 2).
    """
    variant = Family(variant)
    calib = calib or get_calibration()
    entry = calib.entry(variant)
    if variant.memristive:
        area = entry.area_um2 + (fan_in - 2) * calib.memristor_area_um2
    else:
        area = entry.area_um2 * fan_in / 2
    return CellCost(
        area_um2=area,
        power_w=entry.power_w,
        leakage_w=entry.leakage_w,
        energy_j=entry.energy_j,
    )


def _gate_kind(inst: CellInstance) -> GateKind:
    if inst.role == "inv":
        return GateKind.NOT
    return GateKind(inst.cell.kind.value)


def report(
    netlist: Netlist,
    family: Family | ReportFamily | str,
    calib: CalibrationTable | None = None,
    delay_model: DelayModel | None = None,
) -> CostReport:
    """Sum cell costs over every instance of ``netlist``.

    ``MTL`` and ``RTL`` choose the op-amp or plain variant per cell; a specific
    variant such as ``MTL_no_opamp`` is forced on every cell.
    """
    family = _family(family)
    calib = calib or get_calibration()
    delay_model = delay_model or get_settings().delay_model()
    depth = validate_and_levelize(netlist).depth

    totals = {"area_um2": 0.0, "power_w": 0.0, "leakage_w": 0.0, "energy_j": 0.0}
    transistors = memristors = 0
    for inst in netlist.instances:
        variant = (
            family.variant(inst.cell.has_opamp) if isinstance(family, ReportFamily) else family
        )
        cost = cell_cost(variant, inst.cell.fan_in, calib)
        for metric in totals:
            totals[metric] += getattr(cost, metric)
        transistors += transistor_count(variant, _gate_kind(inst), inst.cell.fan_in, calib)
        if variant.memristive:
            memristors += inst.cell.fan_in

    return CostReport(
        family=family.value,
        transistor_count=transistors,
        memristor_count=memristors,
        cell_count=netlist.cell_count,
        depth=depth,
        delay_ns={corner: depth * d1 for corner, d1 in delay_model.d1.items()},
        **totals,
    )


def compare(reports: Mapping[str, CostReport]) -> Comparison:
    """Rank named reports on every metric; ratios are against the first one."""
    if len(reports) < 2:
        raise TooFewReports(f"need at least two reports to compare, got {len(reports)}")
    names = list(reports)
    rankings: dict[str, list[str]] = {}
    ratios: dict[str, dict[str, float]] = {}
    for metric in METRICS:
        values = {name: float(getattr(reports[name], metric)) for name in names}
        rankings[metric] = sorted(names, key=values.__getitem__)
        base = values[names[0]]
        ratios[metric] = {
            name: 1.0 if value == base else (value / base if base else float("inf"))
            for name, value in values.items()
        }
    return Comparison(names=names, rankings=rankings, ratios=ratios)


def power_at_temperature(
    cost: CostReport, temp: float, model: TemperatureModel | None = None
) -> float:
    """Linear power drift from the calibration temperature, floored at zero."""
    model = model or get_settings().temperature_model()
    return max(0.0, cost.power_w + model.slope * (temp - model.reference_temp))


# Rendering

_SI_METRICS = ("power_w", "leakage_w", "energy_j")


def _display(metric: str, value: float) -> str:
    if metric in _SI_METRICS:
        return format_si(value)
    if metric == "area_um2":
        return f"{value:.2f}"
    return str(int(value))


def report_to_json(cost: CostReport) -> dict:
    """JSON-ready report; electrical figures as SI strings plus exact ``*_raw`` floats."""
    document: dict = {"family": cost.family}
    for metric in METRICS:
        value = getattr(cost, metric)
        if metric in _SI_METRICS:
            document[metric] = format_si(value)
            document[f"{metric}_raw"] = value
        else:
            document[metric] = value
    document["delay_ns"] = {corner.value: round(d, 6) for corner, d in cost.delay_ns.items()}
    return document


def _load_metric(document: Mapping, metric: str) -> int | float:
    if metric not in _SI_METRICS:
        return document[metric]
    # hand-written reports may carry only the SI string
    raw = document.get(f"{metric}_raw")
    return float(raw) if raw is not None else parse_si(document[metric])


def report_from_json(document: Mapping) -> CostReport:
    fields = {
        metric: _load_metric(document, metric) for metric in METRICS if metric in document
    }
    return CostReport(
        family=document["family"],
        delay_ns={Corner(c): d for c, d in document.get("delay_ns", {}).items()},
        **fields,
    )


def _align(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths, strict=True)) for row in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def format_table(cost: CostReport, corner: Corner | str | None = None) -> str:
    rows = [["metric", cost.family]]
    rows += [[metric, _display(metric, getattr(cost, metric))] for metric in METRICS]
    corners = [Corner(corner)] if corner else list(cost.delay_ns)
    rows += [[f"delay_ns[{c.value}]", f"{cost.delay_ns[c]:.2f}"] for c in corners]
    return _align(rows)


def format_comparison(reports: Mapping[str, CostReport], comparison: Comparison) -> str:
    rows = [["metric", *comparison.names, "ranking"]]
    for metric in METRICS:
        rows.append(
            [
                metric,
                *(_display(metric, getattr(reports[n], metric)) for n in comparison.names),
                " < ".join(comparison.rankings[metric]),
            ]
        )
    return _align(rows)

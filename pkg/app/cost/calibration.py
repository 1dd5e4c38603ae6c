"""Embedded per-cell calibration and JSON calibration files."""

import json
import logging
from pathlib import Path

from pydantic import BaseModel, ValidationError, field_validator

from app.config import Settings, get_settings
from app.cost.models import CalibrationEntry, CalibrationTable, Family, Source
from app.cost.units import parse_si
from app.errors import CalibrationFormatError

logger = logging.getLogger(__name__)

# 2-input NOR cell: area um2, power, leakage, energy.
TABLE_III: dict[Family, tuple[str, str, str, str]] = {
    Family.CMOS: ("9.4", "28.6p", "16.32p", "28.6z"),
    Family.MTL_NO_OPAMP: ("4.55", "3.00u", "14.30p", "0.30p"),
    Family.MTL_OPAMP: ("31.30", "19.70u", "80.96p", "1.09p"),
}

# 2-input NOR power against the resistive predecessor cell.
TABLE_I: dict[Family, str] = {
    Family.RTL_NO_OPAMP: "8.30u",
    Family.MTL_NO_OPAMP: "3.00u",
    Family.RTL_OPAMP: "19.70u",
    Family.MTL_OPAMP: "16.61u",
}


class _EntryRecord(BaseModel):
    area_um2: float
    power_w: float
    leakage_w: float
    energy_j: float
    source: Source = "user"

    @field_validator("area_um2", "power_w", "leakage_w", "energy_j", mode="before")
    @classmethod
    def _si(cls, value: str | float) -> float:
        return parse_si(value)


def _entry(values: tuple[str, str, str, str], source: Source) -> CalibrationEntry:
    area, power, leakage, energy = (parse_si(v) for v in values)
    return CalibrationEntry(
        area_um2=area, power_w=power, leakage_w=leakage, energy_j=energy, source=source
    )


def default_calibration(settings: Settings | None = None) -> CalibrationTable:
    """Embedded tables; the op-amp MTL power row follows ``mtl_opamp_power_source``."""
    settings = settings or get_settings()
    entries = {family: _entry(values, "TableIII") for family, values in TABLE_III.items()}
    if settings.mtl_opamp_power_source == "TableI":
        entries[Family.MTL_OPAMP] = entries[Family.MTL_OPAMP].model_copy(
            update={"power_w": parse_si(TABLE_I[Family.MTL_OPAMP]), "source": "TableI"}
        )
    return CalibrationTable(
        entries=entries,
        table_i_power_w={family: parse_si(v) for family, v in TABLE_I.items()},
        memristor_area_um2=settings.memristor_area_um2,
        opamp_transistors=settings.opamp_transistors,
        inverter_transistors=settings.inverter_transistors,
    )


def loads_calibration(text: str, base: CalibrationTable | None = None) -> CalibrationTable:
    """Overlay a JSON ``{family: {area_um2, power_w, leakage_w, energy_j, source}}``
    map on ``base`` (the embedded defaults when omitted).

    Values may be numbers or SI strings such as ``"16.32p"``. The output of
    :func:`dump_calibration` is accepted as well.
    """
    base = base or default_calibration()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise CalibrationFormatError(f"calibration is not valid JSON: {e}") from e
    if not isinstance(raw, dict):
        raise CalibrationFormatError("calibration must be a JSON object keyed by family")
    devices = {}
    if "entries" in raw:
        devices = {
            key: raw[key]
            for key in ("memristor_area_um2", "opamp_transistors", "inverter_transistors")
            if key in raw
        }
        raw = raw["entries"]
    entries = dict(base.entries)
    for name, record in raw.items():
        try:
            family = Family(name)
        except ValueError:
            raise CalibrationFormatError(f"unknown family {name!r} in calibration") from None
        try:
            parsed = _EntryRecord.model_validate(record)
        except ValidationError as e:
            raise CalibrationFormatError(f"bad calibration entry for {name}: {e}") from e
        entries[family] = CalibrationEntry(**parsed.model_dump())
    return base.model_copy(update={"entries": entries, **devices})


def load_calibration(path: Path | str) -> CalibrationTable:
    table = loads_calibration(Path(path).read_text(encoding="utf-8"))
    logger.info("loaded calibration for %d families from %s", len(table.entries), path)
    return table


def get_calibration(settings: Settings | None = None) -> CalibrationTable:
    """Calibration from ``settings.calibration_file`` if set, else the defaults."""
    settings = settings or get_settings()
    if settings.calibration_file is not None:
        return load_calibration(settings.calibration_file)
    return default_calibration(settings)


def dump_calibration(table: CalibrationTable) -> str:
    """JSON in the calibration file format, plus the power ledger and device figures."""
    document = {
        family.value: entry.model_dump(mode="json") for family, entry in table.entries.items()
    }
    extras = {
        "table_i_power_w": {f.value: p for f, p in table.table_i_power_w.items()},
        "memristor_area_um2": table.memristor_area_um2,
        "opamp_transistors": table.opamp_transistors,
        "inverter_transistors": table.inverter_transistors,
    }
    return json.dumps({"entries": document, **extras}, indent=2) + "\n"

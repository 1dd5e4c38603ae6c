"""JSON netlist schema and Graphviz DOT export."""

import json
import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

from app.cell.models import CellKind, ThresholdCell
from app.cell.tlcell import in_window, threshold_window
from app.config import get_settings
from app.errors import NetlistError
from app.netlist.models import CONSTANTS, Block, CellInstance, Netlist

logger = logging.getLogger(__name__)


class CellRecord(BaseModel):
    id: str
    kind: Literal["nor", "nand", "inv"]
    fan_in: int
    v_ref: float
    has_opamp: bool = False
    inputs: list[str]
    output: str


class BlockRecord(BaseModel):
    path: str
    kind: str


class NetlistDocument(BaseModel):
    """On-disk netlist; constants are referenced as ``$low`` / ``$high``."""

    name: str
    inputs: list[str] = Field(default_factory=list)
    outputs: list[str] = Field(default_factory=list)
    cells: list[CellRecord] = Field(default_factory=list)
    blocks: list[BlockRecord] = Field(default_factory=list)


def to_document(netlist: Netlist) -> NetlistDocument:
    return NetlistDocument(
        name=netlist.name,
        inputs=list(netlist.inputs),
        outputs=list(netlist.outputs),
        cells=[
            CellRecord(
                id=inst.id,
                kind="inv" if inst.role == "inv" else inst.cell.kind.value,
                fan_in=inst.cell.fan_in,
                v_ref=inst.cell.v_ref,
                has_opamp=inst.cell.has_opamp,
                inputs=list(inst.inputs),
                output=inst.output,
            )
            for inst in netlist.instances
        ],
        blocks=[BlockRecord(path=b.path, kind=b.kind) for b in netlist.blocks],
    )


def from_document(doc: NetlistDocument, memristance: float | None = None) -> Netlist:
    """Rebuild a netlist; every memristor gets the configured default value."""
    memristance = memristance if memristance is not None else get_settings().memristance_ohms
    instances = []
    for record in doc.cells:
        kind = CellKind.NOR if record.kind == "inv" else CellKind(record.kind)
        cell = ThresholdCell.uniform(
            kind, record.fan_in, record.v_ref, record.has_opamp, memristance
        )
        if not in_window(kind, record.fan_in, record.v_ref):
            lo, hi = threshold_window(kind, record.fan_in)
            logger.warning(
                "cell %s: v_ref %s V outside the %d-input %s window (%s, %s)",
                record.id,
                record.v_ref,
                record.fan_in,
                record.kind,
                lo,
                hi,
            )
        instances.append(
            CellInstance(
                id=record.id,
                cell=cell,
                inputs=tuple(record.inputs),
                output=record.output,
                role="inv" if record.kind == "inv" else "gate",
            )
        )
    return Netlist(
        name=doc.name,
        inputs=tuple(doc.inputs),
        outputs=tuple(doc.outputs),
        instances=tuple(instances),
        blocks=tuple(Block(path=b.path, kind=b.kind) for b in doc.blocks),
    )


def dumps_netlist(netlist: Netlist) -> str:
    doc = to_document(netlist)
    exclude = None if doc.blocks else {"blocks"}
    return json.dumps(doc.model_dump(exclude=exclude), indent=2) + "\n"


def loads_netlist(text: str) -> Netlist:
    try:
        doc = NetlistDocument.model_validate_json(text)
    except ValidationError as e:
        raise NetlistError(f"invalid netlist document: {e}") from e
    return from_document(doc)


def load_netlist(path: Path | str) -> Netlist:
    return loads_netlist(Path(path).read_text(encoding="utf-8"))


def dump_netlist(netlist: Netlist, path: Path | str) -> None:
    Path(path).write_text(dumps_netlist(netlist), encoding="utf-8")


def _escape(name: str) -> str:
    return name.replace("\\", "\\\\").replace('"', '\\"')


def _quote(name: str) -> str:
    return f'"{_escape(name)}"'


def to_dot(netlist: Netlist) -> str:
    """Left-to-right DAG: inputs and constants, cells, then output ports."""
    lines = [f"digraph {_quote(netlist.name)} {{", "  rankdir=LR;"]
    driver_node = {c: f"const:{c}" for c in CONSTANTS}
    for name in netlist.inputs:
        driver_node[name] = f"in:{name}"
        lines.append(f"  {_quote('in:' + name)} [label={_quote(name)}, shape=invhouse];")
    used = {net for inst in netlist.instances for net in inst.inputs} | set(netlist.outputs)
    for const in CONSTANTS:
        if const in used:
            lines.append(f"  {_quote('const:' + const)} [label={_quote(const)}, shape=plaintext];")
    for inst in netlist.instances:
        driver_node[inst.output] = f"cell:{inst.id}"
        kind = "inv" if inst.role == "inv" else inst.cell.kind.value
        label = f"{_escape(inst.id)}\\n{kind}{inst.cell.fan_in}"
        shape = "doubleoctagon" if inst.cell.has_opamp else "box"
        lines.append(f"  {_quote('cell:' + inst.id)} [label=\"{label}\", shape={shape}];")
    for inst in netlist.instances:
        for net in inst.inputs:
            source = driver_node.get(net, f"in:{net}")
            lines.append(f"  {_quote(source)} -> {_quote('cell:' + inst.id)} [label={_quote(net)}];")
    for port in netlist.outputs:
        lines.append(f"  {_quote('out:' + port)} [label={_quote(port)}, shape=house];")
        source = driver_node.get(port, f"in:{port}")
        lines.append(f"  {_quote(source)} -> {_quote('out:' + port)};")
    lines.append("}")
    return "\n".join(lines) + "\n"

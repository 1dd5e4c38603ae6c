"""Incremental netlist construction with hierarchical block scopes."""

from collections.abc import Iterator, Sequence
from contextlib import contextmanager

from app.cell.models import CellKind, ThresholdCell, VoltageLevels, VrefPolicy
from app.cell.tlcell import select_vref
from app.config import get_settings
from app.errors import SynthError, UnsupportedFanIn
from app.netlist.models import CONSTANTS, Block, CellInstance, CellRole, Netlist
from app.netlist.ports import bus


class NetlistBuilder:
    """Collects cells and ports; ``build()`` freezes them into a Netlist.

    Generators call the gate helpers (``nor``, ``nand``, ``inv``, ``and_``,
    ``or_``, ``xor``) which return the output net name. Cells with more than
    ``opamp_fanin_threshold`` inputs get an op-amp comparator.
    """

    def __init__(
        self,
        name: str,
        policy: VrefPolicy | None = None,
        levels: VoltageLevels | None = None,
        memristance: float | None = None,
    ) -> None:
        settings = get_settings()
        self.name = name
        self.policy = policy if policy is not None else settings.vref_policy()
        self.levels = levels if levels is not None else settings.levels()
        self.memristance = memristance if memristance is not None else settings.memristance_ohms
        self.opamp_fanin_threshold = settings.opamp_fanin_threshold
        self._vref = {kind: select_vref(kind, self.policy, self.levels) for kind in CellKind}
        self._inputs: list[str] = []
        self._outputs: list[str] = []
        self._instances: list[CellInstance] = []
        self._blocks: list[Block] = []
        self._aliases: dict[str, str] = {}
        self._scope: list[str] = []
        self._counter = 0

    # Ports

    def input(self, name: str) -> str:
        if name in self._inputs or name in CONSTANTS:
            raise SynthError(f"input {name} declared twice")
        self._inputs.append(name)
        return name

    def input_bus(self, prefix: str, width: int) -> list[str]:
        return [self.input(name) for name in bus(prefix, width)]

    def output(self, port: str, net: str) -> None:
        """Expose ``net`` as primary output ``port``.

        Cell-driven nets are renamed to the port name; a primary input can only
        be exposed under its own name.
        """
        if net in self._inputs or net in CONSTANTS:
            if net != port:
                raise SynthError(f"cannot expose {net} as {port}")
        elif net in self._aliases:
            raise SynthError(f"net {net} already exposed as {self._aliases[net]}")
        else:
            self._aliases[net] = port
        self._outputs.append(port)

    def output_bus(self, prefix: str, nets: Sequence[str]) -> None:
        for port, net in zip(bus(prefix, len(nets)), nets, strict=True):
            self.output(port, net)

    # Hierarchy

    @property
    def path(self) -> str:
        return "/".join(self._scope)

    @contextmanager
    def block(self, name: str, kind: str) -> Iterator[None]:
        self._scope.append(name)
        self._blocks.append(Block(path=self.path, kind=kind))
        try:
            yield
        finally:
            self._scope.pop()

    def _fresh(self) -> tuple[str, str]:
        self._counter += 1
        prefix = f"{self.path}/" if self._scope else ""
        return f"{prefix}u{self._counter}", f"{prefix}_{self._counter}"

    # Cells

    def cell(
        self,
        kind: CellKind,
        inputs: Sequence[str],
        v_ref: float | None = None,
        role: CellRole = "gate",
        opamp: bool | None = None,
    ) -> str:
        fan_in = len(inputs)
        if not 1 <= fan_in <= self.policy.n_max:
            raise UnsupportedFanIn(f"fan-in {fan_in} outside [1, {self.policy.n_max}]")
        has_opamp = fan_in > self.opamp_fanin_threshold if opamp is None else opamp
        cell = ThresholdCell.uniform(
            kind,
            fan_in,
            self._vref[kind] if v_ref is None else v_ref,
            has_opamp,
            self.memristance,
        )
        instance_id, net = self._fresh()
        self._instances.append(
            CellInstance(id=instance_id, cell=cell, inputs=tuple(inputs), output=net, role=role)
        )
        return net

    def nor(self, *nets: str, opamp: bool | None = None) -> str:
        return self.cell(CellKind.NOR, nets, opamp=opamp)

    def nand(self, *nets: str, opamp: bool | None = None) -> str:
        return self.cell(CellKind.NAND, nets, opamp=opamp)

    def inv(self, net: str) -> str:
        """Inverter-configured restore cell, referenced at mid-swing."""
        return self.cell(CellKind.NOR, [net], v_ref=self.levels.midpoint, role="inv")

    def and_(self, *nets: str) -> str:
        return self.inv(self.nand(*nets))

    def or_(self, *nets: str) -> str:
        return self.inv(self.nor(*nets))

    def xor(self, a: str, b: str) -> str:
        """NOR(NOR(a, b), AND(a, b)) in four cells."""
        return self.nor(self.nor(a, b), self.and_(a, b))

    def build(self) -> Netlist:
        def net(name: str) -> str:
            return self._aliases.get(name, name)

        instances = tuple(
            inst.model_copy(
                update={
                    "inputs": tuple(net(n) for n in inst.inputs),
                    "output": net(inst.output),
                }
            )
            for inst in self._instances
        )
        return Netlist(
            name=self.name,
            inputs=tuple(self._inputs),
            outputs=tuple(self._outputs),
            instances=instances,
            blocks=tuple(self._blocks),
        )

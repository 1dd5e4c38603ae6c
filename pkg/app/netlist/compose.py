"""Series and parallel composition of netlists."""

from collections.abc import Callable

from app.errors import WidthMismatch
from app.netlist.models import CONSTANTS, Block, Netlist


def _renamed(netlist: Netlist, prefix: str, rename: Callable[[str], str]) -> Netlist:
    def net(name: str) -> str:
        return name if name in CONSTANTS else rename(name)

    return Netlist(
        name=netlist.name,
        inputs=tuple(net(n) for n in netlist.inputs),
        outputs=tuple(net(n) for n in netlist.outputs),
        instances=tuple(
            inst.model_copy(
                update={
                    "id": f"{prefix}/{inst.id}",
                    "inputs": tuple(net(n) for n in inst.inputs),
                    "output": net(inst.output),
                }
            )
            for inst in netlist.instances
        ),
        blocks=(Block(path=prefix, kind=netlist.name),)
        + tuple(Block(path=f"{prefix}/{b.path}", kind=b.kind) for b in netlist.blocks),
    )


def series(first: Netlist, second: Netlist, name: str | None = None) -> Netlist:
    """Feed the outputs of ``first`` into the inputs of ``second``, in order."""
    if len(first.outputs) != len(second.inputs):
        raise WidthMismatch(
            f"{first.name} has {len(first.outputs)} outputs, "
            f"{second.name} has {len(second.inputs)} inputs"
        )
    primary = set(first.inputs)
    a = _renamed(first, "a", lambda n: n if n in primary else f"a/{n}")
    bridge = dict(zip(second.inputs, a.outputs, strict=True))
    b = _renamed(second, "b", lambda n: bridge.get(n, f"b/{n}"))
    return Netlist(
        name=name or f"{first.name}+{second.name}",
        inputs=a.inputs,
        outputs=b.outputs,
        instances=a.instances + b.instances,
        blocks=a.blocks + b.blocks,
    )


def parallel(first: Netlist, second: Netlist, name: str | None = None) -> Netlist:
    """Disjoint union; every net of ``first`` is prefixed ``a/``, of ``second`` ``b/``."""
    a = _renamed(first, "a", lambda n: f"a/{n}")
    b = _renamed(second, "b", lambda n: f"b/{n}")
    return Netlist(
        name=name or f"{first.name}|{second.name}",
        inputs=a.inputs + b.inputs,
        outputs=a.outputs + b.outputs,
        instances=a.instances + b.instances,
        blocks=a.blocks + b.blocks,
    )

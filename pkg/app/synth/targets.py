"""Target strings such as ``vedic:8`` or ``fft8:8:6`` mapped to generators."""

import logging

from app.errors import InvalidTarget
from app.fft.generators import dft4, fft8, fft_unit
from app.fft.models import FixedPointFormat
from app.netlist.graph import validate_and_levelize
from app.netlist.models import Netlist
from app.synth.arith import cla
from app.synth.gates import GateKind, complement_unit, full_adder, gate, half_adder
from app.synth.vedic import vedic

logger = logging.getLogger(__name__)

TARGET_GRAMMAR = (
    "gate:<kind>:<n> | half_adder | full_adder | complement:<w> | cla:<w> | "
    "vedic:<w> | fft_unit:<w>:<signs> | dft4:<w> | fft8:<w>[:fracbits]"
)


def _int(field: str, text: str) -> int:
    try:
        return int(field)
    except ValueError:
        raise InvalidTarget(f"{field!r} is not an integer in target {text!r}") from None


def build_target(text: str) -> Netlist:
    """Generate the netlist named by ``text``.

    Malformed strings raise InvalidTarget; generator preconditions raise their
    own SynthError.
    """
    name, *args = text.strip().split(":")
    match name, args:
        case "gate", [kind, n]:
            if kind not in {k.value for k in GateKind}:
                raise InvalidTarget(f"unknown gate kind {kind!r}")
            netlist = gate(GateKind(kind), _int(n, text))
        case "half_adder", []:
            netlist = half_adder()
        case "full_adder", []:
            netlist = full_adder()
        case "complement", [w]:
            netlist = complement_unit(_int(w, text))
        case "cla", [w]:
            netlist = cla(_int(w, text))
        case "vedic", [w]:
            netlist = vedic(_int(w, text))
        case "fft_unit", [w, signs]:
            netlist = fft_unit(_int(w, text), signs)
        case "dft4", [w]:
            netlist = dft4(_int(w, text))
        case "fft8", [w]:
            netlist = fft8(_int(w, text))
        case "fft8", [w, frac]:
            width = _int(w, text)
            netlist = fft8(width, FixedPointFormat(total_bits=width, frac_bits=_int(frac, text)))
        case _:
            raise InvalidTarget(f"unknown target {text!r}; expected {TARGET_GRAMMAR}")

    schedule = validate_and_levelize(netlist)
    logger.info(
        "synthesized %s: %d cells, depth %d", netlist.name, netlist.cell_count, schedule.depth
    )
    return netlist

"""Structural validation and levelization of netlists."""

import logging

import networkx as nx

from app.errors import CombinationalCycle, DanglingInput, DuplicateInstance, MultipleDrivers
from app.netlist.models import CONSTANTS, Netlist, Schedule

logger = logging.getLogger(__name__)


def drivers(netlist: Netlist) -> dict[str, str]:
    """Map each net to its single driver, raising on conflicts."""
    table: dict[str, str] = {c: "constant" for c in CONSTANTS}
    for name in netlist.inputs:
        if name in table:
            raise MultipleDrivers(f"net {name} is declared twice as a primary input or constant")
        table[name] = "input"
    seen_ids: set[str] = set()
    for inst in netlist.instances:
        if inst.id in seen_ids:
            raise DuplicateInstance(f"instance id {inst.id} is used twice")
        seen_ids.add(inst.id)
        if inst.output in table:
            raise MultipleDrivers(
                f"net {inst.output} driven by {inst.id} and by {table[inst.output]}"
            )
        table[inst.output] = inst.id
    return table


def build_graph(netlist: Netlist) -> nx.DiGraph:
    """Instance-level DAG: an edge runs from each driver instance to each consumer."""
    table = drivers(netlist)
    graph = nx.DiGraph()
    for inst in netlist.instances:
        graph.add_node(inst.id, instance=inst)
    for inst in netlist.instances:
        for net in inst.inputs:
            driver = table.get(net)
            if driver is None:
                raise DanglingInput(f"instance {inst.id} reads undriven net {net}")
            if driver not in ("input", "constant"):
                graph.add_edge(driver, inst.id, net=net)
    for net in netlist.outputs:
        if net not in table:
            raise DanglingInput(f"primary output {net} is not driven")
    return graph


def validate_and_levelize(netlist: Netlist) -> Schedule:
    """Topological order of instances grouped into combinational levels."""
    graph = build_graph(netlist)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        path = " -> ".join(edge[0] for edge in cycle)
        raise CombinationalCycle(f"combinational cycle through {path} -> {cycle[0][0]}")
    levels = [
        [graph.nodes[node]["instance"] for node in generation]
        for generation in nx.topological_generations(graph)
    ]
    logger.debug("netlist %s: %d instances in %d levels", netlist.name, len(graph), len(levels))
    return Schedule(levels=levels)

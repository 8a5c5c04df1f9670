"""Mimic schedules: replay a base-graph execution copy by copy on a family graph."""

from typing import List

from netcon.core.types import ScheduledPair
from netcon.schedulers.scripted import Schedule
from netcon.topology.family import FamilyGraph, named_family_graph

# Triangle nodes u1, u2, u3 are 0, 1, 2; hexagon nodes v1..v3 are 0..2 and v1'..v3'
# are 3..5. The hexagon is the family graph of the triangle without (u3, u1).
HEXAGON = named_family_graph("triangle", (2, 0), 2)


def expand_step(pair: ScheduledPair, fam: FamilyGraph) -> List[ScheduledPair]:
    """
    The k steps on G' that mimic one step on G.

    Intra-copy steps come in copy order; a step on the removed edge becomes the
    k chain edges in chain order. Orientation and role carry over to every copy.
    """
    a, b, role = pair
    if not fam.is_removed(a, b):
        return [
            ScheduledPair(fam.node(h, a), fam.node(h, b), role) for h in range(fam.k)
        ]
    i, j = fam.removed_edge
    expanded = []
    for h in range(fam.k):
        x, y = fam.node(h, i), fam.node((h + 1) % fam.k, j)
        if a != i:
            x, y = y, x
        expanded.append(ScheduledPair(x, y, role))
    return expanded


def mimic_to_family(trace: Schedule, fam: FamilyGraph) -> Schedule:
    """
    Map a schedule on G onto G'.

    Args:
        trace: Schedule over the base nodes.
        fam: The family graph.

    Returns:
        A schedule of k * len(trace) steps; block t mimics step t.
    """
    if trace.n != fam.base_n:
        raise ValueError(f"trace is over {trace.n} nodes, base graph has {fam.base_n}")
    pairs = [p for pair in trace.pairs for p in expand_step(pair, fam)]
    return Schedule(n=fam.n, pairs=pairs, provenance=f"mimic({trace.provenance})")


def mimic_triangle_to_hexagon(trace: Schedule) -> Schedule:
    """Map a triangle schedule onto the hexagon (two copies)."""
    return mimic_to_family(trace, HEXAGON)

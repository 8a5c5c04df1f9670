"""Family graphs: k copies of a base graph chained through a removed cycle edge."""

from typing import Dict, List, Sequence, Tuple

import networkx as nx

from netcon.core.configuration import Edge
from netcon.core.types import NodeId
from netcon.exceptions import TopologyError
from netcon.topology.graphs import ActiveGraph, on_active_cycle

BASE_GRAPHS: Dict[str, Tuple[int, Tuple[Edge, ...]]] = {
    "triangle": (3, ((0, 1), (1, 2), (0, 2))),
    "square": (4, ((0, 1), (1, 2), (2, 3), (0, 3))),
}


class FamilyGraph:
    """
    G' built from k copies of G, each missing the edge (i, j).

    Copy h of base node m is node ``h * n + m``. The copies are chained by the
    edges {(h, i), (h + 1 mod k, j)}.
    """

    def __init__(
        self,
        base_n: int,
        base_edges: Sequence[Edge],
        removed_edge: Edge,
        k: int,
    ):
        self.base_n = base_n
        self.base_edges: Tuple[Edge, ...] = tuple(base_edges)
        self.removed_edge = removed_edge
        self.k = k
        self.copy_map: Dict[Tuple[int, NodeId], NodeId] = {
            (h, m): h * base_n + m for h in range(k) for m in range(base_n)
        }
        i, j = removed_edge
        self.intra_edges: Tuple[Edge, ...] = tuple(
            (self.node(h, a), self.node(h, b))
            for h in range(k)
            for a, b in self.base_edges
            if {a, b} != {i, j}
        )
        self.inter_edges: Tuple[Edge, ...] = tuple(
            (self.node(h, i), self.node((h + 1) % k, j)) for h in range(k)
        )

    @property
    def n(self) -> int:
        return self.k * self.base_n

    @property
    def edges(self) -> List[Edge]:
        return sorted(
            (min(a, b), max(a, b)) for a, b in self.intra_edges + self.inter_edges
        )

    def node(self, h: int, m: NodeId) -> NodeId:
        return self.copy_map[(h, m)]

    def origin(self, node: NodeId) -> Tuple[int, NodeId]:
        """Copy index and base node of a node of G'."""
        return divmod(node, self.base_n)

    def is_removed(self, a: NodeId, b: NodeId) -> bool:
        return {a, b} == set(self.removed_edge)

    def __repr__(self) -> str:
        return (
            f"FamilyGraph(base_n={self.base_n}, removed_edge={self.removed_edge}, "
            f"k={self.k})"
        )


def edge_on_cycle(n: int, edges: Sequence[Edge], edge: Edge) -> bool:
    """Whether ``edge`` belongs to G and lies on a cycle of G."""
    return on_active_cycle(ActiveGraph.from_edges(n, edges), *edge)


def build_family_graph(
    base_n: int, base_edges: Sequence[Edge], cycle_edge: Edge, k: int
) -> FamilyGraph:
    """
    Build the family graph G' for G, a cycle edge of G and k copies.

    Args:
        base_n: Node count of G.
        base_edges: Edges of G.
        cycle_edge: Oriented edge (i, j) removed from every copy.
        k: Number of copies.

    Returns:
        The FamilyGraph.

    Raises:
        TopologyError: If k < 2, G is disconnected or cycle_edge is not on a cycle.
    """
    if k < 2:
        raise TopologyError(f"family graphs need k >= 2 copies, got {k}")
    graph = nx.Graph()
    graph.add_nodes_from(range(base_n))
    graph.add_edges_from(base_edges)
    if base_n == 0 or not nx.is_connected(graph):
        raise TopologyError("base graph must be connected")
    if not edge_on_cycle(base_n, base_edges, cycle_edge):
        raise TopologyError(
            f"edge {cycle_edge} does not lie on a cycle of the base graph"
        )
    return FamilyGraph(base_n, base_edges, cycle_edge, k)


def named_family_graph(name: str, cycle_edge: Edge, k: int) -> FamilyGraph:
    """Family graph over one of the named base graphs in ``BASE_GRAPHS``."""
    if name not in BASE_GRAPHS:
        available = ", ".join(BASE_GRAPHS)
        raise TopologyError(f"Unknown base graph: {name}. Available: {available}")
    base_n, base_edges = BASE_GRAPHS[name]
    return build_family_graph(base_n, base_edges, cycle_edge, k)

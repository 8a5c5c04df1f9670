"""Active-graph views and topology recognizers."""

from typing import Collection, Dict, Iterable, Optional, Tuple

import networkx as nx

from netcon.core.configuration import Configuration, Edge
from netcon.core.types import NodeId, StateId


class ActiveGraph:
    """
    Read-only view of the active subgraph of a configuration.

    Attributes:
        nodes: Sorted node ids in the view.
        adjacency: Per-node sorted active neighbors (successors when directed).
        directed: Whether edges are ordered pairs.
    """

    def __init__(
        self,
        nodes: Iterable[NodeId],
        edges: Iterable[Edge],
        directed: bool = False,
    ):
        self.nodes: Tuple[NodeId, ...] = tuple(sorted(nodes))
        self.directed = directed
        members = set(self.nodes)
        adjacency: Dict[NodeId, set] = {u: set() for u in self.nodes}
        for u, v in edges:
            if u not in members or v not in members:
                continue
            adjacency[u].add(v)
            if not directed:
                adjacency[v].add(u)
        self.adjacency: Dict[NodeId, Tuple[NodeId, ...]] = {
            u: tuple(sorted(vs)) for u, vs in adjacency.items()
        }

    @classmethod
    def from_configuration(
        cls, config: Configuration, states: Optional[Collection[StateId]] = None
    ) -> "ActiveGraph":
        """
        View the active edges of a configuration.

        Args:
            config: The configuration.
            states: Keep only nodes whose state is in this set (all when None).
        """
        if states is None:
            nodes = list(range(config.n))
        else:
            nodes = [u for u in range(config.n) if config.state(u) in states]
        return cls(nodes, config.active_edges(), directed=config.directed)

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Edge], directed: bool = False
    ) -> "ActiveGraph":
        return cls(range(n), edges, directed=directed)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def edges(self) -> Tuple[Edge, ...]:
        if self.directed:
            return tuple((u, v) for u in self.nodes for v in self.adjacency[u])
        return tuple((u, v) for u in self.nodes for v in self.adjacency[u] if u < v)

    def degree(self, u: NodeId) -> int:
        if self.directed:
            return len(self.adjacency[u]) + sum(
                1 for w in self.nodes if u in self.adjacency[w]
            )
        return len(self.adjacency[u])

    def to_networkx(self) -> nx.Graph:
        graph = nx.DiGraph() if self.directed else nx.Graph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges())
        return graph

    def __repr__(self) -> str:
        return (
            f"ActiveGraph(n={self.n}, edges={len(self.edges())}, "
            f"directed={self.directed})"
        )


def _undirected(g: ActiveGraph) -> nx.Graph:
    graph = g.to_networkx()
    return graph.to_undirected() if g.directed else graph


def is_connected(g: ActiveGraph) -> bool:
    """Whether one component spans every node (direction ignored)."""
    if g.n == 0:
        return False
    return bool(nx.is_connected(_undirected(g)))


def count_components(g: ActiveGraph) -> int:
    if g.n == 0:
        return 0
    return int(nx.number_connected_components(_undirected(g)))


def is_acyclic(g: ActiveGraph) -> bool:
    """Whether the active subgraph is a forest."""
    return len(g.edges()) == g.n - count_components(g)


def is_spanning_line(g: ActiveGraph) -> bool:
    """Connected with degree sequence 1, 2, ..., 2, 1."""
    if g.n < 2 or len(g.edges()) != g.n - 1:
        return False
    degrees = sorted(g.degree(u) for u in g.nodes)
    if degrees != [1, 1] + [2] * (g.n - 2):
        return False
    return is_connected(g)


def is_spanning_star(g: ActiveGraph) -> bool:
    """One center adjacent to everybody else and no other edge."""
    if g.n < 2:
        return False
    degrees = sorted(g.degree(u) for u in g.nodes)
    return degrees == [1] * (g.n - 1) + [g.n - 1]


def on_active_cycle(g: ActiveGraph, u: NodeId, v: NodeId) -> bool:
    """
    Whether the active edge uv lies on a cycle of g.

    Undirected, some other u-v path must exist; directed, the edge u->v lies on
    a directed cycle exactly when v reaches u.
    """
    graph = g.to_networkx()
    if not graph.has_edge(u, v):
        return False
    if g.directed:
        return bool(nx.has_path(graph, v, u))
    graph.remove_edge(u, v)
    return bool(nx.has_path(graph, u, v))


def has_directed_2cycle(g: ActiveGraph) -> bool:
    """Whether some u != v have both u->v and v->u active."""
    return any(u in g.adjacency[v] for u in g.nodes for v in g.adjacency[u])


def topology_class(g: ActiveGraph) -> str:
    """Name the strongest recognizer the graph passes."""
    if is_spanning_line(g):
        return "spanning_line"
    if is_spanning_star(g):
        return "spanning_star"
    if not is_connected(g):
        return "disconnected"
    return "tree" if is_acyclic(g) else "connected"

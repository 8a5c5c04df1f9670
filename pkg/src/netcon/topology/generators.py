"""Initial-topology families, edge-list files and small-graph enumeration."""

import itertools
import logging
import random
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from netcon.core.configuration import Configuration, Edge
from netcon.core.rules import ProtocolSpec
from netcon.core.types import StateId
from netcon.exceptions import ConfigurationError, TopologyError
from netcon.topology.family import named_family_graph

logger = logging.getLogger(__name__)

FamilyGenerator = Callable[..., List[Edge]]


def clique(n: int, rng: random.Random) -> List[Edge]:
    return list(itertools.combinations(range(n), 2))


def line(n: int, rng: random.Random) -> List[Edge]:
    return [(u, u + 1) for u in range(n - 1)]


def ring(n: int, rng: random.Random) -> List[Edge]:
    return line(n, rng) + [(0, n - 1)]


def star(n: int, rng: random.Random) -> List[Edge]:
    """Star centered on node 0."""
    return [(0, v) for v in range(1, n)]


def random_connected(n: int, rng: random.Random, p: float = 0.3) -> List[Edge]:
    """
    Uniform random spanning tree plus each remaining pair with probability p.

    The tree comes from a uniformly drawn Pruefer sequence.
    """
    if not 0.0 <= p <= 1.0:
        raise ConfigurationError(f"edge probability must lie in [0, 1], got {p}")
    if n == 2:
        tree = nx.Graph([(0, 1)])
    else:
        tree = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
    edges = {(min(u, v), max(u, v)) for u, v in tree.edges()}
    for pair in itertools.combinations(range(n), 2):
        if pair not in edges and rng.random() < p:
            edges.add(pair)
    return sorted(edges)


def family_graph(
    n: int,
    rng: random.Random,
    base: str = "triangle",
    edge: Tuple[int, int] = (0, 1),
    k: int = 2,
) -> List[Edge]:
    """Family graph G' over a named base graph; n must equal k times its size."""
    fam = named_family_graph(base, tuple(edge), k)  # type: ignore[arg-type]
    if fam.n != n:
        raise ConfigurationError(
            f"family_graph over {base} with k={k} has {fam.n} nodes, not {n}"
        )
    return fam.edges


# Registry of initial-topology families with their minimum sizes
FAMILIES: Dict[str, FamilyGenerator] = {
    "clique": clique,
    "line": line,
    "ring": ring,
    "star": star,
    "random_connected": random_connected,
    "family_graph": family_graph,
}

MIN_SIZES: Dict[str, int] = {"ring": 3, "family_graph": 6}


def get_family(name: str) -> FamilyGenerator:
    """
    Get a topology generator by name.

    Raises:
        ConfigurationError: If the family is not registered.
    """
    generator = FAMILIES.get(name.lower())
    if generator is None:
        available = ", ".join(FAMILIES.keys())
        raise ConfigurationError(f"Unknown family: {name}. Available: {available}")
    return generator


def register_family(name: str, generator: FamilyGenerator, min_size: int = 2) -> None:
    """
    Register a custom topology family.

    Args:
        name: Family name.
        generator: Callable ``(n, rng, **params) -> edges``.
        min_size: Smallest population the family supports.
    """
    FAMILIES[name.lower()] = generator
    MIN_SIZES[name.lower()] = min_size


def generate_edges(
    n: int, family: str, rng: random.Random, **params: Any
) -> List[Edge]:
    """
    Draw the active edges of a connected initial topology.

    Raises:
        ConfigurationError: On an unknown family or an n below its minimum.
    """
    generator = get_family(family)
    minimum = MIN_SIZES.get(family.lower(), 2)
    if n < minimum:
        raise ConfigurationError(f"family {family} needs n >= {minimum}, got {n}")
    return generator(n, rng, **params)


def initial_states(
    proto: Optional[ProtocolSpec], n: int, leader_node: int = 0
) -> List[StateId]:
    """Every node in q0, except the leader (when the protocol has one)."""
    if proto is None:
        return ["q0"] * n
    states = [proto.initial] * n
    if proto.leader is not None:
        states[leader_node] = proto.leader
    return states


def generate_initial(
    n: int,
    family: str,
    seed: int,
    proto: Optional[ProtocolSpec] = None,
    labels: Optional[Sequence[Optional[str]]] = None,
    **params: Any,
) -> Configuration:
    """
    Build a seeded initial configuration.

    Args:
        n: Population size.
        family: Registered family name.
        seed: Seed for the family's randomness.
        proto: Protocol whose q0 / l0 fill the node states.
        labels: Optional input labels per node.
        **params: Family parameters, e.g. ``p`` for random_connected.

    Returns:
        The configuration; its active topology is connected.
    """
    rng = random.Random(seed)
    edges = generate_edges(n, family, rng, **params)
    directed = proto.directed if proto is not None else False
    config = Configuration(
        initial_states(proto, n), edges, directed=directed, labels=labels
    )
    logger.debug("Generated %s initial topology on %d nodes (%d edges)", family, n,
                 len(edges))
    return config


def parse_edge_list(text: str) -> Tuple[int, List[Edge]]:
    """
    Parse an edge list: first line ``n``, then one ``u v`` pair per line.

    Lines starting with ``#`` are ignored.

    Raises:
        TopologyError: On malformed lines or out-of-range ids.
    """
    rows = [
        line.split()
        for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    ]
    if not rows:
        raise TopologyError("empty edge list")
    try:
        n = int(rows[0][0])
        edges = [(int(row[0]), int(row[1])) for row in rows[1:]]
    except (ValueError, IndexError) as e:
        raise TopologyError(f"malformed edge list: {e}") from e
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise TopologyError(f"invalid edge ({u}, {v}) for n={n}")
    return n, edges


def format_edge_list(n: int, edges: Sequence[Edge]) -> str:
    return "\n".join([str(n)] + [f"{u} {v}" for u, v in edges]) + "\n"


def read_edge_list(path: Union[str, Path]) -> Tuple[int, List[Edge]]:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(path: Union[str, Path], n: int, edges: Sequence[Edge]) -> None:
    Path(path).write_text(format_edge_list(n, edges))


def enumerate_connected_graphs(n: int) -> Iterator[List[Edge]]:
    """All connected labeled undirected graphs on n nodes."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pair for bit, pair in enumerate(pairs) if mask >> bit & 1]
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(edges)
        if n > 0 and nx.is_connected(graph):
            yield edges


def enumerate_directed_connected_graphs(n: int) -> Iterator[List[Edge]]:
    """All weakly connected labeled directed graphs on n nodes."""
    pairs = list(itertools.permutations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pair for bit, pair in enumerate(pairs) if mask >> bit & 1]
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(edges)
        if n > 0 and nx.is_weakly_connected(graph):
            yield edges

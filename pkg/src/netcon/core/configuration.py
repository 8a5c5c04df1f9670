"""Configurations: node states plus the active edge set."""

from collections import deque
from typing import FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from netcon.core.types import NodeId, StateId
from netcon.exceptions import TopologyError

Edge = Tuple[NodeId, NodeId]


class Configuration:
    """
    Node-state vector plus the set of active edges.

    Undirected configurations store each active edge once as ``(min, max)``;
    directed ones store ordered pairs. Every node may also carry an input label,
    the constant input component of its state that no rule changes.

    Instances are treated as values by everything outside ``netcon.core``: the
    engine copies before it mutates, and the mutators are private.
    """

    __slots__ = ("_states", "_directed", "_labels", "_out", "_in")

    def __init__(
        self,
        states: Sequence[StateId],
        edges: Iterable[Edge] = (),
        directed: bool = False,
        labels: Optional[Sequence[Optional[str]]] = None,
    ):
        """
        Build a configuration.

        Args:
            states: State of every node, indexed by node id.
            edges: Active edges (ordered pairs when ``directed``).
            directed: Whether edges are directed.
            labels: Optional input label per node.

        Raises:
            TopologyError: If an edge is a self-loop or names an unknown node.
        """
        n = len(states)
        self._states: List[StateId] = list(states)
        self._directed = directed
        if labels is not None and len(labels) != n:
            raise TopologyError(f"expected {n} labels, got {len(labels)}")
        self._labels: Tuple[Optional[str], ...] = (
            tuple(labels) if labels is not None else (None,) * n
        )
        self._out: List[Set[NodeId]] = [set() for _ in range(n)]
        self._in: List[Set[NodeId]] = self._out if not directed else [
            set() for _ in range(n)
        ]
        for u, v in edges:
            self._check(u)
            self._check(v)
            if u == v:
                raise TopologyError(f"self-loop on node {u}")
            self._set_edge(u, v, 1)

    @property
    def n(self) -> int:
        return len(self._states)

    @property
    def directed(self) -> bool:
        return self._directed

    @property
    def states(self) -> Tuple[StateId, ...]:
        return tuple(self._states)

    @property
    def labels(self) -> Tuple[Optional[str], ...]:
        return self._labels

    def state(self, u: NodeId) -> StateId:
        return self._states[u]

    def label(self, u: NodeId) -> Optional[str]:
        return self._labels[u]

    def edge(self, u: NodeId, v: NodeId) -> int:
        """State of edge uv (of the directed edge u->v when directed)."""
        return 1 if v in self._out[u] else 0

    def degree(self, u: NodeId) -> int:
        """Active degree; for directed configurations in- plus out-degree."""
        if self._directed:
            return len(self._out[u]) + len(self._in[u])
        return len(self._out[u])

    def neighbors(self, u: NodeId) -> Tuple[NodeId, ...]:
        if self._directed:
            return tuple(sorted(self._out[u] | self._in[u]))
        return tuple(sorted(self._out[u]))

    def has_common_neighbor(self, u: NodeId, v: NodeId) -> bool:
        if self._directed:
            nu = self._out[u] | self._in[u]
            nv = self._out[v] | self._in[v]
        else:
            nu, nv = self._out[u], self._out[v]
        if len(nu) > len(nv):
            nu, nv = nv, nu
        return any(w in nv for w in nu if w != u and w != v)

    def active_edges(self) -> List[Edge]:
        """Sorted list of active edges."""
        if self._directed:
            return sorted((u, v) for u in range(self.n) for v in self._out[u])
        return sorted((u, v) for u in range(self.n) for v in self._out[u] if u < v)

    def edge_count(self) -> int:
        total = sum(len(s) for s in self._out)
        return total if self._directed else total // 2

    def connected(self, u: NodeId, v: NodeId) -> bool:
        """Whether u and v lie in the same component (edge direction ignored)."""
        if u == v:
            return True
        seen = {u}
        queue = deque([u])
        while queue:
            w = queue.popleft()
            for x in self._undirected_neighbors(w):
                if x == v:
                    return True
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        return False

    def key(self) -> Hashable:
        """Hashable identity used by exhaustive exploration and equality."""
        return (tuple(self._states), frozenset(self.active_edges()))

    def copy(self) -> "Configuration":
        clone = Configuration.__new__(Configuration)
        clone._states = list(self._states)
        clone._directed = self._directed
        clone._labels = self._labels
        clone._out = [set(s) for s in self._out]
        clone._in = clone._out if not self._directed else [set(s) for s in self._in]
        return clone

    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.active_edges())

    def _undirected_neighbors(self, u: NodeId) -> Set[NodeId]:
        if self._directed:
            return self._out[u] | self._in[u]
        return self._out[u]

    def _check(self, u: NodeId) -> None:
        if not 0 <= u < len(self._states):
            raise TopologyError(f"node id {u} out of range [0, {len(self._states)})")

    def _set_state(self, u: NodeId, state: StateId) -> None:
        self._states[u] = state

    def _set_edge(self, u: NodeId, v: NodeId, value: int) -> None:
        if value:
            self._out[u].add(v)
            self._in[v].add(u)
        else:
            self._out[u].discard(v)
            self._in[v].discard(u)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self._directed == other._directed and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return (
            f"Configuration(n={self.n}, edges={self.edge_count()}, "
            f"directed={self._directed})"
        )

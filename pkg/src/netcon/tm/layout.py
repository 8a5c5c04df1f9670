"""Split a halted spanning line into a control line U and a matched memory M."""

import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, model_validator

from netcon.core.configuration import Configuration
from netcon.core.types import NodeId, ScheduledPair, StateId
from netcon.exceptions import TapeExhaustedError, TopologyError
from netcon.schedulers.scripted import Schedule
from netcon.topology.graphs import ActiveGraph, is_spanning_line

logger = logging.getLogger(__name__)

Tokens = Tuple[int, int]

LEFT_END = "hl"

# U-node state holding input slots, e.g. "u:a,b"
SLOT_PREFIX = "u:"


def slot_state(symbols: Sequence[str]) -> StateId:
    """U-node state that stores ``symbols`` in its input slots, in order."""
    if any("," in symbol for symbol in symbols):
        raise ValueError(f"slot symbols cannot contain ',': {list(symbols)}")
    return SLOT_PREFIX + ",".join(symbols)


def slot_symbols(state: StateId) -> List[str]:
    """Input slots stored in a U-node state."""
    if not state.startswith(SLOT_PREFIX):
        raise ValueError(f"state {state!r} holds no input slots")
    return state[len(SLOT_PREFIX):].split(",")


class LineLayout(BaseModel):
    """
    Result of partitioning a line of n nodes.

    ``u_line`` holds the floor(n/2) leftmost nodes in line order, ``matching[k]``
    is the M node matched to ``u_line[k]``, and ``input_record[k]`` lists the
    inputs remembered by ``u_line[k]``: its own, its partner's and, for the last
    U node of an odd line, the redundant node's.
    """

    u_line: List[NodeId]
    m_nodes: List[NodeId]
    matching: Dict[int, NodeId]
    redundant_node: Optional[NodeId] = None
    input_record: List[List[str]] = Field(default_factory=list)

    model_config = {"frozen": True}

    @property
    def m(self) -> int:
        return len(self.m_nodes)

    @property
    def cells(self) -> int:
        return self.m * (self.m - 1) // 2

    @property
    def inputs(self) -> List[str]:
        return [symbol for record in self.input_record for symbol in record]

    @model_validator(mode="after")
    def _matching_is_bijection(self) -> "LineLayout":
        if len(self.u_line) != len(self.m_nodes):
            raise ValueError("U and M must have the same size")
        if sorted(self.matching) != list(range(len(self.u_line))):
            raise ValueError("every U node needs exactly one partner")
        if sorted(self.matching.values()) != sorted(self.m_nodes):
            raise ValueError("matching must be a bijection onto M")
        return self


class InteractionLog:
    """
    Applies scripted interactions and records them as a schedule.

    Each interaction may only change the two nodes' states and their edge.
    """

    def __init__(self, n: int, provenance: str = "scripted"):
        self.n = n
        self.provenance = provenance
        self.pairs: List[ScheduledPair] = []
        self.notes: List[str] = []

    def interact(
        self,
        config: Configuration,
        u: NodeId,
        v: NodeId,
        state_u: Optional[StateId] = None,
        state_v: Optional[StateId] = None,
        edge: Optional[int] = None,
        note: str = "",
    ) -> int:
        """Let u and v interact; returns the edge state observed before the change."""
        observed = config.edge(u, v)
        if state_u is not None:
            config._set_state(u, state_u)
        if state_v is not None:
            config._set_state(v, state_v)
        if edge is not None and edge != observed:
            config._set_edge(u, v, edge)
        self.pairs.append(ScheduledPair(u, v))
        self.notes.append(note)
        return observed

    def __len__(self) -> int:
        return len(self.pairs)

    def schedule(self) -> Schedule:
        return Schedule(n=self.n, pairs=self.pairs, provenance=self.provenance,
                        annotations=self.notes)


def line_order(config: Configuration) -> List[NodeId]:
    """
    Nodes of a spanning line from its leader end to the other end.

    The leader end is the endpoint in state ``hl``; without one the endpoint
    with the smaller id is used.

    Raises:
        TopologyError: If the active topology is not a spanning line.
    """
    if not is_spanning_line(ActiveGraph.from_configuration(config)):
        raise TopologyError("active topology is not a spanning line")
    ends = [u for u in range(config.n) if config.degree(u) == 1]
    leaders = [u for u in ends if config.state(u) == LEFT_END]
    start = leaders[0] if leaders else min(ends)
    order = [start]
    previous = None
    while len(order) < config.n:
        current = order[-1]
        nxt = next(w for w in config.neighbors(current) if w != previous)
        previous = current
        order.append(nxt)
    return order


def partition_line(
    config: Configuration,
    inputs: Optional[Sequence[str]] = None,
    log: Optional[InteractionLog] = None,
) -> Tuple[Configuration, LineLayout]:
    """
    Partition a halted spanning line into U and M with a perfect matching.

    The leader walks to the far end counting nodes, walks back deactivating
    every line edge right of position floor(n/2), then activates the matching
    edges U[k]-M[k] while each U node stores its own and its partner's input in
    its state (see :func:`slot_state`). On an odd line the last U node also
    stores the input of the redundant last node, which stays isolated.

    Args:
        config: Halted Line-Transformer configuration (left untouched).
        inputs: Input symbol per node; the configuration's labels when None.
        log: Records the interactions; a private one is used when None.

    Returns:
        The partitioned configuration and its layout.

    Raises:
        TopologyError: If the active topology is not a spanning line or an
            input is missing.
    """
    symbols = list(inputs) if inputs is not None else list(config.labels)
    if len(symbols) != config.n or any(s is None for s in symbols):
        raise TopologyError("every node needs an input symbol")
    order = line_order(config)
    n = config.n
    h = n // 2
    log = log if log is not None else InteractionLog(n, "partition")
    result = config.copy()

    # count the line
    for t in range(n - 1):
        log.interact(result, order[t], order[t + 1], "k", "k", note="count")
    # walk back, cutting off M and the redundant node
    for t in range(n - 1, h - 1, -1):
        role = "r" if t == n - 1 and n % 2 else "m"
        log.interact(result, order[t], order[t - 1], role, "k", edge=0, note="cut")
    for t in range(h - 1, 0, -1):
        log.interact(result, order[t], order[t - 1], "u", "k", note="return")

    records: List[List[str]] = []
    for k in range(h):
        if k > 0:
            log.interact(result, order[k - 1], order[k], None, "u", note="walk")
        records.append([symbols[order[k]], symbols[order[h + k]]])
        log.interact(result, order[k], order[h + k], slot_state(sorted(records[-1])),
                     "m", edge=1, note="match")
    if n % 2:
        records[-1].append(symbols[order[n - 1]])
        log.interact(result, order[h - 1], order[n - 1],
                     slot_state(sorted(records[-1])), "r", note="redundant")

    layout = LineLayout(
        u_line=order[:h],
        m_nodes=order[h:2 * h],
        matching={k: order[h + k] for k in range(h)},
        redundant_node=order[n - 1] if n % 2 else None,
        input_record=records,
    )
    logger.debug("Partitioned %d-node line: |U|=%d, %d cells, %d interactions",
                 n, h, layout.cells, len(log))
    return result, layout


def cell_address(i: int, j: int) -> int:
    """
    Linear index of the M-edge between the partners of U positions i < j (1-based).

    Addresses run column by column: (1, 2), (1, 3), (2, 3), (1, 4), ... The head
    walks the cells row by row instead (see :func:`move_head`), so the tape
    position of a cell is its rank in that walk, not its address.

    Raises:
        ValueError: If not 1 <= i < j.
    """
    if not 1 <= i < j:
        raise ValueError(f"cell tokens must satisfy 1 <= i < j, got ({i}, {j})")
    return (j - 1) * (j - 2) // 2 + i - 1


def cell_tokens(address: int) -> Tokens:
    """Inverse of :func:`cell_address`."""
    if address < 0:
        raise ValueError(f"negative cell address {address}")
    j = 2
    while (j - 1) * j // 2 <= address:
        j += 1
    return address - (j - 1) * (j - 2) // 2 + 1, j


def _size(layout: Union[LineLayout, int]) -> int:
    return layout.m if isinstance(layout, LineLayout) else layout


def move_head(layout: Union[LineLayout, int], tokens: Tokens, direction: str) -> Tokens:
    """
    Lexicographic successor (``R``) or predecessor (``L``) of a token pair.

    The walk order (1, 2), (1, 3), ..., (1, m), (2, 3), ... differs from the
    address order of :func:`cell_address`; both cover every cell once.

    Moving right advances the right token; at the end of U the left token
    advances and the right one resets beside it. Moving left mirrors this.

    Args:
        layout: The layout, or |M| directly.
        tokens: Current pair (i, j).
        direction: ``L`` or ``R``.

    Raises:
        TapeExhaustedError: When the head would leave the edge memory.
    """
    m = _size(layout)
    i, j = tokens
    if direction == "R":
        if j < m:
            return i, j + 1
        if i + 2 <= m:
            return i + 1, i + 2
        raise TapeExhaustedError(f"head moved right of the last cell ({i}, {j})")
    if direction == "L":
        if j - 1 > i:
            return i, j - 1
        if i > 1:
            return i - 1, m
        raise TapeExhaustedError(f"head moved left of the first cell ({i}, {j})")
    raise ValueError(f"direction must be L or R, got {direction!r}")

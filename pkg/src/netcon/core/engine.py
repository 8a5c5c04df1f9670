"""Single-step execution semantics of network constructors."""

import logging
import random
import zlib
from typing import TYPE_CHECKING, Iterable, List, NamedTuple, Optional, Tuple

from netcon.core.configuration import Configuration
from netcon.core.rules import ProtocolSpec
from netcon.core.types import (
    DegreeClass,
    InteractionContext,
    InteractionEvent,
    NodeId,
    Rule,
    StateId,
)
from netcon.exceptions import TopologyError

if TYPE_CHECKING:
    from netcon.topology.graphs import ActiveGraph

logger = logging.getLogger(__name__)

Triple = Tuple[StateId, StateId, int]


class Outcome(NamedTuple):
    """One possible result of an interaction."""

    rule: Optional[Rule]
    role: Optional[bool]
    after: Triple


def derive_seed(seed: int, tag: str) -> int:
    """
    Derive a stable sub-seed from a base seed and a tag.

    Uses CRC32 rather than ``hash()``, which is salted per process.
    """
    crc = zlib.crc32(tag.encode("utf-8")) & 0xFFFFFFFF
    return (seed ^ crc) & 0xFFFFFFFF


def observe_context(config: Configuration, u: NodeId, v: NodeId) -> InteractionContext:
    """
    Read the sensors of an interacting pair before any rule applies.

    Args:
        config: Current configuration.
        u: Initiator.
        v: Responder.

    Returns:
        Degree classes of both nodes (counting uv itself when active) and the
        common-neighbor bit.

    Raises:
        TopologyError: If u == v or a node id is out of range.
    """
    n = config.n
    if not (0 <= u < n and 0 <= v < n):
        raise TopologyError(f"pair ({u}, {v}) out of range for n={n}")
    if u == v:
        raise TopologyError(f"node {u} cannot interact with itself")
    return InteractionContext(
        DegreeClass.of(config.degree(u)),
        DegreeClass.of(config.degree(v)),
        1 if config.has_common_neighbor(u, v) else 0,
    )


def outcomes(
    config: Configuration,
    u: NodeId,
    v: NodeId,
    proto: ProtocolSpec,
    context: Optional[InteractionContext] = None,
) -> List[Outcome]:
    """
    All distinct results of letting u and v interact.

    An empty list means no rule matched. Two entries only arise for undirected
    protocols when both nodes share a state and the rule hands them different
    right-hand states; ``role`` then tells which orientation each entry took.
    """
    su, sv, c = config.state(u), config.state(v), config.edge(u, v)
    if proto.directed:
        if not proto.has_lhs(su, sv, c):
            return []
        ctx = context or observe_context(config, u, v)
        rule = proto.match(su, sv, c, ctx)
        return [Outcome(rule, None, rule.rhs)] if rule is not None else []

    if not (proto.has_lhs(su, sv, c) or proto.has_lhs(sv, su, c)):
        return []
    ctx = context or observe_context(config, u, v)
    found: List[Outcome] = []
    forward = proto.match(su, sv, c, ctx)
    if forward is not None:
        found.append(Outcome(forward, False, forward.rhs))
    backward = proto.match(
        sv, su, c, InteractionContext(ctx.deg_v, ctx.deg_u, ctx.common_neighbor)
    )
    if backward is not None:
        after = (backward.b2, backward.a2, backward.c2)
        if not found or found[0].after != after:
            found.append(Outcome(backward, True, after))
    if len(found) == 1:
        found[0] = found[0]._replace(role=None)
    return found


def _step(
    config: Configuration,
    u: NodeId,
    v: NodeId,
    proto: ProtocolSpec,
    rng: Optional[random.Random],
    step: int,
    role: Optional[bool] = None,
) -> InteractionEvent:
    """Apply one interaction to ``config`` in place."""
    ctx = observe_context(config, u, v)
    before = (config.state(u), config.state(v), config.edge(u, v))
    options = outcomes(config, u, v, proto, ctx)
    if not options:
        return InteractionEvent(step, u, v, ctx, before, before)

    if len(options) == 1:
        chosen = options[0]
    else:
        if role is None:
            role = rng.random() < 0.5 if rng is not None else False
        chosen = options[1] if options[1].role == role else options[0]

    after = chosen.after
    if after == before:
        return InteractionEvent(step, u, v, ctx, before, after)

    config._set_state(u, after[0])
    config._set_state(v, after[1])
    if after[2] != before[2]:
        config._set_edge(u, v, after[2])
    return InteractionEvent(step, u, v, ctx, before, after, chosen.rule, chosen.role)


def apply_interaction(
    config: Configuration,
    u: NodeId,
    v: NodeId,
    proto: ProtocolSpec,
    rng: Optional[random.Random] = None,
    step: int = 0,
    role: Optional[bool] = None,
) -> Tuple[Configuration, InteractionEvent]:
    """
    Let u and v interact under proto.

    Args:
        config: Configuration before the step (left untouched).
        u: Initiator.
        v: Responder.
        proto: The protocol.
        rng: Random source for the symmetric role choice.
        step: Step number stored in the event.
        role: Forces the symmetric role choice (replays).

    Returns:
        The successor configuration and the event describing the step.
    """
    after = config.copy()
    event = _step(after, u, v, proto, rng, step, role)
    return after, event


def is_halted(config: Configuration, proto: ProtocolSpec) -> bool:
    """Whether every node is in a halting state."""
    if not proto.halting:
        return False
    return all(state in proto.halting for state in config.states)


def _pairs(n: int, directed: bool) -> Iterable[Tuple[NodeId, NodeId]]:
    for u in range(n):
        for v in range(n) if directed else range(u + 1, n):
            if u != v:
                yield u, v


def is_fixed_point(config: Configuration, proto: ProtocolSpec) -> bool:
    """Whether no pair has an effective applicable rule."""
    for u, v in _pairs(config.n, proto.directed):
        before = (config.state(u), config.state(v), config.edge(u, v))
        for option in outcomes(config, u, v, proto):
            if option.after != before:
                return False
    return True


def successors(
    config: Configuration, proto: ProtocolSpec
) -> List[Tuple[Configuration, InteractionEvent]]:
    """
    Every configuration reachable in one effective step.

    Both role assignments of a symmetric rule yield separate successors.
    """
    result = []
    for u, v in _pairs(config.n, proto.directed):
        before = (config.state(u), config.state(v), config.edge(u, v))
        options = outcomes(config, u, v, proto)
        for option in options:
            if option.after == before:
                continue
            role = option.role if len(options) > 1 else None
            result.append(apply_interaction(config, u, v, proto, role=role))
    return result


def replay(
    initial: Configuration,
    events: Iterable[InteractionEvent],
    proto: ProtocolSpec,
) -> Configuration:
    """
    Re-apply recorded events, honoring their role assignments.

    No randomness is involved: a symmetric step without a recorded role takes the
    written orientation.
    """
    config = initial.copy()
    for event in events:
        _step(config, event.u, event.v, proto, None, event.step, event.role)
    return config


def output_graph(config: Configuration, proto: ProtocolSpec) -> "ActiveGraph":
    """Active subgraph induced by the nodes in output states."""
    from netcon.topology.graphs import ActiveGraph

    return ActiveGraph.from_configuration(config, states=proto.output)

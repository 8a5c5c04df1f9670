"""Invariant monitors evaluated after every step of a run."""

import logging
from typing import List, Optional

from netcon.core.base import BaseMonitor
from netcon.core.configuration import Configuration
from netcon.core.types import InteractionEvent, Violation
from netcon.topology.graphs import ActiveGraph, on_active_cycle

logger = logging.getLogger(__name__)


def connectivity_monitor(
    event: InteractionEvent,
    config_before: Optional[Configuration],
    config_after: Configuration,
) -> Optional[Violation]:
    """
    Flag a deactivation that increased the number of components.

    Removing uv splits a component exactly when u and v are disconnected
    afterwards, so only the post-step configuration is inspected.

    Args:
        event: The step just applied.
        config_before: Configuration before the step (unused, kept for symmetry).
        config_after: Configuration after the step.

    Returns:
        A violation, or None.
    """
    if not event.deactivated:
        return None
    if config_after.connected(event.u, event.v):
        return None
    return Violation(
        "connectivity",
        event.step,
        event.u,
        event.v,
        f"deactivating bridge {event.u}-{event.v} ({event.rule})",
    )


class ConnectivityMonitor(BaseMonitor):
    """Fires when a deactivation disconnects the active topology."""

    name = "connectivity"

    def check(
        self, event: InteractionEvent, config: Configuration
    ) -> Optional[Violation]:
        return connectivity_monitor(event, None, config)


def pre_step_graph(event: InteractionEvent, config_after: Configuration) -> ActiveGraph:
    """Active graph just before ``event``; only the edge u-v can differ."""
    edges = [e for e in config_after.active_edges() if e != (event.u, event.v)]
    if event.before[2]:
        edges.append((event.u, event.v))
    return ActiveGraph.from_edges(config_after.n, edges, directed=config_after.directed)


def cycle_only_monitor(
    event: InteractionEvent,
    config_before: Optional[Configuration],
    config_after: Configuration,
) -> Optional[Violation]:
    """
    Flag a deactivation of an edge that was not on an active cycle.

    The cycle is looked for in the graph before the step. On undirected
    topologies this agrees with the connectivity check; on directed ones the
    cycle must follow edge directions, so cutting u->v can keep the topology
    connected and still be flagged.
    """
    if not event.deactivated:
        return None
    if config_before is not None:
        before = ActiveGraph.from_configuration(config_before)
    else:
        before = pre_step_graph(event, config_after)
    if on_active_cycle(before, event.u, event.v):
        return None
    return Violation(
        "cycle_only",
        event.step,
        event.u,
        event.v,
        f"edge {event.u}-{event.v} was not on an active cycle ({event.rule})",
    )


class CycleOnlyMonitor(BaseMonitor):
    """Fires when a deactivated edge was not on an active cycle."""

    name = "cycle_only"

    def check(
        self, event: InteractionEvent, config: Configuration
    ) -> Optional[Violation]:
        return cycle_only_monitor(event, None, config)


def default_monitors(
    preserves_connectivity: bool, cycle_only: bool
) -> List[BaseMonitor]:
    """Monitors matching what a protocol claims."""
    monitors: List[BaseMonitor] = []
    if preserves_connectivity:
        monitors.append(ConnectivityMonitor())
    if cycle_only:
        monitors.append(CycleOnlyMonitor())
    return monitors

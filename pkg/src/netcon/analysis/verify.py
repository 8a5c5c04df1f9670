"""Explicit-state verification at small n and stabilization checks."""

import logging
import random
from collections import deque
from enum import Enum
from typing import Callable, Iterator, List, Optional, Sequence, Union

from pydantic import BaseModel

from netcon.core.configuration import Configuration, Edge
from netcon.core.engine import _step, is_halted, output_graph, successors
from netcon.core.rules import ProtocolSpec
from netcon.exceptions import ConfigurationError, StateSpaceError
from netcon.protocols.catalog import ProtocolCatalogEntry, decision_bits
from netcon.schedulers.uniform import UniformScheduler
from netcon.topology.generators import (
    enumerate_connected_graphs,
    enumerate_directed_connected_graphs,
    initial_states,
)
from netcon.topology.graphs import (
    ActiveGraph,
    is_connected,
    is_spanning_line,
    is_spanning_star,
)

logger = logging.getLogger(__name__)

MAX_VERIFY_N = 4
DEFAULT_STATE_LIMIT = 2_000_000


class Property(str, Enum):
    """Properties checked over the reachable configuration space."""

    HALTING_IMPLIES_SPANNING_LINE = "halting-implies-spanning-line"
    FIXEDPOINT_IMPLIES_SPANNING_STAR = "fixedpoint-implies-spanning-star"
    CONNECTIVITY_ALWAYS = "connectivity-always"


class VerificationReport(BaseModel):
    """Outcome of an exhaustive reachability check."""

    protocol: str
    n: int
    property_name: Property
    holds: bool
    initial_configurations: int = 0
    reachable: int = 0
    terminal: int = 0
    halted: int = 0
    counterexample: Optional[str] = None

    @property
    def verdict(self) -> str:
        return "PASS" if self.holds else "FAIL"


def estimate_state_space(spec: ProtocolSpec, n: int) -> int:
    """Upper bound |Q|^n * 2^pairs on the configuration count."""
    pairs = n * (n - 1) if spec.directed else n * (n - 1) // 2
    return len(spec.states) ** n * 2**pairs


def initial_configurations(spec: ProtocolSpec, n: int) -> Iterator[Configuration]:
    """Every connected labeled topology on n nodes, nodes in their initial states."""
    graphs: Iterator[List[Edge]] = (
        enumerate_directed_connected_graphs(n) if spec.directed
        else enumerate_connected_graphs(n)
    )
    states = initial_states(spec, n)
    for edges in graphs:
        yield Configuration(states, edges, directed=spec.directed)


def _violates(prop: Property, config: Configuration, spec: ProtocolSpec,
              terminal: bool) -> bool:
    if prop is Property.CONNECTIVITY_ALWAYS:
        return not is_connected(ActiveGraph.from_configuration(config))
    if prop is Property.HALTING_IMPLIES_SPANNING_LINE:
        return is_halted(config, spec) and not is_spanning_line(
            output_graph(config, spec)
        )
    return terminal and not is_spanning_star(output_graph(config, spec))


def exhaustive_verify(
    proto: Union[ProtocolCatalogEntry, ProtocolSpec],
    n: int,
    prop: Union[Property, str],
    state_limit: int = DEFAULT_STATE_LIMIT,
) -> VerificationReport:
    """
    Breadth-first search over every configuration reachable from every initial one.

    Both outcomes of a symmetric rule are explored. The property is checked at
    each reachable configuration; the first violation stops the search.

    Args:
        proto: Protocol to check.
        n: Population size (at most 4).
        prop: Property to check.
        state_limit: Maximum number of distinct configurations to visit.

    Returns:
        The verification report.

    Raises:
        ConfigurationError: If n is out of range.
        StateSpaceError: If more than ``state_limit`` configurations are reachable.
    """
    spec = proto.spec if isinstance(proto, ProtocolCatalogEntry) else proto
    prop = Property(prop)
    if not 2 <= n <= MAX_VERIFY_N:
        raise ConfigurationError(
            f"exhaustive verification supports 2 <= n <= {MAX_VERIFY_N}; "
            f"n={n} has up to "
            f"{estimate_state_space(spec, n):.3e} configurations"
        )

    visited = set()
    queue: deque = deque()
    initial_count = 0
    for config in initial_configurations(spec, n):
        initial_count += 1
        if config.key() not in visited:
            visited.add(config.key())
            queue.append(config)

    report = VerificationReport(
        protocol=spec.name, n=n, property_name=prop, holds=True,
        initial_configurations=initial_count,
    )
    while queue:
        config = queue.popleft()
        nexts = successors(config, spec)
        terminal = not nexts
        report.terminal += terminal
        report.halted += is_halted(config, spec)
        if _violates(prop, config, spec, terminal):
            report.holds = False
            report.counterexample = repr(config)
            logger.warning("%s n=%d: %s violated at %r", spec.name, n, prop.value,
                           config)
            break
        for successor, _ in nexts:
            key = successor.key()
            if key in visited:
                continue
            if len(visited) >= state_limit:
                raise StateSpaceError(state_limit, len(queue))
            visited.add(key)
            queue.append(successor)
        if len(visited) % 100_000 == 0:
            logger.debug("%s n=%d: %d visited, frontier %d", spec.name, n, len(visited),
                         len(queue))

    report.reachable = len(visited)
    logger.info("%s n=%d %s: %s (%d reachable)", spec.name, n, prop.value,
                report.verdict, report.reachable)
    return report


class StabilizationReport(BaseModel):
    """Whether decision outputs stopped changing and agree with an oracle."""

    steps: int
    window: int
    last_change: int
    outputs: List[int]
    expected: int

    @property
    def stable(self) -> bool:
        return self.last_change <= self.steps - self.window

    @property
    def correct(self) -> bool:
        return self.stable and all(bit == self.expected for bit in self.outputs)


def check_stabilization(
    proto: Union[ProtocolCatalogEntry, ProtocolSpec],
    config: Configuration,
    steps: int,
    window: int,
    oracle: Union[int, Callable[[Configuration], int]],
    rng: random.Random,
    decide: Callable[[Configuration], Sequence[int]] = decision_bits,
) -> StabilizationReport:
    """
    Run a stabilizing protocol and compare its outputs over a final window.

    Args:
        proto: The protocol.
        config: Initial configuration (left untouched).
        steps: Scheduler steps to run.
        window: Final steps over which outputs must stay constant.
        oracle: Expected output bit, or a function of the initial configuration.
        rng: Random source for the scheduler and role choices.
        decide: Reads the output bits of a configuration.

    Returns:
        The stabilization report.
    """
    spec = proto.spec if isinstance(proto, ProtocolCatalogEntry) else proto
    expected = oracle(config) if callable(oracle) else oracle
    current = config.copy()
    scheduler = UniformScheduler(current.n, rng=rng, directed=spec.directed)
    outputs = list(decide(current))
    last_change = 0
    for step in range(steps):
        pair = scheduler.next_pair()
        event = _step(current, pair.u, pair.v, spec, rng, step, pair.role)
        if event.rule is None:
            continue
        now = list(decide(current))
        if now != outputs:
            outputs = now
            last_change = step + 1
    return StabilizationReport(
        steps=steps, window=window, last_change=last_change, outputs=outputs,
        expected=expected,
    )

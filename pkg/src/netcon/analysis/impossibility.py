"""
Replay harness for the family-graph indistinguishability argument.

A protocol without common-neighbor detection cannot tell a base graph G from
the family graph G' (k copies of G minus a cycle edge, chained through that
edge). Driving G' with the mimic schedule of a G execution keeps every copy in
lockstep with G, so when the G run deactivates a cycle edge, G' loses one edge
per copy of its long cycle and falls apart.
"""

import logging
import random
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from netcon.core.configuration import Configuration, Edge
from netcon.core.engine import _step
from netcon.core.types import InteractionEvent, ScheduledPair
from netcon.exceptions import ConfigurationError
from netcon.protocols.catalog import ProtocolCatalogEntry
from netcon.schedulers.mimic import expand_step
from netcon.schedulers.scripted import Schedule
from netcon.schedulers.uniform import UniformScheduler
from netcon.topology.family import BASE_GRAPHS, FamilyGraph, build_family_graph
from netcon.topology.graphs import ActiveGraph, count_components

logger = logging.getLogger(__name__)

BaseGraph = Union[str, Tuple[int, Sequence[Edge]]]


class ReplayVerdict(str, Enum):
    """How a replay ended."""

    DISCONNECTED = "disconnected"
    CONNECTED = "connected"
    INAPPLICABLE = "mimic inapplicable"


class ImpossibilityReport(BaseModel):
    """Base run, mimic schedule and the resulting family-graph topology."""

    protocol: str
    base_n: int
    cycle_edge: Tuple[int, int]
    k: int
    base_steps: int
    deactivation_step: Optional[int] = None
    deactivated_edge: Optional[Tuple[int, int]] = None
    schedule: Schedule
    # one entry per mimic block: every copy equals the base configuration
    block_equality: List[bool] = Field(default_factory=list)
    components: int
    verdict: ReplayVerdict
    detail: str = ""

    @property
    def equal_before_deactivation(self) -> bool:
        end = self.deactivation_step if self.deactivation_step is not None else len(
            self.block_equality
        )
        return all(self.block_equality[:end])


def _base_graph(base: BaseGraph) -> Tuple[int, Tuple[Edge, ...]]:
    if isinstance(base, str):
        if base not in BASE_GRAPHS:
            available = ", ".join(BASE_GRAPHS)
            raise ConfigurationError(
                f"Unknown base graph: {base}. Available: {available}"
            )
        return BASE_GRAPHS[base]
    n, edges = base
    return n, tuple(edges)


def copies_agree(base: Configuration, family: Configuration, fam: FamilyGraph) -> bool:
    """Whether every copy of G inside G' has the base states and edge states."""
    for h in range(fam.k):
        for m in range(fam.base_n):
            if family.state(fam.node(h, m)) != base.state(m):
                return False
        for a, b in fam.base_edges:
            if fam.is_removed(a, b):
                i, j = fam.removed_edge
                x, y = fam.node(h, i), fam.node((h + 1) % fam.k, j)
            else:
                x, y = fam.node(h, a), fam.node(h, b)
            if family.edge(x, y) != base.edge(a, b):
                return False
    return True


def _source_events(
    entry: ProtocolCatalogEntry,
    config: Configuration,
    trace: Optional[Schedule],
    rng: random.Random,
    budget: int,
) -> List[InteractionEvent]:
    """Drive G until its first deactivation (or the end of the source)."""
    spec = entry.spec
    if trace is not None:
        pairs = iter(trace.pairs)
    else:
        scheduler = UniformScheduler(config.n, rng=rng)
        pairs = (scheduler.next_pair() for _ in range(budget))
    events = []
    for step, pair in enumerate(pairs):
        event = _step(config, pair.u, pair.v, spec, rng, step, pair.role)
        events.append(event)
        if event.deactivated:
            break
    return events


def replay_impossibility(
    entry: ProtocolCatalogEntry,
    base: BaseGraph = "triangle",
    cycle_edge: Edge = (2, 0),
    k: int = 2,
    trace: Optional[Schedule] = None,
    rng: Optional[random.Random] = None,
    budget: int = 10_000,
) -> ImpossibilityReport:
    """
    Run a protocol on G, then replay it on G' with the mimic schedule.

    Args:
        entry: Protocol with identical initial states and no common-neighbor
            detection.
        base: Name in ``BASE_GRAPHS`` or an ``(n, edges)`` pair.
        cycle_edge: Edge (i, j) of a cycle of G removed from every copy.
        k: Number of copies (at least 2).
        trace: Source schedule on G; a uniform random one is drawn when None.
        rng: Random source for the generated trace and the role choices.
        budget: Steps drawn for a generated trace.

    Returns:
        The report. Guard divergence between the runs yields the
        ``mimic inapplicable`` verdict instead of a success or failure.

    Raises:
        ConfigurationError: If the protocol senses common neighbors or starts
            from distinguished nodes.
        TopologyError: If the family graph cannot be built.
    """
    spec = entry.spec
    if spec.uses_cnd:
        raise ConfigurationError(f"{spec.name} senses common neighbors; mimicry fails")
    if spec.leader is not None:
        raise ConfigurationError(
            f"{spec.name} starts from a leader; copies would differ"
        )
    rng = rng if rng is not None else random.Random(0)

    base_n, base_edges = _base_graph(base)
    fam = build_family_graph(base_n, base_edges, cycle_edge, k)
    base_config = Configuration(
        [spec.initial] * base_n, base_edges, directed=spec.directed
    )
    family_config = Configuration(
        [spec.initial] * fam.n, fam.edges, directed=spec.directed
    )

    events = _source_events(entry, base_config, trace, rng, budget)
    provenance = trace.provenance if trace is not None else "random"
    mimic_pairs = []
    block_equality: List[bool] = []

    # replay G alongside so every block is compared with the matching base step
    shadow = Configuration([spec.initial] * base_n, base_edges, directed=spec.directed)
    verdict: Optional[ReplayVerdict] = None
    detail = ""
    for event in events:
        _step(shadow, event.u, event.v, spec, None, event.step, event.role)
        for pair in expand_step(ScheduledPair(event.u, event.v, event.role), fam):
            mimic_pairs.append(pair)
            mirrored = _step(family_config, pair.u, pair.v, spec, None,
                             len(mimic_pairs) - 1, pair.role)
            if mirrored.after != event.after:
                verdict = ReplayVerdict.INAPPLICABLE
                detail = (f"block {event.step}: "
                          f"{mirrored.before} -> {mirrored.after} on G' "
                          f"but {event.before} -> {event.after} on G")
                logger.warning("%s: guard divergence, %s", spec.name, detail)
                break
        if verdict is not None:
            break
        block_equality.append(copies_agree(shadow, family_config, fam))

    deactivation = events[-1] if events and events[-1].deactivated else None
    components = count_components(ActiveGraph.from_configuration(family_config))
    if verdict is None:
        verdict = (
            ReplayVerdict.DISCONNECTED if components > 1 else ReplayVerdict.CONNECTED
        )
    report = ImpossibilityReport(
        protocol=spec.name,
        base_n=base_n,
        cycle_edge=tuple(cycle_edge),
        k=k,
        base_steps=len(events),
        deactivation_step=deactivation.step if deactivation else None,
        deactivated_edge=(deactivation.u, deactivation.v) if deactivation else None,
        schedule=Schedule(
            n=fam.n, pairs=mimic_pairs, provenance=f"mimic({provenance})"
        ),
        block_equality=block_equality,
        components=components,
        verdict=verdict,
        detail=detail,
    )
    logger.info("%s on %r: %d components after %d base steps (%s)", spec.name, fam,
                components, len(events), verdict.value)
    return report

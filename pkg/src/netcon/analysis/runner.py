"""Run a protocol under a scheduler until it halts, stabilizes or runs out of budget."""

import csv
import io
import logging
import random
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from pydantic import BaseModel, Field

from netcon.analysis.monitors import default_monitors
from netcon.core.base import BaseMonitor, BaseScheduler
from netcon.core.config import RunSettings, StopCondition, default_budget
from netcon.core.configuration import Configuration
from netcon.core.engine import (
    _step,
    derive_seed,
    is_fixed_point,
    is_halted,
    output_graph,
)
from netcon.core.rules import ProtocolSpec
from netcon.core.types import InteractionEvent, StateId, Violation
from netcon.protocols.catalog import ProtocolCatalogEntry
from netcon.schedulers.uniform import UniformScheduler
from netcon.topology.generators import generate_initial
from netcon.topology.graphs import (
    has_directed_2cycle,
    is_acyclic,
    is_connected,
    is_spanning_line,
    is_spanning_star,
    topology_class,
)

logger = logging.getLogger(__name__)

Trace = List[InteractionEvent]


class RunResult(NamedTuple):
    """Everything a seeded run leaves behind."""

    report: "RunReport"
    trace: Trace
    initial: Configuration
    final: Configuration


RUN_CSV_COLUMNS = [
    "protocol", "n", "seed", "family", "steps", "violations", "topology_class",
]


class RunReport(BaseModel):
    """
    Outcome of one run.

    ``steps`` counts every scheduler selection up to the stop condition; it is
    None (rendered ``inf``) when the budget ran out first.
    """

    protocol: str
    n: int
    seed: Optional[int] = None
    family: str = ""
    stop: StopCondition = StopCondition.HALT
    steps: Optional[int] = None
    steps_taken: int = 0
    halted: bool = False
    fixed_point: bool = False
    violations: List[Violation] = Field(default_factory=list)
    topology_class: str = ""
    recognizers: Dict[str, bool] = Field(default_factory=dict)
    provenance: str = ""

    @property
    def exhausted(self) -> bool:
        return self.steps is None

    @property
    def steps_label(self) -> str:
        return "inf" if self.steps is None else str(self.steps)

    def csv_row(self) -> List[str]:
        return [
            self.protocol,
            str(self.n),
            "" if self.seed is None else str(self.seed),
            self.family,
            self.steps_label,
            str(len(self.violations)),
            self.topology_class,
        ]


def _spec_of(proto: Union[ProtocolCatalogEntry, ProtocolSpec]) -> ProtocolSpec:
    return proto.spec if isinstance(proto, ProtocolCatalogEntry) else proto


def recognize(config: Configuration, spec: ProtocolSpec) -> Tuple[str, Dict[str, bool]]:
    """Topology class and individual recognizer results of the output graph."""
    graph = output_graph(config, spec)
    results = {
        "connected": is_connected(graph),
        "acyclic": is_acyclic(graph),
        "spanning_line": is_spanning_line(graph),
        "spanning_star": is_spanning_star(graph),
    }
    if spec.directed:
        results["directed_2cycle"] = has_directed_2cycle(graph)
    return topology_class(graph), results


def _reached(
    config: Configuration,
    spec: ProtocolSpec,
    stop: StopCondition,
    detection: FrozenSet[StateId] = frozenset(),
) -> bool:
    if stop is StopCondition.HALT:
        return is_halted(config, spec)
    if stop is StopCondition.DETECTION:
        return is_halted(config, spec) or any(
            state in detection for state in config.states
        )
    if stop is StopCondition.FIXED_POINT:
        return is_fixed_point(config, spec)
    return False


def execute(
    proto: Union[ProtocolCatalogEntry, ProtocolSpec],
    initial: Configuration,
    scheduler: BaseScheduler,
    settings: RunSettings,
    monitors: Optional[Sequence[BaseMonitor]] = None,
    rng: Optional[random.Random] = None,
    seed: Optional[int] = None,
    family: str = "",
) -> RunResult:
    """
    Execute a protocol from ``initial`` until its stop condition or the budget.

    The stop condition can only become true after an effective step, so halting
    and fixed points are tested only then. Monitors see every effective step and
    never touch the configuration or the random source.

    Args:
        proto: Catalog entry or bare protocol.
        initial: Initial configuration (left untouched).
        scheduler: Pair source; a scripted one may end the run early.
        settings: Budget, stop condition and trace retention.
        monitors: Monitors to evaluate; defaults to the entry's claims.
        rng: Random source for symmetric role choices.
        seed: Seed recorded in the report.
        family: Initial-topology family recorded in the report.

    Returns:
        Report, trace (empty unless ``settings.keep_trace``), initial and final
        configurations.
    """
    spec = _spec_of(proto)
    detection: FrozenSet[StateId] = frozenset()
    if isinstance(proto, ProtocolCatalogEntry):
        detection = proto.detection
    if monitors is None:
        if settings.monitors and isinstance(proto, ProtocolCatalogEntry):
            monitors = default_monitors(proto.preserves_connectivity, proto.cycle_only)
        else:
            monitors = []
    elif not settings.monitors:
        monitors = []

    config = initial.copy()
    trace: Trace = []
    violations: List[Violation] = []
    steps = 0
    reached = _reached(config, spec, settings.stop, detection)
    logger.debug("Starting %s on n=%d (budget %d, stop=%s)", spec.name, config.n,
                 settings.budget, settings.stop.value)

    while not reached and steps < settings.budget:
        pair = scheduler.next_pair()
        if pair is None:
            break
        event = _step(config, pair.u, pair.v, spec, rng, steps, pair.role)
        steps += 1
        if settings.keep_trace:
            trace.append(event)
        if event.rule is None:
            continue
        for monitor in monitors:
            violation = monitor.check(event, config)
            if violation is not None:
                logger.warning("%s: %s violation at step %d: %s", spec.name,
                               violation.monitor, violation.step, violation.detail)
                violations.append(violation)
        reached = _reached(config, spec, settings.stop, detection)

    if settings.stop is StopCondition.BUDGET:
        final_steps: Optional[int] = steps
    elif reached:
        final_steps = steps
    else:
        final_steps = None
        logger.warning("%s: budget of %d steps exhausted on n=%d", spec.name,
                       settings.budget, config.n)

    klass, results = recognize(config, spec)
    report = RunReport(
        protocol=spec.name,
        n=config.n,
        seed=seed,
        family=family,
        stop=settings.stop,
        steps=final_steps,
        steps_taken=steps,
        halted=is_halted(config, spec),
        fixed_point=settings.stop is StopCondition.FIXED_POINT and reached,
        violations=violations,
        topology_class=klass,
        recognizers=results,
        provenance=scheduler.provenance,
    )
    logger.debug("Finished %s: steps=%s class=%s", spec.name, report.steps_label, klass)
    return RunResult(report, trace, initial, config)


def run(
    proto: Union[ProtocolCatalogEntry, ProtocolSpec],
    initial: Configuration,
    scheduler: BaseScheduler,
    settings: RunSettings,
    monitors: Optional[Sequence[BaseMonitor]] = None,
    rng: Optional[random.Random] = None,
) -> Tuple[RunReport, Trace]:
    """Execute a protocol and return its report and trace."""
    result = execute(proto, initial, scheduler, settings, monitors, rng)
    return result.report, result.trace


def run_seeded(
    entry: ProtocolCatalogEntry,
    n: int,
    family: str,
    seed: int,
    budget: Optional[int] = None,
    monitors: bool = True,
    keep_trace: bool = False,
    labels: Optional[Sequence[Optional[str]]] = None,
    stop: Optional[StopCondition] = None,
    **params: float,
) -> RunResult:
    """
    One reproducible run from a generated initial topology.

    The topology and the scheduler draw from sub-seeds derived from ``seed``;
    the scheduler and the symmetric role choices share one random source. The
    run ends at the entry's stop condition unless ``stop`` overrides it.
    """
    initial = generate_initial(
        n, family, derive_seed(seed, "topology"), entry.spec, labels=labels, **params
    )
    rng = random.Random(derive_seed(seed, "scheduler"))
    scheduler = UniformScheduler(n, rng=rng, seed=seed, directed=entry.spec.directed)
    settings = RunSettings(
        budget=default_budget(entry.claimed_time, n) if budget is None else budget,
        stop=entry.stop if stop is None else stop,
        monitors=monitors,
        keep_trace=keep_trace,
    )
    return execute(
        entry, initial, scheduler, settings, rng=rng, seed=seed, family=family
    )


def format_run_csv(reports: Iterable[RunReport], header: str = "") -> str:
    """CSV rows ``protocol,n,seed,family,steps,violations,topology_class``."""
    buffer = io.StringIO()
    buffer.write(header)
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(RUN_CSV_COLUMNS)
    for report in reports:
        writer.writerow(report.csv_row())
    return buffer.getvalue()

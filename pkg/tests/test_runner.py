import pytest
from pydantic import ValidationError

from netcon.analysis.monitors import (
    ConnectivityMonitor,
    CycleOnlyMonitor,
    connectivity_monitor,
    cycle_only_monitor,
    default_monitors,
)
from netcon.analysis.runner import (
    RUN_CSV_COLUMNS,
    RunReport,
    execute,
    format_run_csv,
    recognize,
    run,
    run_seeded,
)
from netcon.core.config import (
    ClaimedTime,
    ExperimentConfig,
    RunSettings,
    StopCondition,
    default_budget,
)
from netcon.core.configuration import Configuration
from netcon.core.engine import apply_interaction
from netcon.core.rules import ProtocolSpec
from netcon.core.types import DegreeClass, InteractionContext, InteractionEvent
from netcon.protocols import (
    get_protocol,
    line_transformer,
    star_transformer,
    triangle_breaker,
)
from netcon.schedulers import ScriptedScheduler, schedule_from_pairs


def test_default_budget() -> None:
    assert default_budget(ClaimedTime.N4, 3) == 50 * 81
    assert default_budget(ClaimedTime.N3, 3) == 50 * 27
    assert default_budget(ClaimedTime.STABILIZING, 10) == 50_000


def test_steps_label_and_csv_row() -> None:
    report = RunReport(protocol="p", n=4, seed=2, family="ring")
    assert report.exhausted
    assert report.steps_label == "inf"
    assert report.csv_row() == ["p", "4", "2", "ring", "inf", "0", ""]


def test_scripted_run_counts_every_selection() -> None:
    entry = star_transformer()
    initial = Configuration(["l", "l", "l"], [(0, 1), (1, 2)])
    schedule = schedule_from_pairs(3, [(0, 1, False), (1, 2), (0, 2, False), (0, 2)])
    settings = RunSettings(budget=100, stop=StopCondition.FIXED_POINT, keep_trace=True)
    report, trace = run(entry, initial, ScriptedScheduler(schedule), settings)
    assert len(trace) == report.steps_taken
    # the schedule ends before the triangle edge 1-2 is dropped
    assert report.steps is None
    assert report.steps_taken == 4
    assert report.provenance == "scripted"


def test_exhausted_run_reports_inf() -> None:
    result = run_seeded(line_transformer(), 6, "clique", seed=1, budget=3)
    assert result.report.steps is None
    assert result.report.steps_taken == 3
    assert result.report.steps_label == "inf"


def test_budget_stop_reports_the_budget() -> None:
    result = run_seeded(triangle_breaker(), 4, "clique", seed=1, budget=25)
    assert result.report.stop is StopCondition.BUDGET
    assert result.report.steps == 25


def test_already_fixed_point_takes_no_steps() -> None:
    star = Configuration(["l", "p", "p"], [(0, 1), (0, 2)])
    scheduler = ScriptedScheduler(schedule_from_pairs(3, [(1, 2)]))
    settings = RunSettings(budget=10, stop=StopCondition.FIXED_POINT)
    report, _ = run(star_transformer(), star, scheduler, settings)
    assert report.steps == 0
    assert report.fixed_point


def test_monitors_flag_a_bridge_deactivation() -> None:
    line = Configuration(["q", "q"], [(0, 1)])
    scheduler = ScriptedScheduler(schedule_from_pairs(2, [(0, 1), (0, 1)]))
    settings = RunSettings(budget=10, stop=StopCondition.BUDGET)
    result = execute(
        triangle_breaker(), line, scheduler, settings,
        monitors=[ConnectivityMonitor(), CycleOnlyMonitor()],
    )
    monitors = [v.monitor for v in result.report.violations]
    assert monitors == ["connectivity", "cycle_only"]
    assert result.report.violations[0].step == 1
    assert result.report.steps == 2
    assert result.report.topology_class == "disconnected"


def test_monitors_can_be_disabled() -> None:
    line = Configuration(["q", "q"], [(0, 1)])
    scheduler = ScriptedScheduler(schedule_from_pairs(2, [(0, 1), (0, 1)]))
    settings = RunSettings(budget=10, stop=StopCondition.BUDGET, monitors=False)
    result = execute(triangle_breaker(), line, scheduler, settings,
                     monitors=[ConnectivityMonitor()])
    assert result.report.violations == []


def test_connectivity_monitor_ignores_cycle_edges(star_spec: ProtocolSpec) -> None:
    triangle = Configuration(["l", "p", "p"], [(0, 1), (0, 2), (1, 2)])
    after, event = apply_interaction(triangle, 1, 2, star_spec)
    assert event.deactivated
    assert connectivity_monitor(event, triangle, after) is None


def test_default_monitors_follow_claims() -> None:
    names = [m.name for m in default_monitors(True, True)]
    assert names == ["connectivity", "cycle_only"]
    assert default_monitors(False, False) == []


def test_seeded_runs_reproduce() -> None:
    a = run_seeded(star_transformer(), 8, "random_connected", seed=42, p=0.2)
    b = run_seeded(star_transformer(), 8, "random_connected", seed=42, p=0.2)
    assert a.report == b.report
    assert a.final == b.final
    assert a.initial == b.initial
    assert a.report.provenance == "random(seed=42)"


def test_recognize_lists_every_recognizer() -> None:
    klass, results = recognize(Configuration(["p"] * 3, [(0, 1), (1, 2)]),
                               star_transformer().spec)
    assert klass == "spanning_line"
    assert results == {
        "connected": True,
        "acyclic": True,
        "spanning_line": True,
        "spanning_star": True,
    }


def test_format_run_csv() -> None:
    report = run_seeded(star_transformer(), 5, "clique", seed=9).report
    text = format_run_csv([report], header="# seed=9\n")
    lines = text.splitlines()
    assert lines[0] == "# seed=9"
    assert lines[1] == ",".join(RUN_CSV_COLUMNS)
    assert lines[2].startswith("star-transformer,5,9,clique,")
    assert lines[2].endswith(",0,spanning_star")


def test_experiment_config_header() -> None:
    config = ExperimentConfig(command="bench", seed=3, protocol="star-transformer",
                              n=[4, 8], trials=30)
    header = config.header().splitlines()
    assert header[0] == "# command=bench"
    assert "# n=4,8" in header
    assert "# seed=3" in header
    assert not any(line.startswith("# out=") for line in header)


def test_experiment_config_requires_seed_for_random_commands() -> None:
    with pytest.raises(ValidationError, match="requires a seed"):
        ExperimentConfig(command="run", protocol="star-transformer", n=[4])
    assert ExperimentConfig(command="verify", n=[3]).seed is None
    assert "# n=" not in ExperimentConfig(command="replay", seed=1).header()
    with pytest.raises(ValidationError):
        ExperimentConfig(command="run", seed=1, n=[0])


def _deactivation(u: int, v: int) -> InteractionEvent:
    context = InteractionContext(DegreeClass.D2, DegreeClass.D2, 0)
    return InteractionEvent(0, u, v, context, ("q", "q", 1), ("q", "q", 0))


def test_cycle_only_monitor_follows_edge_directions() -> None:
    # 0->2 is a shortcut of 0->1->2, not part of a directed cycle
    after = Configuration(["q"] * 3, [(0, 1), (1, 2)], directed=True)
    event = _deactivation(0, 2)
    assert connectivity_monitor(event, None, after) is None
    assert ConnectivityMonitor().check(event, after) is None
    violation = CycleOnlyMonitor().check(event, after)
    assert violation is not None
    assert violation.monitor == "cycle_only"

    ring = Configuration(["q"] * 3, [(1, 2), (2, 0)], directed=True)
    assert cycle_only_monitor(_deactivation(0, 1), None, ring) is None


def test_cycle_only_monitor_reads_the_graph_before_the_step() -> None:
    before = Configuration(["q"] * 3, [(0, 1), (1, 2), (0, 2)], directed=True)
    after = Configuration(["q"] * 3, [(0, 1), (1, 2)], directed=True)
    event = _deactivation(0, 2)
    assert cycle_only_monitor(event, before, after) == cycle_only_monitor(
        event, None, after
    )


@pytest.mark.parametrize("name", ["online-cycle-elimination", "star-transformer"])
def test_monitors_only_observe(name: str) -> None:
    entry = get_protocol(name)
    for seed in range(5):
        watched = run_seeded(entry, 7, "random_connected", seed, keep_trace=True)
        unwatched = run_seeded(entry, 7, "random_connected", seed, monitors=False,
                               keep_trace=True)
        assert watched.trace == unwatched.trace
        assert watched.final == unwatched.final
        assert watched.report.steps == unwatched.report.steps


def _check_terminating_runs(name: str, family: str, n: int, runs: int) -> None:
    entry = get_protocol(name)
    for seed in range(runs):
        report = run_seeded(entry, n, family, seed).report
        assert report.steps is not None, (n, seed)
        assert report.violations == [], (n, seed)
        assert report.recognizers[entry.target.value], (n, seed)


TERMINATING = [
    "online-cycle-elimination",
    "line-around-a-star",
    "line-transformer",
    "star-transformer",
]


@pytest.mark.parametrize("family", ["clique", "ring", "random_connected"])
@pytest.mark.parametrize("name", TERMINATING)
def test_terminating_protocols_on_random_instances(name: str, family: str) -> None:
    _check_terminating_runs(name, family, 6, runs=10)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(5, 17))
@pytest.mark.parametrize("family", ["clique", "ring", "random_connected"])
@pytest.mark.parametrize("name", TERMINATING)
def test_terminating_protocols_at_scale(name: str, family: str, n: int) -> None:
    _check_terminating_runs(name, family, n, runs=1_000)

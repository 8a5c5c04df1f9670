"""Runs, monitors, Monte Carlo estimation, replays and exhaustive verification."""

from netcon.analysis.impossibility import (
    ImpossibilityReport,
    ReplayVerdict,
    copies_agree,
    replay_impossibility,
)
from netcon.analysis.monitors import (
    ConnectivityMonitor,
    CycleOnlyMonitor,
    connectivity_monitor,
    cycle_only_monitor,
    default_monitors,
)
from netcon.analysis.montecarlo import (
    BaselineKind,
    RunSummary,
    ScalingPoint,
    ScalingReport,
    baseline_expectation,
    baseline_process,
    edge_cover_time,
    estimate_baseline,
    estimate_runtime,
    format_scaling_csv,
    harmonic,
    leader_elimination_time,
    meet_everybody_time,
    scaling_function,
    summarize,
)
from netcon.analysis.runner import (
    RunReport,
    RunResult,
    execute,
    format_run_csv,
    recognize,
    run,
    run_seeded,
)
from netcon.analysis.verify import (
    Property,
    StabilizationReport,
    VerificationReport,
    check_stabilization,
    estimate_state_space,
    exhaustive_verify,
    initial_configurations,
)

__all__ = [
    # Runs
    "RunReport",
    "RunResult",
    "execute",
    "run",
    "run_seeded",
    "recognize",
    "format_run_csv",
    # Monitors
    "ConnectivityMonitor",
    "CycleOnlyMonitor",
    "connectivity_monitor",
    "cycle_only_monitor",
    "default_monitors",
    # Monte Carlo
    "BaselineKind",
    "ScalingPoint",
    "ScalingReport",
    "RunSummary",
    "harmonic",
    "edge_cover_time",
    "meet_everybody_time",
    "leader_elimination_time",
    "baseline_process",
    "baseline_expectation",
    "scaling_function",
    "estimate_runtime",
    "estimate_baseline",
    "format_scaling_csv",
    "summarize",
    # Impossibility replays
    "ImpossibilityReport",
    "ReplayVerdict",
    "copies_agree",
    "replay_impossibility",
    # Verification
    "Property",
    "VerificationReport",
    "StabilizationReport",
    "estimate_state_space",
    "initial_configurations",
    "exhaustive_verify",
    "check_stabilization",
]

"""Command-line entry point: ``netcon run|bench|replay|verify|tm``."""

import argparse
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from pydantic import ValidationError

from netcon.analysis.impossibility import BaseGraph, ImpossibilityReport
from netcon.analysis.montecarlo import (
    MIN_TRIALS,
    BaselineKind,
    ScalingReport,
    estimate_baseline,
    format_scaling_csv,
)
from netcon.analysis.runner import format_run_csv
from netcon.analysis.verify import DEFAULT_STATE_LIMIT, Property, exhaustive_verify
from netcon.client import NetCon
from netcon.core.config import ExperimentConfig
from netcon.core.configuration import Edge
from netcon.exceptions import (
    BudgetExhaustedError,
    ConfigurationError,
    NetconError,
    StateSpaceError,
)
from netcon.protocols import PROTOCOLS, get_protocol
from netcon.schedulers.scripted import Schedule, format_schedule, read_schedule
from netcon.tm.machine import TMDescription, load_tm, read_tm
from netcon.tm.simulator import compute_predicate_end_to_end, random_assignment
from netcon.topology.family import BASE_GRAPHS, edge_on_cycle
from netcon.topology.generators import FAMILIES, read_edge_list

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_VIOLATION = 4

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _add_common(parser: argparse.ArgumentParser, seeded: bool = True) -> None:
    if seeded:
        parser.add_argument("--seed", type=int, required=True,
                            help="Experiment seed (required).")
    parser.add_argument("--out", type=str, default=None,
                        help="Output CSV path (default: stdout).")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default="WARNING",
                        type=str.upper, help="Diagnostics level on stderr.")


def _add_topology(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=sorted(FAMILIES), default="clique",
                        help="Initial-topology family.")
    parser.add_argument("--p", type=float, default=0.3,
                        help="Extra-edge probability for random_connected.")
    parser.add_argument("--budget", type=int, default=None,
                        help="Step budget (default: a multiple of the claimed time).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netcon",
        description="Run, benchmark and check network-constructor protocols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    protocols = sorted(PROTOCOLS)

    run = sub.add_parser("run", help="One run from a generated topology.")
    run.add_argument("--protocol", required=True, choices=protocols)
    run.add_argument("--n", type=int, required=True, help="Population size.")
    _add_topology(run)
    run.add_argument("--no-monitors", action="store_true",
                     help="Skip the protocol's runtime monitors.")
    run.add_argument("--trace-out", type=str, default=None,
                     help="Write the interaction trace to this file.")
    _add_common(run)

    bench = sub.add_parser("bench", help="Monte Carlo runtime scaling.")
    target = bench.add_mutually_exclusive_group(required=True)
    target.add_argument("--protocol", choices=protocols)
    target.add_argument("--baseline", choices=[k.value for k in BaselineKind])
    bench.add_argument("--n", type=int, nargs="+", required=True,
                       help="Population sizes.")
    bench.add_argument("--trials", type=int, default=MIN_TRIALS,
                       help=f"Trials per size (at least {MIN_TRIALS}).")
    _add_topology(bench)
    _add_common(bench)

    replay = sub.add_parser("replay", help="Replay a run on the family graph.")
    replay.add_argument("--protocol", choices=protocols, default="triangle-breaker")
    replay.add_argument("--graph", default="triangle",
                        help=f"{' | '.join(BASE_GRAPHS)} | PATH to an edge list.")
    replay.add_argument("--edge", type=int, nargs=2, metavar=("U", "V"), default=None,
                        help="Cycle edge removed from every copy.")
    replay.add_argument("--k", type=int, default=2, help="Number of copies (>= 2).")
    replay.add_argument("--trace", type=str, default=None,
                        help="Source schedule on the base graph.")
    replay.add_argument("--budget", type=int, default=10_000,
                        help="Steps drawn when no source schedule is given.")
    replay.add_argument("--trace-out", type=str, default=None,
                        help="Write the mimic schedule to this file.")
    _add_common(replay)

    verify = sub.add_parser("verify", help="Exhaustive check for n <= 4.")
    verify.add_argument("--protocol", required=True, choices=protocols)
    verify.add_argument("--n", type=int, required=True, help="Population size.")
    verify.add_argument("--property", required=True,
                        choices=[p.value for p in Property])
    verify.add_argument("--state-limit", type=int, default=DEFAULT_STATE_LIMIT)
    _add_common(verify, seeded=False)

    tm = sub.add_parser("tm", help="Decide a predicate with line + machine.")
    tm.add_argument("--tm", required=True,
                    help="Machine file or shipped machine (parity, product, accept).")
    tm.add_argument("--inputs", required=True,
                    help="Input multiset, e.g. a=2,b=3,c=6.")
    tm.add_argument("--n", type=int, default=None,
                    help="Population size (default: size of the multiset).")
    tm.add_argument("--max-steps", type=int, default=1_000_000)
    _add_topology(tm)
    _add_common(tm)
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
        logger.info("Wrote %s", out)
    else:
        sys.stdout.write(text)


def _csv(header: str, columns: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    buffer.write(header)
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def _write_trace(path: str, config: ExperimentConfig, schedule: Schedule) -> None:
    Path(path).write_text(config.header() + format_schedule(schedule))
    logger.info("Wrote %d interactions to %s", len(schedule), path)


def _family_params(args: argparse.Namespace) -> Dict[str, float]:
    return {"p": args.p} if args.family == "random_connected" else {}


def cmd_run(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        command="run", seed=args.seed, protocol=args.protocol, n=[args.n],
        family=args.family, p=args.p, budget=args.budget,
        monitors=not args.no_monitors, trace_out=args.trace_out, out=args.out,
    )
    net = NetCon(args.protocol, args.seed, family=args.family, budget=args.budget,
                 monitors=config.monitors, p=args.p)
    result = net.run(args.n, keep_trace=args.trace_out is not None)
    report = result.report
    _emit(format_run_csv([report], config.header()), args.out)
    if args.trace_out:
        _write_trace(args.trace_out, config,
                     Schedule.from_events(args.n, result.trace, report.provenance))
    if report.violations:
        for violation in report.violations:
            logger.error("%s", violation)
        return EXIT_VIOLATION
    if report.exhausted:
        logger.warning("%s did not reach its stop condition in %d steps",
                       report.protocol, report.steps_taken)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        command="bench", seed=args.seed, protocol=args.protocol, n=args.n,
        family=args.family, p=args.p, trials=args.trials, budget=args.budget,
        baseline=args.baseline, out=args.out,
    )
    report: ScalingReport
    if args.baseline:
        report = estimate_baseline(BaselineKind(args.baseline), args.n, args.trials,
                                   args.seed)
    else:
        net = NetCon(args.protocol, args.seed, family=args.family, budget=args.budget,
                     p=args.p)
        report = net.bench(args.n, args.trials)
    _emit(format_scaling_csv(report, config.header()), args.out)
    if report.tainted:
        logger.warning("Some runs exhausted their budget; the estimate is tainted")
        return EXIT_BUDGET
    return EXIT_OK


def _read_base_graph(graph: str) -> BaseGraph:
    if graph in BASE_GRAPHS:
        return graph
    path = Path(graph)
    if not path.exists():
        available = ", ".join(BASE_GRAPHS)
        raise ConfigurationError(f"Unknown base graph: {graph}. Available: {available} "
                                 "or an edge-list file")
    n, edges = read_edge_list(path)
    return n, [(min(a, b), max(a, b)) for a, b in edges]


def default_cycle_edge(base: BaseGraph) -> Edge:
    """Last edge of the base graph that lies on a cycle, oriented high to low."""
    n, edges = BASE_GRAPHS[base] if isinstance(base, str) else base
    for a, b in reversed(list(edges)):
        if edge_on_cycle(n, edges, (a, b)):
            return max(a, b), min(a, b)
    raise ConfigurationError("base graph has no cycle")


def cmd_replay(args: argparse.Namespace) -> int:
    if args.k < 2:
        raise ConfigurationError(f"--k must be at least 2, got {args.k}")
    base = _read_base_graph(args.graph)
    edge: Edge = (args.edge[0], args.edge[1]) if args.edge else default_cycle_edge(base)
    config = ExperimentConfig(
        command="replay", seed=args.seed, protocol=args.protocol, graph=args.graph,
        edge=list(edge), k=args.k, budget=args.budget, trace_out=args.trace_out,
        out=args.out,
    )
    trace = read_schedule(args.trace) if args.trace else None
    net = NetCon(args.protocol, args.seed)
    report: ImpossibilityReport = net.replay(base, edge, args.k, trace,
                                             budget=args.budget)
    columns = ["protocol", "graph", "edge", "k", "base_steps", "deactivation_step",
               "deactivated_edge", "components", "verdict", "equal_before_deactivation"]
    deactivated = report.deactivated_edge
    row = [
        report.protocol, args.graph, f"{edge[0]}-{edge[1]}", report.k,
        report.base_steps,
        "" if report.deactivation_step is None else report.deactivation_step,
        "" if deactivated is None else f"{deactivated[0]}-{deactivated[1]}",
        report.components, report.verdict.value, report.equal_before_deactivation,
    ]
    _emit(_csv(config.header(), columns, [row]), args.out)
    if args.trace_out:
        _write_trace(args.trace_out, config, report.schedule)
    if report.detail:
        logger.info("%s", report.detail)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        command="verify", protocol=args.protocol, n=[args.n],
        property_name=args.property, out=args.out,
    )
    report = exhaustive_verify(get_protocol(args.protocol), args.n, args.property,
                               state_limit=args.state_limit)
    columns = ["protocol", "n", "property", "verdict", "initial_configurations",
               "reachable", "terminal", "halted"]
    row = [report.protocol, report.n, report.property_name.value, report.verdict,
           report.initial_configurations, report.reachable, report.terminal,
           report.halted]
    _emit(_csv(config.header(), columns, [row]), args.out)
    if not report.holds:
        logger.error("Counterexample: %s", report.counterexample)
        return EXIT_VIOLATION
    return EXIT_OK


def parse_multiset(text: str) -> Dict[str, int]:
    """Parse ``a=2,b=3`` into a symbol count mapping."""
    counts: Dict[str, int] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        symbol, eq, count = item.partition("=")
        if not eq or not symbol.strip() or not count.strip().isdigit():
            raise ConfigurationError(f"bad input item {item!r}; expected symbol=count")
        counts[symbol.strip()] = counts.get(symbol.strip(), 0) + int(count)
    if not counts:
        raise ConfigurationError("empty input multiset")
    return counts


def _load_machine(name: str) -> TMDescription:
    path = Path(name)
    if path.exists():
        return read_tm(path)
    filename = name if name.endswith(".tm") else f"{name}.tm"
    try:
        return load_tm(filename)
    except FileNotFoundError as e:
        raise ConfigurationError(
            f"No machine file or shipped machine named {name!r}"
        ) from e


def cmd_tm(args: argparse.Namespace) -> int:
    multiset = parse_multiset(args.inputs)
    total = sum(multiset.values())
    n = args.n if args.n is not None else total
    if n != total:
        raise ConfigurationError(f"--n {n} does not match the {total} inputs given")
    config = ExperimentConfig(
        command="tm", seed=args.seed, protocol="line-transformer", n=[n],
        family=args.family, p=args.p, budget=args.budget, tm=args.tm,
        inputs=args.inputs, out=args.out,
    )
    machine = _load_machine(args.tm)
    inputs = random_assignment(multiset, args.seed)
    result = compute_predicate_end_to_end(
        n, inputs, machine, args.seed, family=args.family, budget=args.budget,
        max_steps=args.max_steps, **_family_params(args),
    )
    for stage, seconds in result.timings.items():
        logger.info("%s took %.3fs", stage, seconds)
    columns = ["tm", "n", "family", "seed", "decision", "line_steps",
               "partition_interactions", "tm_steps", "tm_interactions"]
    row = [machine.name, n, args.family, args.seed, result.decision.value,
           result.line_steps, result.partition_interactions, result.tm_steps,
           result.tm_interactions]
    _emit(_csv(config.header(), columns, [row]), args.out)
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "bench": cmd_bench,
    "replay": cmd_replay,
    "verify": cmd_verify,
    "tm": cmd_tm,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except BudgetExhaustedError as e:
        logger.error("%s", e)
        return EXIT_BUDGET
    except (ConfigurationError, ValidationError, StateSpaceError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except NetconError as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

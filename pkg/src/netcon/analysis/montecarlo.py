"""Monte Carlo runtime estimation, baseline processes and scaling checks."""

import csv
import io
import logging
import math
import random
from collections import Counter
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field
from scipy import special, stats

from netcon.analysis.runner import RunReport, run_seeded
from netcon.core.config import ClaimedTime
from netcon.core.engine import derive_seed
from netcon.exceptions import ConfigurationError
from netcon.protocols.catalog import ProtocolCatalogEntry
from netcon.schedulers.uniform import uniform_next

logger = logging.getLogger(__name__)

MIN_TRIALS = 30

SCALING_CSV_COLUMNS = [
    "protocol", "family", "n", "trials", "mean", "stderr", "ci_low", "ci_high",
    "c_n", "exhausted",
]


class BaselineKind(str, Enum):
    """Fundamental processes of the uniform random scheduler."""

    EDGE_COVER = "edge_cover"
    MEET_EVERYBODY = "meet_everybody"
    LEADER_ELIMINATION = "leader_elimination"


def harmonic(m: int) -> float:
    """The m-th harmonic number H_m."""
    if m <= 0:
        return 0.0
    return float(special.digamma(m + 1) + np.euler_gamma)


def edge_cover_time(n: int, rng: random.Random) -> int:
    """Steps until every unordered pair has been selected at least once."""
    remaining = n * (n - 1) // 2
    seen = set()
    steps = 0
    while remaining:
        u, v = uniform_next(n, rng)
        steps += 1
        pair = (u, v) if u < v else (v, u)
        if pair not in seen:
            seen.add(pair)
            remaining -= 1
    return steps


def meet_everybody_time(n: int, rng: random.Random) -> int:
    """Steps until node 0 has interacted with every other node."""
    met = set()
    steps = 0
    while len(met) < n - 1:
        u, v = uniform_next(n, rng)
        steps += 1
        if u == 0:
            met.add(v)
        elif v == 0:
            met.add(u)
    return steps


def leader_elimination_time(n: int, rng: random.Random) -> int:
    """Steps until pairwise elimination among n leaders leaves one."""
    leaders = [True] * n
    count = n
    steps = 0
    while count > 1:
        u, v = uniform_next(n, rng)
        steps += 1
        if leaders[u] and leaders[v]:
            leaders[v] = False
            count -= 1
    return steps


_BASELINES: Dict[BaselineKind, Callable[[int, random.Random], int]] = {
    BaselineKind.EDGE_COVER: edge_cover_time,
    BaselineKind.MEET_EVERYBODY: meet_everybody_time,
    BaselineKind.LEADER_ELIMINATION: leader_elimination_time,
}


def baseline_process(kind: BaselineKind, n: int, rng: random.Random) -> int:
    """
    Sample one run of a baseline process.

    Args:
        kind: Which process.
        n: Population size (at least 2).
        rng: Random source.

    Returns:
        Number of scheduler steps.
    """
    if n < 2:
        raise ConfigurationError(f"baseline processes need n >= 2, got {n}")
    return _BASELINES[BaselineKind(kind)](n, rng)


def baseline_expectation(kind: BaselineKind, n: int) -> float:
    """Closed-form expected steps of a baseline process."""
    m = n * (n - 1) // 2
    kind = BaselineKind(kind)
    if kind is BaselineKind.EDGE_COVER:
        return m * harmonic(m)
    if kind is BaselineKind.MEET_EVERYBODY:
        return m * harmonic(n - 1)
    # sum over k leaders of m / C(k, 2)
    return float((n - 1) ** 2)


def scaling_function(claimed_time: ClaimedTime) -> Callable[[int], float]:
    """The f(n) that normalizes mean steps for a claimed running time."""
    if claimed_time is ClaimedTime.N4:
        return lambda n: float(n**4)
    if claimed_time is ClaimedTime.N2_LOG_N:
        return lambda n: n * n * math.log(n)
    # stabilizing protocols make no claim; normalize by n^3 like the O(n^3) class
    return lambda n: float(n**3)


class ScalingPoint(BaseModel):
    """Sample statistics of one population size."""

    n: int
    trials: int
    mean: float
    stderr: float
    ci_low: float
    ci_high: float
    c_n: float
    exhausted: int = 0
    seeds: List[int] = Field(default_factory=list)


class ScalingReport(BaseModel):
    """Per-n means with 95% confidence intervals and normalized constants."""

    protocol: str
    family: str
    claimed_time: str
    seed: int
    points: List[ScalingPoint] = Field(default_factory=list)

    @property
    def tainted(self) -> bool:
        """Whether any run exhausted its budget."""
        return any(point.exhausted for point in self.points)

    @property
    def ratio(self) -> float:
        """max c_n / min c_n over the tested sizes."""
        constants = [point.c_n for point in self.points]
        if not constants or min(constants) <= 0:
            return math.inf
        return max(constants) / min(constants)

    def point(self, n: int) -> ScalingPoint:
        for point in self.points:
            if point.n == n:
                return point
        raise KeyError(n)


def _point(n: int, samples: Sequence[float], f_n: float, exhausted: int,
           seeds: List[int]) -> ScalingPoint:
    data = np.asarray(samples, dtype=float)
    count = len(data)
    mean = float(data.mean()) if count else math.nan
    stderr = float(data.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
    half = float(stats.t.ppf(0.975, count - 1)) * stderr if count > 1 else 0.0
    return ScalingPoint(
        n=n,
        trials=count,
        mean=mean,
        stderr=stderr,
        ci_low=mean - half,
        ci_high=mean + half,
        c_n=mean / f_n,
        exhausted=exhausted,
        seeds=seeds,
    )


def _check_trials(trials: int, minimum: int) -> None:
    if trials < minimum:
        raise ConfigurationError(
            f"need at least {minimum} trials per size, got {trials}"
        )


def estimate_runtime(
    entry: ProtocolCatalogEntry,
    family: str,
    sizes: Iterable[int],
    trials: int,
    seed: int,
    budget: Optional[int] = None,
    min_trials: int = MIN_TRIALS,
    **params: float,
) -> ScalingReport:
    """
    Estimate mean steps to halt (or to a fixed point) for each n.

    Protocols that announce termination are timed up to the announcement
    (``entry.measured_stop``).

    Every trial runs from its own generated topology with a seed derived from
    ``seed``. Trials that exhaust the budget are left out of the mean and
    counted in ``exhausted``, which taints the report.

    Args:
        entry: The protocol.
        family: Initial-topology family.
        sizes: Population sizes.
        trials: Trials per size (at least ``min_trials``).
        seed: Experiment seed.
        budget: Step budget per run; the claimed-time default when None.
        min_trials: Lower bound enforced on ``trials``.
        **params: Family parameters.

    Returns:
        The scaling report, normalized by the entry's claimed time.
    """
    _check_trials(trials, min_trials)
    f = scaling_function(entry.claimed_time)
    report = ScalingReport(
        protocol=entry.name,
        family=family,
        claimed_time=entry.claimed_time.value,
        seed=seed,
    )
    for n in sizes:
        samples: List[float] = []
        seeds: List[int] = []
        exhausted = 0
        for trial in range(trials):
            trial_seed = derive_seed(seed, f"{entry.name}:{family}:{n}:{trial}")
            seeds.append(trial_seed)
            result = run_seeded(
                entry, n, family, trial_seed, budget=budget,
                stop=entry.measured_stop, **params
            )
            if result.report.steps is None:
                exhausted += 1
            else:
                samples.append(result.report.steps)
        point = _point(n, samples, f(n), exhausted, seeds)
        if exhausted:
            logger.warning("%s n=%d: %d of %d runs exhausted their budget",
                           entry.name, n, exhausted, trials)
        logger.info("%s n=%d: mean %.1f steps, c_n=%.4g", entry.name, n, point.mean,
                    point.c_n)
        report.points.append(point)
    return report


def estimate_baseline(
    kind: BaselineKind,
    sizes: Iterable[int],
    trials: int,
    seed: int,
    min_trials: int = MIN_TRIALS,
) -> ScalingReport:
    """
    Sample a baseline process; c_n compares the mean with its closed form.
    """
    _check_trials(trials, min_trials)
    kind = BaselineKind(kind)
    report = ScalingReport(
        protocol=kind.value, family="clique", claimed_time="closed form", seed=seed
    )
    for n in sizes:
        rng = random.Random(derive_seed(seed, f"{kind.value}:{n}"))
        samples = [baseline_process(kind, n, rng) for _ in range(trials)]
        point = _point(n, samples, baseline_expectation(kind, n), 0, [])
        logger.info("%s n=%d: mean %.3f (closed form %.3f)", kind.value, n,
                    point.mean, baseline_expectation(kind, n))
        report.points.append(point)
    return report


def format_scaling_csv(report: ScalingReport, header: str = "") -> str:
    """One row per n, followed by a comment line with the c_n ratio."""
    buffer = io.StringIO()
    buffer.write(header)
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SCALING_CSV_COLUMNS)
    for point in report.points:
        writer.writerow([
            report.protocol, report.family, point.n, point.trials,
            f"{point.mean:.6g}", f"{point.stderr:.6g}", f"{point.ci_low:.6g}",
            f"{point.ci_high:.6g}", f"{point.c_n:.6g}", point.exhausted,
        ])
    buffer.write(f"# ratio={report.ratio:.6g} tainted={report.tainted}\n")
    return buffer.getvalue()


class RunSummary(BaseModel):
    """Aggregate of many run reports."""

    runs: int = 0
    violations: int = 0
    exhausted: int = 0
    classes: Dict[str, int] = Field(default_factory=dict)
    mean_steps: Optional[float] = None


def summarize(reports: Iterable[RunReport]) -> RunSummary:
    """Count violations, exhausted runs and final topology classes."""
    reports = list(reports)
    finite = [r.steps for r in reports if r.steps is not None]
    return RunSummary(
        runs=len(reports),
        violations=sum(len(r.violations) for r in reports),
        exhausted=sum(1 for r in reports if r.steps is None),
        classes=dict(Counter(r.topology_class for r in reports)),
        mean_steps=float(np.mean(finite)) if finite else None,
    )

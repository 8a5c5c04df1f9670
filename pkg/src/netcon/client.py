"""Main NetCon client class."""

import random
from typing import Iterable, List, Optional, Sequence, Union

from netcon.analysis.impossibility import (
    BaseGraph,
    ImpossibilityReport,
    replay_impossibility,
)
from netcon.analysis.montecarlo import ScalingReport, estimate_runtime
from netcon.analysis.runner import RunReport, RunResult, run_seeded
from netcon.analysis.verify import Property, VerificationReport, exhaustive_verify
from netcon.core.configuration import Edge
from netcon.core.engine import derive_seed
from netcon.protocols import ProtocolCatalogEntry, get_protocol
from netcon.schedulers.scripted import Schedule


class NetCon:
    """
    One protocol, one seed, and the experiments run with them.

    Example:
        >>> net = NetCon("star-transformer", seed=1)
        >>> result = net.run(6, family="ring")
        >>> result.report.topology_class
        'spanning_star'

        >>> net.switch_protocol("line-transformer")
        >>> net.verify(3, "halting-implies-spanning-line").holds
        True
    """

    def __init__(
        self,
        protocol: str,
        seed: int,
        family: str = "clique",
        budget: Optional[int] = None,
        monitors: bool = True,
        p: float = 0.3,
    ):
        """
        Initialize the client.

        Args:
            protocol: Registered protocol name.
            seed: Experiment seed; every random choice derives from it.
            family: Default initial-topology family.
            budget: Step budget per run (claimed-time default when None).
            monitors: Whether runs evaluate the protocol's monitors.
            p: Extra-edge probability of the random_connected family.
        """
        self._entry = get_protocol(protocol)
        self.seed = seed
        self.family = family
        self.budget = budget
        self.monitors = monitors
        self.p = p
        self._history: List[RunReport] = []

    @property
    def protocol(self) -> str:
        """Get the current protocol name."""
        return self._entry.name

    @property
    def entry(self) -> ProtocolCatalogEntry:
        return self._entry

    @property
    def history(self) -> List[RunReport]:
        """Reports of every run so far."""
        return list(self._history)

    def _params(self, family: str) -> dict:
        return {"p": self.p} if family == "random_connected" else {}

    def run(
        self,
        n: int,
        family: Optional[str] = None,
        seed: Optional[int] = None,
        labels: Optional[Sequence[Optional[str]]] = None,
        keep_trace: bool = False,
    ) -> RunResult:
        """
        One seeded run from a generated initial topology.

        Args:
            n: Population size.
            family: Initial-topology family (the client default when None).
            seed: Run seed (the client seed when None).
            labels: Optional input label per node.
            keep_trace: Whether to keep the interaction trace.

        Returns:
            The run result; its report is appended to the history.
        """
        family = family or self.family
        result = run_seeded(
            self._entry,
            n,
            family,
            self.seed if seed is None else seed,
            budget=self.budget,
            monitors=self.monitors,
            keep_trace=keep_trace,
            labels=labels,
            **self._params(family),
        )
        self._history.append(result.report)
        return result

    def bench(
        self, sizes: Iterable[int], trials: int, family: Optional[str] = None
    ) -> ScalingReport:
        """Mean steps per n, normalized by the protocol's claimed time."""
        family = family or self.family
        return estimate_runtime(
            self._entry, family, list(sizes), trials, self.seed, budget=self.budget,
            **self._params(family),
        )

    def verify(self, n: int, prop: Union[Property, str]) -> VerificationReport:
        """Exhaustive reachability check for n <= 4."""
        return exhaustive_verify(self._entry, n, prop)

    def replay(
        self,
        base: BaseGraph = "triangle",
        cycle_edge: Edge = (2, 0),
        k: int = 2,
        trace: Optional[Schedule] = None,
        budget: int = 10_000,
    ) -> ImpossibilityReport:
        """Mimic a base-graph run on the family graph with k copies."""
        rng = random.Random(derive_seed(self.seed, "replay"))
        return replay_impossibility(
            self._entry, base, cycle_edge, k, trace, rng, budget
        )

    def switch_protocol(self, protocol: str, keep_history: bool = True) -> None:
        """
        Switch to a different protocol.

        Args:
            protocol: New protocol name.
            keep_history: Whether to preserve earlier run reports.
        """
        self._entry = get_protocol(protocol)
        if not keep_history:
            self._history.clear()

    def clear_history(self) -> None:
        self._history.clear()

    def __repr__(self) -> str:
        return (
            f"NetCon(protocol={self.protocol!r}, "
            f"seed={self.seed}, "
            f"history={len(self._history)})"
        )

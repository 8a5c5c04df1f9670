"""Catalog entries for the shipped protocols."""

import functools
from enum import Enum
from importlib import resources
from typing import FrozenSet, List

from pydantic import BaseModel, model_validator

from netcon.core.config import ClaimedTime, StopCondition
from netcon.core.configuration import Configuration
from netcon.core.rules import ProtocolSpec, parse_rules
from netcon.core.types import Sensor


class Target(str, Enum):
    """What a protocol constructs or decides."""

    SPANNING_LINE = "spanning_line"
    SPANNING_STAR = "spanning_star"
    DIRECTED_2CYCLE = "directed_2cycle"
    NONE = "none"


class ProtocolCatalogEntry(BaseModel):
    """A ProtocolSpec together with what it is claimed to achieve."""

    spec: ProtocolSpec
    requires_leader: bool
    target: Target
    claimed_time: ClaimedTime
    preserves_connectivity: bool
    # every deactivation hits an edge on an active cycle
    cycle_only: bool = True
    published: bool = True
    required_sensors: FrozenSet[Sensor] = frozenset()
    # states that first appear when a node detects termination
    detection: FrozenSet[str] = frozenset()

    model_config = {"frozen": True, "arbitrary_types_allowed": True}

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def stop(self) -> StopCondition:
        """Stop condition that ends a run of this protocol."""
        if self.claimed_time is not ClaimedTime.STABILIZING:
            return StopCondition.HALT
        if self.target is Target.SPANNING_STAR:
            return StopCondition.FIXED_POINT
        return StopCondition.BUDGET

    @property
    def measured_stop(self) -> StopCondition:
        """
        Stop condition of timed runs.

        A protocol that announces termination is timed up to the announcement;
        spreading the halt along the line afterwards is not part of its running
        time.
        """
        return StopCondition.DETECTION if self.detection else self.stop

    @model_validator(mode="after")
    def _consistent_with_spec(self) -> "ProtocolCatalogEntry":
        if self.requires_leader != (self.spec.leader is not None):
            raise ValueError(
                f"{self.spec.name}: leader requirement disagrees with the rules"
            )
        terminating = self.claimed_time is not ClaimedTime.STABILIZING
        if terminating != bool(self.spec.halting):
            raise ValueError(f"{self.spec.name}: claimed time disagrees with Q_halt")
        unknown = self.detection - self.spec.states
        if unknown:
            raise ValueError(
                f"{self.spec.name}: unknown detection states {sorted(unknown)}"
            )
        missing = self.required_sensors - self.spec.sensors
        if missing:
            raise ValueError(f"{self.spec.name}: missing sensors {sorted(missing)}")
        if self.target is Target.DIRECTED_2CYCLE and not self.spec.directed:
            raise ValueError(f"{self.spec.name}: 2-cycle detection must be directed")
        return self


def load_rules(filename: str) -> ProtocolSpec:
    """Load a ``.rules`` file shipped in ``netcon.protocols.fixtures``."""
    fixtures = resources.files("netcon.protocols").joinpath("fixtures")
    text = fixtures.joinpath(filename).read_text()
    return parse_rules(text)


@functools.lru_cache(maxsize=None)
def online_cycle_elimination() -> ProtocolCatalogEntry:
    """Unique leader, degree 1/2 detection, Theta(n^4) time."""
    return ProtocolCatalogEntry(
        spec=load_rules("online_cycle_elimination.rules"),
        requires_leader=True,
        target=Target.SPANNING_LINE,
        claimed_time=ClaimedTime.N4,
        preserves_connectivity=True,
    )


@functools.lru_cache(maxsize=None)
def line_around_a_star() -> ProtocolCatalogEntry:
    """Unique leader, degree 1 detection, Theta(n^2 log n) time to detection."""
    return ProtocolCatalogEntry(
        spec=load_rules("line_around_a_star.rules"),
        requires_leader=True,
        target=Target.SPANNING_LINE,
        claimed_time=ClaimedTime.N2_LOG_N,
        preserves_connectivity=True,
        detection=frozenset({"h"}),
    )


@functools.lru_cache(maxsize=None)
def stable_2cycle_detection() -> ProtocolCatalogEntry:
    """Identical nodes on a static directed topology; stabilizing."""
    return ProtocolCatalogEntry(
        spec=load_rules("stable_2cycle_detection.rules"),
        requires_leader=False,
        target=Target.DIRECTED_2CYCLE,
        claimed_time=ClaimedTime.STABILIZING,
        preserves_connectivity=True,
    )


@functools.lru_cache(maxsize=None)
def star_transformer() -> ProtocolCatalogEntry:
    """Identical nodes with common-neighbor detection; stabilizes to a star."""
    return ProtocolCatalogEntry(
        spec=load_rules("star_transformer.rules"),
        requires_leader=False,
        target=Target.SPANNING_STAR,
        claimed_time=ClaimedTime.STABILIZING,
        preserves_connectivity=True,
    )


@functools.lru_cache(maxsize=None)
def line_transformer() -> ProtocolCatalogEntry:
    """Identical nodes, degree 1/2 and common-neighbor detection, O(n^3) time."""
    return ProtocolCatalogEntry(
        spec=load_rules("line_transformer.rules"),
        requires_leader=False,
        target=Target.SPANNING_LINE,
        claimed_time=ClaimedTime.N3,
        preserves_connectivity=True,
        required_sensors=frozenset({Sensor.DEG1, Sensor.DEG2, Sensor.CND}),
    )


@functools.lru_cache(maxsize=None)
def triangle_breaker() -> ProtocolCatalogEntry:
    """Naive 3-cycle breaker for the impossibility replays (not published)."""
    return ProtocolCatalogEntry(
        spec=load_rules("triangle_breaker.rules"),
        requires_leader=False,
        target=Target.NONE,
        claimed_time=ClaimedTime.STABILIZING,
        preserves_connectivity=False,
        cycle_only=False,
        published=False,
    )


def decision_bits(config: Configuration) -> List[int]:
    """Output bit of every node of a Stable-2-Cycle-Detection configuration."""
    return [int(state.rsplit("/", 1)[1]) for state in config.states]

"""Configuration models for netcon."""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class StopCondition(str, Enum):
    """When a run ends (besides its budget)."""

    HALT = "halt"
    FIXED_POINT = "fixed_point"
    BUDGET = "budget"
    # some node entered a state that announces termination
    DETECTION = "detection"


class ClaimedTime(str, Enum):
    """Asymptotic running time a protocol is claimed to meet."""

    N4 = "n^4"
    N2_LOG_N = "n^2 log n"
    N3 = "n^3"
    STABILIZING = "stabilizing"


def default_budget(claimed_time: ClaimedTime, n: int) -> int:
    """Default step budget: 50 n^4 for the n^4 class, 50 n^3 otherwise."""
    if claimed_time is ClaimedTime.N4:
        return 50 * n**4
    return 50 * n**3


class RunSettings(BaseModel):
    """How a single run is executed."""

    budget: int = Field(ge=0)
    stop: StopCondition = StopCondition.HALT
    monitors: bool = True
    keep_trace: bool = False

    model_config = {"frozen": True}


# commands whose results depend on random choices
RANDOMIZED_COMMANDS = frozenset({"run", "bench", "replay", "tm"})


class ExperimentConfig(BaseModel):
    """
    Effective configuration of one CLI command.

    Every output file starts with ``header()`` so results carry the settings
    that produced them.
    """

    command: str
    seed: Optional[int] = Field(default=None, ge=0)
    protocol: Optional[str] = None
    n: List[int] = Field(default_factory=list)
    family: str = "clique"
    p: float = Field(default=0.3, ge=0.0, le=1.0)
    trials: int = Field(default=1, ge=1)
    budget: Optional[int] = Field(default=None, ge=0)
    monitors: bool = True
    trace_out: Optional[str] = None
    out: Optional[str] = None
    property_name: Optional[str] = None
    baseline: Optional[str] = None
    graph: Optional[str] = None
    edge: Optional[List[int]] = None
    k: Optional[int] = Field(default=None, ge=2)
    tm: Optional[str] = None
    inputs: Optional[str] = None

    model_config = {"frozen": True}

    @field_validator("n")
    @classmethod
    def _sizes_positive(cls, value: List[int]) -> List[int]:
        if any(size < 1 for size in value):
            raise ValueError("population sizes must be positive")
        return value

    @model_validator(mode="after")
    def _seeded(self) -> "ExperimentConfig":
        if self.command in RANDOMIZED_COMMANDS and self.seed is None:
            raise ValueError(f"command {self.command!r} requires a seed")
        return self

    def header(self) -> str:
        """Render every set field as ``# key=value`` lines."""
        lines = []
        for key, value in self.model_dump(exclude_none=True).items():
            if isinstance(value, list):
                if not value:
                    continue
                value = ",".join(str(v) for v in value)
            lines.append(f"# {key}={value}")
        return "\n".join(lines) + "\n"

"""Core module: types, configurations, the rule format and execution semantics."""

from netcon.core.base import BaseMonitor, BaseScheduler
from netcon.core.config import (
    ClaimedTime,
    ExperimentConfig,
    RunSettings,
    StopCondition,
    default_budget,
)
from netcon.core.configuration import Configuration
from netcon.core.engine import (
    apply_interaction,
    derive_seed,
    is_fixed_point,
    is_halted,
    observe_context,
    output_graph,
    replay,
    successors,
)
from netcon.core.rules import ProtocolSpec, parse_rules
from netcon.core.types import (
    DegreeClass,
    Directedness,
    EdgeState,
    Guard,
    InteractionContext,
    InteractionEvent,
    NodeId,
    Rule,
    Sensor,
    StateId,
)

__all__ = [
    # Base classes
    "BaseScheduler",
    "BaseMonitor",
    # Config
    "RunSettings",
    "ExperimentConfig",
    "StopCondition",
    "ClaimedTime",
    "default_budget",
    # Types
    "NodeId",
    "StateId",
    "EdgeState",
    "DegreeClass",
    "Sensor",
    "Directedness",
    "InteractionContext",
    "Guard",
    "Rule",
    "InteractionEvent",
    "Configuration",
    "ProtocolSpec",
    "parse_rules",
    # Semantics
    "observe_context",
    "apply_interaction",
    "is_halted",
    "is_fixed_point",
    "output_graph",
    "successors",
    "replay",
    "derive_seed",
]

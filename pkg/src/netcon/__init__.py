"""
NetCon - Network Constructors

Simulate populations of finite-state agents that build networks by switching
pairwise connections on and off, then measure, verify and compose the
protocols that run on them.
"""

from netcon.analysis.runner import RunReport, RunResult
from netcon.client import NetCon
from netcon.core.base import BaseMonitor, BaseScheduler
from netcon.core.config import ExperimentConfig, RunSettings
from netcon.core.configuration import Configuration
from netcon.core.rules import ProtocolSpec, parse_rules
from netcon.core.types import InteractionEvent, Rule, Sensor
from netcon.exceptions import (
    BudgetExhaustedError,
    ConfigurationError,
    NetconError,
    ProtocolError,
    RuleParseError,
    StateSpaceError,
    TapeExhaustedError,
    TMError,
    TopologyError,
)
from netcon.protocols import ProtocolCatalogEntry, get_protocol

__version__ = "0.1.0"

__all__ = [
    # Main client
    "NetCon",
    # Base classes
    "BaseScheduler",
    "BaseMonitor",
    # Config
    "RunSettings",
    "ExperimentConfig",
    # Types
    "Configuration",
    "ProtocolSpec",
    "Rule",
    "Sensor",
    "InteractionEvent",
    "parse_rules",
    # Protocols
    "ProtocolCatalogEntry",
    "get_protocol",
    # Results
    "RunReport",
    "RunResult",
    # Exceptions
    "NetconError",
    "ConfigurationError",
    "ProtocolError",
    "RuleParseError",
    "TopologyError",
    "BudgetExhaustedError",
    "StateSpaceError",
    "TMError",
    "TapeExhaustedError",
]

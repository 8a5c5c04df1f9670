"""Custom exceptions for netcon."""

from typing import Optional


class NetconError(Exception):
    """Base exception for all netcon errors."""

    pass


class ConfigurationError(NetconError):
    """Raised when an experiment or command configuration is invalid."""

    pass


class ProtocolError(NetconError):
    """Raised when a protocol specification is malformed."""

    def __init__(self, protocol: str, message: str):
        self.protocol = protocol
        self.message = message
        super().__init__(f"[{protocol}] {message}")


class RuleParseError(ProtocolError):
    """Raised when a line of a rule or machine file cannot be parsed."""

    def __init__(self, protocol: str, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(protocol, message)


class TopologyError(NetconError):
    """Raised when a graph or layout does not satisfy an operation's precondition."""

    pass


class BudgetExhaustedError(NetconError):
    """Raised when a stage that must terminate runs out of its step budget."""

    def __init__(self, message: str, steps: Optional[int] = None):
        self.steps = steps
        super().__init__(message)


class StateSpaceError(NetconError):
    """Raised when exhaustive exploration exceeds its state limit."""

    def __init__(self, limit: int, frontier: int):
        self.limit = limit
        self.frontier = frontier
        super().__init__(
            f"state space exceeds {limit} configurations "
            f"(frontier size {frontier} when aborted)"
        )


class TMError(NetconError):
    """Raised for malformed machine descriptions or illegal tape writes."""

    pass


class TapeExhaustedError(TMError):
    """Raised when the head leaves the available memory."""

    pass

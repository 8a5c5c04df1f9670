"""Shipped protocols, loaded from the rule files in ``fixtures/``."""

from typing import Callable

from netcon.exceptions import ConfigurationError
from netcon.protocols.catalog import (
    ProtocolCatalogEntry,
    Target,
    decision_bits,
    line_around_a_star,
    line_transformer,
    load_rules,
    online_cycle_elimination,
    stable_2cycle_detection,
    star_transformer,
    triangle_breaker,
)

# Registry of available protocols
PROTOCOLS: dict[str, Callable[[], ProtocolCatalogEntry]] = {
    "online-cycle-elimination": online_cycle_elimination,
    "line-around-a-star": line_around_a_star,
    "stable-2cycle-detection": stable_2cycle_detection,
    "star-transformer": star_transformer,
    "line-transformer": line_transformer,
    "triangle-breaker": triangle_breaker,
}


def get_protocol(name: str) -> ProtocolCatalogEntry:
    """
    Get a catalog entry by name.

    Args:
        name: Protocol name (e.g., 'line-transformer').

    Returns:
        The catalog entry.

    Raises:
        ConfigurationError: If the protocol is not found.
    """
    factory = PROTOCOLS.get(name.lower().replace("_", "-"))
    if factory is None:
        available = ", ".join(PROTOCOLS.keys())
        raise ConfigurationError(f"Unknown protocol: {name}. Available: {available}")
    return factory()


def register_protocol(name: str, factory: Callable[[], ProtocolCatalogEntry]) -> None:
    """
    Register a custom protocol.

    Args:
        name: Protocol name.
        factory: Zero-argument callable returning a ProtocolCatalogEntry.
    """
    PROTOCOLS[name.lower()] = factory


__all__ = [
    # Catalog
    "ProtocolCatalogEntry",
    "Target",
    "load_rules",
    "decision_bits",
    # Protocols
    "online_cycle_elimination",
    "line_around_a_star",
    "stable_2cycle_detection",
    "star_transformer",
    "line_transformer",
    "triangle_breaker",
    # Registry
    "PROTOCOLS",
    "get_protocol",
    "register_protocol",
]

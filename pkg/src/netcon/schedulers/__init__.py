"""Interaction schedulers: uniform random, scripted replays and mimic schedules."""

from netcon.core.base import BaseScheduler
from netcon.exceptions import ConfigurationError
from netcon.schedulers.mimic import (
    HEXAGON,
    expand_step,
    mimic_to_family,
    mimic_triangle_to_hexagon,
)
from netcon.schedulers.scripted import (
    Schedule,
    ScriptedScheduler,
    format_schedule,
    parse_schedule,
    read_schedule,
    schedule_from_pairs,
    write_schedule,
)
from netcon.schedulers.uniform import UniformScheduler, uniform_next

# Registry of available schedulers
SCHEDULERS: dict[str, type] = {
    "uniform": UniformScheduler,
    "scripted": ScriptedScheduler,
}


def get_scheduler(name: str) -> type:
    """
    Get a scheduler class by name.

    Args:
        name: Scheduler name (e.g., 'uniform').

    Returns:
        The scheduler class.

    Raises:
        ConfigurationError: If the scheduler is not found.
    """
    scheduler = SCHEDULERS.get(name.lower())
    if scheduler is None:
        available = ", ".join(SCHEDULERS.keys())
        raise ConfigurationError(f"Unknown scheduler: {name}. Available: {available}")
    return scheduler


def register_scheduler(name: str, scheduler_class: type) -> None:
    """
    Register a custom scheduler.

    Args:
        name: Scheduler name.
        scheduler_class: Scheduler class (must inherit from BaseScheduler).
    """
    if not issubclass(scheduler_class, BaseScheduler):
        raise ConfigurationError(f"{scheduler_class!r} is not a BaseScheduler")
    SCHEDULERS[name.lower()] = scheduler_class


__all__ = [
    "UniformScheduler",
    "ScriptedScheduler",
    "Schedule",
    "SCHEDULERS",
    "get_scheduler",
    "register_scheduler",
    "uniform_next",
    "format_schedule",
    "parse_schedule",
    "read_schedule",
    "write_schedule",
    "schedule_from_pairs",
    "HEXAGON",
    "expand_step",
    "mimic_to_family",
    "mimic_triangle_to_hexagon",
]

"""Abstract base classes for schedulers and run monitors."""

from abc import ABC, abstractmethod
from typing import Iterator, Optional

from netcon.core.configuration import Configuration
from netcon.core.types import InteractionEvent, ScheduledPair, Violation


class BaseScheduler(ABC):
    """
    Abstract base class for interaction-pair selection.

    A scheduler yields oriented pairs until it is exhausted; random schedulers
    never are.
    """

    # Scheduler identifier (override in subclasses)
    name: str = "base"

    def __init__(self, n: int, directed: bool = False):
        """
        Initialize the scheduler.

        Args:
            n: Population size.
            directed: Whether pairs are ordered (directed protocols).
        """
        self.n = n
        self.directed = directed

    @abstractmethod
    def next_pair(self) -> Optional[ScheduledPair]:
        """
        Select the next interaction.

        Returns:
            The pair, or None once the schedule is exhausted.
        """
        pass

    @property
    def provenance(self) -> str:
        """Tag written into schedule headers."""
        return self.name

    def __iter__(self) -> Iterator[ScheduledPair]:
        while True:
            pair = self.next_pair()
            if pair is None:
                return
            yield pair

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n={self.n}, directed={self.directed})"


class BaseMonitor(ABC):
    """
    Pure observer evaluated after every step of a run.

    Monitors must not touch the configuration or any random source.
    """

    # Monitor identifier (override in subclasses)
    name: str = "base"

    @abstractmethod
    def check(
        self, event: InteractionEvent, config: Configuration
    ) -> Optional[Violation]:
        """
        Inspect a step.

        Args:
            event: The step just applied.
            config: Configuration after the step.

        Returns:
            A violation, or None.
        """
        pass

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}()"

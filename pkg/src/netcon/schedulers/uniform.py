"""The uniform random scheduler."""

import random
from typing import Optional, Tuple

from netcon.core.base import BaseScheduler
from netcon.core.types import NodeId, ScheduledPair


def uniform_next(n: int, rng: random.Random) -> Tuple[NodeId, NodeId]:
    """
    Draw an ordered pair of distinct nodes uniformly.

    Every one of the n(n-1) ordered pairs has the same probability, so the
    unordered pair is uniform over n(n-1)/2 with a fair orientation.
    """
    u = rng.randrange(n)
    v = rng.randrange(n - 1)
    if v >= u:
        v += 1
    return u, v


class UniformScheduler(BaseScheduler):
    """Selects pairs independently and uniformly at random, forever."""

    name = "uniform"

    def __init__(
        self,
        n: int,
        rng: Optional[random.Random] = None,
        seed: Optional[int] = None,
        directed: bool = False,
    ):
        """
        Initialize the scheduler.

        Args:
            n: Population size (at least 2).
            rng: Random source to draw from; owned by the scheduler from now on.
            seed: Seed for a private random source when rng is not given.
            directed: Whether pairs are ordered.
        """
        if n < 2:
            raise ValueError(f"the uniform scheduler needs n >= 2, got {n}")
        super().__init__(n, directed)
        self.seed = seed
        self.rng = rng if rng is not None else random.Random(seed)

    @property
    def provenance(self) -> str:
        return f"random(seed={self.seed})" if self.seed is not None else "random"

    def next_pair(self) -> ScheduledPair:
        u, v = uniform_next(self.n, self.rng)
        return ScheduledPair(u, v)

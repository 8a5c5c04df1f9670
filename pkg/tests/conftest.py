from typing import Callable, List, Optional, Sequence

import pytest

from netcon.core.configuration import Configuration
from netcon.core.rules import ProtocolSpec, parse_rules

STAR_RULES = """\
@name star-transformer
@states l p
@initial l
@sensors cnd
l l * -> l p 1
l p 0 -> l p 1
p p 1 [cnd=1] -> p p 0
"""


@pytest.fixture
def star_spec() -> ProtocolSpec:
    return parse_rules(STAR_RULES)


@pytest.fixture
def halted_line() -> Callable[[Sequence[str]], Configuration]:
    """A halted Line-Transformer line 0-1-...-(n-1) with the leader end at node 0."""

    def build(
        labels: Sequence[str], order: Optional[List[int]] = None
    ) -> Configuration:
        n = len(labels)
        order = order if order is not None else list(range(n))
        states = ["h"] * n
        states[order[0]] = "hl"
        edges = [(order[t], order[t + 1]) for t in range(n - 1)]
        return Configuration(states, edges, labels=list(labels))

    return build

import random

import pytest

from netcon.analysis.impossibility import (
    ReplayVerdict,
    copies_agree,
    replay_impossibility,
)
from netcon.core.configuration import Configuration
from netcon.exceptions import ConfigurationError, TopologyError
from netcon.protocols import line_around_a_star, star_transformer, triangle_breaker
from netcon.schedulers import schedule_from_pairs
from netcon.topology import named_family_graph


@pytest.mark.parametrize("seed", range(5))
def test_triangle_breaker_splits_the_hexagon(seed: int) -> None:
    report = replay_impossibility(triangle_breaker(), rng=random.Random(seed))
    assert report.verdict is ReplayVerdict.DISCONNECTED
    assert report.components == 2
    assert report.equal_before_deactivation
    assert report.deactivation_step == report.base_steps - 1
    assert len(report.schedule) == 2 * report.base_steps
    assert report.schedule.n == 6


@pytest.mark.parametrize("k", [2, 3, 4])
def test_more_copies_more_components(k: int) -> None:
    trace = schedule_from_pairs(3, [(0, 1), (0, 1)])
    report = replay_impossibility(
        triangle_breaker(), "triangle", (2, 0), k, trace=trace
    )
    assert report.deactivation_step == 1
    assert report.deactivated_edge == (0, 1)
    assert report.components == k
    assert report.block_equality == [True, True]
    assert report.schedule.provenance == "mimic(scripted)"


def test_removed_edge_steps_use_the_chain() -> None:
    trace = schedule_from_pairs(3, [(2, 0), (0, 2)])
    report = replay_impossibility(
        triangle_breaker(), "triangle", (2, 0), 2, trace=trace
    )
    pairs = [tuple(p[:2]) for p in report.schedule.pairs]
    assert pairs == [(2, 3), (5, 0), (3, 2), (0, 5)]
    assert report.verdict is ReplayVerdict.DISCONNECTED


def test_square_base_graph() -> None:
    trace = schedule_from_pairs(4, [(1, 2), (1, 2)])
    report = replay_impossibility(triangle_breaker(), "square", (3, 0), 2, trace=trace)
    assert report.base_n == 4
    assert report.components == 2


def test_custom_base_graph() -> None:
    # a triangle with a pendant node
    base = (4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    trace = schedule_from_pairs(4, [(0, 1), (0, 1)])
    report = replay_impossibility(triangle_breaker(), base, (1, 0), 2, trace=trace)
    assert report.verdict is ReplayVerdict.DISCONNECTED


def test_no_deactivation_stays_connected() -> None:
    trace = schedule_from_pairs(3, [(0, 1), (1, 2)])
    report = replay_impossibility(triangle_breaker(), trace=trace)
    assert report.verdict is ReplayVerdict.CONNECTED
    assert report.components == 1
    assert report.deactivation_step is None
    assert report.deactivated_edge is None


def test_refuses_common_neighbor_and_leader_protocols() -> None:
    with pytest.raises(ConfigurationError, match="common neighbors"):
        replay_impossibility(star_transformer())
    with pytest.raises(ConfigurationError, match="leader"):
        replay_impossibility(line_around_a_star())


def test_bad_family_parameters() -> None:
    with pytest.raises(TopologyError):
        replay_impossibility(triangle_breaker(), "triangle", (2, 0), 1)
    with pytest.raises(ConfigurationError, match="Unknown base graph"):
        replay_impossibility(triangle_breaker(), "pentagon")


def test_copies_agree() -> None:
    fam = named_family_graph("triangle", (2, 0), 2)
    base = Configuration(["m", "m", "q"], [(0, 1), (1, 2), (0, 2)])
    family = Configuration(["m", "m", "q"] * 2, fam.edges)
    assert copies_agree(base, family, fam)
    family = Configuration(["m", "m", "q", "m", "q", "q"], fam.edges)
    assert not copies_agree(base, family, fam)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("base, edge", [("triangle", (2, 0)), ("square", (3, 0))])
def test_copies_stay_in_lockstep_under_random_traces(
    base: str, edge: tuple, k: int
) -> None:
    rng = random.Random(k)
    n = 3 if base == "triangle" else 4
    for _ in range(20):
        pairs = [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(1, 200))]
        trace = schedule_from_pairs(n, pairs)
        report = replay_impossibility(triangle_breaker(), base, edge, k, trace=trace)
        assert report.verdict is not ReplayVerdict.INAPPLICABLE
        assert len(report.block_equality) == report.base_steps
        assert report.equal_before_deactivation
        if report.deactivation_step is None:
            assert report.components == 1
        else:
            assert report.components >= 2

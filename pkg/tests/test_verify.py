import random
from typing import Callable, List

import pytest

from netcon.analysis.verify import (
    Property,
    check_stabilization,
    estimate_state_space,
    exhaustive_verify,
    initial_configurations,
)
from netcon.core.configuration import Configuration, Edge
from netcon.exceptions import ConfigurationError, StateSpaceError
from netcon.protocols import (
    ProtocolCatalogEntry,
    line_around_a_star,
    line_transformer,
    online_cycle_elimination,
    stable_2cycle_detection,
    star_transformer,
    triangle_breaker,
)
from netcon.topology.generators import (
    enumerate_directed_connected_graphs,
    random_connected,
)
from netcon.topology.graphs import ActiveGraph, has_directed_2cycle


def test_population_size_is_bounded() -> None:
    with pytest.raises(ConfigurationError, match="configurations"):
        exhaustive_verify(star_transformer(), 5, Property.CONNECTIVITY_ALWAYS)
    with pytest.raises(ConfigurationError):
        exhaustive_verify(star_transformer(), 1, Property.CONNECTIVITY_ALWAYS)


def test_state_space_bound() -> None:
    assert estimate_state_space(star_transformer().spec, 3) == 64


def test_initial_configurations_cover_connected_topologies() -> None:
    assert len(list(initial_configurations(star_transformer().spec, 3))) == 4
    assert len(list(initial_configurations(star_transformer().spec, 4))) == 38
    directed = list(initial_configurations(stable_2cycle_detection().spec, 2))
    assert len(directed) == 3
    assert all(config.directed for config in directed)


@pytest.mark.parametrize(
    "prop",
    [Property.FIXEDPOINT_IMPLIES_SPANNING_STAR, Property.CONNECTIVITY_ALWAYS],
)
def test_star_transformer_properties_hold(prop: Property) -> None:
    report = exhaustive_verify(star_transformer(), 3, prop)
    assert report.holds
    assert report.verdict == "PASS"
    assert report.initial_configurations == 4
    assert report.reachable >= report.initial_configurations
    assert report.terminal > 0
    assert report.counterexample is None


def test_triangle_breaker_disconnects() -> None:
    report = exhaustive_verify(triangle_breaker(), 3, "connectivity-always")
    assert not report.holds
    assert report.verdict == "FAIL"
    assert report.counterexample is not None


def test_line_transformer_halts_on_a_spanning_line() -> None:
    report = exhaustive_verify(line_transformer(), 3,
                               Property.HALTING_IMPLIES_SPANNING_LINE)
    assert report.holds
    assert report.halted > 0


@pytest.mark.slow
def test_line_transformer_on_four_nodes() -> None:
    report = exhaustive_verify(line_transformer(), 4,
                               Property.HALTING_IMPLIES_SPANNING_LINE)
    assert report.holds


def test_state_limit() -> None:
    with pytest.raises(StateSpaceError):
        exhaustive_verify(star_transformer(), 3, Property.CONNECTIVITY_ALWAYS,
                          state_limit=5)


def test_unknown_property() -> None:
    with pytest.raises(ValueError):
        exhaustive_verify(star_transformer(), 3, "always-a-tree")


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize(
    "prop",
    [Property.FIXEDPOINT_IMPLIES_SPANNING_STAR, Property.CONNECTIVITY_ALWAYS],
)
def test_star_transformer_exhaustively(n: int, prop: Property) -> None:
    assert exhaustive_verify(star_transformer(), n, prop).holds


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize(
    "prop",
    [Property.HALTING_IMPLIES_SPANNING_LINE, Property.CONNECTIVITY_ALWAYS],
)
@pytest.mark.parametrize(
    "factory", [online_cycle_elimination, line_around_a_star, line_transformer]
)
def test_line_protocols_exhaustively(
    factory: Callable[[], ProtocolCatalogEntry], prop: Property, n: int
) -> None:
    report = exhaustive_verify(factory(), n, prop)
    assert report.holds
    assert report.halted > 0


@pytest.mark.slow
@pytest.mark.parametrize(
    "prop",
    [Property.HALTING_IMPLIES_SPANNING_LINE, Property.CONNECTIVITY_ALWAYS],
)
@pytest.mark.parametrize("factory", [online_cycle_elimination, line_around_a_star])
def test_leader_protocols_on_four_nodes(
    factory: Callable[[], ProtocolCatalogEntry], prop: Property
) -> None:
    assert exhaustive_verify(factory(), 4, prop).holds


def _2cycle_oracle(config: Configuration) -> int:
    return int(has_directed_2cycle(ActiveGraph.from_configuration(config)))


def _random_digraph(n: int, rng: random.Random) -> List[Edge]:
    edges: List[Edge] = []
    for u, v in random_connected(n, rng, p=0.3):
        orientation = rng.randrange(3)
        if orientation != 1:
            edges.append((u, v))
        if orientation != 0:
            edges.append((v, u))
    return edges


@pytest.mark.parametrize("n", [2, 3])
def test_2cycle_detection_on_every_small_digraph(n: int) -> None:
    rng = random.Random(n)
    for edges in enumerate_directed_connected_graphs(n):
        config = Configuration(["l/0"] * n, edges, directed=True)
        report = check_stabilization(
            stable_2cycle_detection(), config, steps=10_000, window=2_000,
            oracle=_2cycle_oracle, rng=rng,
        )
        assert report.correct, edges


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3])
def test_2cycle_detection_stays_put_on_every_small_digraph(n: int) -> None:
    rng = random.Random(n)
    for edges in enumerate_directed_connected_graphs(n):
        config = Configuration(["l/0"] * n, edges, directed=True)
        report = check_stabilization(
            stable_2cycle_detection(), config, steps=1_000_000, window=100_000,
            oracle=_2cycle_oracle, rng=rng,
        )
        assert report.correct, edges


@pytest.mark.slow
@pytest.mark.parametrize("n", [4, 5, 6])
def test_2cycle_detection_on_random_digraphs(n: int) -> None:
    rng = random.Random(100 + n)
    for _ in range(100):
        config = Configuration(["l/0"] * n, _random_digraph(n, rng), directed=True)
        report = check_stabilization(
            stable_2cycle_detection(), config, steps=1_000_000, window=100_000,
            oracle=_2cycle_oracle, rng=rng,
        )
        assert report.correct, config

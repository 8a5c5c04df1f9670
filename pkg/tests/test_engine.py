import itertools
import random
from typing import Iterator, List, Tuple

import pytest

from netcon.analysis.runner import run_seeded
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
from netcon.core.types import DegreeClass
from netcon.exceptions import TopologyError
from netcon.protocols import PROTOCOLS, get_protocol, star_transformer


def test_derive_seed_is_stable_and_tag_dependent() -> None:
    assert derive_seed(7, "topology") == derive_seed(7, "topology")
    assert derive_seed(7, "topology") != derive_seed(7, "scheduler")
    assert 0 <= derive_seed(2**40, "x") < 2**32


def test_observe_context_on_triangle() -> None:
    config = Configuration(["q"] * 3, [(0, 1), (1, 2), (0, 2)])
    ctx = observe_context(config, 0, 1)
    assert ctx.deg_u is DegreeClass.D2
    assert ctx.deg_v is DegreeClass.D2
    assert ctx.common_neighbor == 1


def test_observe_context_rejects_self_pair() -> None:
    config = Configuration(["q"] * 3)
    with pytest.raises(TopologyError):
        observe_context(config, 1, 1)
    with pytest.raises(TopologyError):
        observe_context(config, 0, 3)


def test_degree_class_saturates() -> None:
    assert DegreeClass.of(0) is DegreeClass.D0
    assert DegreeClass.of(7) is DegreeClass.D3PLUS


def test_symmetric_rule_role_choice(star_spec: ProtocolSpec) -> None:
    config = Configuration(["l", "l"], [])
    after, event = apply_interaction(config, 0, 1, star_spec, role=False)
    assert after.states == ("l", "p")
    assert after.edge(0, 1) == 1
    assert event.role is False

    swapped, event = apply_interaction(config, 0, 1, star_spec, role=True)
    assert swapped.states == ("p", "l")
    assert event.role is True
    # the input configuration is a value
    assert config.states == ("l", "l")
    assert config.edge(0, 1) == 0


def test_rule_matches_in_either_orientation(star_spec: ProtocolSpec) -> None:
    config = Configuration(["p", "l"], [])
    after, event = apply_interaction(config, 0, 1, star_spec)
    assert after.states == ("p", "l")
    assert after.edge(0, 1) == 1
    assert event.rule is not None
    assert event.role is None


def test_unmatched_pair_is_ineffective(star_spec: ProtocolSpec) -> None:
    config = Configuration(["p", "p"], [(0, 1)])
    after, event = apply_interaction(config, 0, 1, star_spec)
    assert event.rule is None
    assert event.before == event.after
    assert after == config


def test_common_neighbor_guard(star_spec: ProtocolSpec) -> None:
    config = Configuration(["l", "p", "p"], [(0, 1), (0, 2), (1, 2)])
    after, event = apply_interaction(config, 1, 2, star_spec)
    assert event.deactivated
    assert after.active_edges() == [(0, 1), (0, 2)]


def test_fixed_point_detection(star_spec: ProtocolSpec) -> None:
    star = Configuration(["l", "p", "p"], [(0, 1), (0, 2)])
    assert is_fixed_point(star, star_spec)
    triangle = Configuration(["l", "p", "p"], [(0, 1), (0, 2), (1, 2)])
    assert not is_fixed_point(triangle, star_spec)


def test_successors_cover_both_roles(star_spec: ProtocolSpec) -> None:
    config = Configuration(["l", "l"], [])
    states = sorted(nxt.states for nxt, _ in successors(config, star_spec))
    assert states == [("l", "p"), ("p", "l")]


def test_is_halted_needs_halting_states(star_spec: ProtocolSpec) -> None:
    assert not is_halted(Configuration(["l", "p"]), star_spec)
    spec = parse_rules("@name x\n@states q h\n@initial q\n@halt h\nq q * -> h h 1\n")
    assert is_halted(Configuration(["h", "h"]), spec)
    assert not is_halted(Configuration(["h", "q"]), spec)


def test_directed_edges_are_ordered() -> None:
    spec = parse_rules("@name d\n@states a b\n@initial a\n@directed\na a 0 -> b a 1\n")
    config = Configuration(["a", "a"], directed=True)
    after, _ = apply_interaction(config, 1, 0, spec)
    assert after.edge(1, 0) == 1
    assert after.edge(0, 1) == 0
    assert after.states == ("a", "b")


def test_output_graph_restricts_to_output_states() -> None:
    spec = parse_rules("@name o\n@states a b\n@initial a\n@output a\na a 1 -> a a 1\n")
    config = Configuration(["a", "b", "a"], [(0, 1), (1, 2), (0, 2)])
    graph = output_graph(config, spec)
    assert graph.nodes == (0, 2)
    assert graph.edges() == ((0, 2),)


def test_replay_reproduces_a_recorded_run() -> None:
    result = run_seeded(star_transformer(), 6, "clique", seed=3, keep_trace=True)
    assert replay(result.initial, result.trace, star_transformer().spec) == result.final


def test_role_choice_uses_the_random_source(star_spec: ProtocolSpec) -> None:
    config = Configuration(["l", "l"], [])
    seen = {
        apply_interaction(config, 0, 1, star_spec, rng=random.Random(seed))[0].states
        for seed in range(20)
    }
    assert seen == {("l", "p"), ("p", "l")}


def _all_graphs(n: int) -> Iterator[List[Tuple[int, int]]]:
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [pair for bit, pair in enumerate(pairs) if mask >> bit & 1]


DEGREE_LABELS = ["0", "1", "2", "3+"]


def _check_contexts_by_enumeration(n: int) -> None:
    for edges in _all_graphs(n):
        config = Configuration(["q"] * n, edges)
        present = set(edges)

        def active(a: int, b: int) -> bool:
            return (min(a, b), max(a, b)) in present

        for u, v in itertools.permutations(range(n), 2):
            context = observe_context(config, u, v)
            common = any(
                active(u, w) and active(v, w) for w in range(n) if w not in (u, v)
            )
            for node, seen in ((u, context.deg_u), (v, context.deg_v)):
                degree = sum(active(node, w) for w in range(n) if w != node)
                assert seen.value == DEGREE_LABELS[min(degree, 3)]
            assert context.common_neighbor == int(common)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_observe_context_matches_enumeration(n: int) -> None:
    _check_contexts_by_enumeration(n)


@pytest.mark.slow
def test_observe_context_matches_enumeration_on_six_nodes() -> None:
    _check_contexts_by_enumeration(6)


@pytest.mark.parametrize("name", sorted(PROTOCOLS))
def test_replay_is_deterministic_for_every_protocol(name: str) -> None:
    entry = get_protocol(name)
    for seed in range(50):
        result = run_seeded(entry, 6, "random_connected", seed, budget=1_000,
                            keep_trace=True)
        assert replay(result.initial, result.trace, entry.spec) == result.final

import random
from typing import Callable, Iterable, Set

import pytest

from netcon.analysis.runner import run_seeded
from netcon.analysis.verify import check_stabilization
from netcon.core.config import ClaimedTime, StopCondition
from netcon.core.configuration import Configuration
from netcon.core.rules import expand_rule
from netcon.exceptions import ConfigurationError
from netcon.protocols import (
    PROTOCOLS,
    ProtocolCatalogEntry,
    Target,
    decision_bits,
    get_protocol,
    line_around_a_star,
    line_transformer,
    online_cycle_elimination,
    register_protocol,
    stable_2cycle_detection,
    star_transformer,
    triangle_breaker,
)

# Rule tables as published, guards left out. Every transition of a published
# table must be in the shipped table; the shipped table adds only the rules below.
PUBLISHED_TABLES = {
    "online-cycle-elimination": [
        "l0 q0 1 -> e l1 1",
        "l1 q0 * -> i' lc' 1",
        "e lc' * -> te lc 0",
        "te i' 1 -> e tf 1",
        "tf lc 1 -> i l 1",
        "te i 1 -> e t 1",
        "t lc * -> tr lc 0",
        "tr i 1 -> p' t' 1",
        "e p' 1 -> e p'' 1",
        "p p' 1 -> i p'' 1",
        "p'' t' 1 -> p t 1",
        "tr i' 1 -> p' tf' 1",
        "p'' tf' 1 -> i tf 1",
        "l q0 * -> i' lc' 1",
    ],
    "star-transformer": [
        "l l * -> l p 1",
        "l p 0 -> l p 1",
        "p p 1 -> p p 0",
    ],
    "stable-2cycle-detection": [
        "l/* l/* * -> l/0 f/0",
        "l/0 f/* 1 -> f'/0 l'/0",
        "f/* l/0 1 -> l/0 f/0",
        "l'/0 f'/0 1 -> l/1 f/1",
        "l/x f/* 0 -> l/x f/x",
        "f/* l/x 0 -> f/x l/x",
        "l/1 f/0 1 -> l/1 f/1",
        "f/0 l/1 1 -> f/1 l/1",
        "f'/0 l'/0 1 -> f/0 l/0",
        "l'/0 f'/0 0 -> l/0 f/0",
        "f'/0 l'/0 0 -> f/0 l/0",
    ],
}

# Termination detection, absent from the published cycle-elimination table.
ADDED_RULES = {
    "online-cycle-elimination": {
        "te i' 1 [degU!=1] -> e tf- 1",
        "te i 1 [degU!=1] -> e t- 1",
        "tr i 1 [degU!=2] -> p' t'- 1",
        "tr i' 1 [degU!=2] -> p' tf'- 1",
        "t- lc * -> tr- lc 0",
        "tr- i 1 -> p' t'- 1",
        "tr- i' 1 -> p' tf'- 1",
        "p'' t'- 1 -> p t- 1",
        "p'' tf'- 1 -> i tf- 1",
        "tf- lc 1 -> i l 1",
        "e l1 1 [degU=1,degV=1] -> h h 1",
        "tf lc 1 [degU=2,degV=1] -> w h 1",
        "i w 1 -> w h 1",
        "e w 1 -> h h 1",
    },
    "star-transformer": set(),
    "stable-2cycle-detection": set(),
}

# Published transitions that the shipped table guards with a degree reading.
GUARDED_RULES = {
    "online-cycle-elimination": {
        "te i' 1 [degU=1] -> e tf 1",
        "te i 1 [degU=1] -> e t 1",
        "tr i 1 [degU=2] -> p' t' 1",
        "tr i' 1 [degU=2] -> p' tf' 1",
        "tf lc 1 [degU!=2] -> i l 1",
        "tf lc 1 [degU=2,degV!=1] -> i l 1",
    },
    "star-transformer": {"p p 1 [cnd=1] -> p p 0"},
    "stable-2cycle-detection": set(),
}

# Spot checks for the tables described only in prose.
GOLDEN_RULES = {
    "line-around-a-star": [
        "l q0 1 [degV=1] -> l p 1",
        "l q0 0 -> l p' 1",
        "p' p' 1 -> p' p' 0",
        "l p 1 -> e_l l1' 1",
        "l1' p 0 -> i' l' 1",
        "l' p 0 -> i l' 1",
        "e_l i 1 -> e_l i 0",
        "e_l l1' 1 [degU=1] -> h h 1",
        "w i 1 -> h w 1",
    ],
    "line-transformer": [
        "l p 1 [degV=1] -> e_l l1' 1",
        "l1' p 0 [degV=1,cnd=1] -> i1 l' 1",
        "e_l l' 1 [degU=2] -> x w 0",
        "x w1 1 -> hl h 1",
    ],
}


def _keys(lines: Iterable[str]) -> Set[tuple]:
    return {(rule.lhs, rule.rhs) for text in lines for rule in expand_rule(text)}


def test_registry_names() -> None:
    assert set(PROTOCOLS) == {
        "online-cycle-elimination",
        "line-around-a-star",
        "stable-2cycle-detection",
        "star-transformer",
        "line-transformer",
        "triangle-breaker",
    }
    for name, factory in PROTOCOLS.items():
        assert factory().name == name


def test_get_protocol_normalizes_names() -> None:
    assert get_protocol("Line_Transformer").name == "line-transformer"
    with pytest.raises(ConfigurationError, match="Unknown protocol"):
        get_protocol("ring-builder")


def test_register_protocol() -> None:
    register_protocol("my-star", star_transformer)
    try:
        assert get_protocol("my-star") is star_transformer()
    finally:
        del PROTOCOLS["my-star"]


@pytest.mark.parametrize("name", sorted(PUBLISHED_TABLES))
def test_published_tables_are_shipped(name: str) -> None:
    rules = get_protocol(name).spec.rules
    published = _keys(PUBLISHED_TABLES[name])
    assert published <= {(rule.lhs, rule.rhs) for rule in rules}
    added = {rule.text for rule in rules if (rule.lhs, rule.rhs) not in published}
    assert added == ADDED_RULES[name]
    guarded = {
        rule.text for rule in rules
        if (rule.lhs, rule.rhs) in published and not rule.guard.is_empty
    }
    assert guarded == GUARDED_RULES[name]


@pytest.mark.parametrize("name, rules", sorted(GOLDEN_RULES.items()))
def test_rule_tables(name: str, rules: list) -> None:
    present = {str(rule) for rule in get_protocol(name).spec.rules}
    for rule in rules:
        assert rule in present


@pytest.mark.parametrize(
    "factory, leader, stop",
    [
        (online_cycle_elimination, True, StopCondition.HALT),
        (line_around_a_star, True, StopCondition.HALT),
        (line_transformer, False, StopCondition.HALT),
        (star_transformer, False, StopCondition.FIXED_POINT),
        (stable_2cycle_detection, False, StopCondition.BUDGET),
        (triangle_breaker, False, StopCondition.BUDGET),
    ],
)
def test_catalog_metadata(
    factory: Callable[[], ProtocolCatalogEntry], leader: bool, stop: StopCondition
) -> None:
    entry = factory()
    assert entry.requires_leader is leader
    assert entry.stop is stop
    timed = StopCondition.DETECTION if entry.detection else stop
    assert entry.measured_stop is timed
    assert entry.spec.halting or entry.claimed_time is ClaimedTime.STABILIZING


def test_catalog_checks_claims_against_spec() -> None:
    with pytest.raises(ValueError):
        ProtocolCatalogEntry(
            spec=star_transformer().spec,
            requires_leader=True,
            target=Target.SPANNING_STAR,
            claimed_time=ClaimedTime.STABILIZING,
            preserves_connectivity=True,
        )
    with pytest.raises(ValueError, match="sensors"):
        ProtocolCatalogEntry(
            spec=star_transformer().spec,
            requires_leader=False,
            target=Target.SPANNING_STAR,
            claimed_time=ClaimedTime.STABILIZING,
            preserves_connectivity=True,
            required_sensors=frozenset(line_transformer().required_sensors),
        )


def test_line_transformer_needs_its_sensors() -> None:
    assert line_transformer().required_sensors <= line_transformer().spec.sensors


@pytest.mark.parametrize("family", ["clique", "ring", "random_connected"])
@pytest.mark.parametrize("seed", [1, 2])
def test_star_transformer_builds_a_spanning_star(family: str, seed: int) -> None:
    report = run_seeded(star_transformer(), 7, family, seed).report
    assert report.steps is not None
    assert report.fixed_point
    assert report.topology_class == "spanning_star"
    assert report.violations == []


@pytest.mark.parametrize("family", ["clique", "line", "random_connected"])
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_line_transformer_builds_a_spanning_line(family: str, seed: int) -> None:
    report = run_seeded(line_transformer(), 6, family, seed).report
    assert report.halted
    assert report.topology_class == "spanning_line"
    assert report.violations == []


@pytest.mark.parametrize("family", ["clique", "star"])
@pytest.mark.parametrize("seed", [1, 2])
def test_line_around_a_star_builds_a_spanning_line(family: str, seed: int) -> None:
    report = run_seeded(line_around_a_star(), 6, family, seed).report
    assert report.halted
    assert report.topology_class == "spanning_line"
    assert report.violations == []


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_line_around_a_star_detects_before_halting(seed: int) -> None:
    entry = line_around_a_star()
    assert entry.detection == frozenset({"h"})
    detected = run_seeded(entry, 8, "clique", seed, stop=StopCondition.DETECTION)
    halted = run_seeded(entry, 8, "clique", seed)
    assert detected.report.steps is not None
    assert halted.report.steps is not None
    # the halting wave only relabels the finished line
    assert detected.report.topology_class == "spanning_line"
    assert detected.report.steps < halted.report.steps
    assert "h" in detected.final.states


@pytest.mark.parametrize("family", ["clique", "ring"])
def test_online_cycle_elimination_builds_a_spanning_line(family: str) -> None:
    report = run_seeded(online_cycle_elimination(), 5, family, seed=4).report
    assert report.halted
    assert report.topology_class == "spanning_line"
    assert report.violations == []


@pytest.mark.parametrize(
    "edges, expected",
    [
        ([(0, 1), (1, 0), (1, 2), (2, 3)], 1),
        ([(0, 1), (1, 2), (2, 3), (3, 0)], 0),
    ],
)
def test_stable_2cycle_detection_stabilizes(edges: list, expected: int) -> None:
    config = Configuration(["l/0"] * 4, edges, directed=True)
    report = check_stabilization(
        stable_2cycle_detection(), config, steps=60_000, window=10_000,
        oracle=expected, rng=random.Random(5),
    )
    assert report.stable
    assert report.correct
    assert decision_bits(Configuration(["l/1", "f/0"], directed=True)) == [1, 0]
    # edges are never modified
    assert not any(rule.c != rule.c2 for rule in stable_2cycle_detection().spec.rules)

"""Deterministic Turing machine descriptions and their plain-text format.

A machine file mirrors the rule format::

    @name parity
    @states even odd yes no
    @input a b
    @tape a b 0 1
    @blank 0
    @start even
    @accept yes
    @reject no
    even a -> odd a R
    even * -> yes * L

``*`` on the left matches every tape symbol without an explicit transition for
that state; ``*`` as the written symbol keeps the symbol read.
"""

import logging
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, model_validator

from netcon.exceptions import RuleParseError, TMError

logger = logging.getLogger(__name__)

_DIRECTIVES = ("name", "states", "input", "tape", "blank", "start", "accept", "reject")


class Move(str, Enum):
    """Head direction."""

    LEFT = "L"
    RIGHT = "R"


Action = Tuple[str, str, Move]


class TMDescription(BaseModel):
    """
    A deterministic single-tape machine.

    ``transitions`` maps (state, symbol) to (state, written symbol, move) and must
    cover every tape symbol in every non-terminal state.
    """

    name: str
    states: List[str]
    input_alphabet: List[str]
    tape_alphabet: List[str]
    blank: str
    start: str
    accept: str
    reject: str
    transitions: Dict[Tuple[str, str], Action]

    model_config = {"frozen": True}

    @property
    def terminal(self) -> Tuple[str, str]:
        return (self.accept, self.reject)

    def action(self, state: str, symbol: str) -> Action:
        return self.transitions[(state, symbol)]

    @model_validator(mode="after")
    def _well_formed(self) -> "TMDescription":
        states, tape = set(self.states), set(self.tape_alphabet)
        for label, value in (("start", self.start), ("accept", self.accept),
                             ("reject", self.reject)):
            if value not in states:
                raise ValueError(f"{label} state {value!r} is not declared")
        if self.accept == self.reject:
            raise ValueError("accept and reject states must differ")
        if self.blank not in tape:
            raise ValueError(f"blank {self.blank!r} is not a tape symbol")
        if not set(self.input_alphabet) <= tape:
            raise ValueError("input alphabet must be part of the tape alphabet")
        for (state, symbol), (target, written, _) in self.transitions.items():
            if state in self.terminal:
                raise ValueError(f"terminal state {state!r} has a transition")
            if state not in states or target not in states:
                raise ValueError(
                    f"transition {state} {symbol} uses an undeclared state"
                )
            if symbol not in tape or written not in tape:
                raise ValueError(f"transition {state} {symbol} uses an unknown symbol")
        for state in self.states:
            if state in self.terminal:
                continue
            missing = [
                s for s in self.tape_alphabet if (state, s) not in self.transitions
            ]
            if missing:
                raise ValueError(f"state {state!r} has no transition on {missing}")
        return self


def parse_tm(text: str, name: Optional[str] = None) -> TMDescription:
    """
    Parse a machine file.

    Raises:
        RuleParseError: On malformed lines, repeated transitions or an
            inconsistent machine.
    """
    machine = name or "?"
    directives: Dict[str, List[str]] = {}
    explicit: Dict[Tuple[str, str], Action] = {}
    defaults: Dict[str, Tuple[str, str, Move]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("@"):
            head, _, rest = body[1:].partition(" ")
            if head not in _DIRECTIVES:
                raise RuleParseError(machine, f"unknown directive @{head}", lineno)
            directives[head] = rest.split()
            if head == "name" and directives[head]:
                machine = directives[head][0]
            continue
        lhs, arrow, rhs = body.partition("->")
        left, right = lhs.split(), rhs.split()
        if not arrow or len(left) != 2 or len(right) != 3:
            raise RuleParseError(machine, f"expected 'q s -> q2 s2 L|R', got {body!r}",
                                 lineno)
        try:
            move = Move(right[2].upper())
        except ValueError as e:
            raise RuleParseError(machine, f"bad move {right[2]!r}", lineno) from e
        state, symbol = left
        table = defaults if symbol == "*" else explicit
        key = state if symbol == "*" else (state, symbol)
        if key in table:
            raise RuleParseError(machine, f"repeated transition for {state} {symbol}",
                                 lineno)
        table[key] = (right[0], right[1], move)

    for required in ("states", "tape", "blank", "start", "accept", "reject"):
        if not directives.get(required):
            raise RuleParseError(machine, f"missing @{required}")
    tape = directives["tape"]

    transitions = dict(explicit)
    for state, (target, written, move) in defaults.items():
        for symbol in tape:
            if (state, symbol) not in transitions:
                kept = symbol if written == "*" else written
                transitions[(state, symbol)] = (target, kept, move)
    for key, (target, written, move) in list(transitions.items()):
        if written == "*":
            transitions[key] = (target, key[1], move)

    try:
        tm = TMDescription(
            name=machine,
            states=directives["states"],
            input_alphabet=directives.get("input", []),
            tape_alphabet=tape,
            blank=directives["blank"][0],
            start=directives["start"][0],
            accept=directives["accept"][0],
            reject=directives["reject"][0],
            transitions=transitions,
        )
    except ValueError as e:
        raise RuleParseError(machine, str(e)) from e
    logger.debug("Loaded machine %s with %d transitions", tm.name, len(tm.transitions))
    return tm


def read_tm(path: Union[str, Path]) -> TMDescription:
    return parse_tm(Path(path).read_text(), name=Path(path).stem)


def load_tm(filename: str) -> TMDescription:
    """Load a ``.tm`` file shipped in ``netcon.tm.fixtures``."""
    fixtures = resources.files("netcon.tm").joinpath("fixtures")
    text = fixtures.joinpath(filename).read_text()
    return parse_tm(text)


def check_inputs(tm: TMDescription, inputs: List[str]) -> None:
    """Reject input symbols outside the machine's input alphabet."""
    unknown = sorted(set(inputs) - set(tm.input_alphabet))
    if unknown:
        raise TMError(f"{tm.name}: inputs {unknown} are not in the input alphabet")

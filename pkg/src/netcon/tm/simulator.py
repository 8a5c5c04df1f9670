"""
Run a deterministic TM on the edge memory of a partitioned line.

Tape positions ``0 .. n-1`` are input slots stored in the states of the U nodes
(two per node, three for the last U node of an odd line); positions from ``n``
on are the M-edge cells in head order, starting from tokens (1, 2). Cells hold
only ``0`` and ``1``; the blank is ``0`` because every M-M edge starts inactive.

Every tape access is carried out by scripted pairwise interactions. A slot is
read or rewritten when its U node interacts with its M partner; a cell is read
or set when the U nodes holding the tokens mark their partners and the marked
M nodes interact.
"""

import logging
import random
import time
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from netcon.analysis.runner import run_seeded
from netcon.core.configuration import Configuration
from netcon.core.engine import derive_seed
from netcon.exceptions import (
    BudgetExhaustedError,
    ConfigurationError,
    TapeExhaustedError,
    TMError,
)
from netcon.protocols.catalog import line_transformer
from netcon.tm.layout import (
    InteractionLog,
    LineLayout,
    Tokens,
    cell_address,
    cell_tokens,
    move_head,
    partition_line,
    slot_state,
    slot_symbols,
)
from netcon.tm.machine import TMDescription, check_inputs

logger = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 1_000_000

_BITS = ("0", "1")


class TMOutcome(str, Enum):
    """How a simulated machine ended."""

    ACCEPT = "accept"
    REJECT = "reject"
    TAPE_EXHAUSTED = "tape-exhausted"


class Simulator:
    """
    Owns a partitioned configuration, the head and the interaction log.

    Attributes:
        config: Configuration after partitioning; tape writes change it.
        layout: The U/M layout.
        position: Head position on the tape.
        tokens: Token positions on U while the head is on a cell.
        log: Every interaction issued so far.
    """

    def __init__(
        self,
        config: Configuration,
        layout: LineLayout,
        log: Optional[InteractionLog] = None,
    ):
        self.config = config
        self.layout = layout
        self.log = log if log is not None else InteractionLog(config.n, "simulator")
        self.position = 0
        self.tokens: Optional[Tokens] = None

    @classmethod
    def from_line(
        cls, config: Configuration, inputs: Optional[Sequence[str]] = None
    ) -> "Simulator":
        """Partition a halted line and load the inputs onto the tape."""
        log = InteractionLog(config.n, "simulator")
        partitioned, layout = partition_line(config, inputs, log)
        simulator = cls(partitioned, layout, log)
        simulator.load_inputs()
        return simulator

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def tape_length(self) -> int:
        return self.n + self.layout.cells

    def _u(self, position: int) -> int:
        """U node at a 1-based line position."""
        return self.layout.u_line[position - 1]

    def slot_owner(self, slot: int) -> int:
        """U node whose memory holds an input slot."""
        return self._u(self.u_index(slot))

    @property
    def slots(self) -> List[str]:
        """Input slots as stored in the U-node states, in tape order."""
        states = [self.config.state(u) for u in self.layout.u_line]
        return [symbol for state in states for symbol in slot_symbols(state)]

    def load_inputs(self) -> None:
        """
        Sort the input slots along U into canonical order.

        Neighboring U nodes merge their slots and split them back, lower symbols
        to the left; the leader repeats left-to-right passes until a pass
        changes nothing.
        """
        u_line = self.layout.u_line
        changed = True
        while changed:
            changed = False
            for left, right in zip(u_line, u_line[1:]):
                held = slot_symbols(self.config.state(left))
                merged = sorted(held + slot_symbols(self.config.state(right)))
                changed = changed or merged[:len(held)] != held
                self.log.interact(
                    self.config, left, right,
                    slot_state(merged[:len(held)]), slot_state(merged[len(held):]),
                    note="sort",
                )
        self.position = 0
        self.tokens = None

    def _slot_access(self, slot: int) -> Tuple[int, int, int]:
        """Owner of a slot, its M partner and the slot's index in the owner."""
        index = self.u_index(slot)
        return self._u(index), self.layout.matching[index - 1], slot - 2 * (index - 1)

    def read_slot(self, slot: int) -> str:
        """Read a slot: its owner looks it up while interacting with its partner."""
        owner, partner, offset = self._slot_access(slot)
        self.log.interact(self.config, owner, partner, note=f"read slot {slot}")
        return slot_symbols(self.config.state(owner))[offset]

    def write_slot(self, slot: int, symbol: str) -> None:
        """Rewrite a slot: the owner updates its state when it meets its partner."""
        owner, partner, offset = self._slot_access(slot)
        held = slot_symbols(self.config.state(owner))
        held[offset] = symbol
        try:
            state = slot_state(held)
        except ValueError as e:
            raise TMError(str(e)) from e
        self.log.interact(self.config, owner, partner, state,
                          note=f"write slot {slot}")

    def _partners(self, address: int) -> Tuple[int, int, int, int]:
        """Token holders and their partners for a cell."""
        if not 0 <= address < self.layout.cells:
            raise TMError(f"cell {address} outside 0..{self.layout.cells - 1}")
        i, j = cell_tokens(address)
        matching = self.layout.matching
        return self._u(i), self._u(j), matching[i - 1], matching[j - 1]

    def read_cell(self, address: int) -> int:
        """Read a cell: both partners are marked, interact, and report back."""
        ui, uj, mi, mj = self._partners(address)
        self.log.interact(self.config, ui, mi, None, "mr", note=f"mark read {address}")
        self.log.interact(self.config, uj, mj, None, "mr", note=f"mark read {address}")
        bit = self.log.interact(self.config, mi, mj, "m", "m", note=f"read {address}")
        self.log.interact(self.config, ui, mi, note=f"report {address}")
        self.log.interact(self.config, uj, mj, note=f"report {address}")
        return bit

    def write_cell(self, address: int, bit: int) -> None:
        """Write a cell: partners enter M+ or M- and commit when they interact."""
        if bit not in (0, 1):
            raise TMError(f"edge cells hold 0 or 1, got {bit!r}")
        ui, uj, mi, mj = self._partners(address)
        mark = "m+" if bit else "m-"
        self.log.interact(self.config, ui, mi, None, mark, note=f"mark write {address}")
        self.log.interact(self.config, uj, mj, None, mark, note=f"mark write {address}")
        self.log.interact(self.config, mi, mj, "m", "m", edge=bit,
                          note=f"write {address}")

    def read(self) -> str:
        """Symbol under the head."""
        if self.tokens is None:
            return self.read_slot(self.position)
        return _BITS[self.read_cell(cell_address(*self.tokens))]

    def write(self, symbol: str) -> None:
        """Write under the head; cells take only ``0`` and ``1``."""
        if self.tokens is None:
            if self.slots[self.position] != symbol:
                self.write_slot(self.position, symbol)
            return
        if symbol not in _BITS:
            raise TMError(f"cannot write {symbol!r} onto edge cell {self.tokens}")
        address = cell_address(*self.tokens)
        if self.config.edge(*self._partners(address)[2:]) != int(symbol):
            self.write_cell(address, int(symbol))

    def _pass_token(self, source: int, target: int) -> None:
        step = 1 if target > source else -1
        for k in range(source, target, step):
            self.log.interact(self.config, self._u(k), self._u(k + step), note="token")

    def u_index(self, slot: int) -> int:
        """1-based U position of a slot's owner."""
        return min(slot // 2, len(self.layout.u_line) - 1) + 1

    def move(self, direction: str) -> None:
        """
        Move the head one position.

        Raises:
            TapeExhaustedError: When the head would leave the tape.
        """
        if direction not in ("L", "R"):
            raise ValueError(f"direction must be L or R, got {direction!r}")
        if self.tokens is None:
            self._move_in_slots(direction)
        elif direction == "L" and self.tokens == (1, 2):
            self.tokens = None
            self.position = self.n - 1
            self._pass_token(1, self.u_index(self.position))
        else:
            i, j = self.tokens
            ni, nj = move_head(self.layout, self.tokens, direction)
            self._pass_token(i, ni)
            self._pass_token(j, nj)
            self.tokens = (ni, nj)
            self.position += 1 if direction == "R" else -1

    def _move_in_slots(self, direction: str) -> None:
        target = self.position + (1 if direction == "R" else -1)
        if target < 0:
            raise TapeExhaustedError("head moved left of the first input slot")
        if target < self.n:
            self._pass_token(self.u_index(self.position), self.u_index(target))
            self.position = target
            return
        if self.layout.cells == 0:
            raise TapeExhaustedError("no edge cells to the right of the input slots")
        self._pass_token(self.u_index(self.position), 1)
        self.log.interact(self.config, self._u(1), self._u(2), note="token")
        self.tokens = (1, 2)
        self.position = target


def read_cell(config: Configuration, layout: LineLayout, address: int) -> int:
    """Read one cell of a partitioned configuration through its partners."""
    return Simulator(config.copy(), layout).read_cell(address)


def write_cell(
    config: Configuration, layout: LineLayout, address: int, bit: int
) -> Configuration:
    """Return a copy of ``config`` with one cell set to ``bit``."""
    simulator = Simulator(config.copy(), layout)
    simulator.write_cell(address, bit)
    return simulator.config


class TMResult(BaseModel):
    """Outcome of a simulated machine."""

    outcome: TMOutcome
    steps: int
    final_state: str
    interactions: int


def run_tm(
    tm: TMDescription, simulator: Simulator, max_steps: int = DEFAULT_MAX_STEPS
) -> TMResult:
    """
    Run ``tm`` on the simulator's tape.

    A transition into a terminal state does not move the head. Leaving the
    tape is reported as ``tape-exhausted``, not raised.

    Raises:
        TMError: If the machine lacks the cell symbols or writes a non-bit
            onto a cell.
        BudgetExhaustedError: If the machine runs longer than ``max_steps``.
    """
    missing = [bit for bit in _BITS if bit not in tm.tape_alphabet]
    if missing:
        raise TMError(f"{tm.name}: tape alphabet lacks the cell symbols {missing}")
    state = tm.start
    steps = 0
    outcome: Optional[TMOutcome] = None
    while outcome is None:
        if state == tm.accept:
            outcome = TMOutcome.ACCEPT
            break
        if state == tm.reject:
            outcome = TMOutcome.REJECT
            break
        if steps >= max_steps:
            raise BudgetExhaustedError(
                f"{tm.name} ran more than {max_steps} steps", steps
            )
        state, written, move = tm.action(state, simulator.read())
        simulator.write(written)
        steps += 1
        if state in tm.terminal:
            continue
        try:
            simulator.move(move.value)
        except TapeExhaustedError as e:
            logger.debug("%s: %s after %d steps", tm.name, e, steps)
            outcome = TMOutcome.TAPE_EXHAUSTED
    logger.debug("%s: %s after %d steps", tm.name, outcome.value, steps)
    return TMResult(outcome=outcome, steps=steps, final_state=state,
                    interactions=len(simulator.log))


class PipelineResult(BaseModel):
    """Decision of the composed Line-Transformer, partition and machine run."""

    decision: TMOutcome
    line_steps: int
    partition_interactions: int
    tm_steps: int
    tm_interactions: int
    timings: Dict[str, float] = Field(default_factory=dict)


def compute_predicate_end_to_end(
    n: int,
    inputs: Sequence[str],
    tm: TMDescription,
    seed: int,
    family: str = "clique",
    budget: Optional[int] = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    **params: float,
) -> PipelineResult:
    """
    Construct a spanning line, partition it and decide a predicate on the inputs.

    Args:
        n: Population size.
        inputs: Input symbol of every node.
        tm: Machine deciding the predicate on the sorted input multiset.
        seed: Seed for the topology and the scheduler.
        family: Initial-topology family.
        budget: Step budget for Line-Transformer; the n^3 default when None.
        max_steps: Step limit for the machine.

    Returns:
        The decision with per-stage step counts and wall-clock timings.

    Raises:
        BudgetExhaustedError: If Line-Transformer does not halt within budget.
    """
    if len(inputs) != n:
        raise ConfigurationError(f"expected {n} inputs, got {len(inputs)}")
    check_inputs(tm, list(inputs))
    timings: Dict[str, float] = {}

    started = time.perf_counter()
    result = run_seeded(line_transformer(), n, family, seed, budget=budget,
                        labels=list(inputs), **params)
    timings["line_transformer"] = time.perf_counter() - started
    if result.report.steps is None:
        raise BudgetExhaustedError(
            f"line-transformer did not halt within {result.report.steps_taken} steps",
            result.report.steps_taken,
        )

    started = time.perf_counter()
    simulator = Simulator.from_line(result.final)
    partition_interactions = len(simulator.log)
    timings["partition"] = time.perf_counter() - started

    started = time.perf_counter()
    outcome = run_tm(tm, simulator, max_steps)
    timings["tm"] = time.perf_counter() - started
    logger.info("%s on n=%d (%s, seed %d): %s", tm.name, n, family, seed,
                outcome.outcome.value)
    return PipelineResult(
        decision=outcome.outcome,
        line_steps=result.report.steps,
        partition_interactions=partition_interactions,
        tm_steps=outcome.steps,
        tm_interactions=outcome.interactions - partition_interactions,
        timings=timings,
    )


def random_assignment(multiset: Dict[str, int], seed: int) -> List[str]:
    """Shuffle a symbol multiset into a per-node input assignment."""
    symbols = [
        symbol for symbol, count in sorted(multiset.items()) for _ in range(count)
    ]
    random.Random(derive_seed(seed, "inputs")).shuffle(symbols)
    return symbols

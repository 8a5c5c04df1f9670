"""Recorded schedules, their line format, and the scheduler that replays them."""

from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

from pydantic import BaseModel, Field, model_validator

from netcon.core.base import BaseScheduler
from netcon.core.types import InteractionEvent, ScheduledPair
from netcon.exceptions import TopologyError

_ROLE_TOKENS = {"keep": False, "swap": True}


class Schedule(BaseModel):
    """
    An ordered list of oriented pairs.

    ``provenance`` is ``random(seed=...)``, ``scripted`` or ``mimic(...)``.
    """

    n: int = Field(ge=1)
    pairs: List[ScheduledPair] = Field(default_factory=list)
    provenance: str = "scripted"
    # optional per-step applied-rule annotations, parallel to pairs
    annotations: List[str] = Field(default_factory=list)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _pairs_valid(self) -> "Schedule":
        for step, (u, v, _) in enumerate(self.pairs):
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"step {step}: invalid pair ({u}, {v}) for n={self.n}")
        return self

    @classmethod
    def from_events(
        cls, n: int, events: Iterable[InteractionEvent], provenance: str = "scripted"
    ) -> "Schedule":
        """Turn a trace into a schedule carrying roles and rule annotations."""
        pairs, notes = [], []
        for event in events:
            pairs.append(ScheduledPair(event.u, event.v, event.role))
            notes.append(str(event.rule) if event.rule is not None else "")
        return cls(n=n, pairs=pairs, provenance=provenance, annotations=notes)

    def __len__(self) -> int:
        return len(self.pairs)


class ScriptedScheduler(BaseScheduler):
    """Replays a Schedule, including its recorded roles, then stops."""

    name = "scripted"

    def __init__(self, schedule: Schedule, directed: bool = False):
        super().__init__(schedule.n, directed)
        self.schedule = schedule
        self._position = 0

    @property
    def provenance(self) -> str:
        return self.schedule.provenance

    @property
    def remaining(self) -> int:
        return len(self.schedule.pairs) - self._position

    def next_pair(self) -> Optional[ScheduledPair]:
        if self._position >= len(self.schedule.pairs):
            return None
        pair = self.schedule.pairs[self._position]
        self._position += 1
        return pair


def format_schedule(schedule: Schedule) -> str:
    """
    Render a schedule as ``step u v [keep|swap]`` lines.

    The header carries the provenance and n; applied rules follow ``#``.
    """
    lines = [f"# provenance={schedule.provenance}", f"# n={schedule.n}"]
    for step, (u, v, role) in enumerate(schedule.pairs):
        line = f"{step} {u} {v}"
        if role is not None:
            line += " swap" if role else " keep"
        note = schedule.annotations[step] if step < len(schedule.annotations) else ""
        if note:
            line += f"  # {note}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_schedule(text: str, n: Optional[int] = None) -> Schedule:
    """
    Parse the schedule line format.

    Args:
        text: Schedule text.
        n: Population size when the header does not state it.

    Raises:
        TopologyError: On malformed lines or invalid pairs.
    """
    provenance = "scripted"
    pairs: List[ScheduledPair] = []
    notes: List[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            key, _, value = stripped[1:].strip().partition("=")
            if key == "provenance":
                provenance = value
            elif key == "n" and n is None:
                n = int(value)
            continue
        body, _, note = stripped.partition("#")
        tokens = body.split()
        try:
            _, u, v = (int(t) for t in tokens[:3])
            role = _ROLE_TOKENS[tokens[3]] if len(tokens) > 3 else None
        except (ValueError, KeyError) as e:
            raise TopologyError(
                f"line {lineno}: malformed schedule entry {raw!r}"
            ) from e
        pairs.append(ScheduledPair(u, v, role))
        notes.append(note.strip())
    if n is None:
        n = max((max(u, v) for u, v, _ in pairs), default=0) + 1
    try:
        return Schedule(n=n, pairs=pairs, provenance=provenance, annotations=notes)
    except ValueError as e:
        raise TopologyError(str(e)) from e


def read_schedule(path: Union[str, Path], n: Optional[int] = None) -> Schedule:
    return parse_schedule(Path(path).read_text(), n)


def write_schedule(path: Union[str, Path], schedule: Schedule) -> None:
    Path(path).write_text(format_schedule(schedule))


def schedule_from_pairs(
    n: int, pairs: Sequence[Sequence[int]], provenance: str = "scripted"
) -> Schedule:
    """Convenience constructor from ``(u, v)`` or ``(u, v, role)`` sequences."""
    return Schedule(
        n=n,
        pairs=[ScheduledPair(*pair) for pair in pairs],
        provenance=provenance,
    )

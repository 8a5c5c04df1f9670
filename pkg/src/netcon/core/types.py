"""Type definitions for netcon.

Values created once per interaction (contexts, events, rules) are ``NamedTuple``s
so the simulation loop stays cheap; vocabularies are ``str, Enum``s.
"""

from enum import Enum, IntEnum
from typing import FrozenSet, NamedTuple, Optional, Tuple

NodeId = int
StateId = str


class EdgeState(IntEnum):
    """Binary state of an edge."""

    INACTIVE = 0
    ACTIVE = 1


class DegreeClass(str, Enum):
    """Active degree as seen by the degree-detection sensor."""

    D0 = "0"
    D1 = "1"
    D2 = "2"
    D3PLUS = "3+"

    @classmethod
    def of(cls, degree: int) -> "DegreeClass":
        """Classify an active degree."""
        return _BY_DEGREE[degree] if degree < 3 else cls.D3PLUS


_BY_DEGREE = (DegreeClass.D0, DegreeClass.D1, DegreeClass.D2)

ALL_DEGREE_CLASSES: FrozenSet[DegreeClass] = frozenset(DegreeClass)


class Sensor(str, Enum):
    """Local sensing capabilities a protocol may rely on."""

    DEG0 = "deg0"
    DEG1 = "deg1"
    DEG2 = "deg2"
    DEG3PLUS = "deg3+"
    CND = "cnd"

    @classmethod
    def for_class(cls, degree_class: DegreeClass) -> "Sensor":
        return cls("deg" + degree_class.value)


class Directedness(str, Enum):
    """Whether edges (and rule orientation) are undirected or directed."""

    UNDIRECTED = "undirected"
    DIRECTED = "directed"


class InteractionContext(NamedTuple):
    """What the two interacting nodes sense before the rule applies."""

    deg_u: DegreeClass
    deg_v: DegreeClass
    common_neighbor: int


class Guard(NamedTuple):
    """Optional sensor conditions on a rule's left-hand side.

    ``None`` in a slot means "match any".
    """

    deg_u: Optional[FrozenSet[DegreeClass]] = None
    deg_v: Optional[FrozenSet[DegreeClass]] = None
    cnd: Optional[int] = None

    def matches(self, deg_u: DegreeClass, deg_v: DegreeClass, cnd: int) -> bool:
        if self.deg_u is not None and deg_u not in self.deg_u:
            return False
        if self.deg_v is not None and deg_v not in self.deg_v:
            return False
        return self.cnd is None or self.cnd == cnd

    @property
    def is_empty(self) -> bool:
        return self.deg_u is None and self.deg_v is None and self.cnd is None

    def __str__(self) -> str:
        parts = []
        for label, classes in (("degU", self.deg_u), ("degV", self.deg_v)):
            if classes is None:
                continue
            if len(classes) == 1:
                parts.append(f"{label}={next(iter(classes)).value}")
            else:
                (missing,) = ALL_DEGREE_CLASSES - classes
                parts.append(f"{label}!={missing.value}")
        if self.cnd is not None:
            parts.append(f"cnd={self.cnd}")
        return "[" + ",".join(parts) + "]" if parts else ""


class Rule(NamedTuple):
    """A concrete transition ``(a, b, c) [guard] -> (a2, b2, c2)``."""

    a: StateId
    b: StateId
    c: int
    guard: Guard
    a2: StateId
    b2: StateId
    c2: int
    text: str = ""
    line: int = 0

    @property
    def effective(self) -> bool:
        return (self.a, self.b, self.c) != (self.a2, self.b2, self.c2)

    @property
    def lhs(self) -> Tuple[StateId, StateId, int]:
        return (self.a, self.b, self.c)

    @property
    def rhs(self) -> Tuple[StateId, StateId, int]:
        return (self.a2, self.b2, self.c2)

    def __str__(self) -> str:
        guard = f" {self.guard}" if not self.guard.is_empty else ""
        return f"{self.a} {self.b} {self.c}{guard} -> {self.a2} {self.b2} {self.c2}"


class InteractionEvent(NamedTuple):
    """Record of one scheduler selection.

    ``rule`` is ``None`` when no rule matched or the matched rule was ineffective.
    ``role`` is set only when equal left-hand states allowed two outcomes: ``True``
    means the responder ``v`` took the rule's first position.
    """

    step: int
    u: NodeId
    v: NodeId
    context: InteractionContext
    before: Tuple[StateId, StateId, int]
    after: Tuple[StateId, StateId, int]
    rule: Optional[Rule] = None
    role: Optional[bool] = None

    @property
    def edge_changed(self) -> Optional[Tuple[int, int]]:
        if self.before[2] == self.after[2]:
            return None
        return (self.before[2], self.after[2])

    @property
    def deactivated(self) -> bool:
        return self.before[2] == 1 and self.after[2] == 0


class ScheduledPair(NamedTuple):
    """An oriented pair chosen by a scheduler, with an optional forced role."""

    u: NodeId
    v: NodeId
    role: Optional[bool] = None


class Violation(NamedTuple):
    """A monitor finding attached to the step that caused it."""

    monitor: str
    step: int
    u: NodeId
    v: NodeId
    detail: str = ""

"""Plain-text rule format and the ProtocolSpec it loads into.

A rule file is a list of directives and transitions::

    @name star-transformer
    @states l p
    @initial l
    @sensors cnd
    l l * -> l p 1
    p p 1 [cnd=1] -> p p 0

Transitions read ``a b c [guard,...] -> a' b' c'``. ``*`` as the left-hand edge
matches both edge states and as the right-hand edge (or an omitted one) keeps the
edge unchanged. Guards are ``degU=K``, ``degU!=K``, ``degV=K``, ``degV!=K`` with
K in {0, 1, 2, 3+} and ``cnd=0|1``.

States may carry one bit, written ``name/0`` or ``name/1``. On the left-hand side
``name/*`` matches either bit and a single-letter variable such as ``name/x``
matches either bit and binds it for the right-hand side.
"""

import itertools
import logging
import re
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from netcon.core.types import (
    ALL_DEGREE_CLASSES,
    DegreeClass,
    Directedness,
    Guard,
    InteractionContext,
    Rule,
    Sensor,
    StateId,
)
from netcon.exceptions import ProtocolError, RuleParseError

logger = logging.getLogger(__name__)

LhsKey = Tuple[StateId, StateId, int]

_GUARD_RE = re.compile(r"\[([^\]]*)\]")
_GUARD_ITEM_RE = re.compile(r"^(degU|degV|cnd)\s*(!=|=)\s*(3\+|[0-3])$")
_VARIABLE_RE = re.compile(r"^[a-z]$")
_DIRECTIVES = (
    "name",
    "states",
    "initial",
    "leader",
    "halt",
    "output",
    "sensors",
    "directed",
)


class ProtocolSpec:
    """
    A network constructor: the finite rule set plus its metadata.

    Rules are indexed by their left-hand ``(a, b, c)`` so a lookup at interaction
    time touches only the candidates for the pair at hand. Construction validates
    the table; a spec that exists is well formed.
    """

    def __init__(
        self,
        name: str,
        states: Iterable[StateId],
        initial: StateId,
        rules: Sequence[Rule],
        leader: Optional[StateId] = None,
        output: Optional[Iterable[StateId]] = None,
        halting: Iterable[StateId] = (),
        sensors: Iterable[Sensor] = (),
        directedness: Directedness = Directedness.UNDIRECTED,
    ):
        """
        Build and validate a protocol.

        Args:
            name: Protocol identifier.
            states: The state set Q.
            initial: The initial state q0.
            rules: Concrete transitions (patterns already expanded).
            leader: Optional leader state l0.
            output: Output states; ``None`` means every state.
            halting: Halting states.
            sensors: Local sensors the guards may rely on.
            directedness: Whether edges and rule orientation are directed.

        Raises:
            ProtocolError: If the table is not well formed.
        """
        self.name = name
        self.states: FrozenSet[StateId] = frozenset(states)
        self.initial = initial
        self.leader = leader
        self.output: FrozenSet[StateId] = (
            frozenset(output) if output is not None else self.states
        )
        self.halting: FrozenSet[StateId] = frozenset(halting)
        self.sensors: FrozenSet[Sensor] = frozenset(sensors)
        self.directedness = directedness
        self.rules: Tuple[Rule, ...] = tuple(rules)

        self._by_lhs: Dict[LhsKey, Tuple[Rule, ...]] = {}
        grouped: Dict[LhsKey, List[Rule]] = {}
        for rule in self.rules:
            grouped.setdefault(rule.lhs, []).append(rule)
        self._by_lhs = {key: tuple(group) for key, group in grouped.items()}

        self._validate()

    @property
    def directed(self) -> bool:
        return self.directedness is Directedness.DIRECTED

    @property
    def uses_cnd(self) -> bool:
        return Sensor.CND in self.sensors

    def has_lhs(self, a: StateId, b: StateId, c: int) -> bool:
        return (a, b, c) in self._by_lhs

    def match(
        self, a: StateId, b: StateId, c: int, context: InteractionContext
    ) -> Optional[Rule]:
        """
        Find the rule for ``(a, b, c)`` in written orientation.

        Args:
            a: State of the node in the rule's first position.
            b: State of the node in the rule's second position.
            c: Edge state.
            context: Sensor readings, ``deg_u`` belonging to the first position.

        Returns:
            The matching rule, or None.
        """
        candidates = self._by_lhs.get((a, b, c))
        if not candidates:
            return None
        for rule in candidates:
            guard = rule.guard
            if guard.matches(context.deg_u, context.deg_v, context.common_neighbor):
                return rule
        return None

    def to_text(self) -> str:
        """Render the protocol in the rule format with every pattern expanded."""
        lines = [f"@name {self.name}", "@states " + " ".join(sorted(self.states))]
        lines.append(f"@initial {self.initial}")
        if self.leader is not None:
            lines.append(f"@leader {self.leader}")
        if self.halting:
            lines.append("@halt " + " ".join(sorted(self.halting)))
        if self.output != self.states:
            lines.append("@output " + " ".join(sorted(self.output)))
        if self.sensors:
            lines.append("@sensors " + " ".join(sorted(s.value for s in self.sensors)))
        if self.directed:
            lines.append("@directed")
        lines.extend(str(rule) for rule in self.rules)
        return "\n".join(lines) + "\n"

    def _validate(self) -> None:
        def fail(message: str) -> None:
            raise ProtocolError(self.name, message)

        if self.initial not in self.states:
            fail(f"initial state {self.initial!r} not in Q")
        if self.leader is not None and self.leader not in self.states:
            fail(f"leader state {self.leader!r} not in Q")
        for label, subset in (("output", self.output), ("halting", self.halting)):
            unknown = subset - self.states
            if unknown:
                fail(f"{label} states {sorted(unknown)} not in Q")

        for rule in self.rules:
            for state in (rule.a, rule.b, rule.a2, rule.b2):
                if state not in self.states:
                    fail(f"rule {rule} (line {rule.line}) uses unknown state {state!r}")
            self._check_sensors(rule)
            if rule.effective and (rule.a in self.halting or rule.b in self.halting):
                fail(f"halting state has an effective rule: {rule}")

        self._check_unambiguous()

    def _check_sensors(self, rule: Rule) -> None:
        for classes in (rule.guard.deg_u, rule.guard.deg_v):
            if classes is None:
                continue
            tested = classes if len(classes) == 1 else ALL_DEGREE_CLASSES - classes
            for degree_class in tested:
                if Sensor.for_class(degree_class) not in self.sensors:
                    raise ProtocolError(
                        self.name,
                        f"rule {rule} needs sensor "
                        f"{Sensor.for_class(degree_class).value}",
                    )
        if rule.guard.cnd is not None and Sensor.CND not in self.sensors:
            raise ProtocolError(self.name, f"rule {rule} needs sensor cnd")

    def _check_unambiguous(self) -> None:
        """Every concrete (a, b, c, context) may match at most one rule."""
        contexts = [
            InteractionContext(du, dv, cnd)
            for du in DegreeClass
            for dv in DegreeClass
            for cnd in (0, 1)
        ]
        for a, b, c in self._by_lhs:
            for ctx in contexts:
                found = {
                    rule
                    for rule in self._by_lhs[(a, b, c)]
                    if rule.guard.matches(ctx.deg_u, ctx.deg_v, ctx.common_neighbor)
                }
                if not self.directed:
                    swapped = InteractionContext(
                        ctx.deg_v, ctx.deg_u, ctx.common_neighbor
                    )
                    for rule in self._by_lhs.get((b, a, c), ()):
                        if rule.guard.matches(
                            swapped.deg_u, swapped.deg_v, swapped.common_neighbor
                        ):
                            found.add(rule)
                if len(found) > 1:
                    listed = "; ".join(sorted(str(r) for r in found))
                    raise ProtocolError(
                        self.name,
                        f"ambiguous rules for ({a}, {b}, {c}) under "
                        f"degU={ctx.deg_u.value},degV={ctx.deg_v.value},"
                        f"cnd={ctx.common_neighbor}: {listed}",
                    )

    def __repr__(self) -> str:
        return (
            f"ProtocolSpec(name={self.name!r}, states={len(self.states)}, "
            f"rules={len(self.rules)}, directed={self.directed})"
        )


def parse_guard(text: str, protocol: str = "?", line: Optional[int] = None) -> Guard:
    """
    Parse the inside of a ``[...]`` guard.

    Raises:
        RuleParseError: On an unknown or repeated guard item.
    """
    deg_u: Optional[FrozenSet[DegreeClass]] = None
    deg_v: Optional[FrozenSet[DegreeClass]] = None
    cnd: Optional[int] = None
    for item in filter(None, (part.strip() for part in text.split(","))):
        m = _GUARD_ITEM_RE.match(item)
        if m is None:
            raise RuleParseError(protocol, f"bad guard item {item!r}", line)
        sensor, op, value = m.groups()
        if sensor == "cnd":
            if op != "=" or value not in ("0", "1") or cnd is not None:
                raise RuleParseError(protocol, f"bad guard item {item!r}", line)
            cnd = int(value)
            continue
        degree_class = DegreeClass(value)
        classes = (
            frozenset({degree_class})
            if op == "="
            else ALL_DEGREE_CLASSES - {degree_class}
        )
        if sensor == "degU":
            if deg_u is not None:
                raise RuleParseError(protocol, f"repeated guard {sensor}", line)
            deg_u = classes
        else:
            if deg_v is not None:
                raise RuleParseError(protocol, f"repeated guard {sensor}", line)
            deg_v = classes
    return Guard(deg_u, deg_v, cnd)


def _expand_state_pattern(token: str) -> List[str]:
    """Expand a ``@states`` entry such as ``l/*`` into concrete state names."""
    if "/" not in token:
        return [token]
    base, bit = token.rsplit("/", 1)
    if bit == "*":
        return [f"{base}/0", f"{base}/1"]
    return [token]


def _lhs_choices(token: str) -> Tuple[str, Optional[str], List[str]]:
    """Return (base, variable, bit choices) for a left-hand state token."""
    if "/" not in token:
        return token, None, [""]
    base, bit = token.rsplit("/", 1)
    if bit in ("0", "1"):
        return base, None, [bit]
    if bit == "*":
        return base, None, ["0", "1"]
    if _VARIABLE_RE.match(bit):
        return base, bit, ["0", "1"]
    raise ValueError(f"bad state bit {bit!r} in {token!r}")


def _rhs_state(token: str, bindings: Dict[str, str]) -> str:
    if "/" not in token:
        return token
    base, bit = token.rsplit("/", 1)
    if bit in ("0", "1"):
        return token
    if bit in bindings:
        return f"{base}/{bindings[bit]}"
    raise ValueError(f"unbound or wildcard bit {bit!r} in right-hand state {token!r}")


def _edge_choices(token: str) -> List[int]:
    if token == "*":
        return [0, 1]
    if token in ("0", "1"):
        return [int(token)]
    raise ValueError(f"bad edge state {token!r}")


def expand_rule(text: str, protocol: str = "?", line: int = 0) -> Iterator[Rule]:
    """
    Expand one transition line into concrete rules.

    Raises:
        RuleParseError: If the line is not a well-formed transition.
    """
    if text.count("->") != 1:
        raise RuleParseError(protocol, "expected exactly one '->'", line)
    lhs_text, rhs_text = (part.strip() for part in text.split("->"))

    guard = Guard()
    guards = _GUARD_RE.findall(lhs_text)
    if len(guards) > 1:
        raise RuleParseError(protocol, "more than one guard", line)
    if guards:
        guard = parse_guard(guards[0], protocol, line)
        lhs_text = _GUARD_RE.sub(" ", lhs_text)

    lhs = lhs_text.split()
    rhs = rhs_text.split()
    if len(lhs) != 3 or len(rhs) not in (2, 3):
        raise RuleParseError(protocol, "expected 'a b c [guard] -> a' b' [c']'", line)
    rhs_edge = rhs[2] if len(rhs) == 3 else "*"

    try:
        base_a, var_a, bits_a = _lhs_choices(lhs[0])
        base_b, var_b, bits_b = _lhs_choices(lhs[1])
        edges = _edge_choices(lhs[2])
        if rhs_edge not in ("*", "0", "1"):
            raise ValueError(f"bad edge state {rhs_edge!r}")
        for bit_a, bit_b, c in itertools.product(bits_a, bits_b, edges):
            bindings: Dict[str, str] = {}
            if var_a is not None:
                bindings[var_a] = bit_a
            if var_b is not None:
                if var_b in bindings and bindings[var_b] != bit_b:
                    continue
                bindings[var_b] = bit_b
            a = f"{base_a}/{bit_a}" if bit_a else base_a
            b = f"{base_b}/{bit_b}" if bit_b else base_b
            c2 = c if rhs_edge == "*" else int(rhs_edge)
            yield Rule(
                a,
                b,
                c,
                guard,
                _rhs_state(rhs[0], bindings),
                _rhs_state(rhs[1], bindings),
                c2,
                text.strip(),
                line,
            )
    except ValueError as e:
        raise RuleParseError(protocol, str(e), line) from e


def parse_rules(text: str, name: Optional[str] = None) -> ProtocolSpec:
    """
    Parse a rule file into a ProtocolSpec.

    Args:
        text: File contents.
        name: Fallback name when the file has no ``@name`` directive.

    Returns:
        The validated ProtocolSpec.

    Raises:
        RuleParseError: On a malformed line or missing directive.
        ProtocolError: If the resulting table is not well formed.
    """
    protocol = name or "?"
    directives: Dict[str, List[str]] = {}
    rules: List[Rule] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("@"):
            head, _, rest = body[1:].partition(" ")
            if head not in _DIRECTIVES:
                raise RuleParseError(protocol, f"unknown directive @{head}", lineno)
            if head in directives:
                raise RuleParseError(protocol, f"repeated directive @{head}", lineno)
            directives[head] = rest.split()
            if head == "name" and directives[head]:
                protocol = directives[head][0]
            continue
        rules.extend(expand_rule(body, protocol, lineno))

    for required in ("states", "initial"):
        if not directives.get(required):
            raise RuleParseError(protocol, f"missing @{required}")

    states = [s for token in directives["states"] for s in _expand_state_pattern(token)]
    output = None
    if "output" in directives and directives["output"] != ["*"]:
        output = [s for t in directives["output"] for s in _expand_state_pattern(t)]
    try:
        sensors = [Sensor(token) for token in directives.get("sensors", [])]
    except ValueError as e:
        raise RuleParseError(protocol, str(e)) from e

    spec = ProtocolSpec(
        name=protocol,
        states=states,
        initial=directives["initial"][0],
        rules=rules,
        leader=(directives.get("leader") or [None])[0],
        output=output,
        halting=[
            s for t in directives.get("halt", []) for s in _expand_state_pattern(t)
        ],
        sensors=sensors,
        directedness=(
            Directedness.DIRECTED if "directed" in directives
            else Directedness.UNDIRECTED
        ),
    )
    logger.debug("Loaded %r with %d concrete rules", spec, len(spec.rules))
    return spec

"""Alternating Turing machines: states, rules, configurations and one-step yield.

Tapes are right-infinite. A tape is stored as the written cells left of the
head, the scanned symbol, and the cells right of the head with trailing
blanks dropped, so configurations are finite, hashable and canonical.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Union

__all__ = [
    "StateKind",
    "Move",
    "Write",
    "Action",
    "TransitionRule",
    "Machine",
    "Tape",
    "Configuration",
    "ValidationReport",
    "InputError",
    "validate_machine",
    "initial_config",
    "successors",
    "canonicalize",
    "classify_config",
]


class InputError(ValueError):
    """An input string uses a symbol outside the input alphabet."""


class StateKind(enum.Enum):
    EXISTENTIAL = "existential"
    UNIVERSAL = "universal"

    @property
    def opposite(self) -> "StateKind":
        if self is StateKind.EXISTENTIAL:
            return StateKind.UNIVERSAL
        return StateKind.EXISTENTIAL


class Move(enum.Enum):
    LEFT = "-"
    RIGHT = "+"


@dataclass(frozen=True)
class Write:
    symbol: str


Action = Union[Move, Write]


@dataclass(frozen=True)
class TransitionRule:
    """``source`` reading ``reads`` (one symbol per tape) performs ``acts`` and enters ``target``."""

    source: str
    reads: tuple[str, ...]
    acts: tuple[Action, ...]
    target: str

    def __post_init__(self):
        object.__setattr__(self, "reads", tuple(self.reads))
        object.__setattr__(self, "acts", tuple(self.acts))


@dataclass(frozen=True)
class Machine:
    """An ATM over ``t >= 1`` tapes.

    Rule order is significant: it fixes the order of successors. The alphabets
    are ordered tuples; the input-alphabet order is what the hierarchy
    compilers use for lexicographic enumeration.
    """

    input_alphabet: tuple[str, ...]
    tape_alphabet: tuple[str, ...]
    states: Mapping[str, StateKind]
    start: str
    rules: tuple[TransitionRule, ...] = ()
    blank: str = "_"
    tapes: int = 1
    name: str = field(default="M", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "input_alphabet", tuple(self.input_alphabet))
        object.__setattr__(self, "tape_alphabet", tuple(self.tape_alphabet))
        object.__setattr__(self, "states", dict(self.states))
        object.__setattr__(self, "rules", tuple(self.rules))

    def kind(self, state: str) -> StateKind:
        return self.states[state]

    @cached_property
    def rule_index(self) -> dict[tuple[str, tuple[str, ...]], tuple[tuple[int, TransitionRule], ...]]:
        index: dict[tuple[str, tuple[str, ...]], list[tuple[int, TransitionRule]]] = {}
        for i, rule in enumerate(self.rules):
            index.setdefault((rule.source, rule.reads), []).append((i, rule))
        return {key: tuple(val) for key, val in index.items()}

    def existential_states(self) -> list[str]:
        return [q for q, k in self.states.items() if k is StateKind.EXISTENTIAL]

    def universal_states(self) -> list[str]:
        return [q for q, k in self.states.items() if k is StateKind.UNIVERSAL]

    def replace(self, **changes) -> "Machine":
        values = dict(
            input_alphabet=self.input_alphabet,
            tape_alphabet=self.tape_alphabet,
            states=self.states,
            start=self.start,
            rules=self.rules,
            blank=self.blank,
            tapes=self.tapes,
            name=self.name,
        )
        values.update(changes)
        return Machine(**values)


# Stack cells are hash-consed so that equal stacks are usually the same object
# and comparing them stops at once. Each entry keeps its cell (and through it
# the keyed stack) alive, so ids in the keys cannot be reused. Clearing the
# table is always safe: equality falls back to a structural walk.
_CELLS: dict = {}
_CELLS_LIMIT = 1_000_000


def _push(stack, sym):
    key = (sym, id(stack))
    cell = _CELLS.get(key)
    if cell is None:
        if len(_CELLS) >= _CELLS_LIMIT:
            _CELLS.clear()
        cell = _CELLS[key] = (sym, stack, hash((sym, stack[2] if stack else 0)))
    return cell


def _stack_from(cells) -> tuple | None:
    # first element of `cells` ends up on top
    stack = None
    for sym in reversed(tuple(cells)):
        stack = _push(stack, sym)
    return stack


def _stack_items(stack) -> tuple[str, ...]:
    out = []
    while stack:
        out.append(stack[0])
        stack = stack[1]
    return tuple(out)


def _stack_eq(a, b) -> bool:
    while a is not b:
        if a is None or b is None or a[2] != b[2] or a[0] != b[0]:
            return False
        a, b = a[1], b[1]
    return True


class Tape:
    """One right-infinite tape: cells left of the head, the scanned symbol, cells right of it.

    Both sides are persistent stacks with the cell next to the head on top,
    so a step costs O(1) and hashing is cached. Stepping a canonical tape
    (no trailing blanks on the right) always gives a canonical tape.
    """

    __slots__ = ("_left", "head", "_right", "_hash")

    def __init__(self, left=(), head: str = "_", right=()):
        self._set(_stack_from(reversed(tuple(left))), head, _stack_from(right))

    def _set(self, lstack, head, rstack):
        self._left, self.head, self._right = lstack, head, rstack
        self._hash = hash((lstack[2] if lstack else 0, head, rstack[2] if rstack else 0))

    @classmethod
    def _raw(cls, lstack, head, rstack) -> "Tape":
        t = cls.__new__(cls)
        t._set(lstack, head, rstack)
        return t

    @property
    def left(self) -> tuple[str, ...]:
        return _stack_items(self._left)[::-1]

    @property
    def right(self) -> tuple[str, ...]:
        return _stack_items(self._right)

    @property
    def position(self) -> int:
        n, s = 0, self._left
        while s:
            n, s = n + 1, s[1]
        return n

    def cells(self) -> tuple[str, ...]:
        return self.left + (self.head,) + self.right

    def __iter__(self):
        return iter((self.left, self.head, self.right))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Tape):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.head == other.head
            and _stack_eq(self._left, other._left)
            and _stack_eq(self._right, other._right)
        )

    def __repr__(self) -> str:
        return f"Tape({self.left!r}, {self.head!r}, {self.right!r})"


class Configuration(NamedTuple):
    state: str
    tapes: tuple[Tape, ...]

    def __str__(self) -> str:
        parts = []
        for tape in self.tapes:
            parts.append("".join(tape.left) + "[" + tape.head + "]" + "".join(tape.right))
        return f"({self.state}, {' | '.join(parts)})"


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_machine(m: Machine) -> ValidationReport:
    """Check well-formedness. Violations are returned, never raised."""
    report = ValidationReport()
    gamma = set(m.tape_alphabet)
    if m.tapes < 1:
        report.violations.append(f"tape count must be >= 1, got {m.tapes}")
    if len(gamma) != len(m.tape_alphabet):
        report.violations.append("duplicate symbol in tape alphabet")
    if len(set(m.input_alphabet)) != len(m.input_alphabet):
        report.violations.append("duplicate symbol in input alphabet")
    if m.blank in m.input_alphabet:
        report.violations.append("blank in input alphabet")
    if m.blank not in gamma:
        report.violations.append("blank not in tape alphabet")
    for a in m.input_alphabet:
        if a not in gamma:
            report.violations.append(f"input symbol {a!r} not in tape alphabet")
    for q, k in m.states.items():
        if not q:
            report.violations.append("empty state name")
        if not isinstance(k, StateKind):
            report.violations.append(f"state {q!r} has no kind")
    if m.start not in m.states:
        report.violations.append(f"unknown start state {m.start!r}")

    used: set[str] = set()
    for i, rule in enumerate(m.rules):
        where = f"rule {i} ({rule.source} -> {rule.target})"
        if rule.source not in m.states:
            report.violations.append(f"{where}: undeclared state {rule.source!r}")
        if rule.target not in m.states:
            report.violations.append(f"{where}: undeclared state {rule.target!r}")
        if len(rule.reads) != m.tapes or len(rule.acts) != m.tapes:
            report.violations.append(f"{where}: expected {m.tapes} reads/actions")
        for s in rule.reads:
            used.add(s)
            if s not in gamma:
                report.violations.append(f"{where}: read symbol {s!r} not in tape alphabet")
        for act in rule.acts:
            if isinstance(act, Write):
                used.add(act.symbol)
                if act.symbol not in gamma:
                    report.violations.append(f"{where}: written symbol {act.symbol!r} not in tape alphabet")
            elif not isinstance(act, Move):
                report.violations.append(f"{where}: bad action {act!r}")

    unused = [s for s in m.tape_alphabet if s not in used and s != m.blank and s not in m.input_alphabet]
    if unused:
        report.warnings.append(f"tape symbols never used by rules: {unused}")
    return report


def initial_config(m: Machine, w: Iterable[str]) -> Configuration:
    """Start state, first head on the blank cell 0 with ``w`` to its right."""
    word = tuple(w)
    sigma = set(m.input_alphabet)
    for i, s in enumerate(word):
        if s not in sigma:
            raise InputError(f"input symbol {s!r} at position {i} is not in the input alphabet")
    empty = Tape((), m.blank, ())
    first = Tape((), m.blank, word)
    return Configuration(m.start, (first,) + (empty,) * (m.tapes - 1))


def canonicalize(c: Configuration, blank: str = "_") -> Configuration:
    """Drop trailing blanks to the right of every head (left cells are real and kept)."""
    tapes = []
    for t in c.tapes:
        right = t.right
        end = len(right)
        while end and right[end - 1] == blank:
            end -= 1
        tapes.append(t if end == len(right) else Tape(t.left, t.head, right[:end]))
    return Configuration(c.state, tuple(tapes))


def _act(tape: Tape, act: Action, blank: str) -> Tape:
    left, head, right = tape._left, tape.head, tape._right
    if act is Move.RIGHT:
        if right:
            return Tape._raw(_push(left, head), right[0], right[1])
        return Tape._raw(_push(left, head), blank, None)
    if act is Move.LEFT:
        if not left:
            return tape
        if right or head != blank:
            return Tape._raw(left[1], left[0], _push(right, head))
        return Tape._raw(left[1], left[0], None)
    if act.symbol == head:
        return tape
    return Tape._raw(left, act.symbol, right)


def successors(m: Machine, c: Configuration) -> list[tuple[int, Configuration]]:
    """Every configuration ``c`` yields in one step, paired with the rule index, in rule order."""
    tapes = c.tapes
    blank = m.blank
    new_config = tuple.__new__
    if len(tapes) == 1:
        tape = tapes[0]
        matched = m.rule_index.get((c.state, (tape.head,)))
        if not matched:
            return []
        return [(i, new_config(Configuration, (r.target, (_act(tape, r.acts[0], blank),)))) for i, r in matched]
    matched = m.rule_index.get((c.state, tuple(t.head for t in tapes)))
    if not matched:
        return []
    out = []
    for i, rule in matched:
        new = tuple(_act(t, a, blank) for t, a in zip(tapes, rule.acts))
        out.append((i, new_config(Configuration, (rule.target, new))))
    return out


def classify_config(m: Machine, c: Configuration) -> tuple[StateKind, bool]:
    """Kind of ``c`` and whether it is a dead end (universal dead ends accept, existential ones reject)."""
    reads = tuple(t.head for t in c.tapes)
    return m.kind(c.state), (c.state, reads) not in m.rule_index


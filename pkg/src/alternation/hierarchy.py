"""Quantifier prefixes compiled into alternating machines, and level classification.

Compiled machines use one tape laid out as ``_ w # s1 # s2 ... # sN``: the
blank cell 0, the input, then one ``#``-separated segment per quantified
variable. Existential blocks guess their segments symbol by symbol;
universal blocks enumerate them. The matrix acceptor always starts on cell 0.

Universal blocks enumerate one counter string over ``input symbols + '#'``
in length-then-alphabetical order and keep only strings with exactly
``r - 1`` separators, so every ``r``-tuple of strings is visited.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .machine import Configuration, Machine, Move, StateKind, Tape, TransitionRule, Write, initial_config, successors
from .semantics import Budget, build_pivot_graph, longest_pivot_path

__all__ = [
    "Quantifier",
    "MatrixAcceptor",
    "FormulaSpec",
    "LevelReport",
    "CompileError",
    "classify_level",
    "compile_sigma1",
    "compile_pi1",
    "compile_prefix",
    "compile_pi11",
    "run_matrix",
    "SEPARATOR",
]

E = StateKind.EXISTENTIAL
U = StateKind.UNIVERSAL
R, L = Move.RIGHT, Move.LEFT
SEPARATOR = "#"


class CompileError(ValueError):
    pass


class Quantifier(enum.Enum):
    EXISTS = "exists"
    FORALL = "forall"


@dataclass(frozen=True)
class MatrixAcceptor:
    """A deterministic single-tape checker over ``_ w # s1 ... # s_arity``.

    It accepts by reaching ``accept_halt`` and rejects by reaching
    ``reject_halt`` (or any other dead end). It must halt within
    ``step_bound`` steps on well-formed tapes.
    """

    machine: Machine
    accept_halt: str
    reject_halt: str
    arity: int
    step_bound: int = 10_000

    def check(self) -> list[str]:
        m = self.machine
        problems = []
        if m.tapes != 1:
            problems.append("matrix must be single-tape")
        for q in (self.accept_halt, self.reject_halt):
            if q not in m.states:
                problems.append(f"halt state {q!r} not declared")
            elif any(r.source == q for r in m.rules):
                problems.append(f"halt state {q!r} has outgoing rules")
        if self.arity < 0:
            problems.append("arity must be >= 0")
        seen = set()
        for r in m.rules:
            key = (r.source, r.reads)
            if key in seen:
                problems.append(f"nondeterministic: state {r.source!r} reading {r.reads}")
            seen.add(key)
        return problems


@dataclass(frozen=True)
class FormulaSpec:
    blocks: tuple[tuple[Quantifier, int], ...]
    matrix: MatrixAcceptor

    def __post_init__(self):
        object.__setattr__(
            self, "blocks", tuple((Quantifier(q) if not isinstance(q, Quantifier) else q, n) for q, n in self.blocks)
        )

    def check(self) -> list[str]:
        problems = []
        if not self.blocks:
            problems.append("at least one quantifier block is required")
        for i, (q, n) in enumerate(self.blocks):
            if n < 1:
                problems.append(f"block {i} binds no variables")
            if i and self.blocks[i - 1][0] is q:
                problems.append(f"blocks {i - 1} and {i} do not alternate")
        total = sum(n for _, n in self.blocks)
        if total != self.matrix.arity:
            problems.append(f"matrix arity {self.matrix.arity} != {total} bound variables")
        return problems + self.matrix.check()


@dataclass(frozen=True)
class LevelReport:
    start_kind: StateKind
    max_pivots: int | None  # over the explored graph; None when a pivot cycle exists
    exhaustive: bool
    claimed_level: str | None

    @property
    def prefix(self) -> str:
        return "Σ" if self.start_kind is E else "Π"


def classify_level(m: Machine, w, b: Budget = Budget()) -> LevelReport:
    """Count alternation pivots along branches of the bounded computation for ``w``.

    A level such as ``Σ1`` is only claimed when exploration finished within
    budget and no pivot cycle was found.
    """
    g = build_pivot_graph(m, initial_config(m, w), b)
    depth = longest_pivot_path(g)
    kind = m.kind(m.start)
    exhaustive = g.fully_explored and depth is not None
    prefix = "Σ" if kind is E else "Π"
    return LevelReport(kind, depth, exhaustive, f"{prefix}{depth}" if exhaustive else None)


def run_matrix(matrix: MatrixAcceptor, w: str, segments: Sequence[str]) -> bool | None:
    """Run the matrix deterministically on ``_ w # s1 ... # sk``; ``None`` if it exceeds its step bound."""
    m = matrix.machine
    cells = tuple(w)
    for s in segments:
        cells += (SEPARATOR,) + tuple(s)
    c = Configuration(m.start, (Tape((), m.blank, cells),))
    for _ in range(matrix.step_bound + 1):
        if c.state == matrix.accept_halt:
            return True
        nxt = successors(m, c)
        if not nxt:
            return False
        c = nxt[0][1]
    return None


class _Builder:
    """Accumulates namespaced states and rules for a compiled machine."""

    def __init__(self, sigma: tuple[str, ...], gamma: tuple[str, ...], blank: str):
        self.sigma, self.gamma, self.blank = sigma, gamma, blank
        self.states: dict[str, StateKind] = {}
        self.rules: list[TransitionRule] = []

    def state(self, name: str, kind: StateKind) -> str:
        if name in self.states:
            raise CompileError(f"state {name!r} defined twice")
        self.states[name] = kind
        return name

    def rule(self, src: str, read: str, act, dst: str) -> None:
        if isinstance(act, str):
            act = Write(act)
        self.rules.append(TransitionRule(src, (read,), (act,), dst))

    def keep(self, src: str, read: str, dst: str) -> None:
        self.rule(src, read, Write(read), dst)

    def nonblank(self) -> list[str]:
        return [g for g in self.gamma if g != self.blank]

    def seek_end(self, prefix: str, kind: StateKind) -> tuple[str, str]:
        """From cell 0 move to the first blank after the content. Returns (entry, at_end)."""
        entry = self.state(f"{prefix}.home", kind)
        scan = self.state(f"{prefix}.scan", kind)
        self.rule(entry, self.blank, R, scan)
        for g in self.nonblank():
            self.rule(scan, g, R, scan)
        return entry, scan

    def rewind(self, prefix: str, kind: StateKind, target: str, from_end: bool) -> str:
        """Return to cell 0 and hand over to ``target``.

        ``from_end``: the head is on the blank just after the content, so it
        first steps left once.
        """
        scan = self.state(f"{prefix}.back", kind)
        for g in self.nonblank():
            self.rule(scan, g, L, scan)
        self.keep(scan, self.blank, target)
        if not from_end:
            return scan
        entry = self.state(f"{prefix}.back0", kind)
        self.rule(entry, self.blank, L, scan)
        return entry

    def skip_separators(self, prefix: str, kind: StateKind, count: int, target: str) -> str:
        """From cell 0 move just past the ``count``-th separator, then enter ``target``."""
        cur = self.state(f"{prefix}.sep0", kind)
        entry = cur
        self.rule(cur, self.blank, R, f"{prefix}.sep0.r")
        cur = self.state(f"{prefix}.sep0.r", kind)
        for i in range(count):
            nxt = target if i == count - 1 else self.state(f"{prefix}.sep{i + 1}", kind)
            for g in self.nonblank():
                if g == SEPARATOR:
                    self.rule(cur, g, R, nxt)
                else:
                    self.rule(cur, g, R, cur)
            cur = nxt
        return entry


def _fresh_symbol(candidates: str, taken) -> str:
    for ch in candidates:
        if ch not in taken:
            return ch
    raise CompileError("no fresh marker symbol available")


def _alphabets(matrix: MatrixAcceptor, extra: Sequence[str] = ()) -> tuple[tuple[str, ...], tuple[str, ...]]:
    m = matrix.machine
    gamma = list(m.tape_alphabet)
    for s in (SEPARATOR, *extra):
        if s not in gamma:
            gamma.append(s)
    if SEPARATOR in m.input_alphabet:
        raise CompileError(f"{SEPARATOR!r} is reserved as the segment separator")
    return m.input_alphabet, tuple(gamma)


def _embed_matrix(b: _Builder, matrix: MatrixAcceptor, kind: StateKind) -> str:
    """Copy the matrix in with its working states typed ``kind``; returns its start state.

    As an existential phase the checker accepts by stepping into its
    universal accept halt (one pivot) and rejects at existential dead ends.
    As a universal phase every missing move is routed to the existential
    reject halt, so acceptance still means reaching the accept halt.
    """
    m = matrix.machine
    name = {q: f"M.{q}" for q in m.states}
    for q in m.states:
        if q == matrix.accept_halt:
            b.state(name[q], U)
        elif q == matrix.reject_halt:
            b.state(name[q], E)
        else:
            b.state(name[q], kind)
    defined = set()
    for r in m.rules:
        b.rules.append(TransitionRule(name[r.source], r.reads, r.acts, name[r.target]))
        defined.add((r.source, r.reads[0]))
    if kind is U:
        for q in m.states:
            if q in (matrix.accept_halt, matrix.reject_halt):
                continue
            for g in b.gamma:
                if (q, g) not in defined:
                    b.keep(name[q], g, name[matrix.reject_halt])
    return name[m.start]


def _exists_block(b: _Builder, prefix: str, count: int, target: str) -> str:
    """Existentially guess ``count`` segments after the content, then rewind into ``target``."""
    entry, at_end = b.seek_end(prefix, E)
    back = b.rewind(prefix, E, target, from_end=True)
    cur = at_end
    for i in range(count):
        sep = b.state(f"{prefix}.g{i}.sep", E)
        guess = b.state(f"{prefix}.g{i}", E)
        b.rule(cur, b.blank, SEPARATOR, sep)
        b.rule(sep, SEPARATOR, R, guess)
        for a in b.sigma:
            wrote = b.state(f"{prefix}.g{i}.{a}", E)
            b.rule(guess, b.blank, a, wrote)
            b.rule(wrote, a, R, guess)
        if i == count - 1:
            b.keep(guess, b.blank, back)
        else:
            cur = guess
    return entry


def _forall_block(b: _Builder, prefix: str, count: int, before: int, target: str) -> str:
    """Universally enumerate ``count`` segments; every tuple branches into ``target``.

    ``before`` is the number of separators on the tape ahead of this
    block's own leading separator.
    """
    digits = list(b.sigma) + [SEPARATOR]
    first, last = digits[0], digits[-1]
    succ = {d: digits[i + 1] for i, d in enumerate(digits[:-1])}
    ident = b.nonblank()

    entry, at_end = b.seek_end(prefix, U)
    hub = b.state(f"{prefix}.hub", U)
    opened = b.state(f"{prefix}.open", U)
    b.rule(at_end, b.blank, SEPARATOR, opened)
    b.rule(opened, SEPARATOR, L, b.rewind(f"{prefix}.init", U, hub, from_end=False))

    check = f"{prefix}.check"
    inc = f"{prefix}.inc"
    # the hub sits on cell 0 and forks: test the current tuple, or move on to the next
    check_entry = b.skip_separators(check, U, before + 1, b.state(f"{check}.f0", U))
    inc_entry = b.skip_separators(inc, U, before + 1, b.state(f"{inc}.top", U))
    b.keep(hub, b.blank, check_entry)
    b.keep(hub, b.blank, inc_entry)

    # keep only counters with exactly count-1 separators
    skip = b.state(f"{check}.skip", U)
    run = b.rewind(check, U, target, from_end=True)
    for h in range(count):
        cur = f"{check}.f{h}"
        nxt = b.state(f"{check}.f{h + 1}", U) if h + 1 < count else skip
        for g in ident:
            if g == SEPARATOR and nxt == skip:
                b.keep(cur, g, skip)
            elif g == SEPARATOR:
                b.rule(cur, g, R, nxt)
            else:
                b.rule(cur, g, R, cur)
        if h == count - 1:
            b.keep(cur, b.blank, run)
        else:
            b.keep(cur, b.blank, skip)

    # increment the counter (most significant digit first)
    top = f"{inc}.top"
    to_end = b.state(f"{inc}.end", U)
    carry = b.state(f"{inc}.carry", U)
    carried = b.state(f"{inc}.carried", U)
    done = b.rewind(f"{inc}.done", U, hub, from_end=False)
    grow = b.state(f"{inc}.grow", U)
    grow_home = b.rewind(f"{inc}.grow", U, b.state(f"{inc}.fill.home", U), from_end=False)
    fill_entry = b.skip_separators(f"{inc}.fill", U, before + 1, b.state(f"{inc}.fill", U))
    fill = f"{inc}.fill"
    filled = b.state(f"{inc}.filled", U)

    for g in ident:
        if g == last:
            b.rule(top, g, R, top)
        else:
            b.rule(top, g, R, to_end)
    b.rule(top, b.blank, first, grow)
    b.keep(grow, first, grow_home)
    b.keep(f"{inc}.fill.home", b.blank, fill_entry)
    b.rule(fill, last, first, filled)
    b.rule(filled, first, R, fill)
    b.keep(fill, first, done)

    for g in ident:
        b.rule(to_end, g, R, to_end)
    b.rule(to_end, b.blank, L, carry)
    b.rule(carry, last, first, carried)
    b.rule(carried, first, L, carry)
    for d in digits[:-1]:
        b.rule(carry, d, succ[d], done)
    return entry


def _check_segments(matrix: MatrixAcceptor, arity: int) -> None:
    if matrix.arity != arity:
        raise CompileError(f"matrix arity {matrix.arity} does not match {arity}")
    problems = matrix.check()
    if problems:
        raise CompileError("; ".join(problems))


def compile_prefix(spec: FormulaSpec) -> Machine:
    """Build the machine for a prenex quantifier prefix over a deterministic matrix."""
    problems = spec.check()
    if problems:
        raise CompileError("; ".join(problems))
    sigma, gamma = _alphabets(spec.matrix)
    b = _Builder(sigma, gamma, spec.matrix.machine.blank)
    innermost = spec.blocks[-1][0]
    target = _embed_matrix(b, spec.matrix, E if innermost is Quantifier.EXISTS else U)
    offsets = []
    seen = 0
    for _, n in spec.blocks:
        offsets.append(seen)
        seen += n
    for i in range(len(spec.blocks) - 1, -1, -1):
        q, n = spec.blocks[i]
        if q is Quantifier.EXISTS:
            target = _exists_block(b, f"B{i}", n, target)
        else:
            target = _forall_block(b, f"B{i}", n, offsets[i], target)
    kind = "".join("E" if q is Quantifier.EXISTS else "A" for q, _ in spec.blocks)
    return Machine(sigma, gamma, b.states, target, b.rules, blank=b.blank, tapes=1, name=f"{kind}({spec.matrix.machine.name})")


def compile_sigma1(matrix: MatrixAcceptor, r: int) -> Machine:
    """Guess ``r`` witness segments existentially, then run the matrix."""
    _check_segments(matrix, r)
    return compile_prefix(FormulaSpec(((Quantifier.EXISTS, r),), matrix))


def compile_pi1(matrix: MatrixAcceptor, r: int) -> Machine:
    """Enumerate all ``r``-tuples universally; each one is checked by the matrix."""
    _check_segments(matrix, r)
    return compile_prefix(FormulaSpec(((Quantifier.FORALL, r),), matrix))


def compile_pi11(matrix: MatrixAcceptor) -> Machine:
    """Machine for ``forall f exists x . matrix(w, f(0)#...#f(|x|-1), x)``.

    Stage ``n`` (tape ``_ w # z0 # ... # z_{n-1}``) existentially either
    guesses ``x`` of length ``n`` and runs the matrix on
    ``_ w # z0#...#z_{n-1} # x``, or universally picks the next ``z_n`` one
    symbol at a time and moves to stage ``n + 1``. Stage 0 runs the matrix on
    ``_ w # #`` (empty block, empty ``x``).
    """
    _check_segments(matrix, 2)
    used = set(matrix.machine.tape_alphabet) | {SEPARATOR}
    mark = _fresh_symbol("$%&@", used)
    xsep = _fresh_symbol("!?^~", used | {mark})
    sigma, gamma = _alphabets(matrix, (mark, xsep))
    b = _Builder(sigma, gamma, matrix.machine.blank)
    blank = b.blank
    check = _embed_matrix(b, matrix, E)
    ident = b.nonblank()

    # stage 0
    start, at_end = b.seek_end("S0", E)
    s0_a1 = b.state("S0.a1", E)
    s0_a2 = b.state("S0.a2", E)
    s0_a3 = b.state("S0.a3", E)
    choose_open = b.state("Z.open", E)
    choose = b.state("Z", U)
    b.rule(at_end, blank, SEPARATOR, s0_a1)
    b.rule(s0_a1, SEPARATOR, R, s0_a2)
    b.rule(s0_a2, blank, SEPARATOR, s0_a3)
    b.rule(s0_a3, SEPARATOR, L, b.rewind("S0", E, check, from_end=False))
    b.rule(at_end, blank, SEPARATOR, choose_open)
    b.rule(choose_open, SEPARATOR, R, choose)

    # universal choice of the next block entry
    stage = b.state("S", E)
    for a in sigma:
        wrote = b.state(f"Z.{a}", U)
        b.rule(choose, blank, a, wrote)
        b.rule(wrote, a, R, choose)
    b.keep(choose, blank, stage)

    # stage n >= 1: open the next entry, or guess x with one symbol per separator
    stage_open = b.state("S.open", E)
    b.rule(stage, blank, SEPARATOR, stage_open)
    b.rule(stage_open, SEPARATOR, R, choose)
    x_open = b.state("X.open", E)
    b.rule(stage, blank, xsep, x_open)
    find = b.state("X.find", E)
    b.rule(x_open, xsep, L, b.rewind("X.home", E, b.state("X.find0", E), from_end=False))
    b.rule("X.find0", blank, R, find)
    to_end = b.state("X.end", E)
    marked = b.state("X.marked", E)
    restore = b.state("X.restore", E)
    for g in ident:
        if g == SEPARATOR:
            b.rule(find, g, mark, marked)
        elif g == xsep:
            b.rule(find, g, SEPARATOR, restore)
        else:
            b.rule(find, g, R, find)
    b.rule(marked, mark, R, to_end)
    for g in ident:
        b.rule(to_end, g, R, to_end)
    back = b.rewind("X.next", E, "X.find0", from_end=False)
    for a in sigma:
        wrote = b.state(f"X.{a}", E)
        b.rule(to_end, blank, a, wrote)
        b.keep(wrote, a, back)
    # turn the marks back into separators on the way home
    unmarked = b.state("X.unmarked", E)
    for g in ident:
        if g == mark:
            b.rule(restore, g, SEPARATOR, unmarked)
        else:
            b.rule(restore, g, L, restore)
    b.keep(restore, blank, check)
    b.rule(unmarked, SEPARATOR, L, restore)
    return Machine(sigma, gamma, b.states, start, b.rules, blank=blank, tapes=1, name=f"PI11({matrix.machine.name})")

"""Global acceptance semantics over budget-bounded configuration graphs.

A *phase* is the set of configurations reachable from a root while staying
in the root's kind; the first opposite-kind configurations met are the
root's alternation pivots. The accepted set is the least set closed under

* an existential node is accepted if some pivot is accepted;
* a universal node is accepted if all its pivots are accepted;

and the rejected set is the least set closed under the dual conditions.
Exploration is cut off by a :class:`Budget`. A "for all pivots" clause only
fires on phases that were enumerated completely, so both computed sets are
under-approximations of the true ones and verdicts never have to be retracted
when the budget grows.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Iterable

from .machine import Configuration, Machine, StateKind, initial_config, successors

__all__ = [
    "Budget",
    "PhaseResult",
    "PivotGraph",
    "Verdict",
    "SolveResult",
    "Wellfoundedness",
    "explore_phase",
    "build_pivot_graph",
    "solve_fixpoint",
    "solve_game",
    "decide",
    "check_local_closure",
    "is_alternation_wf",
]

E = StateKind.EXISTENTIAL
U = StateKind.UNIVERSAL


class Verdict(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    UNKNOWN = "unknown"

    def swapped(self) -> "Verdict":
        if self is Verdict.ACCEPTED:
            return Verdict.REJECTED
        if self is Verdict.REJECTED:
            return Verdict.ACCEPTED
        return self


class Wellfoundedness(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Budget:
    """Exploration caps. The phase cap defaults below the global cap so that
    one infinite phase cannot use up the room its pivots need."""

    max_configs: int = 2000
    max_phase_steps: int = 500
    max_pivot_depth: int = 2000

    def __post_init__(self):
        for name in ("max_configs", "max_phase_steps", "max_pivot_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def uniform(cls, n: int) -> "Budget":
        return cls(n, n, n)

    def scaled(self, factor: int) -> "Budget":
        return Budget(self.max_configs * factor, self.max_phase_steps * factor, self.max_pivot_depth * factor)


@dataclass(frozen=True)
class PhaseResult:
    root: Configuration
    kind: StateKind
    pivots: tuple[Configuration, ...]
    complete: bool
    internal_leaves: tuple[Configuration, ...] = ()
    size: int = 1


@dataclass
class PivotGraph:
    """Phase roots linked by pivot edges.

    ``edges`` holds a :class:`PhaseResult` for every expanded node. Nodes that
    were discovered but never expanded (depth or global budget) are in
    ``truncated``. ``nodes`` maps each node to its pivot depth, in discovery
    order.
    """

    machine: Machine
    root: Configuration
    nodes: dict[Configuration, int] = field(default_factory=dict)
    edges: dict[Configuration, PhaseResult] = field(default_factory=dict)
    truncated: set[Configuration] = field(default_factory=set)
    budget_exhausted: bool = False

    def kind(self, c: Configuration) -> StateKind:
        return self.machine.kind(c.state)

    @property
    def incomplete(self) -> set[Configuration]:
        return {n for n, pr in self.edges.items() if not pr.complete}

    @property
    def fully_explored(self) -> bool:
        return not self.truncated and all(pr.complete for pr in self.edges.values())

    def pivot_edges(self) -> Iterable[tuple[Configuration, Configuration]]:
        for n, pr in self.edges.items():
            for p in pr.pivots:
                yield n, p

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass
class SolveResult:
    """Verdict per node, plus the raw accepted and rejected sets they came from."""

    verdicts: dict[Configuration, Verdict]
    ac_iterations: int
    rc_iterations: int
    budget_exhausted: bool
    ac: frozenset = frozenset()
    rc: frozenset = frozenset()

    def of(self, c: Configuration) -> Verdict:
        return self.verdicts[c]

    def accepted(self) -> set[Configuration]:
        return set(self.ac)

    def rejected(self) -> set[Configuration]:
        return set(self.rc)


def _explore(m: Machine, root: Configuration, max_steps: int, expanded: dict, max_configs: int) -> PhaseResult:
    # `expanded` is shared across phases: its size is the global count of
    # distinct configurations whose successors were computed, and it keeps
    # those successors so overlapping phases do not step them again.
    kind = m.states[root.state]
    states = m.states
    visited = {root}
    queue = deque([root])
    pivots: dict[Configuration, None] = {}
    leaves = []
    complete = True
    while queue:
        c = queue.popleft()
        succ = expanded.get(c)
        if succ is None:
            if len(expanded) >= max_configs:
                complete = False
                break
            succ = expanded[c] = [d for _, d in successors(m, c)]
        if not succ:
            leaves.append(c)
        for d in succ:
            if states[d.state] is not kind:
                pivots.setdefault(d)
            elif d not in visited:
                if len(visited) >= max_steps:
                    complete = False
                    queue.clear()
                    break
                visited.add(d)
                queue.append(d)
    return PhaseResult(root, kind, tuple(pivots), complete, tuple(leaves), len(visited))


def explore_phase(m: Machine, c: Configuration, b: Budget = Budget()) -> PhaseResult:
    """Enumerate the phase of ``c`` breadth-first and collect its alternation pivots."""
    return _explore(m, c, b.max_phase_steps, {}, b.max_configs)


def build_pivot_graph(m: Machine, c0: Configuration, b: Budget = Budget()) -> PivotGraph:
    g = PivotGraph(m, c0)
    g.nodes[c0] = 0
    expanded: dict[Configuration, list[Configuration]] = {}
    queue = deque([c0])
    while queue:
        n = queue.popleft()
        depth = g.nodes[n]
        if depth > b.max_pivot_depth or (n not in expanded and len(expanded) >= b.max_configs):
            g.truncated.add(n)
            g.budget_exhausted = True
            continue
        pr = _explore(m, n, b.max_phase_steps, expanded, b.max_configs)
        g.edges[n] = pr
        if not pr.complete:
            g.budget_exhausted = True
        for p in pr.pivots:
            if p not in g.nodes:
                g.nodes[p] = depth + 1
                queue.append(p)
    return g


def _ac_holds(kind: StateKind, pr: PhaseResult, good: set) -> bool:
    if kind is E:
        return any(p in good for p in pr.pivots)
    return pr.complete and all(p in good for p in pr.pivots)


def _rc_holds(kind: StateKind, pr: PhaseResult, bad: set) -> bool:
    if kind is U:
        return any(p in bad for p in pr.pivots)
    return pr.complete and all(p in bad for p in pr.pivots)


def _verdicts(g: PivotGraph, ac: set, rc: set) -> dict[Configuration, Verdict]:
    # a node in both sets would break disjointness; `ac`/`rc` stay available to test it
    out = {}
    for n in g.nodes:
        if n in ac:
            out[n] = Verdict.ACCEPTED
        elif n in rc:
            out[n] = Verdict.REJECTED
        else:
            out[n] = Verdict.UNKNOWN
    return out


def solve_fixpoint(g: PivotGraph) -> SolveResult:
    """Round-based Kleene iteration of both closure conditions from the empty set.

    Both conditions look only at a node's pivots, so after the first round a
    node can only change if one of its pivots joined in the previous round;
    each round re-checks just those candidates. The rounds, and so the
    iteration counts, are the same as for the naive iteration.
    """
    kinds = {n: g.kind(n) for n in g.edges}
    preds: dict[Configuration, list[Configuration]] = {}
    for n, pr in g.edges.items():
        for p in pr.pivots:
            preds.setdefault(p, []).append(n)

    def lfp(holds):
        s: set[Configuration] = set()
        rounds = 0
        candidates: Iterable[Configuration] = g.edges
        while True:
            new = {n for n in candidates if n not in s and holds(kinds[n], g.edges[n], s)}
            if not new:
                return s, rounds
            s |= new
            rounds += 1
            candidates = {q for n in new for q in preds.get(n, ())}

    ac, ac_rounds = lfp(_ac_holds)
    rc, rc_rounds = lfp(_rc_holds)
    return SolveResult(_verdicts(g, ac, rc), ac_rounds, rc_rounds, g.budget_exhausted, frozenset(ac), frozenset(rc))


def _attractor(g: PivotGraph, player: StateKind) -> tuple[set[Configuration], int]:
    # `player` owns the nodes of its kind and needs one good move there; at the
    # opponent's nodes every move must be good and the phase must be complete.
    preds: dict[Configuration, list[Configuration]] = {}
    pending: dict[Configuration, int] = {}
    won: set[Configuration] = set()
    work: deque[Configuration] = deque()
    for n, pr in g.edges.items():
        targets = set(pr.pivots)
        for p in targets:
            preds.setdefault(p, []).append(n)
        if g.kind(n) is not player and pr.complete:
            pending[n] = len(targets)
            if not targets:
                won.add(n)
                work.append(n)
    steps = 0
    while work:
        p = work.popleft()
        steps += 1
        for n in preds.get(p, ()):
            if n in won:
                continue
            if g.kind(n) is player:
                won.add(n)
                work.append(n)
            elif n in pending:
                pending[n] -= 1
                if pending[n] == 0:
                    won.add(n)
                    work.append(n)
    return won, steps


def solve_game(g: PivotGraph) -> SolveResult:
    """Attractor computation on the pivot game.

    The existential player wins from the nodes it can force into a complete
    universal node with no pivots; the universal player, dually. Independent
    of :func:`solve_fixpoint` and expected to agree with it everywhere.
    """
    ac, ac_steps = _attractor(g, E)
    rc, rc_steps = _attractor(g, U)
    return SolveResult(_verdicts(g, ac, rc), ac_steps, rc_steps, g.budget_exhausted, frozenset(ac), frozenset(rc))


def decide(m: Machine, w, b: Budget = Budget()) -> Verdict:
    c0 = initial_config(m, w)
    g = build_pivot_graph(m, c0, b)
    return solve_fixpoint(g).verdicts[c0]


def check_local_closure(g: PivotGraph, s: SolveResult) -> list[str]:
    """Return the nodes whose verdict disagrees with the verdicts of its pivots."""
    v = s.verdicts
    A, R = Verdict.ACCEPTED, Verdict.REJECTED
    problems = []
    for n, pr in g.edges.items():
        some_a = any(v[p] is A for p in pr.pivots)
        all_a = pr.complete and all(v[p] is A for p in pr.pivots)
        some_r = any(v[p] is R for p in pr.pivots)
        all_r = pr.complete and all(v[p] is R for p in pr.pivots)
        if g.kind(n) is E:
            want_a, want_r = some_a, all_r
        else:
            want_a, want_r = all_a, some_r
        if (v[n] is A) != want_a:
            problems.append(f"{n}: accepted={v[n] is A} but pivots imply {want_a}")
        if (v[n] is R) != want_r:
            problems.append(f"{n}: rejected={v[n] is R} but pivots imply {want_r}")
    return problems


def _has_cycle(g: PivotGraph) -> bool:
    ts = TopologicalSorter({n: pr.pivots for n, pr in g.edges.items()})
    try:
        ts.prepare()
    except CycleError:
        return True
    return False


def is_alternation_wf(g: PivotGraph) -> Wellfoundedness:
    if _has_cycle(g):
        return Wellfoundedness.NO
    if g.fully_explored:
        return Wellfoundedness.YES
    return Wellfoundedness.UNKNOWN


def longest_pivot_path(g: PivotGraph) -> int | None:
    """Maximum number of pivot edges on a path from the root, or ``None`` on a cycle."""
    if _has_cycle(g):
        return None
    order = list(TopologicalSorter({n: pr.pivots for n, pr in g.edges.items()}).static_order())
    best: dict[Configuration, int] = {}
    for n in order:
        pr = g.edges.get(n)
        best[n] = 1 + max((best[p] for p in pr.pivots), default=-1) if pr else 0
    return best.get(g.root, 0)

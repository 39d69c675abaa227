"""Reference implementations used only by the tests.

Nothing here imports the stepping or solving code under test: a
configuration is ``(state, ((cells, pos), ...))`` with trailing blanks
stripped from ``cells``, and acceptance is computed by brute force over the
whole reachable configuration space.
"""
from __future__ import annotations

import itertools

from alternation.machine import Move, StateKind
from alternation.semantics import Verdict


def _norm(cells, blank):
    cells = list(cells)
    while cells and cells[-1] == blank:
        cells.pop()
    return tuple(cells)


def start(m, w):
    first = (_norm((m.blank,) + tuple(w), m.blank), 0)
    return (m.start, (first,) + (((), 0),) * (m.tapes - 1))


def step(m, c):
    state, tapes = c
    reads = tuple(cells[pos] if pos < len(cells) else m.blank for cells, pos in tapes)
    out = []
    for rule in m.rules:
        if rule.source != state or tuple(rule.reads) != reads:
            continue
        new = []
        for (cells, pos), act in zip(tapes, rule.acts):
            if act is Move.RIGHT:
                new.append((cells, pos + 1))
            elif act is Move.LEFT:
                new.append((cells, max(pos - 1, 0)))
            else:
                cl = list(cells) + [m.blank] * (pos + 1 - len(cells))
                cl[pos] = act.symbol
                new.append((_norm(cl, m.blank), pos))
        out.append((rule.target, tuple(new)))
    return out


def reachable(m, c0, limit):
    """All configurations reachable from ``c0``, or ``None`` if there are more than ``limit``."""
    seen, stack = {c0}, [c0]
    while stack:
        c = stack.pop()
        for d in step(m, c):
            if d not in seen:
                seen.add(d)
                if len(seen) > limit:
                    return None
                stack.append(d)
    return seen


def pivots(m, c):
    kind = m.states[c[0]]
    seen, stack, found = {c}, [c], set()
    while stack:
        for d in step(m, stack.pop()):
            if m.states[d[0]] is not kind:
                found.add(d)
            elif d not in seen:
                seen.add(d)
                stack.append(d)
    return found


def naive_sets(m, c0, limit=5000):
    """Accepted and rejected configurations among those reachable from ``c0``, or ``None`` if too many."""
    space = reachable(m, c0, limit)
    if space is None:
        return None
    piv = {c: pivots(m, c) for c in space}
    E = StateKind.EXISTENTIAL

    def least(owner):
        # owner's nodes need one good pivot, the others need all pivots good
        s = set()
        changed = True
        while changed:
            changed = False
            for c in space:
                if c in s:
                    continue
                ps = piv[c]
                if m.states[c[0]] is owner:
                    ok = any(p in s for p in ps)
                else:
                    ok = all(p in s for p in ps)
                if ok:
                    s.add(c)
                    changed = True
        return s

    return least(E), least(StateKind.UNIVERSAL)


def naive_verdict(m, w, limit=5000):
    c0 = start(m, w)
    sets = naive_sets(m, c0, limit)
    if sets is None:
        return None
    ac, rc = sets
    if c0 in ac:
        return Verdict.ACCEPTED
    if c0 in rc:
        return Verdict.REJECTED
    return Verdict.UNKNOWN


def all_tuples(sigma, arity, max_len):
    """Every ``arity``-tuple of strings over ``sigma`` with components of length <= ``max_len``."""
    strings = ["".join(p) for n in range(max_len + 1) for p in itertools.product(sigma, repeat=n)]
    return itertools.product(strings, repeat=arity)

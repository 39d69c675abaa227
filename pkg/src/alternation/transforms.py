"""Machine-to-machine constructions: dual, one-sided, start normalization, combine."""
from __future__ import annotations

from .machine import Machine, Move, StateKind, TransitionRule, Write

__all__ = [
    "TransformError",
    "dual",
    "one_sided",
    "normalize_start",
    "combine",
    "one_sided_overhead",
    "prepare_pair",
    "ONE_SIDED_OVERHEAD",
]

E = StateKind.EXISTENTIAL
U = StateKind.UNIVERSAL

# Each configuration gains at most two gadget configurations with the same tape.
ONE_SIDED_OVERHEAD = 3


class TransformError(ValueError):
    pass


def fresh_name(base: str, taken) -> str:
    name, i = base, 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


def dual(m: Machine) -> Machine:
    return m.replace(states={q: k.opposite for q, k in m.states.items()}, name=f"dual({m.name})")


def one_sided(m: Machine, side: str = "plus") -> Machine:
    """Attach a never-deciding pivot loop to every existential (``plus``) or universal (``minus``) state.

    For ``plus`` the fresh universal ``a`` and existential ``b`` step into
    each other on every symbol without touching the tape, so every gadget
    configuration lies on a pivot 2-cycle and is neither accepted nor
    rejected. Existential configurations of ``m`` can then never be rejected.
    ``minus`` is the dual.
    """
    if m.tapes != 1:
        raise TransformError("one_sided expects a single-tape machine")
    if side not in ("plus", "minus"):
        raise TransformError(f"side must be 'plus' or 'minus', got {side!r}")
    source_kind = E if side == "plus" else U
    entry_kind = source_kind.opposite
    entry = fresh_name("gadget.in", m.states)
    loop = fresh_name("gadget.loop", set(m.states) | {entry})
    states = dict(m.states)
    states[entry] = entry_kind
    states[loop] = source_kind
    rules = list(m.rules)
    for g in m.tape_alphabet:
        rules.append(TransitionRule(entry, (g,), (Write(g),), loop))
        rules.append(TransitionRule(loop, (g,), (Write(g),), entry))
    for q, k in m.states.items():
        if k is source_kind:
            for g in m.tape_alphabet:
                rules.append(TransitionRule(q, (g,), (Write(g),), entry))
    return m.replace(states=states, rules=rules, name=f"{m.name}{'+' if side == 'plus' else '-'}")


def one_sided_overhead(m: Machine) -> int:
    """Factor by which ``max_configs`` must grow for ``one_sided(m, ...)`` to cover what ``m`` explored."""
    return ONE_SIDED_OVERHEAD


def _start_is_normal(m: Machine) -> bool:
    if m.kind(m.start) is not E:
        return False
    per_read: dict = {}
    for r in m.rules:
        if r.source == m.start:
            per_read[r.reads] = per_read.get(r.reads, 0) + 1
    return all(n <= 1 for n in per_read.values())


def normalize_start(m: Machine) -> Machine:
    """Give ``m`` an existential start state with at most one applicable rule."""
    if _start_is_normal(m):
        return m
    if m.tapes != 1:
        raise TransformError("normalize_start expects a single-tape machine")
    s = fresh_name("start", m.states)
    states = {s: E, **m.states}
    rules = [TransitionRule(s, (g,), (Write(g),), m.start) for g in m.tape_alphabet]
    return m.replace(states=states, start=s, rules=rules + list(m.rules), name=m.name)


def _product(q0: str, q1: str, j: int) -> str:
    return f"<{q0},{q1},{j}>"


def combine(m0: Machine, m1: Machine) -> Machine:
    """Two-tape product running ``m0`` on tape 1 and ``m1`` on tape 2.

    Control passes from ``m0`` to ``m1`` only when an ``m0`` step leaves or
    stays outside a universal phase, and back only when an ``m1`` step
    leaves or stays outside an existential phase. Intended for ``m0`` with no
    rejected and ``m1`` with no accepted configurations; the result then
    accepts what ``m0`` accepts and rejects what ``m1`` rejects.
    """
    if m0.tapes != 1 or m1.tapes != 1:
        raise TransformError("combine expects single-tape machines")
    if set(m0.input_alphabet) != set(m1.input_alphabet):
        raise TransformError("input alphabets differ")
    if set(m0.tape_alphabet) != set(m1.tape_alphabet) or m0.blank != m1.blank:
        raise TransformError("tape alphabets differ")
    m0 = normalize_start(m0)
    gamma = m0.tape_alphabet
    blank = m0.blank

    states: dict[str, StateKind] = {}
    rules: list[TransitionRule] = []
    for q0, k0 in m0.states.items():
        for q1 in m1.states:
            states[_product(q0, q1, 0)] = k0
    for q0 in m0.states:
        for q1, k1 in m1.states.items():
            states[_product(q0, q1, 1)] = k1

    # deterministic universal preprocessing: copy the input to tape 2, rewind
    taken = set(states)
    begin = fresh_name("copy.begin", taken)
    copy = fresh_name("copy.scan", taken | {begin})
    step = fresh_name("copy.step", taken | {begin, copy})
    back = fresh_name("copy.back", taken | {begin, copy, step})
    pre = {begin: U, copy: U, step: U, back: U}
    entry = _product(m0.start, m1.start, 0)
    R, L = Move.RIGHT, Move.LEFT
    rules.append(TransitionRule(begin, (blank, blank), (R, R), copy))
    for a in m0.input_alphabet:
        rules.append(TransitionRule(copy, (a, blank), (Write(a), Write(a)), step))
        rules.append(TransitionRule(step, (a, a), (R, R), copy))
    rules.append(TransitionRule(copy, (blank, blank), (L, L), back))
    for a in m0.input_alphabet:
        rules.append(TransitionRule(back, (a, a), (L, L), back))
    rules.append(TransitionRule(back, (blank, blank), (Write(blank), Write(blank)), entry))

    for r in m0.rules:
        (g,), (act,) = r.reads, r.acts
        j = 0 if m0.kind(r.source) is U and m0.kind(r.target) is U else 1
        for q1 in m1.states:
            for d in gamma:
                rules.append(
                    TransitionRule(_product(r.source, q1, 0), (g, d), (act, Write(d)), _product(r.target, q1, j))
                )
    for r in m1.rules:
        (g,), (act,) = r.reads, r.acts
        j = 1 if m1.kind(r.source) is E and m1.kind(r.target) is E else 0
        for q0 in m0.states:
            for d in gamma:
                rules.append(
                    TransitionRule(_product(q0, r.source, 1), (d, g), (Write(d), act), _product(q0, r.target, j))
                )
    return Machine(
        input_alphabet=m0.input_alphabet,
        tape_alphabet=gamma,
        states={**pre, **states},
        start=begin,
        rules=rules,
        blank=blank,
        tapes=2,
        name=f"combine({m0.name},{m1.name})",
    )


def prepare_pair(acceptor: Machine, co_acceptor: Machine) -> tuple[Machine, Machine]:
    """Turn acceptors of ``L`` and of its complement into valid ``combine`` inputs.

    The first becomes ``one_sided(acceptor, plus)`` (nothing rejected), the
    second ``dual(one_sided(co_acceptor, plus))`` (nothing accepted, rejects
    what ``co_acceptor`` accepts).
    """
    return one_sided(acceptor, "plus"), dual(one_sided(co_acceptor, "plus"))

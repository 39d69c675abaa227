"""Ready-made deterministic matrix acceptors for the prefix compilers.

All of them read the tape ``_ w # s1 # ... # sk`` from cell 0 and stop in
``acc`` or ``rej`` (a missing rule also counts as rejection).
"""
from __future__ import annotations

from typing import Sequence

from .hierarchy import SEPARATOR, MatrixAcceptor
from .machine import Machine, Move, StateKind, TransitionRule, Write

__all__ = [
    "always_accept",
    "always_reject",
    "equals_input",
    "witness_starts_with",
    "input_starts_with",
    "reject_iff_tuple",
    "x_nonempty",
    "x_empty",
    "BUILTIN",
    "builtin",
]

R, L = Move.RIGHT, Move.LEFT
E = StateKind.EXISTENTIAL
U = StateKind.UNIVERSAL


class _Rules:
    def __init__(self, gamma):
        self.gamma = tuple(gamma)
        self.states: dict[str, StateKind] = {"acc": U, "rej": E}
        self.rules: list[TransitionRule] = []

    def add(self, src, read, act, dst):
        for q in (src, dst):
            self.states.setdefault(q, U)
        if isinstance(act, str):
            act = Write(act)
        self.rules.append(TransitionRule(src, (read,), (act,), dst))

    def build(self, sigma, start, name, arity) -> MatrixAcceptor:
        m = Machine(sigma, self.gamma, self.states, start, self.rules, blank="_", tapes=1, name=name)
        return MatrixAcceptor(m, "acc", "rej", arity)


def _gamma(sigma: Sequence[str], *extra: str) -> tuple[str, ...]:
    return tuple(sigma) + ("_", SEPARATOR) + extra


def always_accept(sigma: Sequence[str] = ("a", "b"), arity: int = 1) -> MatrixAcceptor:
    r = _Rules(_gamma(sigma))
    return r.build(tuple(sigma), "acc", "always_accept", arity)


def always_reject(sigma: Sequence[str] = ("a", "b"), arity: int = 1) -> MatrixAcceptor:
    r = _Rules(_gamma(sigma))
    return r.build(tuple(sigma), "rej", "always_reject", arity)


def equals_input(sigma: Sequence[str] = ("a", "b")) -> MatrixAcceptor:
    """Accept iff the single witness equals the input (crosses off matched pairs with ``X``)."""
    sigma = tuple(sigma)
    r = _Rules(_gamma(sigma, "X"))
    r.add("home", "_", R, "find")
    r.add("find", "X", R, "find")
    r.add("find", SEPARATOR, R, "tail")
    for c in sigma:
        r.add("find", c, "X", f"got.{c}")
        r.add(f"got.{c}", "X", R, f"w.{c}")
        for g in sigma + ("X",):
            r.add(f"w.{c}", g, R, f"w.{c}")
        r.add(f"w.{c}", SEPARATOR, R, f"s.{c}")
        r.add(f"s.{c}", "X", R, f"s.{c}")
        r.add(f"s.{c}", c, "X", "back")
    for g in sigma + ("X", SEPARATOR):
        r.add("back", g, L, "back")
    r.add("back", "_", "_", "home")
    # input used up: the witness must be used up as well
    r.add("tail", "X", R, "tail")
    r.add("tail", "_", "_", "acc")
    return r.build(sigma, "home", "equals_input", 1)


def witness_starts_with(symbol: str = "a", sigma: Sequence[str] = ("a", "b")) -> MatrixAcceptor:
    sigma = tuple(sigma)
    r = _Rules(_gamma(sigma))
    r.add("home", "_", R, "skip")
    for c in sigma:
        r.add("skip", c, R, "skip")
    r.add("skip", SEPARATOR, R, "look")
    r.add("look", symbol, symbol, "acc")
    return r.build(sigma, "home", f"witness_starts_with_{symbol}", 1)


def input_starts_with(symbol: str = "b", sigma: Sequence[str] = ("a", "b"), arity: int = 1) -> MatrixAcceptor:
    """Ignores the witnesses entirely."""
    sigma = tuple(sigma)
    r = _Rules(_gamma(sigma))
    r.add("home", "_", R, "look")
    r.add("look", symbol, symbol, "acc")
    return r.build(sigma, "home", f"input_starts_with_{symbol}", arity)


def reject_iff_tuple(target: Sequence[str], sigma: Sequence[str] = ("a", "b")) -> MatrixAcceptor:
    """Reject exactly when the witness tuple equals ``target``; accept otherwise."""
    sigma = tuple(sigma)
    pattern = SEPARATOR + SEPARATOR.join(target)
    r = _Rules(_gamma(sigma))
    r.add("home", "_", R, "skip")
    for c in sigma:
        r.add("skip", c, R, "skip")
    r.add("skip", SEPARATOR, R, "p1")
    for k in range(1, len(pattern) + 1):
        here = f"p{k}"
        expected = pattern[k] if k < len(pattern) else "_"
        for g in sigma + ("_", SEPARATOR):
            if g == expected and k == len(pattern):
                r.add(here, g, g, "rej")
            elif g == expected:
                r.add(here, g, R, f"p{k + 1}")
            else:
                r.add(here, g, g, "acc")
    label = ",".join(t or "ε" for t in target)
    return r.build(sigma, "home", f"reject_iff({label})", len(target))


def _x_test(nonempty: bool, sigma: Sequence[str]) -> MatrixAcceptor:
    # x is the segment after the last separator
    sigma = tuple(sigma)
    r = _Rules(_gamma(sigma))
    r.add("home", "_", R, "end")
    for g in sigma + (SEPARATOR,):
        r.add("end", g, R, "end")
    r.add("end", "_", L, "last")
    if nonempty:
        for c in sigma:
            r.add("last", c, c, "acc")
    else:
        r.add("last", SEPARATOR, SEPARATOR, "acc")
    return r.build(sigma, "home", "x_nonempty" if nonempty else "x_empty", 2)


def x_nonempty(sigma: Sequence[str] = ("a",)) -> MatrixAcceptor:
    """For the inductive compiler: ``x`` is nonempty exactly from stage 1 on, i.e. when the z-block is nonempty."""
    return _x_test(True, sigma)


def x_empty(sigma: Sequence[str] = ("a",)) -> MatrixAcceptor:
    return _x_test(False, sigma)


BUILTIN = {
    "always_accept": always_accept,
    "always_reject": always_reject,
    "equals_input": equals_input,
    "witness_starts_with": witness_starts_with,
    "input_starts_with": input_starts_with,
    "reject_iff_tuple": reject_iff_tuple,
    "x_nonempty": x_nonempty,
    "x_empty": x_empty,
}


def builtin(name: str, **kwargs) -> MatrixAcceptor:
    if name not in BUILTIN:
        raise KeyError(f"unknown builtin matrix {name!r}; choose from {', '.join(sorted(BUILTIN))}")
    return BUILTIN[name](**kwargs)

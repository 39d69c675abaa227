"""Random small machines for property checks."""
from __future__ import annotations

import itertools
import random
from typing import Iterator

from .machine import Machine, Move, StateKind, TransitionRule, Write

SIGMAS = (("a",), ("a", "b"))


def random_machine(rng: random.Random, max_states: int = 3, max_rules: int = 4) -> Machine:
    """One machine with at most ``max_states`` states, |input| <= 2, |tape alphabet| <= 3."""
    sigma = rng.choice(SIGMAS)
    gamma = sigma + ("_",)
    if len(gamma) < 3 and rng.random() < 0.5:
        gamma = gamma + ("X",)
    n = rng.randint(1, max_states)
    names = [f"q{i}" for i in range(n)]
    states = {q: rng.choice((StateKind.EXISTENTIAL, StateKind.UNIVERSAL)) for q in names}
    actions = [Move.LEFT, Move.RIGHT] + [Write(g) for g in gamma]
    rules = [
        TransitionRule(rng.choice(names), (rng.choice(gamma),), (rng.choice(actions),), rng.choice(names))
        for _ in range(rng.randint(0, max_rules))
    ]
    return Machine(sigma, gamma, states, names[0], rules, blank="_", tapes=1, name="R")


def machine_key(m: Machine) -> tuple:
    return (
        m.input_alphabet,
        m.tape_alphabet,
        tuple(sorted((q, k.value) for q, k in m.states.items())),
        m.start,
        m.rules,
    )


def generate(count: int, seed: int = 0, **kwargs) -> list[Machine]:
    """``count`` distinct random machines, reproducible from ``seed``."""
    rng = random.Random(seed)
    seen = set()
    out = []
    while len(out) < count:
        m = random_machine(rng, **kwargs)
        key = machine_key(m)
        if key in seen:
            continue
        seen.add(key)
        out.append(m.replace(name=f"R{len(out)}"))
    return out


def words(sigma, max_len: int) -> Iterator[str]:
    """All strings over ``sigma`` up to ``max_len``, shortest first."""
    for n in range(max_len + 1):
        for t in itertools.product(sigma, repeat=n):
            yield "".join(t)

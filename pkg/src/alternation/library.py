"""Small hand-written machines used as fixtures, demos and complementary pairs."""
from __future__ import annotations

from .io import parse_machine
from .machine import Machine

U0 = """
machine U0
input a
alphabet a_
state u universal
start u
"""

E0 = """
machine E0
input a
alphabet a_
state e existential
start e
"""

# existential state rewriting the scanned blank forever
SELF_LOOP = """
machine SELF_LOOP
input a
alphabet a_
state q existential
start q
rule q _ _ q
rule q a a q
"""

# existential and universal state handing control back and forth without moving
MUTUAL = """
machine MUTUAL
input a
alphabet a_
state e existential
state u universal
start e
rule e a a u
rule e _ _ u
rule u a a e
rule u _ _ e
"""

EVEN = """
machine EVEN
input a
alphabet a_
state s existential
state even existential
state odd existential
state acc universal
start s
rule s _ + even
rule even a + odd
rule odd a + even
rule even _ _ acc
"""

ODD = """
machine ODD
input a
alphabet a_
state s existential
state even existential
state odd existential
state acc universal
start s
rule s _ + even
rule even a + odd
rule odd a + even
rule odd _ _ acc
"""

STARTS_A = """
machine STARTS_A
input ab
alphabet ab_
state s existential
state t existential
state acc universal
start s
rule s _ + t
rule t a a acc
"""

NOT_STARTS_A = """
machine NOT_STARTS_A
input ab
alphabet ab_
state s existential
state t existential
state acc universal
start s
rule s _ + t
rule t b b acc
rule t _ _ acc
"""

# universal scan: a 'b' leads to an existential dead end (rejecting pivot)
ALL_A = """
machine ALL_A
input ab
alphabet ab_
state s universal
state t universal
state rej existential
start s
rule s _ + t
rule t a + t
rule t b b rej
"""

HAS_B = """
machine HAS_B
input ab
alphabet ab_
state s existential
state t existential
state acc universal
start s
rule s _ + t
rule t a + t
rule t b b acc
"""

MACHINES = {
    "U0": U0,
    "E0": E0,
    "SELF_LOOP": SELF_LOOP,
    "MUTUAL": MUTUAL,
    "EVEN": EVEN,
    "ODD": ODD,
    "STARTS_A": STARTS_A,
    "NOT_STARTS_A": NOT_STARTS_A,
    "ALL_A": ALL_A,
    "HAS_B": HAS_B,
}

# (language acceptor, acceptor of the complement, membership predicate)
COMPLEMENTARY_PAIRS = {
    "EVEN/ODD": ("EVEN", "ODD", lambda w: len(w) % 2 == 0),
    "STARTS_A": ("STARTS_A", "NOT_STARTS_A", lambda w: w[:1] == "a"),
    "ALL_A/HAS_B": ("ALL_A", "HAS_B", lambda w: "b" not in w),
}


def get(name: str) -> Machine:
    return parse_machine(MACHINES[name])

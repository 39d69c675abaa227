import random

import pytest
from hypothesis import given, settings, strategies as st

from alternation import library
from alternation.corpus import random_machine, words
from alternation.machine import Machine, StateKind, initial_config, validate_machine
from alternation.semantics import Budget, Verdict, build_pivot_graph, decide
from alternation.transforms import (
    ONE_SIDED_OVERHEAD,
    TransformError,
    combine,
    dual,
    normalize_start,
    one_sided,
    prepare_pair,
)

import oracles

E, U = StateKind.EXISTENTIAL, StateKind.UNIVERSAL
A, R, UNK = Verdict.ACCEPTED, Verdict.REJECTED, Verdict.UNKNOWN

machines = st.integers(0, 2**32 - 1).map(lambda seed: random_machine(random.Random(seed)))


class TestDual:
    @given(machines)
    def test_involution(self, m):
        assert dual(dual(m)).states == m.states
        assert dual(dual(m)).rules == m.rules

    def test_u0_becomes_e0(self):
        for w in ["", "a", "aa"]:
            assert decide(dual(library.get("U0")), w) is decide(library.get("E0"), w) is R

    @settings(max_examples=60, deadline=None)
    @given(machines)
    def test_swaps_verdicts(self, m):
        for w in words(m.input_alphabet, 2):
            assert decide(dual(m), w, Budget(300, 100, 300)) is decide(m, w, Budget(300, 100, 300)).swapped()

    @settings(max_examples=60, deadline=None)
    @given(machines)
    def test_same_graph_shape(self, m):
        g = build_pivot_graph(m, initial_config(m, ""), Budget(200, 50, 200))
        d = build_pivot_graph(dual(m), initial_config(dual(m), ""), Budget(200, 50, 200))
        assert [(c.state, c.tapes) for c in g.nodes] == [(c.state, c.tapes) for c in d.nodes]


class TestOneSided:
    def test_plus_on_e0_is_unknown(self):
        assert decide(one_sided(library.get("E0"), "plus"), "") is UNK

    def test_minus_on_u0_is_unknown(self):
        assert decide(one_sided(library.get("U0"), "minus"), "a") is UNK

    def test_plus_keeps_acceptance(self):
        m = one_sided(library.get("EVEN"), "plus")
        for w in words(("a",), 4):
            expect = A if len(w) % 2 == 0 else UNK
            assert decide(m, w, Budget(20000, 2000, 20000)) is expect, w

    def test_bad_side(self):
        with pytest.raises(TransformError):
            one_sided(library.get("U0"), "both")

    def test_fresh_state_names(self):
        m = Machine(("a",), ("a", "_"), {"gadget.in": E, "gadget.loop": U}, "gadget.in")
        out = one_sided(m, "plus")
        assert len(out.states) == 4 and validate_machine(out).ok

    @settings(max_examples=40, deadline=None)
    @given(machines, st.sampled_from(["plus", "minus"]))
    def test_forbidden_verdict_never_appears(self, m, side):
        """Checked against the brute-force reference, not the solver under test."""
        out = one_sided(m, side)
        forbidden = R if side == "plus" else A
        for w in words(m.input_alphabet, 2):
            v = oracles.naive_verdict(out, w, limit=1500)
            if v is not None:
                assert v is not forbidden

    def test_overhead_constant(self):
        assert ONE_SIDED_OVERHEAD == 3


class TestNormalizeStart:
    def test_universal_start_gets_wrapped(self):
        m = normalize_start(library.get("U0"))
        assert m.kind(m.start) is E
        assert sum(r.source == m.start for r in m.rules) == len(m.tape_alphabet)

    def test_normal_machine_untouched(self):
        m = library.get("EVEN")
        assert normalize_start(m) is m

    @given(machines)
    def test_idempotent(self, m):
        once = normalize_start(m)
        assert normalize_start(once) is once

    @settings(max_examples=60, deadline=None)
    @given(machines)
    def test_preserves_verdict(self, m):
        out = normalize_start(m)
        for w in words(m.input_alphabet, 2):
            expect = oracles.naive_verdict(m, w, limit=1500)
            if expect is not None:
                assert oracles.naive_verdict(out, w, limit=3000) is expect


class TestCombine:
    def test_alphabet_mismatch(self):
        with pytest.raises(TransformError):
            combine(library.get("EVEN"), library.get("STARTS_A"))

    def test_needs_single_tape(self):
        two = Machine(("a",), ("a", "_"), {"q": E}, "q", tapes=2)
        with pytest.raises(TransformError):
            combine(two, two)

    def test_u0_e0(self):
        m = combine(one_sided(library.get("U0"), "plus"), dual(one_sided(library.get("E0"), "plus")))
        assert validate_machine(m).ok
        assert decide(m, "a", Budget(5000, 1000, 5000)) is A

    @pytest.mark.parametrize("pair", sorted(library.COMPLEMENTARY_PAIRS))
    def test_prepared_pairs_decide_everything(self, pair):
        acc, co, member = library.COMPLEMENTARY_PAIRS[pair]
        m = combine(*prepare_pair(library.get(acc), library.get(co)))
        sigma = library.get(acc).input_alphabet
        for w in words(sigma, 3):
            assert decide(m, w, Budget(20000, 5000, 20000)) is (A if member(w) else R), w

    def test_prepare_pair_sides(self):
        m0, m1 = prepare_pair(library.get("EVEN"), library.get("ODD"))
        for w in words(("a",), 3):
            assert oracles.naive_verdict(m0, w) is not R
            assert oracles.naive_verdict(m1, w) is not A

import random

import pytest

from alternation import library
from alternation.corpus import generate, random_machine, words
from alternation.machine import Machine, Move, StateKind, TransitionRule, Write, initial_config
from alternation.semantics import (
    Budget,
    Verdict,
    Wellfoundedness,
    build_pivot_graph,
    check_local_closure,
    decide,
    explore_phase,
    is_alternation_wf,
    longest_pivot_path,
    solve_fixpoint,
    solve_game,
)

import oracles

E, U = StateKind.EXISTENTIAL, StateKind.UNIVERSAL
A, R, UNK = Verdict.ACCEPTED, Verdict.REJECTED, Verdict.UNKNOWN


def graph(name, w, b=Budget()):
    m = library.get(name)
    return build_pivot_graph(m, initial_config(m, w), b)


# E start stepping into a universal dead end
TWO_PHASE = Machine(("a",), ("a", "_"), {"e": E, "u": U}, "e", [TransitionRule("e", ("_",), (Move.RIGHT,), "u")])


class TestBudget:
    def test_positive(self):
        with pytest.raises(ValueError):
            Budget(0, 1, 1)

    def test_scaled(self):
        assert Budget(1, 2, 3).scaled(2) == Budget(2, 4, 6)


class TestExplorePhase:
    def test_all_existential_has_no_pivots(self):
        m = library.get("EVEN")
        m = m.replace(states={q: E for q in m.states})
        pr = explore_phase(m, initial_config(m, "aa"))
        assert pr.pivots == () and pr.complete

    def test_one_step_pivot(self):
        pr = explore_phase(TWO_PHASE, initial_config(TWO_PHASE, ""))
        assert [p.state for p in pr.pivots] == ["u"] and pr.complete

    def test_self_loop_is_complete(self):
        m = library.get("SELF_LOOP")
        pr = explore_phase(m, initial_config(m, ""))
        assert pr.pivots == () and pr.complete and pr.size == 1

    def test_phase_cap(self):
        # existential machine walking right forever
        m = Machine(("a",), ("a", "_"), {"e": E}, "e", [TransitionRule("e", ("_",), (Move.RIGHT,), "e")])
        pr = explore_phase(m, initial_config(m, ""), Budget(100, 10, 10))
        assert not pr.complete and pr.size == 10

    def test_internal_leaves(self):
        pr = explore_phase(library.get("E0"), initial_config(library.get("E0"), ""))
        assert len(pr.internal_leaves) == 1


class TestPivotGraph:
    def test_u0_single_node(self):
        g = graph("U0", "a")
        assert len(g) == 1 and list(g.pivot_edges()) == [] and g.fully_explored

    def test_two_phase(self):
        g = build_pivot_graph(TWO_PHASE, initial_config(TWO_PHASE, ""))
        assert len(g) == 2 and len(list(g.pivot_edges())) == 1

    def test_budget_one_truncates_pivot(self):
        g = build_pivot_graph(TWO_PHASE, initial_config(TWO_PHASE, ""), Budget(1, 10, 10))
        assert g.root in g.nodes
        assert [c.state for c in g.truncated] == ["u"]

    def test_depth_cap(self):
        # s (E) -> t (U) -> r (E dead end): r sits at pivot depth 2
        chain = Machine(
            ("a",),
            ("a", "_"),
            {"s": E, "t": U, "r": E},
            "s",
            [TransitionRule("s", ("_",), (Write("_"),), "t"), TransitionRule("t", ("_",), (Write("_"),), "r")],
        )
        c0 = initial_config(chain, "")
        assert not build_pivot_graph(chain, c0, Budget(100, 100, 2)).truncated
        g = build_pivot_graph(chain, c0, Budget(100, 100, 1))
        assert [c.state for c in g.truncated] == ["r"]
        assert solve_fixpoint(g).verdicts[g.root] is UNK


class TestSolvers:
    @pytest.mark.parametrize("w", ["", "a", "aaa"])
    def test_u0_accepts(self, w):
        g = graph("U0", w)
        assert solve_fixpoint(g).verdicts[g.root] is A
        assert solve_game(g).verdicts[g.root] is A

    @pytest.mark.parametrize("w", ["", "a"])
    def test_e0_rejects(self, w):
        g = graph("E0", w)
        assert solve_fixpoint(g).verdicts[g.root] is R
        assert solve_game(g).verdicts[g.root] is R

    def test_self_loop_rejected(self):
        assert decide(library.get("SELF_LOOP"), "") is R

    def test_mutual_unknown(self):
        assert decide(library.get("MUTUAL"), "a") is UNK

    def test_tiny_budget_unknown(self):
        # walking right forever in an existential phase: nothing is ever decided
        m = Machine(("a",), ("a", "_"), {"e": E, "u": U}, "e", [TransitionRule("e", ("_",), (Move.RIGHT,), "e")])
        assert decide(m, "", Budget(5, 5, 5)) is UNK

    @pytest.mark.parametrize("name,lang", [("EVEN", lambda w: len(w) % 2 == 0), ("STARTS_A", lambda w: w[:1] == "a")])
    def test_library_languages(self, name, lang):
        m = library.get(name)
        for w in words(m.input_alphabet, 4):
            assert decide(m, w) is (A if lang(w) else R), w

    def test_all_universal_gadget_loop_is_unknown(self):
        # universal root whose only pivot is undetermined: not accepted
        m = Machine(
            ("a",),
            ("a", "_"),
            {"u": U, "e": E},
            "u",
            [TransitionRule("u", ("_",), (Write("_"),), "e"), TransitionRule("e", ("_",), (Write("_"),), "u")],
        )
        assert decide(m, "") is UNK

    def test_incomplete_universal_phase_can_still_reject(self):
        # universal walker that also drops into an existential dead end
        m = Machine(
            ("a",),
            ("a", "_"),
            {"u": U, "r": E},
            "u",
            [TransitionRule("u", ("_",), (Move.RIGHT,), "u"), TransitionRule("u", ("_",), (Write("_"),), "r")],
        )
        g = build_pivot_graph(m, initial_config(m, ""), Budget(50, 20, 10))
        assert g.incomplete
        assert solve_fixpoint(g).verdicts[g.root] is R

    def test_incomplete_universal_phase_never_accepts(self):
        m = Machine(("a",), ("a", "_"), {"u": U}, "u", [TransitionRule("u", ("_",), (Move.RIGHT,), "u")])
        assert decide(m, "", Budget(50, 20, 10)) is UNK

    def test_iteration_counts(self):
        g = graph("EVEN", "aa")
        s = solve_fixpoint(g)
        assert s.ac_iterations == 2  # the universal dead end, then the root
        assert s.rc_iterations == 0


def _random_graphs(n, seed, max_len=2, b=Budget(300, 100, 300)):
    for m in generate(n, seed=seed):
        for w in words(m.input_alphabet, max_len):
            yield m, w, build_pivot_graph(m, initial_config(m, w), b)


def test_game_matches_fixpoint_on_random_machines():
    for m, w, g in _random_graphs(300, seed=7):
        assert solve_game(g).verdicts == solve_fixpoint(g).verdicts, (m, w)


def test_fixpoint_matches_reference_semantics():
    """On machines with a finite configuration space the solver must match brute force exactly."""
    checked = 0
    for m, w, g in _random_graphs(400, seed=11, max_len=3, b=Budget(3000, 3000, 3000)):
        expect = oracles.naive_verdict(m, w, limit=2000)
        if expect is None or not g.fully_explored:
            continue
        checked += 1
        assert solve_fixpoint(g).verdicts[g.root] is expect, (m, w)
    assert checked > 1000


def test_local_closure_and_negative_control():
    for m, w, g in _random_graphs(200, seed=3):
        s = solve_fixpoint(g)
        assert check_local_closure(g, s) == []
        decided = [n for n in g.edges if s.verdicts[n] is not UNK]
        if decided:
            bad = dict(s.verdicts)
            n = decided[0]
            bad[n] = R if bad[n] is A else A
            corrupted = type(s)(bad, 0, 0, False)
            assert check_local_closure(g, corrupted)


def test_closure_skips_truncated_nodes():
    g = build_pivot_graph(TWO_PHASE, initial_config(TWO_PHASE, ""), Budget(1, 10, 10))
    s = solve_fixpoint(g)
    assert g.truncated and check_local_closure(g, s) == []


def test_least_fixpoint_is_least():
    """Dropping any node from AC leaves a set that violates a closure condition (small graphs)."""
    for m, w, g in _random_graphs(150, seed=5):
        if len(g.edges) > 10:
            continue
        ac = solve_fixpoint(g).ac
        for n in ac:
            smaller = ac - {n}
            broken = False
            for x, pr in g.edges.items():
                if x in smaller:
                    continue
                if g.kind(x) is E:
                    holds = any(p in smaller for p in pr.pivots)
                else:
                    holds = pr.complete and all(p in smaller for p in pr.pivots)
                broken |= holds
            assert broken, (m, w, n)


class TestWellfoundedness:
    def test_mutual_is_not_wf(self):
        assert is_alternation_wf(graph("MUTUAL", "a")) is Wellfoundedness.NO

    def test_u0_is_wf(self):
        assert is_alternation_wf(graph("U0", "a")) is Wellfoundedness.YES

    def test_truncated_is_unknown(self):
        g = build_pivot_graph(TWO_PHASE, initial_config(TWO_PHASE, ""), Budget(1, 10, 10))
        assert is_alternation_wf(g) is Wellfoundedness.UNKNOWN

    def test_wf_graphs_are_total(self):
        for m, w, g in _random_graphs(300, seed=9):
            if is_alternation_wf(g) is Wellfoundedness.YES:
                assert UNK not in solve_fixpoint(g).verdicts.values()

    def test_longest_path(self):
        assert longest_pivot_path(graph("U0", "a")) == 0
        assert longest_pivot_path(graph("EVEN", "aa")) == 1
        assert longest_pivot_path(graph("MUTUAL", "a")) is None


def test_determinism():
    rng = random.Random(1)
    for _ in range(50):
        m = random_machine(rng)
        for w in words(m.input_alphabet, 2):
            g1 = build_pivot_graph(m, initial_config(m, w))
            g2 = build_pivot_graph(m, initial_config(m, w))
            assert list(g1.nodes.items()) == list(g2.nodes.items())
            assert solve_fixpoint(g1).verdicts == solve_fixpoint(g2).verdicts

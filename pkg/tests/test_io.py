import json
import random

import pytest
from hypothesis import given, strategies as st

from alternation import library
from alternation.corpus import random_machine
from alternation.io import ParseError, export_graph, load_graph_export, load_machine, parse_machine, serialize_machine
from alternation.machine import initial_config
from alternation.semantics import Budget, build_pivot_graph, solve_fixpoint
from alternation.transforms import combine, prepare_pair

machines = st.integers(0, 2**32 - 1).map(lambda seed: random_machine(random.Random(seed)))

HEADER = "input a\nalphabet a_\nstate q existential\n"


class TestParse:
    def test_minimal(self):
        m = parse_machine(HEADER + "start q\n")
        assert m.start == "q" and len(m.rules) == 0

    def test_comments_and_blank_lines(self):
        m = parse_machine("// c\n\n" + HEADER + "start q // here\nrule q _ + q\n")
        assert len(m.rules) == 1

    def test_undeclared_state_position(self):
        with pytest.raises(ParseError) as e:
            parse_machine(HEADER + "start q\nrule q _ + r\n")
        assert (e.value.line, e.value.column) == (5, 12)

    def test_unknown_keyword(self):
        with pytest.raises(ParseError) as e:
            parse_machine("inptu a\n")
        assert (e.value.line, e.value.column) == (1, 1)

    def test_bad_action(self):
        with pytest.raises(ParseError) as e:
            parse_machine(HEADER + "start q\nrule q _ z q\n")
        assert e.value.line == 5 and "neither a move" in str(e.value)

    def test_reserved_symbol(self):
        with pytest.raises(ParseError):
            parse_machine("input a\nalphabet a+_\n")

    def test_unknown_start(self):
        with pytest.raises(ParseError) as e:
            parse_machine(HEADER + "start p\n")
        assert e.value.line == 4

    def test_wrong_read_count(self):
        with pytest.raises(ParseError):
            parse_machine("tapes 2\n" + HEADER + "start q\nrule q _ ++ q\n")

    def test_duplicate_state(self):
        with pytest.raises(ParseError):
            parse_machine(HEADER + "state q universal\nstart q\n")

    def test_invalid_machine_rejected(self):
        with pytest.raises(ParseError):
            parse_machine("input a_\nalphabet a_\nstate q e\nstart q\n")


class TestRoundTrip:
    @pytest.mark.parametrize("name", sorted(library.MACHINES))
    def test_library(self, name):
        m = library.get(name)
        assert parse_machine(serialize_machine(m)) == m

    @given(machines)
    def test_random(self, m):
        text = serialize_machine(m)
        assert parse_machine(text) == m
        assert serialize_machine(parse_machine(text)) == text

    def test_two_tape(self):
        m = combine(*prepare_pair(library.get("EVEN"), library.get("ODD")))
        assert parse_machine(serialize_machine(m)) == m

    def test_machine_files(self):
        from pathlib import Path

        root = Path(__file__).resolve().parent.parent / "machines"
        files = sorted(root.glob("*.atm"))
        assert files
        for f in files:
            m = load_machine(f)
            assert parse_machine(serialize_machine(m)) == m


class TestExport:
    def _solved(self, name, w):
        m = library.get(name)
        g = build_pivot_graph(m, initial_config(m, w), Budget())
        return g, solve_fixpoint(g)

    def test_structured_round_trip(self):
        g, s = self._solved("EVEN", "aa")
        text = export_graph(g, s, "structured")
        doc = json.loads(text)
        assert len(doc["nodes"]) == len(g.nodes)
        assert len(doc["edges"]) == len(list(g.pivot_edges()))
        assert load_graph_export(text) == {str(n): v for n, v in s.verdicts.items()}

    def test_structured_marks_truncation(self):
        m = library.get("STARTS_A")
        g = build_pivot_graph(m, initial_config(m, "a"), Budget(2, 10, 10))
        doc = json.loads(export_graph(g, solve_fixpoint(g)))
        assert sum(n["truncated"] for n in doc["nodes"]) == len(g.truncated) > 0

    def test_dot(self):
        g, s = self._solved("MUTUAL", "a")
        text = export_graph(g, s, "dot")
        assert text.startswith("digraph pivots {")
        assert text.count("->") == len(list(g.pivot_edges())) == 2
        assert text.count("[label=") == len(g.nodes)

    def test_deterministic(self):
        g, s = self._solved("ALL_A", "aab")
        assert export_graph(g, s) == export_graph(*self._solved("ALL_A", "aab"))

    def test_unknown_format(self):
        g, s = self._solved("U0", "")
        with pytest.raises(ValueError):
            export_graph(g, s, "svg")

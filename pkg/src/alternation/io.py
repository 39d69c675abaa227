"""Text format for machines, and graph exports (Graphviz dot and JSON).

Machine documents are line oriented; ``//`` starts a comment::

    machine EVEN
    tapes 1
    input a
    alphabet a_
    blank _
    state s existential
    state acc universal
    start s
    rule s _ + e

A rule line is ``rule FROM READS ACTS TO`` where READS has one glyph per tape
and ACTS one of ``+`` (right), ``-`` (left) or a glyph to write, per tape.
Symbols are single characters other than whitespace, ``+`` and ``-``.
"""
from __future__ import annotations

import json

from .machine import Configuration, Machine, Move, StateKind, TransitionRule, Write, validate_machine
from .semantics import PivotGraph, SolveResult, Verdict

__all__ = [
    "ParseError",
    "parse_machine",
    "serialize_machine",
    "load_machine",
    "export_graph",
    "load_graph_export",
    "config_key",
]

_KINDS = {
    "existential": StateKind.EXISTENTIAL,
    "e": StateKind.EXISTENTIAL,
    "universal": StateKind.UNIVERSAL,
    "u": StateKind.UNIVERSAL,
}
_RESERVED = {"+", "-"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


def _symbols(value: str, lineno: int, col: int) -> tuple[str, ...]:
    for i, ch in enumerate(value):
        if ch in _RESERVED:
            raise ParseError(f"{ch!r} is reserved and cannot be a symbol", lineno, col + i)
    if len(set(value)) != len(value):
        raise ParseError("duplicate symbol", lineno, col)
    return tuple(value)


def _tokens(line: str) -> list[tuple[str, int]]:
    out, i = [], 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_machine(text: str) -> Machine:
    name = "M"
    tapes = 1
    sigma: tuple[str, ...] | None = None
    gamma: tuple[str, ...] | None = None
    blank = "_"
    states: dict[str, StateKind] = {}
    start = None
    start_pos = (None, None)
    rule_lines: list[tuple[int, list[tuple[str, int]]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        key, kcol = toks[0]
        args = toks[1:]
        if key == "machine":
            name = " ".join(t for t, _ in args) or name
        elif key == "tapes":
            if len(args) != 1 or not args[0][0].isdigit() or int(args[0][0]) < 1:
                raise ParseError("tapes expects a positive integer", lineno, args[0][1] if args else kcol)
            tapes = int(args[0][0])
        elif key == "input":
            if len(args) > 1:
                raise ParseError("input alphabet must be one word of glyphs", lineno, args[1][1])
            sigma = _symbols(args[0][0], lineno, args[0][1]) if args else ()
        elif key == "alphabet":
            if len(args) != 1:
                raise ParseError("alphabet must be one word of glyphs", lineno, kcol)
            gamma = _symbols(args[0][0], lineno, args[0][1])
        elif key == "blank":
            if len(args) != 1 or len(args[0][0]) != 1:
                raise ParseError("blank must be a single glyph", lineno, kcol)
            blank = args[0][0]
        elif key == "state":
            if len(args) != 2:
                raise ParseError("expected: state NAME existential|universal", lineno, kcol)
            (q, qcol), (k, col) = args
            if k.lower() not in _KINDS:
                raise ParseError(f"unknown state kind {k!r}", lineno, col)
            if q in states:
                raise ParseError(f"state {q!r} declared twice", lineno, qcol)
            states[q] = _KINDS[k.lower()]
        elif key == "start":
            if len(args) != 1:
                raise ParseError("expected: start NAME", lineno, kcol)
            start, start_pos = args[0][0], (lineno, args[0][1])
        elif key == "rule":
            rule_lines.append((lineno, args))
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno, kcol)

    if gamma is None:
        raise ParseError("missing 'alphabet' line")
    if sigma is None:
        raise ParseError("missing 'input' line")
    if start is None:
        raise ParseError("missing 'start' line")
    if start not in states:
        raise ParseError(f"unknown start state {start!r}", *start_pos)

    rules = []
    for lineno, args in rule_lines:
        if len(args) != 4:
            raise ParseError("expected: rule FROM READS ACTS TO", lineno, args[0][1] if args else 1)
        (src, scol), (reads, rcol), (acts, acol), (dst, dcol) = args
        for q, col in ((src, scol), (dst, dcol)):
            if q not in states:
                raise ParseError(f"undeclared state {q!r}", lineno, col)
        if len(reads) != tapes:
            raise ParseError(f"expected {tapes} read glyph(s), got {len(reads)}", lineno, rcol)
        if len(acts) != tapes:
            raise ParseError(f"expected {tapes} action glyph(s), got {len(acts)}", lineno, acol)
        for i, ch in enumerate(reads):
            if ch not in gamma:
                raise ParseError(f"read symbol {ch!r} not in alphabet", lineno, rcol + i)
        parsed = []
        for i, ch in enumerate(acts):
            if ch == "+":
                parsed.append(Move.RIGHT)
            elif ch == "-":
                parsed.append(Move.LEFT)
            elif ch in gamma:
                parsed.append(Write(ch))
            else:
                raise ParseError(f"action {ch!r} is neither a move nor an alphabet symbol", lineno, acol + i)
        rules.append(TransitionRule(src, tuple(reads), tuple(parsed), dst))

    m = Machine(
        input_alphabet=sigma,
        tape_alphabet=gamma,
        states=states,
        start=start,
        rules=rules,
        blank=blank,
        tapes=tapes,
        name=name,
    )
    report = validate_machine(m)
    if not report.ok:
        raise ParseError("invalid machine: " + "; ".join(report.violations))
    return m


def _glyph(s: str) -> str:
    if len(s) != 1 or s.isspace() or s in _RESERVED:
        raise ValueError(f"symbol {s!r} has no single-glyph text form")
    return s


def serialize_machine(m: Machine) -> str:
    lines = [
        f"machine {m.name}",
        f"tapes {m.tapes}",
        "input " + "".join(_glyph(s) for s in m.input_alphabet) if m.input_alphabet else "input",
        "alphabet " + "".join(_glyph(s) for s in m.tape_alphabet),
        f"blank {_glyph(m.blank)}",
    ]
    for q, k in m.states.items():
        if not q or any(ch.isspace() for ch in q) or "//" in q:
            raise ValueError(f"state name {q!r} cannot be serialized")
        lines.append(f"state {q} {k.value}")
    lines.append(f"start {m.start}")
    for r in m.rules:
        acts = "".join(a.value if isinstance(a, Move) else _glyph(a.symbol) for a in r.acts)
        lines.append(f"rule {r.source} {''.join(_glyph(s) for s in r.reads)} {acts} {r.target}")
    return "\n".join(lines) + "\n"


def load_machine(path) -> Machine:
    with open(path, encoding="utf-8") as fh:
        return parse_machine(fh.read())


def config_key(c: Configuration) -> str:
    """Stable printable identity of a configuration."""
    return str(c)


_COLORS = {Verdict.ACCEPTED: "palegreen", Verdict.REJECTED: "lightcoral", Verdict.UNKNOWN: "lightgray"}


def _graph_nodes(g: PivotGraph, s: SolveResult):
    ids = {n: f"n{i}" for i, n in enumerate(g.nodes)}
    nodes = []
    for n, depth in g.nodes.items():
        pr = g.edges.get(n)
        nodes.append(
            {
                "id": ids[n],
                "config": config_key(n),
                "state": n.state,
                "kind": g.kind(n).value,
                "verdict": s.verdicts[n].value,
                "depth": depth,
                "complete": bool(pr and pr.complete),
                "truncated": n in g.truncated,
                "phase_size": pr.size if pr else 0,
            }
        )
    edges = [[ids[a], ids[b]] for a, b in g.pivot_edges()]
    return ids, nodes, edges


def export_graph(g: PivotGraph, s: SolveResult, format: str = "structured") -> str:
    """Render a solved pivot graph as Graphviz ``dot`` or as JSON (``structured``)."""
    ids, nodes, edges = _graph_nodes(g, s)
    if format == "structured":
        doc = {
            "schema": "alternation.pivot-graph/1",
            "machine": g.machine.name,
            "root": ids[g.root],
            "nodes": nodes,
            "edges": edges,
            "ac_iterations": s.ac_iterations,
            "rc_iterations": s.rc_iterations,
            "budget_exhausted": s.budget_exhausted,
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if format != "dot":
        raise ValueError(f"unknown export format {format!r}")
    out = ["digraph pivots {", "  node [style=filled];"]
    for node in nodes:
        shape = "diamond" if node["kind"] == "existential" else "box"
        style = "filled,dashed" if node["truncated"] or not node["complete"] else "filled"
        if node["id"] == ids[g.root]:
            style += ",bold"
        label = node["config"].replace("\\", "\\\\").replace('"', '\\"')
        color = _COLORS[Verdict(node["verdict"])]
        out.append(f'  {node["id"]} [label="{label}", shape={shape}, fillcolor={color}, style="{style}"];')
    for a, b in edges:
        out.append(f"  {a} -> {b};")
    out.append("}")
    return "\n".join(out) + "\n"


def load_graph_export(text: str) -> dict[str, Verdict]:
    """Verdict per configuration key from a ``structured`` export."""
    doc = json.loads(text)
    return {n["config"]: Verdict(n["verdict"]) for n in doc["nodes"]}

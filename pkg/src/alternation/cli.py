"""Command line entry point.

Exit codes: 0 accepted (or success), 1 rejected, 2 unknown, 3 usage error,
4 unreadable or invalid machine/spec/input, 5 failed self-check.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import matrices
from .hierarchy import CompileError, FormulaSpec, MatrixAcceptor, Quantifier, classify_level, compile_pi11, compile_prefix
from .io import ParseError, export_graph, load_machine, parse_machine, serialize_machine
from .machine import InputError, initial_config, validate_machine
from .semantics import (
    Budget,
    Verdict,
    build_pivot_graph,
    check_local_closure,
    is_alternation_wf,
    solve_fixpoint,
    solve_game,
)
from .transforms import TransformError, combine, dual, normalize_start, one_sided, prepare_pair

EXIT_USAGE = 3
EXIT_INVALID = 4
EXIT_SELFCHECK = 5
VERDICT_EXIT = {Verdict.ACCEPTED: 0, Verdict.REJECTED: 1, Verdict.UNKNOWN: 2}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Invalid(Exception):
    pass


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _budget_flags(p: argparse.ArgumentParser) -> None:
    d = Budget()
    p.add_argument("--max-configs", type=_positive, default=d.max_configs)
    p.add_argument("--max-phase-steps", type=_positive, default=d.max_phase_steps)
    p.add_argument("--max-pivot-depth", type=_positive, default=d.max_pivot_depth)


def _budget(args) -> Budget:
    return Budget(args.max_configs, args.max_phase_steps, args.max_pivot_depth)


def _load(path):
    try:
        return load_machine(path)
    except OSError as e:
        raise _Invalid(f"{path}: {e.strerror}") from None
    except ParseError as e:
        raise _Invalid(f"{path}: {e}") from None


def _graph(m, w, b):
    try:
        c0 = initial_config(m, w)
    except InputError as e:
        raise _Invalid(str(e)) from None
    return build_pivot_graph(m, c0, b)


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_validate(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise _Invalid(f"{args.file}: {e.strerror}") from None
    try:
        m = parse_machine(text)
    except ParseError as e:
        print(f"{args.file}: {e}", file=sys.stderr)
        return EXIT_INVALID
    report = validate_machine(m)
    for w in report.warnings:
        print(f"warning: {w}")
    print(f"ok: {m.name}: {len(m.states)} states, {len(m.rules)} rules, {m.tapes} tape(s)")
    return 0


def cmd_run(args) -> int:
    m = _load(args.file)
    g = _graph(m, args.input, _budget(args))
    s = solve_fixpoint(g)
    v = s.verdicts[g.root]
    print(
        f"{v.value} nodes={len(g)} truncated={len(g.truncated)} "
        f"budget_exhausted={str(g.budget_exhausted).lower()} wf={is_alternation_wf(g).value}"
    )
    if args.export:
        fmt, path = args.export
        if fmt not in ("dot", "structured"):
            raise _Invalid(f"unknown export format {fmt!r} (use dot or structured)")
        _emit(export_graph(g, s, fmt), path)
    return VERDICT_EXIT[v]


def cmd_transform(args) -> int:
    m = _load(args.file)
    ops = {
        "dual": dual,
        "plus": lambda x: one_sided(x, "plus"),
        "minus": lambda x: one_sided(x, "minus"),
        "normalize-start": normalize_start,
    }
    try:
        out = ops[args.op](m)
    except TransformError as e:
        raise _Invalid(str(e)) from None
    _emit(serialize_machine(out), args.output)
    return 0


def cmd_combine(args) -> int:
    m0, m1 = _load(args.file0), _load(args.file1)
    try:
        if args.prepare:
            m0, m1 = prepare_pair(m0, m1)
        out = combine(m0, m1)
    except TransformError as e:
        raise _Invalid(str(e)) from None
    _emit(serialize_machine(out), args.output)
    return 0


def cmd_classify(args) -> int:
    m = _load(args.file)
    try:
        rep = classify_level(m, args.input, _budget(args))
    except InputError as e:
        raise _Invalid(str(e)) from None
    pivots = "cycle" if rep.max_pivots is None else str(rep.max_pivots)
    claim = rep.claimed_level or "unknown"
    print(f"start={rep.start_kind.value} max_pivots={pivots} exhaustive={str(rep.exhaustive).lower()} level={claim}")
    return 0 if rep.claimed_level else 2


def _matrix_from(doc: dict, base: str) -> MatrixAcceptor:
    arity = doc.get("arity")
    if "builtin" in doc:
        kwargs = dict(doc.get("args", {}))
        try:
            mx = matrices.builtin(doc["builtin"], **kwargs)
        except (KeyError, TypeError) as e:
            raise _Invalid(f"matrix: {e}") from None
        if arity is not None and arity != mx.arity:
            mx = MatrixAcceptor(mx.machine, mx.accept_halt, mx.reject_halt, arity, mx.step_bound)
        return mx
    if "file" in doc:
        m = _load(os.path.join(base, doc["file"]))
    elif "text" in doc:
        try:
            m = parse_machine(doc["text"])
        except ParseError as e:
            raise _Invalid(f"matrix: {e}") from None
    else:
        raise _Invalid("matrix needs one of 'builtin', 'file' or 'text'")
    try:
        return MatrixAcceptor(m, doc["accept_halt"], doc["reject_halt"], int(arity), int(doc.get("step_bound", 10_000)))
    except (KeyError, TypeError) as e:
        raise _Invalid(f"matrix: missing or bad field {e}") from None


def cmd_compile(args) -> int:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise _Invalid(f"{args.spec}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise _Invalid(f"{args.spec}: {e}") from None
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise _Invalid(f"{args.spec}: expected an object with a 'matrix' field")
    mx = _matrix_from(doc["matrix"], os.path.dirname(os.path.abspath(args.spec)))
    kind = doc.get("kind", "prefix")
    try:
        if kind == "pi11":
            m = compile_pi11(mx)
        elif kind == "prefix":
            blocks = tuple((Quantifier(q), int(n)) for q, n in doc.get("blocks", ()))
            m = compile_prefix(FormulaSpec(blocks, mx))
        else:
            raise _Invalid(f"unknown kind {kind!r} (use prefix or pi11)")
    except (CompileError, ValueError) as e:
        raise _Invalid(f"{args.spec}: {e}") from None
    _emit(serialize_machine(m), args.output)
    return 0


def cmd_selfcheck(args) -> int:
    m = _load(args.file)
    g = _graph(m, args.input, _budget(args))
    fix, game = solve_fixpoint(g), solve_game(g)
    problems = check_local_closure(g, fix)
    disagree = [n for n in g.nodes if fix.verdicts[n] is not game.verdicts[n]]
    for p in problems:
        print(f"closure: {p}")
    for n in disagree:
        print(f"oracle: {n}: fixpoint={fix.verdicts[n].value} game={game.verdicts[n].value}")
    ok = not problems and not disagree
    print(f"{'ok' if ok else 'FAILED'}: {len(g)} nodes, root {fix.verdicts[g.root].value}")
    return 0 if ok else EXIT_SELFCHECK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alternation", description="Alternating Turing machines with pivot-based acceptance.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="parse and check a machine file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("run", help="decide one input under a budget")
    s.add_argument("file")
    s.add_argument("--input", default="", metavar="W")
    _budget_flags(s)
    s.add_argument("--export", nargs=2, metavar=("FORMAT", "PATH"), help="dot or structured; PATH '-' for stdout")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("transform", help="dual, one-sided or start-normalized machine")
    s.add_argument("file")
    s.add_argument("--op", required=True, choices=["dual", "plus", "minus", "normalize-start"])
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("combine", help="two-tape product of an acceptor and a co-acceptor")
    s.add_argument("file0")
    s.add_argument("file1")
    s.add_argument(
        "--prepare",
        action="store_true",
        help="treat FILE0/FILE1 as acceptors of a language and its complement and make them one-sided first",
    )
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_combine)

    s = sub.add_parser("classify", help="count alternation pivots per branch")
    s.add_argument("file")
    s.add_argument("--input", default="", metavar="W")
    _budget_flags(s)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("compile", help="compile a quantifier-prefix spec (JSON) into a machine")
    s.add_argument("--spec", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("selfcheck", help="closure check and fixpoint-vs-game cross-check")
    s.add_argument("file")
    s.add_argument("--input", default="", metavar="W")
    _budget_flags(s)
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Invalid as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

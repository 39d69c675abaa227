"""Alternating Turing machines with pivot-based (inductive) acceptance."""
from .machine import (
    Configuration,
    InputError,
    Machine,
    Move,
    StateKind,
    Tape,
    TransitionRule,
    ValidationReport,
    Write,
    canonicalize,
    classify_config,
    initial_config,
    successors,
    validate_machine,
)
from .semantics import (
    Budget,
    PhaseResult,
    PivotGraph,
    SolveResult,
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
from .transforms import TransformError, combine, dual, normalize_start, one_sided, one_sided_overhead, prepare_pair
from .hierarchy import (
    CompileError,
    FormulaSpec,
    LevelReport,
    MatrixAcceptor,
    Quantifier,
    classify_level,
    compile_pi1,
    compile_pi11,
    compile_prefix,
    compile_sigma1,
    run_matrix,
)
from .io import ParseError, export_graph, load_graph_export, load_machine, parse_machine, serialize_machine
from .estimator import AlternatingAcceptor

__version__ = "0.1.0"

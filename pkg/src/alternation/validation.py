"""Input checks shared by the estimator wrapper and the command line."""
from __future__ import annotations

import os

import numpy as np

from .io import load_machine, parse_machine
from .machine import Machine, validate_machine
from .semantics import Budget

__all__ = ["check_machine", "check_words", "check_budget"]


def check_machine(machine) -> Machine:
    """Accept a :class:`Machine`, machine text, or a path to a machine file."""
    if isinstance(machine, Machine):
        report = validate_machine(machine)
        if not report.ok:
            raise ValueError("invalid machine: " + "; ".join(report.violations))
        return machine
    if isinstance(machine, (str, os.PathLike)):
        text = os.fspath(machine)
        if "\n" not in text and os.path.exists(text):
            return load_machine(text)
        return parse_machine(text)
    raise TypeError(f"expected a Machine, machine text or a path, got {type(machine).__name__}")


def check_words(X, alphabet) -> list[str]:
    """Flatten ``X`` (a string or a 1-d array-like of strings) into a list of input words over ``alphabet``."""
    if isinstance(X, str):
        X = [X]
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d collection of strings, got shape {arr.shape}")
    allowed = set(alphabet)
    out = []
    for i, w in enumerate(arr):
        if not isinstance(w, str):
            raise TypeError(f"item {i} is {type(w).__name__}, not str")
        bad = [ch for ch in w if ch not in allowed]
        if bad:
            raise ValueError(f"item {i} ({w!r}) uses symbol {bad[0]!r} outside the input alphabet")
        out.append(w)
    return out


def check_budget(max_configs, max_phase_steps, max_pivot_depth) -> Budget:
    values = {"max_configs": max_configs, "max_phase_steps": max_phase_steps, "max_pivot_depth": max_pivot_depth}
    for name, v in values.items():
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise TypeError(f"{name} must be an integer, got {v!r}")
    return Budget(**{k: int(v) for k, v in values.items()})

"""scikit-learn style wrapper: a machine as a classifier of input strings."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .semantics import Verdict, build_pivot_graph, solve_fixpoint
from .machine import initial_config
from .validation import check_budget, check_machine, check_words

__all__ = ["AlternatingAcceptor"]


class AlternatingAcceptor(ClassifierMixin, BaseEstimator):
    """Label words ``"accepted"``, ``"rejected"`` or ``"unknown"`` under a fixed budget.

    Nothing is learned: ``fit`` only validates the machine and the budget,
    so the estimator can sit in pipelines and be scored against labels.

    >>> from alternation.library import EVEN
    >>> AlternatingAcceptor(EVEN).fit().predict(["", "a", "aa"]).tolist()
    ['accepted', 'rejected', 'accepted']
    """

    def __init__(self, machine=None, max_configs=2000, max_phase_steps=500, max_pivot_depth=2000):
        self.machine = machine
        self.max_configs = max_configs
        self.max_phase_steps = max_phase_steps
        self.max_pivot_depth = max_pivot_depth

    def fit(self, X=None, y=None):
        if self.machine is None:
            raise ValueError("no machine given")
        self.machine_ = check_machine(self.machine)
        self.budget_ = check_budget(self.max_configs, self.max_phase_steps, self.max_pivot_depth)
        self.classes_ = np.array([v.value for v in Verdict], dtype=object)
        if X is not None:
            check_words(X, self.machine_.input_alphabet)
        return self

    def decision_path(self, X):
        """Solved pivot graph per word (graph, solve result)."""
        check_is_fitted(self, "machine_")
        out = []
        for w in check_words(X, self.machine_.input_alphabet):
            g = build_pivot_graph(self.machine_, initial_config(self.machine_, w), self.budget_)
            out.append((g, solve_fixpoint(g)))
        return out

    def predict(self, X):
        labels = [s.verdicts[g.root].value for g, s in self.decision_path(X)]
        return np.array(labels, dtype=object)

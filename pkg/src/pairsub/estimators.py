"""Estimator-style selectors: fit an instance once, reuse the chosen subset.

These wrap the functional strategies behind the familiar
get_params/set_params/fit/transform surface so selection composes with
pipeline-style tooling.  fit accepts anything as_oracle understands: a
SetFunctionOracle, a spec dataclass, an instance dict, or a path to an
instance JSON file.
"""

from __future__ import annotations

import inspect

from .algorithms import audit_trace, run_algorithm
from .functions import as_oracle


class SubsetSelector:
    """Base selector; subclasses pin the strategy.

    Parameters
    ----------
    n_select : int
        Number of elements to pick.

    Attributes (after fit)
    ----------------------
    selected_ : list[int]
        Chosen element ids in selection order.
    trace_ : RunTrace
        Full record of the run, including query counts.
    """

    algorithm = ""

    def __init__(self, n_select: int):
        self.n_select = n_select

    def _param_names(self):
        signature = inspect.signature(type(self).__init__)
        return [name for name in signature.parameters if name != "self"]

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {sorted(valid)}"
                )
            setattr(self, name, value)
        return self

    def fit(self, instance, audit_with=None):
        """Run the strategy on the instance and store the selection."""
        oracle = as_oracle(instance)
        trace = run_algorithm(
            self.algorithm, oracle, self.n_select, k=getattr(self, "k", None)
        )
        if audit_with is not None:
            trace = audit_trace(trace, as_oracle(audit_with))
        self.trace_ = trace
        self.selected_ = trace.selected_order
        return self

    def _check_fitted(self):
        if not hasattr(self, "selected_"):
            raise RuntimeError(
                f"{type(self).__name__} has not been fitted; call fit first"
            )

    def transform(self, items):
        """Pick the selected positions out of a sequence or array."""
        self._check_fitted()
        try:
            return items[self.selected_]  # numpy-style fancy indexing
        except TypeError:
            return [items[i] for i in self.selected_]

    def fit_transform(self, instance, items, audit_with=None):
        return self.fit(instance, audit_with=audit_with).transform(items)

    def score(self, instance) -> float:
        """Objective value of the fitted selection under the given instance."""
        self._check_fitted()
        return as_oracle(instance).evaluate(self.selected_)

    def __repr__(self):
        params = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({params})"


class FullGreedy(SubsetSelector):
    """Full-information greedy; needs an unlimited-budget instance."""

    algorithm = "full"


class UninformedGreedy(SubsetSelector):
    """Ranks by singleton value only; budget 1 suffices."""

    algorithm = "uninformed"


class OptimisticGreedy(SubsetSelector):
    """Pairwise strategy maximizing the upper marginal estimate."""

    algorithm = "optimistic"


class PessimisticGreedy(SubsetSelector):
    """Pairwise strategy maximizing the guaranteed (lower) marginal estimate."""

    algorithm = "pessimistic"


class KWiseOptimisticGreedy(SubsetSelector):
    algorithm = "k_wise_optimistic"

    def __init__(self, n_select: int, k: int = 2):
        super().__init__(n_select)
        self.k = k

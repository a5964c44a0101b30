"""Set-function oracles, information budgets, and pairwise marginal estimates.

An oracle answers f(S) only for sets within its declared budget; a budget of
2 is the pairwise-information regime.  Three estimates of the marginal
return f(x|S) are maintained on top of pairwise queries:

* upper_estimate      -- minimum pairwise marginal, an optimistic bound,
* k_wise_upper_estimate -- the same minimum over all conditioning subsets of
  size below k,
* lower_estimate      -- singleton value minus the summed pairwise
  redundancies, a pessimistic bound (valid under supermodularity of
  conditioning; may be negative).

EstimateCache keeps the current upper/lower value for every candidate and
updates them in constant time per candidate when the partial solution grows,
which is what makes the pairwise greedy strategies linear in the number of
selections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .errors import BudgetExceeded, DuplicateElement
from .validation import as_id_set, check_element_ids

ElementId = int


class SetFunctionOracle:
    """Black-box access to f: 2^X -> R with an optional query-size budget.

    Queries above the budget raise BudgetExceeded rather than being answered.
    Instances are immutable after construction and safe for concurrent
    read-only evaluation.
    """

    __slots__ = ("ground_size", "budget", "name", "spec", "_eval")

    def __init__(
        self,
        ground_size: int,
        eval_fn: Callable[[frozenset], float],
        budget: int | None = None,
        name: str = "oracle",
        spec=None,
    ):
        if ground_size < 1:
            raise ValueError("ground_size must be a positive integer")
        if budget is not None and budget < 1:
            raise ValueError("budget must be >= 1, or None for unlimited")
        object.__setattr__(self, "ground_size", ground_size)
        object.__setattr__(self, "budget", budget)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "_eval", eval_fn)

    def __setattr__(self, key, value):
        raise AttributeError("oracles are immutable")

    @property
    def unlimited(self) -> bool:
        return self.budget is None

    def evaluate(self, ids: Iterable[int]) -> float:
        """f(S).  Rejects out-of-range ids and over-budget queries."""
        s = as_id_set(ids)
        check_element_ids(s, self.ground_size)
        if self.budget is not None and len(s) > self.budget:
            raise BudgetExceeded(
                f"query of size {len(s)} exceeds information budget {self.budget}"
            )
        return float(self._eval(s))

    def marginal(self, x: int, ids: Iterable[int]) -> float:
        """f(x|S) = f(S u {x}) - f(S)."""
        s = as_id_set(ids)
        if x in s:
            raise DuplicateElement(f"element {x} already in the conditioning set")
        return self.evaluate(s | {x}) - self.evaluate(s)

    def restricted(self, budget: int) -> "SetFunctionOracle":
        """A view of the same function with a (tighter) budget."""
        if budget < 1:
            raise ValueError("budget must be >= 1")
        effective = budget if self.budget is None else min(budget, self.budget)
        return SetFunctionOracle(
            self.ground_size, self._eval, budget=effective, name=self.name, spec=self.spec
        )


@dataclass
class QueryCounts:
    """Oracle queries issued by one run, bucketed by set size.

    work_units accumulates max(1, |S|) per query: a machine-independent
    proxy for evaluation cost when f costs time linear in |S|.
    """

    size1: int = 0
    size2: int = 0
    other: int = 0
    work_units: int = 0

    def record(self, size: int) -> None:
        if size == 1:
            self.size1 += 1
        elif size == 2:
            self.size2 += 1
        else:
            self.other += 1
        self.work_units += max(1, size)

    @property
    def total(self) -> int:
        return self.size1 + self.size2 + self.other

    def to_dict(self) -> dict:
        return {"size1": self.size1, "size2": self.size2, "other": self.other}


class CountingOracle:
    """Per-run counting view over an oracle.

    Owned by a single run; never share one across concurrent runs.  Only
    successfully answered queries are counted.
    """

    __slots__ = ("inner", "counts")

    def __init__(self, inner: SetFunctionOracle):
        self.inner = inner
        self.counts = QueryCounts()

    @property
    def ground_size(self) -> int:
        return self.inner.ground_size

    @property
    def budget(self):
        return self.inner.budget

    def evaluate(self, ids: Iterable[int]) -> float:
        s = as_id_set(ids)
        value = self.inner.evaluate(s)
        self.counts.record(len(s))
        return value

    def marginal(self, x: int, ids: Iterable[int]) -> float:
        s = as_id_set(ids)
        if x in s:
            raise DuplicateElement(f"element {x} already in the conditioning set")
        return self.evaluate(s | {x}) - self.evaluate(s)


def marginal(oracle, x: int, ids: Iterable[int]) -> float:
    """Marginal return of x given S; equals f(x) when S is empty."""
    return oracle.marginal(x, ids)


def upper_estimate(oracle, x: int, ids: Iterable[int]) -> float:
    """Optimistic estimate: min pairwise marginal of x over the set.

    Returns f(x) for an empty conditioning set.  By submodularity this never
    falls below the true marginal f(x|S).
    """
    s = as_id_set(ids)
    if x in s:
        raise DuplicateElement(f"element {x} already in the conditioning set")
    if not s:
        return oracle.evaluate((x,))
    return min(oracle.evaluate((x, y)) - oracle.evaluate((y,)) for y in sorted(s))


def k_wise_upper_estimate(oracle, x: int, ids: Iterable[int], k: int) -> float:
    """min f(x|A) over all A within the set with |A| < k.

    Non-increasing in k; equals upper_estimate at k=2 and f(x) for an empty
    set.  Enumerates subsets naively, so cost grows as C(|S|, k-1).
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    s = as_id_set(ids)
    if x in s:
        raise DuplicateElement(f"element {x} already in the conditioning set")
    best = oracle.evaluate((x,))  # A = empty set
    members = sorted(s)
    for size in range(1, min(k - 1, len(members)) + 1):
        for subset in combinations(members, size):
            best = min(best, oracle.evaluate(subset + (x,)) - oracle.evaluate(subset))
    return best


def lower_estimate(oracle, x: int, ids: Iterable[int]) -> float:
    """Pessimistic estimate: f(x) minus the summed pairwise redundancies.

    May be negative; callers that need the paper's clamping (the infinite
    approximation factor branch) apply it themselves.
    """
    s = as_id_set(ids)
    if x in s:
        raise DuplicateElement(f"element {x} already in the conditioning set")
    fx = oracle.evaluate((x,))
    value = fx
    for y in sorted(s):
        pm = oracle.evaluate((x, y)) - oracle.evaluate((y,))
        value -= fx - pm
    return value


class EstimateCache:
    """Current upper/lower marginal estimates for every unselected element.

    base holds f(x) for all elements; upper and lower hold the estimates
    conditioned on the current partial solution.  condition_on folds one new
    selection into both estimates with a single pairwise query per remaining
    candidate.  Owned by a single run.
    """

    def __init__(self, oracle, elements: Iterable[int] | None = None):
        ids = sorted(range(oracle.ground_size) if elements is None else elements)
        self.base = {x: oracle.evaluate((x,)) for x in ids}
        self.upper = dict(self.base)
        self.lower = dict(self.base)
        self.conditioned_on: list[int] = []
        self._order = ids

    def condition_on(self, x_i: int, oracle) -> None:
        """Move x_i into the conditioning set and refresh all candidates."""
        if x_i not in self.upper:
            raise DuplicateElement(f"element {x_i} was already selected")
        self.upper.pop(x_i)
        self.lower.pop(x_i)
        self._order.remove(x_i)
        f_xi = self.base[x_i]
        for x in self._order:
            pm = oracle.evaluate((x, x_i)) - f_xi
            if pm < self.upper[x]:
                self.upper[x] = pm
            self.lower[x] = self.lower[x] - (self.base[x] - pm)
        self.conditioned_on.append(x_i)

    def remaining(self) -> list[int]:
        return list(self._order)

    def argmax_upper(self) -> tuple[int, float]:
        return self._argmax(self.upper)

    def argmax_lower(self) -> tuple[int, float]:
        return self._argmax(self.lower)

    def max_upper(self) -> float:
        return max(self.upper[x] for x in self._order)

    def _argmax(self, table: dict) -> tuple[int, float]:
        if not self._order:
            raise ValueError("no candidates remain")
        best_x = None
        best_v = float("-inf")
        for x in self._order:  # ascending ids: ties go to the lowest id
            v = table[x]
            if v > best_v:
                best_v, best_x = v, x
        return best_x, best_v

"""Input validation helpers and the package-wide numeric tolerances."""

from __future__ import annotations

from typing import Iterable

from .errors import UnknownElement

# Relative tolerance for comparing function values; absolute floor near zero.
# Marginals of large coverage sums accumulate float error around 1e-12.
REL_TOL = 1e-9
ABS_TOL = 1e-12


def tolerance(*values: float) -> float:
    """Mixed comparison slack for the given magnitudes."""
    scale = max((abs(v) for v in values), default=0.0)
    return max(ABS_TOL, REL_TOL * scale)


def values_close(a: float, b: float) -> bool:
    return abs(a - b) <= tolerance(a, b)


def at_least(a: float, b: float) -> bool:
    """True when a >= b up to tolerance."""
    return a >= b - tolerance(a, b)


def near_zero(v: float) -> bool:
    return abs(v) <= ABS_TOL


def as_id_set(ids: Iterable[int]) -> frozenset:
    return ids if isinstance(ids, frozenset) else frozenset(ids)


def check_element_ids(ids: Iterable[int], ground_size: int) -> None:
    for x in ids:
        if not isinstance(x, int) or isinstance(x, bool):
            raise UnknownElement(f"element ids must be integers, got {x!r}")
        if not 0 <= x < ground_size:
            raise UnknownElement(
                f"element id {x} outside ground set [0, {ground_size})"
            )


def check_cardinality(n: int, ground_size: int) -> None:
    from .errors import CardinalityTooLarge

    if n < 0:
        raise CardinalityTooLarge(f"cardinality must be non-negative, got {n}")
    if n > ground_size:
        raise CardinalityTooLarge(
            f"cardinality {n} exceeds ground set size {ground_size}"
        )

"""Shared helpers: ordering keys, monotone maps, budgets."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Any, Iterable

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive search needs more candidate steps than allowed."""


class Budget:
    """Counter shared by one search; raises once the cap is crossed."""

    __slots__ = ("cap", "used")

    def __init__(self, cap: int | None = None):
        self.cap = DEFAULT_BUDGET if cap is None else int(cap)
        self.used = 0

    def spend(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.cap:
            raise BudgetExceeded(f"enumeration budget of {self.cap} candidate steps exceeded")


def set_default_budget(cap: int) -> None:
    """Change the cap used when no explicit budget is given."""
    global DEFAULT_BUDGET
    DEFAULT_BUDGET = int(cap)


def default_budget() -> int:
    return DEFAULT_BUDGET


def sortkey(x: Any):
    """Total order on nested tuples of ints and strings."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, (tuple, list)):
        return (2, tuple(sortkey(y) for y in x))
    if x is None:
        return (-1,)
    return (3, repr(x))


def sorted_cells(cells: Iterable) -> tuple:
    s = set(cells)
    try:
        # homogeneous cells (the common case) compare natively and much faster
        return tuple(sorted(s))
    except TypeError:
        return tuple(sorted(s, key=sortkey))


def monotone_maps(a: int, n: int) -> list[tuple[int, ...]]:
    """All monotone maps [a] -> [n], as value tuples, in lexicographic order."""
    if a < 0:
        return [()]
    return list(combinations_with_replacement(range(n + 1), a + 1))


def freeze(x: Any):
    """JSON lists back to tuples, recursively."""
    if isinstance(x, list):
        return tuple(freeze(y) for y in x)
    return x


def thaw(x: Any):
    if isinstance(x, tuple):
        return [thaw(y) for y in x]
    return x


def is_convex(subset: Iterable[int]) -> bool:
    s = sorted(set(subset))
    return not s or s[-1] - s[0] + 1 == len(s)

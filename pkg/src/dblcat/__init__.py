"""Finite double categories, their nerves, and companionship combinatorics."""

from ._util import Budget, BudgetExceeded, default_budget, set_default_budget
from .bisimplicial import BisimplicialMap, FinBisimplicialSet
from .double_cat import FinDoubleCategory, FinTwoCategory, InvalidStructure, load_structure

__version__ = "0.1.0"

__all__ = [
    "Budget", "BudgetExceeded", "default_budget", "set_default_budget",
    "BisimplicialMap", "FinBisimplicialSet",
    "FinDoubleCategory", "FinTwoCategory", "InvalidStructure", "load_structure",
]

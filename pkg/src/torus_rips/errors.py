"""Shared exception types for contract violations and resource budgets."""

from __future__ import annotations


class BudgetError(RuntimeError):
    """A configured resource budget was exceeded (simplex count, matrix size, time)."""


class SimplexBudgetError(BudgetError):
    """Clique enumeration hit the global simplex budget.

    Carries the budget and the dimension that was being enumerated when the
    budget ran out, so callers can report how deep the enumeration got.
    """

    def __init__(self, budget: int, dim: int) -> None:
        super().__init__(
            f"simplex budget of {budget} exceeded while enumerating dimension {dim}"
        )
        self.budget = budget
        self.dim = dim


class UnsupportedRegimeError(ValueError):
    """No closed-form facet catalog exists for the requested (n, k) regime."""


class TruncatedComplexError(ValueError):
    """An operation needs deeper enumeration than the complex carries."""

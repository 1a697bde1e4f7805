"""Shared exception types."""


class BudgetError(Exception):
    """A computation was refused because it would exceed a resource budget.

    Distinct from ValueError so that callers (and the CLI exit-code mapping)
    can tell resource refusal apart from malformed input.
    """

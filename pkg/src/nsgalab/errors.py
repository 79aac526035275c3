"""Exception types used across the package."""


class ContractViolationError(ValueError):
    """An operation was called with arguments violating its precondition."""


class ConfigurationError(ValueError):
    """A run/sweep configuration is invalid (bad benchmark, sizes, budget)."""


class EnumerationBudgetError(ValueError):
    """A brute-force enumeration would exceed its allowed search-space size."""


class InvariantViolationError(AssertionError):
    """An instrumented run observed a violation of a runtime invariant."""


class MalformedCSVError(ValueError):
    """A results CSV contains a row that cannot be parsed."""

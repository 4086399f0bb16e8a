class HypothesisError(ValueError):
    """An input violates a precondition of a construction (names the failing identity)."""


class BudgetExceededError(RuntimeError):
    """An exhaustive computation would exceed its work budget."""

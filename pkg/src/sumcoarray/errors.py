"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its evaluation cap."""

    def __init__(self, needed, budget, what="subsets"):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: {needed} evaluations needed, budget is {budget}")


class DimensionError(ValueError):
    """Raised when matrix/vector shapes are inconsistent."""


class NoFeasibleSupport(RuntimeError):
    """Raised by sparse recovery when no support up to the requested size fits."""

class RingMismatchError(Exception):
    def __init__(self, message):
        super().__init__(message)


class PreconditionError(ValueError):
    def __init__(self, message):
        super().__init__(message)


class NonHomogeneousError(Exception):
    def __init__(self, message):
        super().__init__(message)


class BudgetExhaustedError(Exception):
    """
    Raised when a Gröbner computation or a bounded search runs over its configured budget.

    The `budget` attribute holds the limit that was exceeded so callers can record it in reports.
    """

    def __init__(self, message, budget=None):
        super().__init__(message)
        self.budget = budget

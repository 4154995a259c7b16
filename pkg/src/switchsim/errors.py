"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands carry incompatible subsystem dimensions."""


class ConventionError(ValueError):
    """Choi operators with different normalisation conventions were mixed."""


class KrausBudgetError(RuntimeError):
    """A brute-force Kraus expansion exceeds the configured term budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"brute-force expansion needs {required} Kraus terms, "
            f"which exceeds the budget of {budget}"
        )

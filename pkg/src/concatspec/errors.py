"""Error types shared across the package.

Exit-code mapping in the CLI: usage errors -> 2, BudgetExceededError -> 3,
IntegrityError -> 4.
"""


class BudgetExceededError(Exception):
    """An enumeration would exceed the configured work budget.

    `needed_exponent` is the log2 of the number of words that would have to
    be visited.
    """

    def __init__(self, needed_exponent: int, budget_exponent: int):
        self.needed_exponent = needed_exponent
        self.budget_exponent = budget_exponent
        super().__init__(
            f"enumeration needs 2^{needed_exponent} words, "
            f"budget is 2^{budget_exponent} (raise the budget to proceed)"
        )


class IntegrityError(Exception):
    """An exactness invariant failed (e.g. a MacWilliams division left a
    remainder), signalling a corrupted input spectrum or an internal bug."""

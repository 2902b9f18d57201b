"""Exception hierarchy. Everything raised on purpose derives from NitError."""


class NitError(Exception):
    pass


class ParameterError(NitError, ValueError):
    """Bad arguments: n < 2, wrong lengths, repeated primes and the like."""


class BudgetExceeded(NitError):
    """An exhaustive sweep would need more work than the caller allowed."""

    def __init__(self, required: int, budget: int, what: str = "permutations"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"refusing to sweep {required} {what}: budget is {budget} "
            f"(pass a budget of at least {required} to force it)"
        )


class ParseError(NitError, ValueError):
    pass


class DecodeError(NitError, ValueError):
    pass


class CompositionError(NitError, ValueError):
    """Operators share a prime, so products can no longer be told apart."""


class UnsupportedCase(NitError):
    pass


class ValidationError(NitError, ValueError):
    def __init__(self, message: str, deviation: float | None = None):
        self.deviation = deviation
        super().__init__(message)

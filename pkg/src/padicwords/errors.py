"""Exception types shared across the package."""


class PrecisionExhausted(ArithmeticError):
    """An exact evaluation needs more information than the input representation carries."""


class InfeasibleRepetition(ValueError):
    """No length-n factor repeats in the required prefix (the complexity hypothesis fails at n)."""


class RationalValueError(ValueError):
    """The digit sequence looks ultimately periodic, so the p-adic number is rational."""


class HypothesisViolation(ValueError):
    """Input data do not satisfy the hypotheses of a bound being applied."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class SpecError(ValueError):
    """A sequence spec file is malformed."""

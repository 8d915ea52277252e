"""Digit sequences with low complexity and the p-adic numbers they define."""

from .errors import (HypothesisViolation, InfeasibleRepetition, PrecisionExhausted,
                     RationalValueError, SpecError)
from .words import FiniteWord, InfiniteWordStream, fractional_power

__all__ = [
    "FiniteWord",
    "InfiniteWordStream",
    "fractional_power",
    "HypothesisViolation",
    "InfeasibleRepetition",
    "PrecisionExhausted",
    "RationalValueError",
    "SpecError",
]

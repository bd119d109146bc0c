"""Exception types shared by every module.

Validation problems map to CLI exit status 2 and numerical guard trips
map to exit status 3.
"""

from __future__ import annotations


class DonoghueLabError(Exception):
    """Base class for all library errors."""


class ValidationError(DonoghueLabError, ValueError):
    """An argument is outside the documented domain of an operation."""


class PoleError(DonoghueLabError, ArithmeticError):
    """A denominator fell below its guard threshold.

    ``quantity`` names the offending expression and ``magnitude`` carries
    its absolute value, so callers can report how close they came.
    """

    def __init__(self, quantity: str, magnitude: float, threshold: float) -> None:
        self.quantity = quantity
        self.magnitude = float(magnitude)
        self.threshold = float(threshold)
        super().__init__(
            f"{quantity} has magnitude {self.magnitude:.3e}, "
            f"below guard {self.threshold:.1e}"
        )

"""Structured exceptions shared across the package."""

from __future__ import annotations


class ParMeansError(ValueError):
    """Base class for all parmeans errors."""


class DomainError(ParMeansError):
    """Arguments outside the mathematical domain of an operation."""


class SaturationError(ParMeansError):
    """An exponent product would leave the representable floating range.

    Raised instead of silently producing inf/0 so that scan harnesses
    never accumulate corrupted samples.
    """

    def __init__(self, message: str, exponent: float, limit: float = 700.0):
        super().__init__(f"{message} (exponent product {exponent:.6g}, limit {limit:g})")
        self.exponent = exponent
        self.limit = limit


class StepSizeError(ParMeansError):
    """A finite-difference step underflowed relative to the base point."""

    def __init__(self, message: str, suggested_step: float):
        super().__init__(f"{message}; suggested step {suggested_step:.3e}")
        self.suggested_step = suggested_step


class QuadratureError(ParMeansError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved_tol: float, subdivisions: int):
        super().__init__(
            f"{message} (achieved relative tolerance {achieved_tol:.3e} "
            f"after {subdivisions} subdivisions)"
        )
        self.achieved_tol = achieved_tol
        self.subdivisions = subdivisions

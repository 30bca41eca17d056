"""Generator functions for the two-parameter homogeneous framework.

A generator is a positive, positively homogeneous function f on the
open quadrant minus the diagonal, with first partials.  The catalog
covers the arithmetic, logarithmic, identric and Heronian-sum
generators, the absolute difference D = |x - y|, and the Stolarsky
family S_{r,s} for caller-supplied (r, s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import DomainError
from .stable import (
    expm1_minus_z_over_z2,
    exprel_logd,
    exprel_logd2,
    identric_weight,
    log_exprel,
    log_ratio,
)
from .core import MIDPOINT_BAND, SINGULAR_DELTA


@dataclass(frozen=True)
class GeneratorFunction:
    """Contract for the generating function f of H_f.

    value, partial_x and partial_y are defined off the diagonal;
    diagonal_limit (x -> lim_{y->x} f(x, y)) is present only when that
    limit exists and is positive, in which case diagonal_partials holds
    (f_x(1,1), f_y(1,1)) for the p = q = 0 corner.
    """

    label: str
    order: float
    value: Callable[[float, float], float]
    partial_x: Callable[[float, float], float]
    partial_y: Callable[[float, float], float]
    diagonal_limit: Optional[Callable[[float], float]] = None
    diagonal_partials: Optional[tuple[float, float]] = field(default=None)

    def value_at_one(self) -> float:
        """f(1, 1) through the diagonal limit; errors if absent."""
        if self.diagonal_limit is None:
            raise DomainError(f"generator {self.label} has no positive diagonal limit")
        return self.diagonal_limit(1.0)


def arithmetic_generator() -> GeneratorFunction:
    return GeneratorFunction(
        label="A",
        order=1.0,
        value=lambda x, y: 0.5 * (x + y),
        partial_x=lambda x, y: 0.5,
        partial_y=lambda x, y: 0.5,
        diagonal_limit=lambda x: x,
        diagonal_partials=(0.5, 0.5),
    )


def logarithmic_generator() -> GeneratorFunction:
    def value(x: float, y: float) -> float:
        if x == y:
            return x
        return (x - y) / log_ratio(x, y)

    # L_x = (e^-v - 1 + v)/v^2 and L_y = (e^v - 1 - v)/v^2 with v = ln(x/y)
    def partial_x(x: float, y: float) -> float:
        return expm1_minus_z_over_z2(-log_ratio(x, y))

    def partial_y(x: float, y: float) -> float:
        return expm1_minus_z_over_z2(log_ratio(x, y))

    return GeneratorFunction(
        label="L",
        order=1.0,
        value=value,
        partial_x=partial_x,
        partial_y=partial_y,
        diagonal_limit=lambda x: x,
        diagonal_partials=(0.5, 0.5),
    )


def identric_generator() -> GeneratorFunction:
    def value(x: float, y: float) -> float:
        if x == y:
            return x
        v = log_ratio(x, y)
        return y * math.exp(v * exprel_logd(v))

    def partial_x(x: float, y: float) -> float:
        return value(x, y) * identric_weight(log_ratio(x, y)) / x

    def partial_y(x: float, y: float) -> float:
        return value(x, y) * (1.0 - identric_weight(log_ratio(x, y))) / y

    return GeneratorFunction(
        label="I",
        order=1.0,
        value=value,
        partial_x=partial_x,
        partial_y=partial_y,
        diagonal_limit=lambda x: x,
        diagonal_partials=(0.5, 0.5),
    )


def difference_generator() -> GeneratorFunction:
    """D(x, y) = |x - y|; no positive diagonal limit."""
    return GeneratorFunction(
        label="D",
        order=1.0,
        value=lambda x, y: abs(x - y),
        partial_x=lambda x, y: math.copysign(1.0, x - y),
        partial_y=lambda x, y: -math.copysign(1.0, x - y),
        diagonal_limit=None,
        diagonal_partials=None,
    )


def heronian_generator() -> GeneratorFunction:
    def value(x: float, y: float) -> float:
        return x + math.sqrt(x) * math.sqrt(y) + y

    return GeneratorFunction(
        label="He",
        order=1.0,
        value=value,
        partial_x=lambda x, y: 1.0 + 0.5 * math.sqrt(y / x),
        partial_y=lambda x, y: 1.0 + 0.5 * math.sqrt(x / y),
        diagonal_limit=lambda x: 3.0 * x,
        diagonal_partials=(1.5, 1.5),
    )


def stolarsky_generator(r: float, s: float) -> GeneratorFunction:
    """S_{r,s}(x, y) as a generator, r = s handled by the midpoint rule."""
    rs_scale = 1.0 + abs(r) + abs(s)
    d = r - s
    degenerate = abs(d) <= SINGULAR_DELTA * rs_scale or abs(d) <= MIDPOINT_BAND
    m = 0.5 * (r + s)

    def ln_value(x: float, y: float) -> float:
        if x == y:
            return math.log(x)
        v = log_ratio(x, y)
        if degenerate:
            return math.log(y) + v * exprel_logd(m * v)
        return math.log(y) + (log_exprel(r * v) - log_exprel(s * v)) / d

    def dln_dx(x: float, y: float) -> float:
        # (r chi'(r) - s chi'(s)) / ((r - s) x v) with chi'(u) = v R(u v)
        v = log_ratio(x, y)
        if degenerate:
            z = m * v
            return (exprel_logd(z) + z * exprel_logd2(z)) / x
        return (r * exprel_logd(r * v) - s * exprel_logd(s * v)) / (d * x)

    def value(x: float, y: float) -> float:
        return math.exp(ln_value(x, y))

    def partial_x(x: float, y: float) -> float:
        return value(x, y) * dln_dx(x, y)

    def partial_y(x: float, y: float) -> float:
        # Euler relation for the 1-homogeneous S: y (ln S)_y = 1 - x (ln S)_x
        return value(x, y) * (1.0 - x * dln_dx(x, y)) / y

    return GeneratorFunction(
        label=f"S[{r:g},{s:g}]",
        order=1.0,
        value=value,
        partial_x=partial_x,
        partial_y=partial_y,
        diagonal_limit=lambda x: x,
        diagonal_partials=(0.5, 0.5),
    )


def builtin_generators() -> list[GeneratorFunction]:
    """The fixed catalog: A, L, I, D, He (S_{r,s} is built per (r, s))."""
    return [
        arithmetic_generator(),
        logarithmic_generator(),
        identric_generator(),
        difference_generator(),
        heronian_generator(),
    ]

"""Scalar kernels behind every mean evaluator.

All removable singularities funnel through a handful of one-variable
functions of z = t * ln(a/b).  Each kernel carries a power-series branch
near zero (catastrophic cancellation region) and saturation-safe
asymptotic branches, so callers never touch raw a**p powers.
"""

from __future__ import annotations

import math

# Series crossovers chosen so the truncated tail sits below 1e-14
# relative while the direct formulas are still cancellation-free.
_SERIES_CUT = 0.35
_EXP_CUT = 30.0


def log_ratio(a: float, b: float) -> float:
    """ln(a/b) with full relative accuracy for any positive a, b.

    Near a = b the quotient ln(a/b) would cancel, so log1p of the
    relative gap is used there; far from 1 the plain log is exact to a
    few ulp and avoids the (a-b)/b cancellation when a << b.
    """
    r = a / b
    if 0.5 < r < 2.0:
        return math.log1p((a - b) / b)
    if math.isfinite(r) and r > 0.0:
        return math.log(r)
    return math.log(a) - math.log(b)  # a/b over- or underflowed


def log_exprel(z: float) -> float:
    """ln(expm1(z)/z) with log_exprel(0) = 0; stable for all finite z."""
    if z == 0.0:
        return 0.0
    if z > _EXP_CUT:
        # expm1 would overflow near 710; ln(e^z - 1) = z + ln(1 - e^-z)
        return z - math.log(z) + math.log1p(-math.exp(-z))
    if z < -_EXP_CUT:
        return math.log1p(-math.exp(z)) - math.log(-z)
    return math.log(math.expm1(z) / z)


def exprel_logd(z: float) -> float:
    """d/dz log_exprel(z) = e^z/expm1(z) - 1/z, with value 1/2 at z = 0.

    Bernoulli series z/(1-e^-z) = 1 + z/2 + sum B_2k z^2k/(2k)! below the
    crossover, direct quotients elsewhere.
    """
    if abs(z) < _SERIES_CUT:
        z2 = z * z
        return 0.5 + z * (
            1.0 / 12.0
            + z2 * (-1.0 / 720.0
            + z2 * (1.0 / 30240.0
            + z2 * (-1.0 / 1209600.0
            + z2 * (1.0 / 47900160.0
            + z2 * (-691.0 / 1307674368000.0)))))
        )
    if z > _EXP_CUT:
        return 1.0 / (-math.expm1(-z)) - 1.0 / z
    return math.exp(z) / math.expm1(z) - 1.0 / z


def exprel_logd2(z: float) -> float:
    """Second derivative of log_exprel: 1/z^2 - 1/(4 sinh^2(z/2))."""
    az = abs(z)
    if az < _SERIES_CUT:
        z2 = z * z
        return (
            1.0 / 12.0
            + z2 * (-1.0 / 240.0
            + z2 * (1.0 / 6048.0
            + z2 * (-7.0 / 1209600.0
            + z2 * (9.0 / 47900160.0
            + z2 * (-7601.0 / 1307674368000.0)))))
        )
    if az > 700.0:
        return 1.0 / (z * z)
    s = math.sinh(0.5 * z)
    return 1.0 / (z * z) - 1.0 / (4.0 * s * s)


def softplus(z: float) -> float:
    """ln(1 + e^z) without overflow."""
    if z > _EXP_CUT:
        return z + math.log1p(math.exp(-z))
    if z < -_EXP_CUT:
        return math.exp(z)
    return math.log1p(math.exp(z))


def sigmoid(z: float) -> float:
    """1/(1 + e^-z)."""
    if z >= 0.0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def log_heronian_sum(z: float) -> float:
    """ln(1 + e^(z/2) + e^z), the Heronian three-term log-sum-exp."""
    if z > 0.0:
        return z + math.log1p(math.exp(-z) + math.exp(-0.5 * z))
    return math.log1p(math.exp(0.5 * z) + math.exp(z))


def heronian_weight(z: float) -> float:
    """(e^z + e^(z/2)/2) / (1 + e^(z/2) + e^z), the a-exponent weight."""
    if z > 0.0:
        em = math.exp(-0.5 * z)
        em2 = math.exp(-z)
        return (1.0 + 0.5 * em) / (1.0 + em + em2)
    e = math.exp(0.5 * z)
    e2 = math.exp(z)
    return (e2 + 0.5 * e) / (1.0 + e + e2)


def expm1_minus_z_over_z2(z: float) -> float:
    """(e^z - 1 - z)/z^2 = sum z^k/(k+2)!, value 1/2 at z = 0."""
    if abs(z) < _SERIES_CUT:
        return (
            0.5
            + z * (1.0 / 6.0
            + z * (1.0 / 24.0
            + z * (1.0 / 120.0
            + z * (1.0 / 720.0
            + z * (1.0 / 5040.0
            + z * (1.0 / 40320.0
            + z * (1.0 / 362880.0
            + z * (1.0 / 3628800.0
            + z * (1.0 / 39916800.0)))))))))
        )
    return (math.expm1(z) - z) / (z * z)


def identric_weight(v: float) -> float:
    """x (ln I)_x as a function of v = ln(x/y): (e^v-1-v)/(4 sinh^2(v/2))."""
    if abs(v) < _SERIES_CUT:
        num = expm1_minus_z_over_z2(v)
        v2 = v * v
        # 4 sinh^2(v/2) / v^2 = 2(cosh v - 1)/v^2
        den = (
            1.0
            + v2 * (1.0 / 12.0
            + v2 * (1.0 / 360.0
            + v2 * (1.0 / 20160.0
            + v2 * (1.0 / 1814400.0))))
        )
        return num / den
    s = math.sinh(0.5 * v)
    return (math.expm1(v) - v) / (4.0 * s * s)

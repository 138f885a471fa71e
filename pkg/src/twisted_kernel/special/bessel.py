"""Bessel functions of half-integral order J_{l + 1/2}(x) for real x > 0."""

import cmath
import math
from typing import Literal

from twisted_kernel.utils.exceptions import PreconditionError

_SERIES_MAX_TERMS = 500


def _check_order(two_nu: int) -> float:
    if two_nu < 1 or two_nu % 2 != 1:
        raise PreconditionError(f"two_nu must be an odd positive integer, got {two_nu}")
    return two_nu / 2.0


def _series(nu: float, x: float) -> float:
    prefactor = math.exp(nu * math.log(x / 2.0) - math.lgamma(nu + 1.0))
    quarter_square = x * x / 4.0
    term = 1.0
    total = 1.0
    for m in range(_SERIES_MAX_TERMS):
        term *= -quarter_square / ((m + 1) * (m + 1 + nu))
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return prefactor * total


def _upward(two_nu: int, x: float) -> float:
    root = math.sqrt(2.0 / (math.pi * x))
    previous = root * math.sin(x)
    if two_nu == 1:
        return previous
    current = root * (math.sin(x) / x - math.cos(x))
    mu = 1.5
    for _ in range((two_nu - 3) // 2):
        previous, current = current, (2.0 * mu / x) * current - previous
        mu += 1.0
    return current


def bessel_j_half(two_nu: int, x: float, method: Literal["auto", "series", "recurrence"] = "auto") -> float:
    """J_nu(x) with nu = two_nu / 2.

    Upward recurrence from J_{1/2} and J_{3/2} is used for x >= nu and the power series below it.

    Args:
        two_nu: Twice the order; an odd positive integer.
        x: Positive argument.
        method: Force one evaluation path; "auto" picks by the x = nu switchover.

    Returns:
        float: J_nu(x).
    """
    nu = _check_order(two_nu)
    if not x > 0:
        raise PreconditionError(f"x must be positive, got {x}")
    if method == "auto":
        method = "series" if x < nu else "recurrence"
    if method == "series":
        return _series(nu, x)
    return _upward(two_nu, x)


def bessel_tail_majorant(two_nu: int, x: float) -> float:
    """(x/2)^nu / Gamma(nu + 1), which dominates |J_nu(x)| for nu >= 1/2."""
    nu = _check_order(two_nu)
    if not x > 0:
        raise PreconditionError(f"x must be positive, got {x}")
    return math.exp(nu * math.log(x / 2.0) - math.lgamma(nu + 1.0))


def one_f1_via_bessel(k: int, y: float) -> complex:
    """1F1(k, 2k; 2 pi i y) through its Bessel form Gamma(k+1/2) e(y/2) (pi y/2)^{1/2-k} J_{k-1/2}(pi y)."""
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if not y > 0:
        raise PreconditionError(f"y must be positive, got {y}")
    x = math.pi * y
    scale = math.exp(math.lgamma(k + 0.5) + (0.5 - k) * math.log(x / 2.0))
    return scale * bessel_j_half(2 * k - 1, x) * cmath.exp(1j * x)

"""Kummer's confluent hypergeometric function 1F1(a, b; z) and its integral-representation bound."""

import cmath
import logging
import math

import mpmath

from twisted_kernel.special.gamma import abs_log_gamma
from twisted_kernel.utils.exceptions import ConvergenceError, PoleError, PreconditionError

logger = logging.getLogger(__name__)

SERIES_RADIUS = 200.0
MAX_TERMS = 100_000
QUIET_TERMS = 20
QUIET_RATIO = 1e-17
# largest relative rounding error accepted from the float series before switching to mpmath
CANCELLATION_LIMIT = 1e-13
_EPS = 2.220446049250313e-16
_MP_DPS = 40


def _is_nonpositive_integer(value: complex) -> bool:
    nearest = round(value.real)
    return nearest <= 0 and abs(value - nearest) < 1e-12


def _series(a: complex, b: complex, z: complex) -> tuple[complex, float]:
    term = 1 + 0j
    total = 1 + 0j
    peak = 1.0
    running_max = 1.0
    quiet = 0
    n = 0
    while quiet < QUIET_TERMS:
        if n >= MAX_TERMS:
            raise ConvergenceError(f"1F1({a}, {b}; {z}) did not converge within {MAX_TERMS} terms")
        term *= (a + n) / (b + n) * z / (n + 1)
        n += 1
        total += term
        size = abs(term)
        peak = max(peak, size)
        running_max = max(running_max, abs(total))
        quiet = quiet + 1 if size < QUIET_RATIO * running_max else 0
    return total, peak


def _mp_1f1(a: complex, b: complex, z: complex) -> complex:
    try:
        with mpmath.workdps(_MP_DPS):
            return complex(mpmath.hyp1f1(mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(z)))
    except mpmath.libmp.NoConvergence as exc:
        raise ConvergenceError(f"1F1({a}, {b}; {z}) did not converge at {_MP_DPS} digits") from exc


def _accurate(total: complex, peak: float) -> bool:
    return total != 0 and peak * _EPS <= CANCELLATION_LIMIT * abs(total)


def kummer_1f1(a: complex, b: complex, z: complex) -> complex:
    """Kummer's function M(a, b, z) = sum_n (a)_n / (b)_n z^n / n!.

    For |z| <= 200 two float series are available: the direct one and the Kummer transformation
    e^z M(b - a, b, -z). The one whose argument has the larger real part is tried first, and a series
    is accepted only if its largest term leaves CANCELLATION_LIMIT relative accuracy in the sum.
    When neither series is accurate, or |z| > 200, the value comes from mpmath at raised precision.

    Raises:
        PoleError: If b is a non-positive integer.
        ConvergenceError: If a series does not settle within MAX_TERMS terms.
    """
    a, b, z = complex(a), complex(b), complex(z)
    if _is_nonpositive_integer(b):
        raise PoleError(f"1F1 is undefined for b = {b}")
    if z == 0:
        return 1 + 0j
    if abs(z) > SERIES_RADIUS:
        logger.debug("1F1(%s, %s; %s): |z| beyond series radius, using mpmath", a, b, z)
        return _mp_1f1(a, b, z)

    candidates = [(a, z, False), (b - a, -z, True)]
    candidates.sort(key=lambda candidate: -candidate[1].real)
    worst = 0.0
    for a_eff, z_eff, transformed in candidates:
        total, peak = _series(a_eff, b, z_eff)
        if _accurate(total, peak):
            return cmath.exp(z) * total if transformed else total
        worst = max(worst, peak / max(abs(total), 1e-300))
    logger.debug("1F1(%s, %s; %s): cancellation %.1e in both series, using mpmath", a, b, z, worst)
    return _mp_1f1(a, b, z)


def log_one_f1_bound(alpha: complex, beta: float) -> float:
    """log of |Gamma(beta) / (Gamma(alpha) Gamma(beta - alpha))| * B(Re alpha, beta - Re alpha)."""
    alpha = complex(alpha)
    sigma = alpha.real
    if not (sigma > 1 and beta - sigma > 1):
        raise PreconditionError(f"bound needs Re(alpha) > 1 and beta - Re(alpha) > 1; got alpha={alpha}, beta={beta}")
    return (
        math.lgamma(sigma)
        + math.lgamma(beta - sigma)
        - abs_log_gamma(alpha)
        - abs_log_gamma(complex(beta) - alpha)
    )


def one_f1_bound(alpha: complex, beta: float, x: float = 0.0) -> float:
    """Upper bound for |1F1(alpha, beta; 2 pi i x)| valid for every real x.

    From the integral representation, |e^{2 pi i x t}| = 1 on [0, 1], so the integral is bounded by
    B(Re alpha, beta - Re alpha). The bound does not depend on x.
    """
    return math.exp(log_one_f1_bound(alpha, beta))

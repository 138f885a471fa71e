"""Complex Gamma and log-Gamma via the Lanczos approximation (g = 7, nine coefficients)."""

import cmath
import math

from twisted_kernel.utils.exceptions import ArithmeticRangeError, PoleError

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_POLE_TOLERANCE = 1e-12


def _check_pole(z: complex) -> None:
    nearest = round(z.real)
    if nearest <= 0 and abs(z - nearest) < _POLE_TOLERANCE:
        raise PoleError(f"Gamma has a pole at {nearest}; got z = {z}")


def _log_gamma_right(z: complex) -> complex:
    z = z - 1.0
    series = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        series += _LANCZOS_COEFFS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * cmath.log(t) - t + cmath.log(series)


def log_gamma(z: complex) -> complex:
    """A logarithm of Gamma(z); the real part is log|Gamma(z)|, the imaginary part is a branch."""
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return math.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - _log_gamma_right(1.0 - z)
    return _log_gamma_right(z)


def gamma(z: complex) -> complex:
    """Gamma(z) with reflection for Re(z) < 0.5.

    Raises:
        PoleError: If z is within 1e-12 of a non-positive integer.
        ArithmeticRangeError: If the value overflows binary64.
    """
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma(1.0 - z))
    try:
        return cmath.exp(_log_gamma_right(z))
    except OverflowError as exc:
        raise ArithmeticRangeError(f"Gamma({z}) overflows binary64") from exc


def abs_log_gamma(z: complex) -> float:
    """log|Gamma(z)|."""
    return log_gamma(z).real


def beta(a: float, b: float) -> float:
    """Real Beta function B(a, b) for a, b > 0."""
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))

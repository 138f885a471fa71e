"""Both sides of the Lipschitz summation formula

    sum_{m in Z} (m + tau)^{-s} = (-2 pi i)^s / Gamma(s) * sum_{m >= 1} m^{s-1} e(m tau),

valid for Im(tau) > 0 and Re(s) > 1. Used as a numeric check of the branch conventions that the
kernel expansion relies on.
"""

import cmath
import math

import numpy as np

from twisted_kernel.special.gamma import gamma
from twisted_kernel.utils.exceptions import PreconditionError

_LOG_MINUS_TWO_PI_I = complex(math.log(2.0 * math.pi), -math.pi / 2.0)


def _check(tau: complex, s: complex) -> None:
    if not tau.imag > 0:
        raise PreconditionError(f"tau must lie in the upper half plane, got {tau}")
    if not s.real > 1:
        raise PreconditionError(f"Lipschitz formula needs Re(s) > 1, got {s}")


def lipschitz_lhs(tau: complex, s: complex, cutoff: int) -> complex:
    """sum_{|m| <= cutoff} (m + tau)^{-s} with the principal branch."""
    tau, s = complex(tau), complex(s)
    _check(tau, s)
    m = np.arange(-cutoff, cutoff + 1, dtype=np.float64)
    w = m + tau
    return complex(np.sum(np.exp(-s * np.log(w))))


def lipschitz_rhs(tau: complex, s: complex, terms: int = 200) -> complex:
    """(-2 pi i)^s / Gamma(s) * sum_{m=1}^{terms} m^{s-1} e(m tau)."""
    tau, s = complex(tau), complex(s)
    _check(tau, s)
    m = np.arange(1, terms + 1, dtype=np.float64)
    series = np.sum(np.exp((s - 1.0) * np.log(m) + 2j * np.pi * m * tau))
    return cmath.exp(s * _LOG_MINUS_TWO_PI_I) / gamma(s) * complex(series)

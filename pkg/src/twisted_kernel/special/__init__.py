"""Special functions for twisted_kernel.

This package contains:
- Gamma and log-Gamma (Lanczos) and the real Beta function
- Kummer's 1F1 with an mpmath fallback, and the integral-representation bound for it
- Half-integral order Bessel functions and their power majorant
- Zeta-tail upper bounds and both sides of the Lipschitz summation formula
"""

from twisted_kernel.special.bessel import bessel_j_half, bessel_tail_majorant, one_f1_via_bessel
from twisted_kernel.special.gamma import abs_log_gamma, beta, gamma, log_gamma
from twisted_kernel.special.hypergeometric import kummer_1f1, log_one_f1_bound, one_f1_bound
from twisted_kernel.special.lipschitz import lipschitz_lhs, lipschitz_rhs
from twisted_kernel.special.zeta import zeta_upper

__all__ = [
    "bessel_j_half",
    "bessel_tail_majorant",
    "one_f1_via_bessel",
    "abs_log_gamma",
    "beta",
    "gamma",
    "log_gamma",
    "kummer_1f1",
    "log_one_f1_bound",
    "one_f1_bound",
    "lipschitz_lhs",
    "lipschitz_rhs",
    "zeta_upper",
]

"""Fourier coefficients for twisted_kernel.

This package contains:
- Block summation of coefficient series with stabilization and tail bounds
- Kernel coefficients: the general expansion and its critical specialization
- Jacobi Poincare coefficients, the Shimura lift two ways, and the Waldspurger constant
"""

from twisted_kernel.coefficients.jacobi import (
    JacobiIndexPair,
    PoincareRow,
    WaldspurgerConstants,
    g_coeff,
    g_pm_coeff,
    lift_coeff_closed,
    lift_coeff_via_g,
    poincare_identity_table,
    waldspurger_constant,
)
from twisted_kernel.coefficients.kernel import (
    KernelSpec,
    kernel_coeff_critical,
    kernel_coeff_general,
    kernel_leading_terms,
    kernel_spec_from_indices,
)
from twisted_kernel.coefficients.truncation import (
    CoefficientValue,
    SeriesSum,
    TruncationConfig,
    agreement_tolerance,
    block_schedule,
    sum_blocks,
    values_agree,
)

__all__ = [
    "JacobiIndexPair",
    "PoincareRow",
    "WaldspurgerConstants",
    "g_coeff",
    "g_pm_coeff",
    "lift_coeff_closed",
    "lift_coeff_via_g",
    "poincare_identity_table",
    "waldspurger_constant",
    "KernelSpec",
    "kernel_coeff_critical",
    "kernel_coeff_general",
    "kernel_leading_terms",
    "kernel_spec_from_indices",
    "CoefficientValue",
    "SeriesSum",
    "TruncationConfig",
    "agreement_tolerance",
    "block_schedule",
    "sum_blocks",
    "values_agree",
]

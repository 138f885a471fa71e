"""Rigorous upper bounds for tails of zeta-type sums."""

import numpy as np

from twisted_kernel.utils.exceptions import PreconditionError

DEFAULT_PARTIAL_TERMS = 1000


def zeta_upper(s: float, start: int, partial_terms: int = DEFAULT_PARTIAL_TERMS) -> float:
    """Upper bound for sum_{n >= start} n^{-s}.

    The first `partial_terms` terms are summed exactly; the remainder from A = start + partial_terms
    is bounded by A^{-s} + A^{1-s} / (s - 1).

    Raises:
        PreconditionError: If s <= 1 or start < 1.
    """
    if not s > 1:
        raise PreconditionError(f"zeta_upper needs s > 1, got {s}")
    if start < 1:
        raise PreconditionError(f"start must be positive, got {start}")
    end = start + partial_terms
    n = np.arange(start, end, dtype=np.float64)
    partial = float(np.sum(n ** (-s))) if partial_terms > 0 else 0.0
    a = float(end)
    return partial + a ** (-s) + a ** (1.0 - s) / (s - 1.0)

"""Block summation of infinite coefficient series with stabilization and tail control."""

import logging
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field

from twisted_kernel.utils.exceptions import ConvergenceError

logger = logging.getLogger(__name__)

BlockSum = Callable[[int, int], tuple[complex, int]]
TailBound = Callable[[int], "float | None"]


class TruncationConfig(BaseModel):
    """How far an infinite series over n is summed.

    Blocks (0, n_start], (n_start, ceil(n_start * growth)], ... are added until a block contributes at most
    rel_tol * |partial sum| or n_cap is reached. n_cap = 0 requests the leading terms only.
    """

    model_config = ConfigDict(frozen=True)

    n_start: int = Field(default=64, gt=0)
    growth: float = Field(default=2.0, gt=1.0)
    rel_tol: float = Field(default=1e-10, gt=0.0, lt=1.0)
    n_cap: int = Field(default=2**20, ge=0)
    allow_unstable: bool = False


def block_schedule(trunc: TruncationConfig, n_max: int | None = None) -> Iterator[tuple[int, int]]:
    """Half-open index blocks (lo, hi] up to n_max (default trunc.n_cap)."""
    limit = trunc.n_cap if n_max is None else n_max
    if limit <= 0:
        return
    hi = min(trunc.n_start, limit)
    lo = 0
    while True:
        yield lo, hi
        if hi >= limit:
            return
        lo, hi = hi, min(max(hi + 1, math.ceil(hi * trunc.growth)), limit)


@dataclass(frozen=True)
class SeriesSum:
    """Result of block summation of the series part of a coefficient"""

    total: complex
    last_block: float
    n_max: int
    stabilized: bool
    tail_bound: float | None
    blocks: int
    fixed: bool = False


def sum_blocks(
    block_sum: BlockSum,
    trunc: TruncationConfig,
    leading: complex = 0j,
    tail_bound: TailBound | None = None,
    n_terms: int | None = None,
    label: str = "series",
) -> SeriesSum:
    """Sum a series block by block.

    Args:
        block_sum: Maps (lo, hi) to the sum of the terms with lo < n <= hi and the number of terms.
        trunc: Truncation parameters.
        leading: Closed-form terms that count towards |partial| in the stopping test.
        tail_bound: Maps n_max to a rigorous bound for the terms with n > n_max, or None.
        n_terms: Sum exactly the terms with n <= n_terms, without early stopping.
        label: Name used in log messages.

    Returns:
        SeriesSum: The partial sum and its truncation statistics.

    Raises:
        ConvergenceError: If n_cap is reached without stabilization and trunc.allow_unstable is False.
    """
    tail = tail_bound or (lambda n_max: None)
    if n_terms is None and trunc.n_cap == 0:
        return SeriesSum(total=0j, last_block=0.0, n_max=0, stabilized=True, tail_bound=tail(0), blocks=0)
    fixed = n_terms is not None

    partial = 0j
    last = 0.0
    hi = 0
    blocks = 0
    stabilized = False
    for lo, hi in block_schedule(trunc, n_terms):
        value, count = block_sum(lo, hi)
        partial += value
        last = abs(value)
        blocks += 1
        stabilized = count > 0 and last <= trunc.rel_tol * abs(leading + partial)
        logger.debug("%s: block (%d, %d] terms=%d |block|=%.3e partial=%s", label, lo, hi, count, last, partial)
        if stabilized and n_terms is None:
            break

    if n_terms is None and not stabilized:
        if not trunc.allow_unstable:
            raise ConvergenceError(
                f"{label} did not stabilize within n_cap={trunc.n_cap} (last block {last:.3e}, rel_tol {trunc.rel_tol})"
            )
        logger.warning("%s: not stabilized at n_cap=%d, returning partial sum", label, trunc.n_cap)
    return SeriesSum(
        total=partial, last_block=last, n_max=hi, stabilized=stabilized, tail_bound=tail(hi), blocks=blocks, fixed=fixed
    )


@dataclass(frozen=True)
class CoefficientValue:
    """A truncated coefficient with its error accounting.

    error_estimate is |last block| plus the tail bound when one exists; rigorous is False when the
    tail could not be bounded.
    """

    value: complex
    error_estimate: float
    last_block: float
    tail_bound: float | None
    n_terms: int
    stabilized: bool
    rigorous: bool
    flags: tuple[str, ...] = ()
    parts: dict[str, complex] = field(default_factory=dict)

    @classmethod
    def from_series(
        cls, leading: dict[str, complex], series: SeriesSum, flags: tuple[str, ...] = ()
    ) -> "CoefficientValue":
        flags = tuple(flags)
        if series.n_max == 0:
            flags += ("leading-only",)
        if series.fixed:
            flags += ("fixed-truncation",)
        elif not series.stabilized:
            flags += ("unstable",)
        if series.tail_bound is None:
            flags += ("non-rigorous",)
        parts = dict(leading)
        parts["series"] = series.total
        return cls(
            value=sum(leading.values(), 0j) + series.total,
            error_estimate=series.last_block + (series.tail_bound or 0.0),
            last_block=series.last_block,
            tail_bound=series.tail_bound,
            n_terms=series.n_max,
            stabilized=series.stabilized,
            rigorous=series.tail_bound is not None,
            flags=flags,
            parts=parts,
        )

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "error_estimate": self.error_estimate,
            "last_block": self.last_block,
            "tail_bound": self.tail_bound,
            "n_terms": self.n_terms,
            "stabilized": self.stabilized,
            "rigorous": self.rigorous,
            "flags": list(self.flags),
            "parts": dict(self.parts),
        }


def agreement_tolerance(a: CoefficientValue, b: CoefficientValue, slack: float, aligned: bool) -> float:
    """Largest |a - b| accepted for two evaluations of the same coefficient.

    Aligned values were summed over the same n <= n_terms, so their truncations cancel and only
    slack (1 + max(|a|, |b|)) is allowed. Otherwise both error estimates are added to that.
    """
    tolerance = slack * (1 + max(abs(a.value), abs(b.value)))
    if not aligned:
        tolerance += a.error_estimate + b.error_estimate
    return tolerance


def values_agree(a: CoefficientValue, b: CoefficientValue, slack: float, aligned: bool) -> bool:
    return abs(a.value - b.value) <= agreement_tolerance(a, b, slack, aligned)

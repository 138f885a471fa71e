"""Explicit weight and level thresholds beyond which the nonvanishing estimate certifies every delta."""

import logging
import math
from collections.abc import Callable

from pydantic import BaseModel

from twisted_kernel.analysis.estimate import EstimateBreakdown, Half, estimate_breakdown
from twisted_kernel.utils.exceptions import BoundInapplicableError, PreconditionError

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 512
DEFAULT_SEARCH_LIMIT = 10_000


class ThresholdCertificate(BaseModel):
    """Evidence for a threshold: the tightest delta at the returned value and a refutation just below it"""

    worst_delta: float
    worst_margin: float
    refuted_at: int | None = None
    refuting_delta: float | None = None
    refuting_margin: float | None = None
    note: str = ""


class ThresholdResult(BaseModel):
    parameter: str
    found: bool
    value: int | None = None
    searched_up_to: int
    grid_points: int
    certificate: ThresholdCertificate | None = None


def delta_grid(eps: float, grid_points: int = DEFAULT_GRID_POINTS) -> list[float]:
    """eps + j (1/2 - eps) / grid_points for j = 0..grid_points."""
    if not 0 < eps < 0.5:
        raise PreconditionError(f"eps must lie in (0, 1/2), got {eps}")
    if grid_points < 1:
        raise PreconditionError(f"grid_points must be positive, got {grid_points}")
    step = (0.5 - eps) / grid_points
    return [eps + j * step for j in range(grid_points + 1)]


def _first_failure(
    evaluate: Callable[[float], EstimateBreakdown], deltas: list[float]
) -> tuple[float, float | None] | None:
    """(delta, margin) of the first delta the estimate does not certify, margin None when inapplicable."""
    for delta in deltas:
        try:
            breakdown = evaluate(delta)
        except BoundInapplicableError:
            return delta, None
        if not breakdown.verdict:
            return delta, breakdown.margin
    return None


def _worst(evaluate: Callable[[float], EstimateBreakdown], deltas: list[float]) -> tuple[float, float]:
    margins = [(evaluate(delta).margin, delta) for delta in deltas]
    margin, delta = min(margins)
    return delta, margin


def _search(
    parameter: str,
    candidates: range,
    evaluate_at: Callable[[int], Callable[[float], EstimateBreakdown]],
    deltas: list[float],
    grid_points: int,
    skip: Callable[[int], bool] = lambda value: False,
) -> ThresholdResult:
    previous: tuple[int, float, float | None] | None = None
    for value in candidates:
        if skip(value):
            continue
        evaluate = evaluate_at(value)
        failure = _first_failure(evaluate, deltas)
        if failure is not None:
            previous = (value, *failure)
            continue
        worst_delta, worst_margin = _worst(evaluate, deltas)
        certificate = ThresholdCertificate(worst_delta=worst_delta, worst_margin=worst_margin)
        if previous is not None:
            refuted_at, refuting_delta, refuting_margin = previous
            certificate = certificate.model_copy(
                update={
                    "refuted_at": refuted_at,
                    "refuting_delta": refuting_delta,
                    "refuting_margin": refuting_margin,
                    "note": "" if refuting_margin is not None else "bound inapplicable below the threshold",
                }
            )
        else:
            certificate = certificate.model_copy(update={"note": "certified at the first admissible value"})
        logger.info(
            "%s threshold %d certified (worst delta %.6f, margin %.3e)", parameter, value, worst_delta, worst_margin
        )
        return ThresholdResult(
            parameter=parameter,
            found=True,
            value=value,
            searched_up_to=value,
            grid_points=grid_points,
            certificate=certificate,
        )
    logger.info("%s threshold not found up to %d", parameter, candidates.stop - 1)
    return ThresholdResult(
        parameter=parameter, found=False, searched_up_to=candidates.stop - 1, grid_points=grid_points
    )


def _check_coprime(h: int, **values: int) -> None:
    if h < 1:
        raise PreconditionError(f"h must be positive, got {h}")
    for name, value in values.items():
        if value < 1:
            raise PreconditionError(f"{name} must be positive, got {value}")
        if math.gcd(value, h) != 1:
            raise PreconditionError(f"gcd({name}={value}, h={h}) must be 1")


def min_weight(
    t0: float,
    eps: float,
    N: int,
    m: int,
    h: int,
    grid_points: int = DEFAULT_GRID_POINTS,
    k_max: int = DEFAULT_SEARCH_LIMIT,
    half: Half = "left",
) -> ThresholdResult:
    """Smallest weight k <= k_max at which the estimate certifies every delta of the eps-grid.

    Args:
        t0: Imaginary part of s0.
        eps: Lower end of the delta range [eps, 1/2].
        N: Level, coprime to h.
        m: Coefficient index, coprime to h.
        h: Modulus of the twisting character.
        grid_points: Number of delta steps.
        k_max: Search limit.
        half: Which half of the critical strip.

    Returns:
        ThresholdResult: found=False when no k <= k_max works.
    """
    _check_coprime(h, N=N, m=m)
    deltas = delta_grid(eps, grid_points)
    return _search(
        "weight",
        range(3, k_max + 1),
        lambda k: lambda delta: estimate_breakdown(k, N, h, m, delta, t0, half),
        deltas,
        grid_points,
    )


def min_level(
    t0: float,
    eps: float,
    k: int,
    m: int,
    h: int,
    grid_points: int = DEFAULT_GRID_POINTS,
    n_max: int = DEFAULT_SEARCH_LIMIT,
    half: Half = "left",
) -> ThresholdResult:
    """Smallest level N <= n_max with gcd(N, h) = 1 at which the estimate certifies every delta.

    Levels sharing a factor with h are skipped.
    """
    if k < 3:
        raise PreconditionError(f"k must be at least 3, got {k}")
    _check_coprime(h, m=m)
    deltas = delta_grid(eps, grid_points)
    return _search(
        "level",
        range(1, n_max + 1),
        lambda N: lambda delta: estimate_breakdown(k, N, h, m, delta, t0, half),
        deltas,
        grid_points,
        skip=lambda N: math.gcd(N, h) != 1,
    )

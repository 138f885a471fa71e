"""Scan kernel coefficients along a horizontal segment of the critical strip for possible zeros."""

import logging

import numpy as np
from pydantic import BaseModel

from twisted_kernel.arithmetic.characters import DirichletCharacter
from twisted_kernel.coefficients.kernel import KernelSpec, kernel_coeff_general
from twisted_kernel.coefficients.truncation import TruncationConfig
from twisted_kernel.utils.exceptions import PreconditionError
from twisted_kernel.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

# grid points closer than this to the upper end still count as inside the range
GRID_SLACK = 1e-9


class ScanPoint(BaseModel):
    sigma: float
    coeff: complex
    abs: float
    err: float
    flagged: bool


def scan_grid(k: int, sigma_range: tuple[float, float], step: float) -> list[float]:
    """sigma = lo, lo + step, ... <= hi, after checking the range against both strips."""
    lo, hi = sigma_range
    if not step > 0:
        raise PreconditionError(f"step must be positive, got {step}")
    if not lo <= hi:
        raise PreconditionError(f"empty sigma range ({lo}, {hi})")
    lower = max((k - 1) / 2, 1.0)
    upper = min((k + 1) / 2, k - 1.0)
    if not (lower < lo and hi < upper):
        raise PreconditionError(f"sigma range ({lo}, {hi}) must lie inside ({lower}, {upper})")
    count = int(np.floor((hi - lo) / step + GRID_SLACK)) + 1
    return [float(x) for x in lo + step * np.arange(count)]


def _scan_point(args: tuple[KernelSpec, int, int | None, float]) -> ScanPoint:
    spec, m, n_terms, threshold = args
    value = kernel_coeff_general(spec, m, n_terms)
    magnitude = abs(value.value)
    return ScanPoint(
        sigma=spec.s.real,
        coeff=value.value,
        abs=magnitude,
        err=value.error_estimate,
        flagged=magnitude < threshold + value.error_estimate,
    )


def zero_scan(
    k: int,
    N: int,
    psi: DirichletCharacter,
    chi: DirichletCharacter,
    m: int,
    t0: float,
    sigma_range: tuple[float, float],
    step: float,
    threshold: float,
    trunc: TruncationConfig | None = None,
    n_terms: int | None = None,
    workers: int = 1,
) -> list[ScanPoint]:
    """Evaluate the m-th kernel coefficient at s = sigma + i t0 on a sigma grid.

    A point is flagged when |coeff| < threshold + error estimate, i.e. when a zero cannot be excluded.

    Args:
        k: Weight.
        N: Level.
        psi: Character mod N.
        chi: Primitive twisting character.
        m: Coefficient index.
        t0: Imaginary part of s.
        sigma_range: (lo, hi) inside ((k-1)/2, (k+1)/2) and the convergence strip.
        step: Grid spacing.
        threshold: Nonnegative flagging threshold.
        trunc: Truncation parameters.
        n_terms: Fixed truncation for every point.
        workers: Processes for the grid points.

    Returns:
        list[ScanPoint]: In ascending sigma.
    """
    if threshold < 0:
        raise PreconditionError(f"threshold must be nonnegative, got {threshold}")
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    sigmas = scan_grid(k, sigma_range, step)
    trunc = trunc or TruncationConfig()
    items = [
        (KernelSpec(k=k, N=N, psi=psi, chi=chi, s=complex(sigma, t0), trunc=trunc), m, n_terms, threshold)
        for sigma in sigmas
    ]
    points = ordered_map(_scan_point, items, workers)
    logger.info("zero scan: %d points, %d flagged", len(points), sum(p.flagged for p in points))
    return points

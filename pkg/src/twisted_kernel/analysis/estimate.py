"""The nonvanishing estimate for averaged twisted L-values at s0 = sigma - i t0.

If the m-th kernel coefficient vanished at s0, taking absolute values in its expansion and dividing
by m^{k/2-1} would give

    m^{sigma-k/2} <= summand1 + summand2_bound.

A breakdown whose verdict is True (lhs strictly larger) therefore certifies that the coefficient does
not vanish. summand2_bound is a fully explicit majorant of the series part.
"""

import cmath
import logging
import math
from enum import StrEnum
from typing import Literal

from pydantic import BaseModel

from twisted_kernel.special.gamma import abs_log_gamma, log_gamma
from twisted_kernel.special.hypergeometric import log_one_f1_bound
from twisted_kernel.special.zeta import zeta_upper
from twisted_kernel.utils.exceptions import BoundInapplicableError, PreconditionError

logger = logging.getLogger(__name__)

LOG_TWO_PI = math.log(2.0 * math.pi)

Half = Literal["left", "right"]


class EstimateStatus(StrEnum):
    CERTIFIED = "CERTIFIED"
    REFUTED = "REFUTED"
    UNCERTIFIED = "UNCERTIFIED"


class EstimateBreakdown(BaseModel):
    """Both sides of the nonvanishing inequality at one (k, N, h, m, delta, t0)."""

    k: int
    N: int
    h: int
    m: int
    delta: float
    t0: float
    half: Half
    sigma: float
    lhs: float
    summand1: float
    summand2_bound: float
    verdict: bool
    status: EstimateStatus

    @property
    def margin(self) -> float:
        return self.lhs - self.summand1 - self.summand2_bound


def _log_two_cosh(x: float) -> float:
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x))


def _exp_or_inf(x: float) -> float:
    return math.inf if x > 709.0 else math.exp(x)


def log_summand1(k: int, h: int, m: int, sigma: float, t0: float) -> float:
    """log of (2 pi/h)^{k-2 sigma} m^{k/2-sigma} |Gamma(s0)| / |Gamma(k - s0)| with s0 = sigma - i t0."""
    s0 = complex(sigma, -t0)
    return (
        (k - 2 * sigma) * (LOG_TWO_PI - math.log(h))
        + (k / 2 - sigma) * math.log(m)
        + abs_log_gamma(s0)
        - abs_log_gamma(k - s0)
    )


def log_summand2_bound(k: int, N: int, h: int, m: int, sigma: float, t0: float) -> float:
    """log of the series majorant divided by m^{k/2-1}.

    (2 pi)^{k-sigma} |Gamma(s0)|/Gamma(k) m^{k/2} h^{sigma+1/2} B(s0, k) 2 cosh(pi t0/2) N^{sigma-k}
    zeta+(k - sigma) zeta+(sigma), where B is the 1F1 bound: the 1/2 prefactor meets the two signs of c,
    each (c, q) carries at most h residues l and |G(chi)| = sqrt(h).
    """
    s0 = complex(sigma, -t0)
    return (
        (k - sigma) * LOG_TWO_PI
        + abs_log_gamma(s0)
        - math.lgamma(k)
        + (k / 2) * math.log(m)
        + (sigma + 0.5) * math.log(h)
        + log_one_f1_bound(s0, k)
        + _log_two_cosh(math.pi * t0 / 2)
        + (sigma - k) * math.log(N)
        + math.log(zeta_upper(k - sigma, 1))
        + math.log(zeta_upper(sigma, 1))
    )


def estimate_breakdown(
    k: int, N: int, h: int, m: int, delta: float, t0: float, half: Half = "left"
) -> EstimateBreakdown:
    """Evaluate the nonvanishing inequality at s0 = k/2 -+ delta - i t0.

    Args:
        k: Weight.
        N: Level.
        h: Modulus of the twisting character.
        m: Coefficient index.
        delta: Distance from the center of the critical strip, 0 < delta <= 1/2.
        t0: Imaginary part (s0 = sigma - i t0).
        half: "left" for sigma = k/2 - delta, "right" for sigma = k/2 + delta.

    Returns:
        EstimateBreakdown: lhs, both summands and the verdict. Right-half queries with N = 1 are
            reported UNCERTIFIED: the delta_{N,1} term grows there and the bound cannot conclude.

    Raises:
        BoundInapplicableError: If sigma <= 1 or k - sigma <= 1.
    """
    if not 0 < delta <= 0.5:
        raise PreconditionError(f"delta must lie in (0, 1/2], got {delta}")
    if min(k, N, h, m) < 1:
        raise PreconditionError(f"k, N, h, m must be positive, got k={k}, N={N}, h={h}, m={m}")
    if half not in ("left", "right"):
        raise PreconditionError(f"half must be 'left' or 'right', got {half!r}")
    sigma = k / 2 - delta if half == "left" else k / 2 + delta
    if not (sigma > 1 and k - sigma > 1):
        raise BoundInapplicableError(f"the bound needs sigma > 1 and k - sigma > 1; got sigma={sigma}, k={k}")

    lhs = math.exp((sigma - k / 2) * math.log(m))
    summand1 = _exp_or_inf(log_summand1(k, h, m, sigma, t0)) if N == 1 else 0.0
    summand2 = _exp_or_inf(log_summand2_bound(k, N, h, m, sigma, t0))

    if half == "right" and N == 1:
        verdict, status = False, EstimateStatus.UNCERTIFIED
    else:
        verdict = lhs > summand1 + summand2
        status = EstimateStatus.CERTIFIED if verdict else EstimateStatus.REFUTED
    return EstimateBreakdown(
        k=k,
        N=N,
        h=h,
        m=m,
        delta=delta,
        t0=t0,
        half=half,
        sigma=sigma,
        lhs=lhs,
        summand1=summand1,
        summand2_bound=summand2,
        verdict=verdict,
        status=status,
    )


def gamma_ratio_deviation(k: int, delta: float, t0: float) -> float:
    """|Gamma(k/2 - w)/Gamma(k/2 + w) (k/2)^{2w} - 1| with w = delta + i t0; tends to 0 as k grows."""
    w = complex(delta, t0)
    half_k = k / 2
    log_ratio = log_gamma(half_k - w) - log_gamma(half_k + w) + 2 * w * math.log(half_k)
    return abs(cmath.exp(log_ratio) - 1)

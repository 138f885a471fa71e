"""Jacobi Poincare series coefficients and the coefficient-level Shimura lift.

The m-th coefficient of S_{D,r}(P^J_{k+1,N,(D,r)}) is computed two ways: as the divisor sum over the
Jacobi coefficients g^+-, and in closed form through the exponential sums S_{N,n}(m, D). Both are
compared with kernel_coeff_critical in poincare_identity_table.
"""

import logging
import math

from pydantic import BaseModel, ConfigDict

from twisted_kernel.arithmetic.ntheory import DiscriminantDatum, check_range, divisors, kronecker
from twisted_kernel.coefficients.kernel import (
    bessel_series_coefficient,
    critical_sign,
    i_power,
    kernel_coeff_critical,
)
from twisted_kernel.coefficients.truncation import CoefficientValue, TruncationConfig, agreement_tolerance, sum_blocks
from twisted_kernel.special.bessel import bessel_j_half
from twisted_kernel.special.zeta import zeta_upper
from twisted_kernel.sums.expsums import enumerate_s_terms, evaluate_terms, h_sum
from twisted_kernel.utils.exceptions import ArithmeticRangeError, CongruenceError, InvariantError, PreconditionError

logger = logging.getLogger(__name__)

# relative agreement required of the Petersson quotient against the closed constant
QUOTIENT_TOLERANCE = 1e-12
IDENTITY_TOLERANCE = 1e-8
BOUNDARY_TOLERANCE = 1e-6


class JacobiIndexPair(BaseModel):
    """A target index (D', r') of a Jacobi coefficient at level N, with r'^2 = D' (mod 4N)."""

    model_config = ConfigDict(frozen=True)

    Dp: int
    rp: int
    N: int

    def __init__(self, **data):
        super().__init__(**data)
        self._check()

    def _check(self) -> None:
        check_range(self.Dp, self.rp, self.N)
        if self.N < 1:
            raise PreconditionError(f"level N must be positive, got {self.N}")
        if self.Dp >= 0:
            raise PreconditionError(f"D' must be negative, got {self.Dp}")
        if (self.rp * self.rp - self.Dp) % (4 * self.N) != 0:
            raise CongruenceError(
                f"r'^2 = D' (mod 4N) fails: {self.rp}^2 - ({self.Dp}) = {self.rp * self.rp - self.Dp} "
                f"is not divisible by {4 * self.N}"
            )

    def negated(self) -> "JacobiIndexPair":
        return JacobiIndexPair(Dp=self.Dp, rp=-self.rp, N=self.N)


def _check_levels(k: int, N: int, base: DiscriminantDatum, target: JacobiIndexPair | None = None) -> None:
    if k < 2:
        raise PreconditionError(f"k must be at least 2, got {k}")
    if base.N != N:
        raise PreconditionError(f"base datum has level {base.N}, expected N={N}")
    if target is not None and target.N != N:
        raise PreconditionError(f"target pair has level {target.N}, expected N={N}")


def jacobi_delta(N: int, base: DiscriminantDatum, target: JacobiIndexPair) -> int:
    """delta_N(D, r, D', r'): 1 when D' = D and r' = r (mod 2N), else 0."""
    return int(target.Dp == base.D and (target.rp - base.r) % (2 * N) == 0)


def _g_prefactor(k: int, N: int, base: DiscriminantDatum, target: JacobiIndexPair) -> complex:
    # (D'/D)^{k/2 - 1/4} is a positive real power of a positive real
    ratio_power = math.exp((k / 2 - 0.25) * math.log(target.Dp / base.D))
    return i_power(k + 1) * math.pi * math.sqrt(2.0) / math.sqrt(N) * ratio_power


def _g_tail(k: int, N: int, prefactor: complex, x_scale: float):
    """Bound for the j > n_max terms from |H_{N,j}| <= j^{1/2} and the Bessel majorant."""
    if k <= 2:
        return lambda n_max: None
    log_scale = math.log(abs(prefactor)) + (k - 0.5) * math.log(x_scale / 2) - math.lgamma(k + 0.5)
    scale = math.exp(log_scale)
    return lambda n_max: scale * zeta_upper(k - 1.0, n_max + 1)


def _g_series(
    k: int,
    N: int,
    base: DiscriminantDatum,
    targets: list[tuple[int, JacobiIndexPair]],
    trunc: TruncationConfig,
    n_terms: int | None,
    label: str,
) -> CoefficientValue:
    """sum over (weight, target) of weight * g(target), with the H-series summed termwise."""
    first = targets[0][1]
    prefactor = _g_prefactor(k, N, base, first)
    x_scale = math.pi * math.sqrt(first.Dp * base.D) / N
    leading = complex(sum(weight * jacobi_delta(N, base, target) for weight, target in targets))

    def block(lo: int, hi: int) -> tuple[complex, int]:
        total = 0j
        for j in range(lo + 1, hi + 1):
            h_total = sum(weight * h_sum(N, j, base.D, base.r, t.Dp, t.rp) for weight, t in targets)
            total += h_total * bessel_j_half(2 * k - 1, x_scale / j)
        return prefactor * total, hi - lo

    weight_sum = sum(abs(weight) for weight, _ in targets)
    single_tail = _g_tail(k, N, prefactor, x_scale)

    def tail(n_max: int) -> float | None:
        bound = single_tail(n_max)
        return None if bound is None else weight_sum * bound

    series = sum_blocks(block, trunc, leading=leading, tail_bound=tail, n_terms=n_terms, label=label)
    return CoefficientValue.from_series({"delta": leading}, series)


def g_coeff(
    k: int,
    N: int,
    base: DiscriminantDatum,
    target: JacobiIndexPair,
    trunc: TruncationConfig | None = None,
    n_terms: int | None = None,
) -> CoefficientValue:
    """Fourier coefficient g_{k+1,N,(D,r)}(D', r') of the Jacobi Poincare series.

    delta_N(D, r, D', r') + i^{k+1} pi sqrt(2) N^{-1/2} (D'/D)^{k/2-1/4}
        * sum_{j >= 1} H_{N,j}(D, r, D', r') J_{k-1/2}(pi sqrt(D' D) / (N j))

    Args:
        k: Half the elliptic weight; the Jacobi weight is k + 1.
        N: Index of the Jacobi form.
        base: (D, r) of the Poincare series.
        target: (D', r') of the coefficient.
        trunc: Truncation parameters; defaults to TruncationConfig().
        n_terms: Sum exactly the terms with j <= n_terms.

    Returns:
        CoefficientValue: parts "delta" and "series"; non-rigorous for k = 2.
    """
    _check_levels(k, N, base, target)
    return _g_series(
        k,
        N,
        base,
        [(1, target)],
        trunc or TruncationConfig(),
        n_terms,
        label=f"g_coeff(k={k}, N={N}, D={base.D}, r={base.r}, D'={target.Dp}, r'={target.rp})",
    )


def g_pm_coeff(
    k: int,
    N: int,
    base: DiscriminantDatum,
    target: JacobiIndexPair,
    trunc: TruncationConfig | None = None,
    n_terms: int | None = None,
) -> CoefficientValue:
    """g^+-(D', r') = g(D', r') + (-1)^{k+1} g(D', -r'), with both H-series summed termwise."""
    _check_levels(k, N, base, target)
    return _g_series(
        k,
        N,
        base,
        [(1, target), (critical_sign(k), target.negated())],
        trunc or TruncationConfig(),
        n_terms,
        label=f"g_pm_coeff(k={k}, N={N}, D={base.D}, r={base.r}, D'={target.Dp}, r'={target.rp})",
    )


def combine_coefficients(terms: list[tuple[float, CoefficientValue]], flags: tuple[str, ...] = ()) -> CoefficientValue:
    """Linear combination of coefficient values with propagated error accounting."""
    tails = [c.tail_bound for _, c in terms]
    tail_bound = None if any(t is None for t in tails) else sum(abs(w) * t for (w, _), t in zip(terms, tails))
    merged = list(flags)
    for _, c in terms:
        merged.extend(f for f in c.flags if f not in merged)
    parts: dict[str, complex] = {}
    for weight, c in terms:
        for name, value in c.parts.items():
            parts[name] = parts.get(name, 0j) + weight * value
    return CoefficientValue(
        value=sum((w * c.value for w, c in terms), 0j),
        error_estimate=sum(abs(w) * c.error_estimate for w, c in terms),
        last_block=sum(abs(w) * c.last_block for w, c in terms),
        tail_bound=tail_bound,
        n_terms=max((c.n_terms for _, c in terms), default=0),
        stabilized=all(c.stabilized for _, c in terms),
        rigorous=all(c.rigorous for _, c in terms),
        flags=tuple(merged),
        parts=parts,
    )


def lift_coeff_via_g(
    k: int,
    N: int,
    base: DiscriminantDatum,
    m: int,
    trunc: TruncationConfig | None = None,
    n_terms: int | None = None,
) -> CoefficientValue:
    """m-th coefficient of S_{D,r}(P^J) as sum_{d | m} (D/d) d^{k-1} g^+-(m^2 D/d^2, m r/d).

    With n_terms, the d-th series stops at j <= n_terms // (N d), so that every term corresponds to a
    closed-form index n = N j d <= n_terms.
    """
    _check_levels(k, N, base)
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    trunc = trunc or TruncationConfig()
    terms = []
    for d in divisors(m):
        symbol = kronecker(base.D, d)
        if symbol == 0:
            continue
        e = m // d
        Dp, rp = e * e * base.D, e * base.r
        if (rp * rp - Dp) % (4 * N) != 0:
            raise InvariantError(f"target ({Dp}, {rp}) violates r'^2 = D' (mod {4 * N})")
        target = JacobiIndexPair(Dp=Dp, rp=rp, N=N)
        d_terms = None if n_terms is None else n_terms // (N * d)
        terms.append((symbol * float(d) ** (k - 1), g_pm_coeff(k, N, base, target, trunc, d_terms)))
    flags = ("boundary-regime",) if k == 2 else ()
    return combine_coefficients(terms, flags)


def lift_coeff_closed(
    k: int,
    N: int,
    base: DiscriminantDatum,
    m: int,
    trunc: TruncationConfig | None = None,
    n_terms: int | None = None,
) -> CoefficientValue:
    """m-th coefficient of S_{D,r}(P^J) in closed form, through S+-_{N,n}(m, D).

    Same shape and truncation as kernel_coeff_critical at weight 2k.
    """
    _check_levels(k, N, base)
    d_value = base.D

    def s_value(n: int) -> complex:
        pairs = [(b, chi) for b, chi in enumerate_s_terms(N, n, d_value) if chi != 0]
        return evaluate_terms(n, m, pairs)

    return bessel_series_coefficient(
        2 * k,
        N,
        m,
        d_value,
        trunc or TruncationConfig(),
        s_value,
        n_terms,
        label=f"lift_coeff_closed(k={k}, N={N}, m={m}, D={d_value})",
    )


class WaldspurgerConstants(BaseModel):
    """The averaged-Waldspurger constant and the two Petersson prefactors it is the quotient of"""

    k: int
    N: int
    D: int
    constant: float
    elliptic_prefactor: float
    jacobi_prefactor: float
    quotient: float
    relative_error: float


def waldspurger_constant(k: int, N: int, D: int) -> WaldspurgerConstants:
    """(k-1)! / (2^{2k-1} pi^k N^{k-1}) |D|^{k-1/2}, checked against the Petersson prefactors.

    The elliptic prefactor is Gamma(2k-1)/(4 pi)^{2k-1}, the Jacobi prefactor
    N^{k-1} Gamma(k-1/2) / (2 pi^{k-1/2} |D|^{k-1/2}); their quotient equals the constant by
    Legendre duplication.

    Raises:
        InvariantError: If the quotient differs from the constant by more than QUOTIENT_TOLERANCE.
        ArithmeticRangeError: If a value overflows binary64.
    """
    if k < 2:
        raise PreconditionError(f"k must be at least 2, got {k}")
    if N < 1 or D >= 0:
        raise PreconditionError(f"need N >= 1 and D < 0, got N={N}, D={D}")
    log_pi = math.log(math.pi)
    log_abs_d = math.log(-D)
    log_constant = (
        math.lgamma(k) - (2 * k - 1) * math.log(2) - k * log_pi - (k - 1) * math.log(N) + (k - 0.5) * log_abs_d
    )
    log_elliptic = math.lgamma(2 * k - 1) - (2 * k - 1) * math.log(4 * math.pi)
    log_jacobi = (
        (k - 1) * math.log(N) + math.lgamma(k - 0.5) - math.log(2) - (k - 0.5) * log_pi - (k - 0.5) * log_abs_d
    )
    relative_error = abs(math.expm1(log_elliptic - log_jacobi - log_constant))
    try:
        values = [math.exp(x) for x in (log_constant, log_elliptic, log_jacobi, log_elliptic - log_jacobi)]
    except OverflowError as exc:
        raise ArithmeticRangeError(f"Waldspurger constants overflow for k={k}, N={N}, D={D}") from exc
    if relative_error > QUOTIENT_TOLERANCE:
        raise InvariantError(f"prefactor quotient differs from the constant by {relative_error:.3e}")
    constant, elliptic, jacobi, quotient = values
    return WaldspurgerConstants(
        k=k,
        N=N,
        D=D,
        constant=constant,
        elliptic_prefactor=elliptic,
        jacobi_prefactor=jacobi,
        quotient=quotient,
        relative_error=relative_error,
    )


class PoincareRow(BaseModel):
    """One m of the kernel / closed lift / lift via g comparison"""

    m: int
    critical: complex
    closed: complex
    via_g: complex
    critical_error: float
    closed_error: float
    via_g_error: float
    diff_critical_closed: float
    diff_closed_via_g: float
    diff_critical_via_g: float
    tolerance: float
    agree: bool
    flags: list[str]


def poincare_identity_table(
    k2: int,
    N: int,
    D: int,
    r: int,
    m_max: int,
    trunc: TruncationConfig | None = None,
    n_terms: int | None = None,
) -> list[PoincareRow]:
    """kernel_coeff_critical, lift_coeff_closed and lift_coeff_via_g for m = 1..m_max.

    With n_terms all three are truncated at the same n, so pairs must agree to slack (1 + |value|) with
    slack 1e-8, or 1e-6 at weight 4. Stabilized values also get both error estimates added. The row
    tolerance is the largest of the three pair tolerances.
    """
    if k2 % 2 != 0:
        raise PreconditionError(f"weight must be even, got {k2}")
    k = k2 // 2
    base = DiscriminantDatum(D=D, N=N, r=r)
    trunc = trunc or TruncationConfig()
    slack = BOUNDARY_TOLERANCE if k2 == 4 else IDENTITY_TOLERANCE
    aligned = n_terms is not None
    rows = []
    for m in range(1, m_max + 1):
        critical = kernel_coeff_critical(k2, N, m, base, trunc, n_terms)
        closed = lift_coeff_closed(k, N, base, m, trunc, n_terms)
        via_g = lift_coeff_via_g(k, N, base, m, trunc, n_terms)
        pairs = {
            "critical_closed": (critical, closed),
            "closed_via_g": (closed, via_g),
            "critical_via_g": (critical, via_g),
        }
        diffs = {name: abs(a.value - b.value) for name, (a, b) in pairs.items()}
        tolerances = {name: agreement_tolerance(a, b, slack, aligned) for name, (a, b) in pairs.items()}
        agree = all(diffs[name] <= tolerances[name] for name in pairs)
        flags = sorted(set(critical.flags) | set(closed.flags) | set(via_g.flags))
        rows.append(
            PoincareRow(
                m=m,
                critical=critical.value,
                closed=closed.value,
                via_g=via_g.value,
                critical_error=critical.error_estimate,
                closed_error=closed.error_estimate,
                via_g_error=via_g.error_estimate,
                diff_critical_closed=diffs["critical_closed"],
                diff_closed_via_g=diffs["closed_via_g"],
                diff_critical_via_g=diffs["critical_via_g"],
                tolerance=max(tolerances.values()),
                agree=agree,
                flags=flags,
            )
        )
        if not agree:
            logger.warning("Poincare identity mismatch at 2k=%d, N=%d, D=%d, m=%d: %s", k2, N, D, m, diffs)
    return rows

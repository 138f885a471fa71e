"""Fourier coefficients of the twisted-L-function kernel R_{k,N,psi}(tau, s, chi).

kernel_coeff_general evaluates the full expansion for arbitrary (k, N, psi, chi, s) in the strip
1 < Re(s) < k - 1. kernel_coeff_critical evaluates its specialization at weight 2k, s = k,
psi = 1, chi = (D/.), where the 1F1 factors collapse to Bessel functions and the (a, c) sum to the
exponential sums K_{N,n}(m, D).
"""

import cmath
import logging
import math

from pydantic import BaseModel, ConfigDict, Field

from twisted_kernel.arithmetic.characters import DirichletCharacter, gauss_sum_value
from twisted_kernel.arithmetic.ntheory import (
    DiscriminantDatum,
    check_range,
    discriminant_value,
    divisors,
    inverse_mod,
    kronecker,
    require_negative_fundamental,
)
from twisted_kernel.arithmetic.registry import CharacterRegistry, get_characters_by_index
from twisted_kernel.coefficients.truncation import CoefficientValue, TruncationConfig, sum_blocks
from twisted_kernel.special.bessel import bessel_j_half
from twisted_kernel.special.gamma import log_gamma
from twisted_kernel.special.hypergeometric import kummer_1f1, log_one_f1_bound
from twisted_kernel.special.zeta import zeta_upper
from twisted_kernel.sums.expsums import enumerate_k_terms, evaluate_terms
from twisted_kernel.utils.exceptions import InvariantError, PreconditionError, StripError

logger = logging.getLogger(__name__)

I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)
LOG_TWO_PI = math.log(2.0 * math.pi)
# relative tolerance for the c > 0 / c < 0 half agreement in each block
SIGN_SYMMETRY_TOLERANCE = 1e-9


def i_power(e: int) -> complex:
    """i^e, exact."""
    return I_POWERS[e % 4]


class KernelSpec(BaseModel):
    """Weight, level, characters and point s at which the kernel coefficients are evaluated.

    Requires gcd(N, h) = 1, psi mod N with psi(-1) = (-1)^k, chi primitive, and 1 < Re(s) < k - 1.
    """

    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=3)
    N: int = Field(ge=1)
    psi: DirichletCharacter
    chi: DirichletCharacter
    s: complex
    trunc: TruncationConfig = Field(default_factory=TruncationConfig)

    def __init__(self, **data):
        super().__init__(**data)
        self._check()

    def _check(self) -> None:
        if self.psi.modulus != self.N:
            raise PreconditionError(f"psi has modulus {self.psi.modulus}, expected N={self.N}")
        if not self.chi.is_primitive:
            raise PreconditionError(f"chi mod {self.chi.modulus} is not primitive (conductor {self.chi.conductor})")
        if math.gcd(self.N, self.h) != 1:
            raise PreconditionError(f"gcd(N={self.N}, h={self.h}) must be 1")
        if self.psi.parity != (-1) ** self.k:
            raise PreconditionError(f"psi(-1) = {self.psi.parity} but (-1)^k = {(-1) ** self.k}")
        if not 1 < self.s.real < self.k - 1:
            raise StripError(f"Re(s) = {self.s.real} outside the convergence strip (1, {self.k - 1})")

    @property
    def h(self) -> int:
        return self.chi.modulus

    def with_s(self, s: complex) -> "KernelSpec":
        return KernelSpec(k=self.k, N=self.N, psi=self.psi, chi=self.chi, s=s, trunc=self.trunc)


def kernel_leading_terms(spec: KernelSpec, m: int) -> tuple[complex, complex]:
    """The closed-form terms of the m-th coefficient.

    Returns:
        tuple[complex, complex]: conj(chi(m)) m^{s-1}, and the delta_{N,1} term
            chi(-1) i^{-k} h^{2s-k} (2 pi)^{k-2s} Gamma(s)/Gamma(k-s) G(conj chi)/G(chi) chi(m) m^{k-s-1}
            (zero for N >= 2).
    """
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    k, s, chi, h = spec.k, spec.s, spec.chi, spec.h
    log_m = math.log(m)
    first = chi(m).conjugate() * cmath.exp((s - 1) * log_m)
    if spec.N != 1 or chi(m) == 0:
        return first, 0j
    magnitude = cmath.exp(
        (2 * s - k) * math.log(h) + (k - 2 * s) * LOG_TWO_PI + log_gamma(s) - log_gamma(k - s) + (k - s - 1) * log_m
    )
    gauss_ratio = gauss_sum_value(chi.conjugate()) / gauss_sum_value(chi)
    delta = chi(-1) * i_power(-k) * magnitude * gauss_ratio * chi(m)
    return first, delta


def _general_prefactor(spec: KernelSpec, m: int) -> complex:
    k, s, h = spec.k, spec.s, spec.h
    log_value = (
        math.log(0.5)
        + (k - s) * LOG_TWO_PI
        + log_gamma(s)
        - math.lgamma(k)
        + (k - 1) * math.log(m)
        + s * math.log(h)
    )
    return i_power(-k) * cmath.exp(log_value) / gauss_sum_value(spec.chi)


def _general_tail(spec: KernelSpec, m: int, prefactor: complex):
    sigma, t = spec.s.real, spec.s.imag
    exponent = min(sigma - 0.5, spec.k - sigma - 0.5)
    if exponent <= 1:
        return lambda n_max: None
    f1_bound = math.exp(log_one_f1_bound(spec.s, spec.k))
    # at most 2 d(n) h <= 4 h sqrt(n) terms per n; the 1/2 of the c-sign sum is already in the prefactor
    scale = abs(prefactor) * f1_bound * 2 * math.cosh(math.pi * t / 2) * 4 * spec.h
    return lambda n_max: scale * zeta_upper(exponent, n_max + 1)


def _general_block(spec: KernelSpec, m: int, lo: int, hi: int) -> tuple[complex, int]:
    """Sum over lo < n <= hi of the (a, c, l) terms without the prefactor; asserts the c-sign symmetry."""
    k, N, s, h, psi, chi = spec.k, spec.N, spec.s, spec.h, spec.psi, spec.chi
    rotate = cmath.exp(0.5j * math.pi * s)
    rotate_back = psi(-1) * chi(-1) * cmath.exp(-0.5j * math.pi * s)
    halves = {1: 0j, -1: 0j}
    count = 0
    for n in range(max(lo + 1, N), hi + 1):
        if n % N != 0:
            continue
        z = 2j * math.pi * m * h / n
        f_minus = None
        f_plus = None
        for c_abs in divisors(n):
            if c_abs % N != 0:
                continue
            g = math.gcd(c_abs, h)
            for sign in (1, -1):
                c = sign * c_abs
                q = n // c
                if q % g != 0:
                    continue
                # l c = q (mod h) has g solutions mod h
                step = h // g
                base = (q // g) * inverse_mod(c // g, step) % step if step > 1 else 0
                for t_index in range(g):
                    ell = base + t_index * step
                    chi_ell = chi(ell)
                    if chi_ell == 0:
                        continue
                    a = (q - ell * c) // h
                    if math.gcd(a, c_abs) != 1:
                        continue
                    if f_minus is None:
                        f_minus = kummer_1f1(s, k, -z)
                        f_plus = kummer_1f1(s, k, z)
                    abar = inverse_mod(a, c_abs)
                    phase = cmath.exp(2j * math.pi * (m * abar % c_abs) / c)
                    ratio = c * c / n
                    power = sign**k * c_abs ** (-k) * cmath.exp(s * math.log(ratio))
                    bracket = rotate * phase * f_minus + rotate_back * f_plus / phase
                    halves[sign] += chi_ell * psi(a) * power * bracket
                    count += 1
    if abs(halves[1] - halves[-1]) > SIGN_SYMMETRY_TOLERANCE * max(1.0, abs(halves[1])):
        raise InvariantError(f"c > 0 and c < 0 halves disagree on ({lo}, {hi}]: {halves[1]} vs {halves[-1]}")
    return halves[1] + halves[-1], count


def kernel_coeff_general(spec: KernelSpec, m: int, n_terms: int | None = None) -> CoefficientValue:
    """The m-th Fourier coefficient of R_{k,N,psi}(tau, s, chi).

    The (a, c) double sum is reorganized by n = (h a + l c) c >= 1 and summed in blocks of n. For each
    n, the signed divisors c of n with N | c are taken, l is solved from l c = n/c (mod h), and
    a = (n/c - l c)/h is kept when gcd(a, c) = 1. Both signs of c are summed with the prefactor 1/2.

    Args:
        spec: Weight, level, characters and s.
        m: Coefficient index, m >= 1.
        n_terms: Sum exactly the terms with n <= n_terms instead of stopping on stabilization.

    Returns:
        CoefficientValue: parts "leading", "delta" and "series".

    Raises:
        InvariantError: If the two signs of c give different contributions in a block.
        ConvergenceError: If the series does not stabilize within trunc.n_cap.
    """
    check_range(m)
    first, delta = kernel_leading_terms(spec, m)
    prefactor = _general_prefactor(spec, m)

    def block(lo: int, hi: int) -> tuple[complex, int]:
        value, count = _general_block(spec, m, lo, hi)
        return prefactor * value, count

    series = sum_blocks(
        block,
        spec.trunc,
        leading=first + delta,
        tail_bound=_general_tail(spec, m, prefactor),
        n_terms=n_terms,
        label=f"kernel_coeff_general(k={spec.k}, N={spec.N}, m={m})",
    )
    result = CoefficientValue.from_series({"leading": first, "delta": delta}, series)
    if not result.rigorous:
        logger.warning("kernel coefficient for k=%d, s=%s has no rigorous tail bound", spec.k, spec.s)
    return result


def critical_sign(k: int) -> int:
    """The sign (-1)^{k+1} of the plus/minus combinations at weight 2k."""
    return 1 if k % 2 == 1 else -1


def plus_minus_real(value: complex, k: int) -> complex:
    """A(m) + (-1)^{k+1} A(-m) for a sum with integer coefficients, where A(-m) = conj A(m)."""
    if critical_sign(k) == 1:
        return complex(2 * value.real, 0.0)
    return complex(0.0, 2 * value.imag)


def critical_leading(k: int, N: int, m: int, D: int) -> complex:
    """(1 +- delta_{N,1}) (D/m) m^{k-1}."""
    factor = 1 + critical_sign(k) if N == 1 else 1
    return complex(factor * kronecker(D, m) * float(m) ** (k - 1))


def critical_prefactor(k: int, m: int) -> complex:
    """i^{k+1} pi sqrt(2) m^{k-1/2}."""
    return i_power(k + 1) * math.pi * math.sqrt(2.0) * math.exp((k - 0.5) * math.log(m))


def critical_tail(k: int, N: int, m: int, h: int):
    """Tail bound for the Bessel series at weight 2k from |K+-| <= 4 h sqrt(n) and the Bessel majorant."""
    log_scale = (
        math.log(4 * math.sqrt(2.0) * math.pi * h)
        + (k - 0.5) * math.log(m)
        + (k - 0.5) * math.log(math.pi * m * h / 2)
        - math.lgamma(k + 0.5)
        + (0.5 - k) * math.log(N)
    )
    scale = math.exp(log_scale)
    return lambda n_max: scale * zeta_upper(k - 0.5, n_max // N + 1)


def _check_critical(k2: int, N: int, m: int, D: "int | DiscriminantDatum") -> tuple[int, int]:
    if k2 < 4 or k2 % 2 != 0:
        raise PreconditionError(f"weight 2k must be even and at least 4, got {k2}")
    if N < 1 or m < 1:
        raise PreconditionError(f"N and m must be positive, got N={N}, m={m}")
    d_value = discriminant_value(D)
    check_range(N, m, d_value)
    require_negative_fundamental(d_value, N)
    return k2 // 2, d_value


def bessel_series_coefficient(
    k2: int,
    N: int,
    m: int,
    D: "int | DiscriminantDatum",
    trunc: TruncationConfig,
    n_term_sum,
    n_terms: int | None,
    label: str,
) -> CoefficientValue:
    """Shared evaluator for the weight-2k formulas of shape

        (1 +- delta_{N,1}) (D/m) m^{k-1}
            + i^{k+1} pi sqrt(2) m^{k-1/2} sum_{N | n} n^{-1/2} A+-(n) J_{k-1/2}(pi m |D| / n)

    where n_term_sum(n) returns the finite sum A_{N,n}(m, D) with integer weights.
    """
    k, d_value = _check_critical(k2, N, m, D)
    h = -d_value
    leading = critical_leading(k, N, m, d_value)
    prefactor = critical_prefactor(k, m)

    def block(lo: int, hi: int) -> tuple[complex, int]:
        first = (lo // N + 1) * N
        ns = range(first, hi + 1, N)
        total = 0j
        for n in ns:
            combined = plus_minus_real(n_term_sum(n), k)
            if combined != 0:
                total += combined * bessel_j_half(2 * k - 1, math.pi * m * h / n) / math.sqrt(n)
        return prefactor * total, len(ns)

    series = sum_blocks(
        block, trunc, leading=leading, tail_bound=critical_tail(k, N, m, h), n_terms=n_terms, label=label
    )
    flags = ("boundary-regime",) if k2 == 4 else ()
    if flags:
        logger.warning("%s: weight 4 lies on the boundary of the convergence strip", label)
    return CoefficientValue.from_series({"leading": leading}, series, flags)


def kernel_coeff_critical(
    k2: int,
    N: int,
    m: int,
    D: "int | DiscriminantDatum",
    trunc: TruncationConfig | None = None,
    n_terms: int | None = None,
) -> CoefficientValue:
    """m-th coefficient of R_{2k,N}(tau, k, (D/.)) through the exponential sums K_{N,n}(m, D).

    Args:
        k2: Even weight 2k >= 4.
        N: Level, coprime to D.
        m: Coefficient index.
        D: Negative fundamental discriminant (or a DiscriminantDatum).
        trunc: Truncation parameters; defaults to TruncationConfig().
        n_terms: Sum exactly the terms with n <= n_terms.

    Returns:
        CoefficientValue: real up to rounding; flagged "boundary-regime" at weight 4.
    """
    d_value = discriminant_value(D)

    def k_value(n: int) -> complex:
        pairs = [(t.b, t.symbol) for t in enumerate_k_terms(N, n, d_value) if t.symbol != 0]
        return evaluate_terms(n, m, pairs)

    return bessel_series_coefficient(
        k2,
        N,
        m,
        D,
        trunc or TruncationConfig(),
        k_value,
        n_terms,
        label=f"kernel_coeff_critical(2k={k2}, N={N}, m={m}, D={d_value})",
    )


def kernel_spec_from_indices(
    k: int,
    N: int,
    psi_index: int,
    chi_modulus: int,
    chi_index: int,
    s: complex,
    trunc: TruncationConfig,
    registry: CharacterRegistry,
) -> KernelSpec:
    """KernelSpec with characters addressed by their canonical index in a CharacterRegistry."""
    (psi,) = get_characters_by_index(registry, N, [psi_index])
    (chi,) = get_characters_by_index(registry, chi_modulus, [chi_index])
    return KernelSpec(k=k, N=N, psi=psi, chi=chi, s=complex(s), trunc=trunc)


__all__ = [
    "KernelSpec",
    "kernel_leading_terms",
    "kernel_coeff_general",
    "kernel_coeff_critical",
    "kernel_spec_from_indices",
    "bessel_series_coefficient",
]

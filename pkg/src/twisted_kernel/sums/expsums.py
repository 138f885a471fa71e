"""The finite exponential sums K_{N,n}(m, D), S_{N,n}(m, D) and H_{N,n}(D, r, D', r')."""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TypeVar

import numpy as np

from twisted_kernel.arithmetic.formal import FormalExpSum
from twisted_kernel.arithmetic.ntheory import (
    DiscriminantDatum,
    check_range,
    discriminant_value,
    divisors,
    inverse_mod,
    is_fundamental,
    kronecker,
    require_negative_fundamental,
)
from twisted_kernel.sums.genus import QuadraticForm, genus_char, genus_char_level
from twisted_kernel.utils.exceptions import CongruenceError, InvariantError, PreconditionError

logger = logging.getLogger(__name__)

# exponent-matrix entries per numpy chunk in h_sum
CHUNK_ELEMENTS = 1 << 22

V = TypeVar("V", complex, FormalExpSum)


@dataclass(frozen=True)
class ExpSumValue:
    """A finite exponential sum: its exact form (when available) and its complex value."""

    exact: FormalExpSum | None
    value: complex

    def as_dict(self) -> dict:
        result: dict = {"value": self.value}
        if self.exact is not None:
            nonzero = np.flatnonzero(self.exact.coeffs)
            result["exact"] = {
                "modulus": self.exact.modulus,
                "terms": {str(int(j)): int(self.exact.coeffs[j]) for j in nonzero},
            }
        return result


@dataclass(frozen=True)
class KTerm:
    """One solution (a, c, l) of (|D| a + l c) c = n behind K_{N,n}, with b = |D| - 2 q abar mod 2n."""

    c: int
    q: int
    ell: int
    a: int
    abar: int
    b: int
    symbol: int


def _check_sum_inputs(N: int, n: int, D: "int | DiscriminantDatum", require_multiple: bool = True) -> int:
    d_value = discriminant_value(D)
    check_range(N, n, d_value)
    if N < 1 or n < 1:
        raise PreconditionError(f"N and n must be positive, got N={N}, n={n}")
    if require_multiple and n % N != 0:
        raise PreconditionError(f"N={N} must divide n={n}")
    require_negative_fundamental(d_value, N)
    return d_value


@lru_cache(maxsize=4096)
def enumerate_k_terms(N: int, n: int, d_value: int) -> tuple[KTerm, ...]:
    """k_terms without input validation, cached; used by the coefficient series."""
    h = -d_value
    terms = []
    for c in divisors(n):
        if c % N != 0:
            continue
        q = n // c
        for ell in range(h):
            if (q - ell * c) % h != 0:
                continue
            a = (q - ell * c) // h
            if math.gcd(a, c) != 1:
                continue
            abar = inverse_mod(a, c)
            b = (h - 2 * q * abar) % (2 * n)
            if (h - 2 * q * (abar + c)) % (2 * n) != b:
                raise InvariantError(f"K term for c={c}, l={ell} depends on the choice of abar")
            terms.append(KTerm(c=c, q=q, ell=ell, a=a, abar=abar, b=b, symbol=kronecker(d_value, ell)))
    return tuple(terms)


def k_terms(N: int, n: int, D: "int | DiscriminantDatum") -> list[KTerm]:
    """All (c, l) solutions of the divisor parametrization, ascending in c then l.

    Residues l sharing a factor with D are included with symbol 0; they carry a representative b
    but contribute nothing to K. When N does not divide n no divisor c of n is a multiple of N and
    the list is empty.
    """
    return list(enumerate_k_terms(N, n, _check_sum_inputs(N, n, D, require_multiple=False)))


def k_sum(N: int, n: int, m: int, D: "int | DiscriminantDatum") -> ExpSumValue:
    """K_{N,n}(m, D) = sum over solutions of (D/l) e_{2n}(m (|D| - 2 q abar)), exactly mod 2n."""
    terms = [t for t in k_terms(N, n, D) if t.symbol != 0]
    exact = FormalExpSum.from_terms(2 * n, [m * t.b for t in terms], [t.symbol for t in terms])
    return ExpSumValue(exact=exact, value=exact.evaluate())


def representatives(N: int, n: int, D: "int | DiscriminantDatum") -> list[int]:
    """b mod 2n produced by the K-sum parametrization, one per solution."""
    return [t.b for t in k_terms(N, n, D)]


def _direct_b(N: int, n: int, d_value: int) -> np.ndarray:
    b = np.arange(2 * n, dtype=np.int64)
    mask = ((b * b - d_value * d_value) % (4 * n) == 0) & ((b - d_value) % (2 * N) == 0)
    return b[mask]


def direct_representatives(N: int, n: int, D: "int | DiscriminantDatum") -> list[int]:
    """All b in [0, 2n) with b^2 = D^2 (mod 4n) and b = D (mod 2N)."""
    d_value = _check_sum_inputs(N, n, D)
    return [int(b) for b in _direct_b(N, n, d_value)]


def s_terms(N: int, n: int, D: int, validate: bool = True) -> list[tuple[int, int]]:
    """Pairs (b, chi_D([n, b, (b^2 - D^2)/4n])) for the admissible b, ascending in b.

    With validate=False the inputs are taken as already checked.
    """
    if validate:
        D = _check_sum_inputs(N, n, D)
    return list(enumerate_s_terms(N, n, D))


@lru_cache(maxsize=4096)
def enumerate_s_terms(N: int, n: int, d_value: int) -> tuple[tuple[int, int], ...]:
    """s_terms without input validation, cached; used by the coefficient series."""
    pairs = []
    for b in _direct_b(N, n, d_value):
        b = int(b)
        form = QuadraticForm(a=n, b=b, c=(b * b - d_value * d_value) // (4 * n))
        pairs.append((b, genus_char(d_value, form)))
    return tuple(pairs)


def evaluate_terms(n: int, m: int, pairs: "list[tuple[int, int]] | tuple[tuple[int, int], ...]") -> complex:
    """sum of weight * e_{2n}(m b) over (b, weight) pairs, in floating point."""
    if not pairs:
        return 0j
    b, weight = np.array(pairs, dtype=np.int64).T
    phase = (m % (2 * n)) * b % (2 * n)
    return complex(np.dot(weight, np.exp(1j * np.pi * phase / n)))


def s_sum_from_terms(n: int, m: int, pairs: list[tuple[int, int]]) -> ExpSumValue:
    """S from precomputed (b, genus character) pairs, so one s_terms call serves many m."""
    pairs = [(b, chi) for b, chi in pairs if chi != 0]
    exact = FormalExpSum.from_terms(2 * n, [b * m for b, _ in pairs], [chi for _, chi in pairs])
    return ExpSumValue(exact=exact, value=exact.evaluate())


def s_sum(N: int, n: int, m: int, D: "int | DiscriminantDatum") -> ExpSumValue:
    """S_{N,n}(m, D) = sum_b chi_D([n, b, (b^2 - D^2)/4n]) e_{2n}(b m), exactly mod 2n."""
    d_value = _check_sum_inputs(N, n, D)
    return s_sum_from_terms(n, m, s_terms(N, n, d_value, validate=False))


@lru_cache(maxsize=4096)
def enumerate_general_s_terms(N: int, n: int, D0: int, r0: int, D: int, r: int) -> tuple[tuple[int, int], ...]:
    """Pairs (b, chi_{D0}^{(N)}([n, b, (b^2 - D0 D)/4n])) over b mod 2n with b^2 = D0 D (mod 4n), b = r0 r (mod 2N)."""
    b = np.arange(2 * n, dtype=np.int64)
    mask = ((b * b - D0 * D) % (4 * n) == 0) & ((b - r0 * r) % (2 * N) == 0)
    pairs = []
    for value in b[mask]:
        value = int(value)
        form = QuadraticForm(a=n, b=value, c=(value * value - D0 * D) // (4 * n))
        pairs.append((value, genus_char_level(D0, N, form)))
    return tuple(pairs)


def s_sum_general(N: int, n: int, m: int, D0: int, r0: int, D: int, r: int) -> ExpSumValue:
    """S over forms of discriminant D0 D, for a character base (D0, r0) and any discriminant D = r^2 (mod 4N).

    sum_b chi_{D0}^{(N)}([n, b, (b^2 - D0 D)/4n]) e_{2n}(b m), with b^2 = D0 D (mod 4n) and b = r0 r (mod 2N).
    With (D0, r0) = (D, r) and gcd(D, N) = 1 this is s_sum.

    Raises:
        PreconditionError: If N does not divide n, D0 is not a negative fundamental discriminant or D >= 0.
        CongruenceError: If r0^2 = D0 or r^2 = D fails mod 4N.
    """
    check_range(N, n, m, D0, r0, D, r)
    if N < 1 or n < 1 or n % N != 0:
        raise PreconditionError(f"N={N} must divide n={n}, both positive")
    if D0 >= 0 or not is_fundamental(D0):
        raise PreconditionError(f"D0={D0} is not a negative fundamental discriminant")
    if D >= 0:
        raise PreconditionError(f"D={D} must be negative")
    for square, root in ((D0, r0), (D, r)):
        if (root * root - square) % (4 * N) != 0:
            raise CongruenceError(f"{root}^2 = {square} (mod {4 * N}) fails")
    return s_sum_from_terms(n, m, list(enumerate_general_s_terms(N, n, D0, r0, D, r)))


def h_sum(N: int, n: int, D: int, r: int, Dp: int, rp: int) -> complex:
    """Kloosterman-type sum H_{N,n}(D, r, D', r').

    n^{-3/2} sum_{rho mod n coprime, lambda mod n}
        e_n((N lambda^2 + r lambda + (r^2 - D)/4N) rhobar + (r'^2 - D')/4N rho + r' lambda) e_{2Nn}(r r')

    The exponents are reduced mod n and counted per residue with numpy, in chunks of about CHUNK_ELEMENTS
    exponents.

    Raises:
        CongruenceError: If r^2 = D or r'^2 = D' fails mod 4N.
    """
    check_range(N, n, D, r, Dp, rp)
    if N < 1 or n < 1:
        raise PreconditionError(f"N and n must be positive, got N={N}, n={n}")
    if (r * r - D) % (4 * N) != 0:
        raise CongruenceError(f"r^2 = D (mod 4N) fails for r={r}, D={D}, N={N}")
    if (rp * rp - Dp) % (4 * N) != 0:
        raise CongruenceError(f"r'^2 = D' (mod 4N) fails for r'={rp}, D'={Dp}, N={N}")
    outer = np.exp(2j * np.pi * ((r * rp) % (2 * N * n)) / (2 * N * n))
    if n == 1:
        return complex(outer)

    shift = (r * r - D) // (4 * N) % n
    shift_p = (rp * rp - Dp) // (4 * N) % n
    lam = np.arange(n, dtype=np.int64)
    quadratic = (N % n * (lam * lam % n) + r % n * lam + shift) % n
    linear = rp % n * lam % n
    rho = np.array([x for x in range(1, n) if math.gcd(x, n) == 1], dtype=np.int64)
    rho_bar = np.array([inverse_mod(int(x), n) for x in rho], dtype=np.int64)

    counts = np.zeros(n, dtype=np.int64)
    chunk = max(1, CHUNK_ELEMENTS // n)
    for start in range(0, len(rho), chunk):
        rows = slice(start, start + chunk)
        exponents = (quadratic[None, :] * rho_bar[rows, None] + (shift_p * rho[rows])[:, None] + linear[None, :]) % n
        counts += np.bincount(exponents.ravel(), minlength=n)

    roots = np.exp(2j * np.pi * np.arange(n) / n)
    return complex(outer * np.dot(counts, roots) * n**-1.5)


def plus_minus_combine(a_pos: V, a_neg: V, k: int) -> V:
    """A(m) + (-1)^{k+1} A(-m) for complex values or FormalExpSums."""
    if (k + 1) % 2 == 0:
        return a_pos + a_neg
    return a_pos - a_neg

"""Binary quadratic forms and the genus characters chi_D on them.

genus_char handles forms of discriminant D^2 through represented values. genus_char_level handles
forms [N a, b, c] of discriminant D0 D with D0 fundamental and D any discriminant, at level N.
"""

import itertools
import math
from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict

from twisted_kernel.arithmetic.ntheory import (
    DiscriminantDatum,
    check_range,
    discriminant_value,
    divisors,
    is_fundamental,
    kronecker,
    prime_discriminants,
)
from twisted_kernel.utils.exceptions import InvariantError, PreconditionError


class QuadraticForm(BaseModel):
    """The form a x^2 + b x y + c y^2."""

    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, matrix: tuple[tuple[int, int], tuple[int, int]]) -> "QuadraticForm":
        """Q o M, i.e. the form (x, y) -> Q(alpha x + beta y, gamma x + delta y)."""
        (alpha, beta), (gamma, delta) = matrix
        return QuadraticForm(
            a=self.value(alpha, gamma),
            b=2 * self.a * alpha * beta + self.b * (alpha * delta + beta * gamma) + 2 * self.c * gamma * delta,
            c=self.value(beta, delta),
        )

    def check(self, D: int, N: int = 1) -> None:
        """Raise PreconditionError unless N | a and the discriminant is D^2."""
        if self.a % N != 0:
            raise PreconditionError(f"level {N} does not divide a = {self.a}")
        if self.discriminant != D * D:
            raise PreconditionError(f"form {self.as_tuple()} has discriminant {self.discriminant}, expected {D * D}")

    def as_tuple(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c


@lru_cache(maxsize=None)
def _symbol_table(D: int) -> np.ndarray:
    h = abs(D)
    return np.array([kronecker(D, j) for j in range(h)], dtype=np.int64)


def _symbols_in_box(D: int, a: int, b: int, c: int, size: int) -> set[int]:
    h = abs(D)
    x, y = np.meshgrid(np.arange(size, dtype=np.int64), np.arange(size, dtype=np.int64), indexing="ij")
    primitive = np.gcd(x, y) == 1
    values = (a * (x * x % h) + b * (x * y % h) + c * (y * y % h)) % h
    usable = primitive & (np.gcd(values, h) == 1)
    return {int(s) for s in np.unique(_symbol_table(D)[values[usable]])}


@lru_cache(maxsize=65536)
def _genus_char_reduced(D: int, a: int, b: int, c: int, exhaustive_check: bool) -> int:
    h = abs(D)
    symbols = _symbols_in_box(D, a, b, c, h)
    if len(symbols) > 1:
        raise InvariantError(f"form [{a}, {b}, {c}] represents values with symbols {sorted(symbols)} for D={D}")
    if exhaustive_check and _symbols_in_box(D, a, b, c, 2 * h) != symbols:
        raise InvariantError(f"enlarged search box changes the genus character of [{a}, {b}, {c}] for D={D}")
    return symbols.pop() if symbols else 0


def genus_char(D: "int | DiscriminantDatum", form: QuadraticForm, exhaustive_check: bool = False) -> int:
    """Genus character chi_D(Q) for a form of discriminant D^2.

    The value is (D/v) for any value v = Q(x, y) with gcd(x, y) = 1 and gcd(v, D) = 1, found by
    searching the box [0, |D|)^2; 0 when no such value exists. Since (D/.) has period |D|, the
    search runs on the coefficients reduced mod |D| and the result is cached on that triple.

    Args:
        D: The discriminant, or a DiscriminantDatum whose level N must divide form.a.
        form: A form of discriminant D^2.
        exhaustive_check: Repeat the search on [0, 2|D|)^2 and require the same answer.

    Raises:
        PreconditionError: If the form does not match D (and N).
        InvariantError: If two coprime represented values give different symbols.
    """
    d_value = discriminant_value(D)
    check_range(d_value, *form.as_tuple())
    form.check(d_value, D.N if isinstance(D, DiscriminantDatum) else 1)
    h = abs(d_value)
    if h == 1:
        return 1 if math.gcd(*form.as_tuple()) == 1 else 0
    return _genus_char_reduced(d_value, form.a % h, form.b % h, form.c % h, exhaustive_check)


def _split_values(D0: int, N: int, a: int, c: int) -> set[int]:
    """(D1 / N1 a)(D2 / N2 c) over D0 = D1 D2 into fundamental factors and N = N1 N2 where both are coprime."""
    primes = prime_discriminants(D0)
    values = set()
    for chosen in itertools.product((False, True), repeat=len(primes)):
        d1 = math.prod(p for p, take in zip(primes, chosen) if take)
        d2 = D0 // d1
        for n1 in divisors(N):
            n2 = N // n1
            if math.gcd(d1, n1 * a) == 1 and math.gcd(d2, n2 * c) == 1:
                values.add(kronecker(d1, n1 * a) * kronecker(d2, n2 * c))
    return values


def _gamma0_orbit(N: int, a: int, b: int, c: int, span: int):
    """Quotient coordinates (a, b, c) of [N a, b, c] moved by upper then lower unipotents in Gamma_0(N)."""
    for t in range(span):
        upper = (a, b + 2 * N * a * t, N * a * t * t + b * t + c)
        for u in range(span):
            ua, ub, uc = upper
            yield ua + ub * u + uc * N * u * u, ub + 2 * uc * N * u, uc


@lru_cache(maxsize=65536)
def _genus_char_level_reduced(D0: int, N: int, a: int, b: int, c: int, exhaustive_check: bool) -> int:
    h = abs(D0)
    if math.gcd(math.gcd(a, b), math.gcd(c, D0)) > 1:
        return 0
    found: set[int] = set()
    for fa, _, fc in _gamma0_orbit(N, a, b, c, h):
        found |= _split_values(D0, N, fa % h, fc % h)
        if len(found) > 1:
            raise InvariantError(f"level {N} genus character of [{N * a}, {b}, {c}] for D0={D0} takes {sorted(found)}")
        if found and not exhaustive_check:
            break
    if not found:
        raise InvariantError(f"no admissible splitting of D0={D0}, N={N} for [{N * a}, {b}, {c}]")
    return found.pop()


def genus_char_level(D0: int, N: int, form: QuadraticForm, exhaustive_check: bool = False) -> int:
    """Genus character chi_{D0} at level N on Q = [N a, b, c] of discriminant D0 D.

    chi(Q) = 0 if gcd(a, b, c, D0) > 1. Otherwise chi(Q) = (D1 / N1 a)(D2 / N2 c) for any splitting
    D0 = D1 D2 into fundamental discriminants and N = N1 N2 with gcd(D1, N1 a) = gcd(D2, N2 c) = 1.
    When the given form admits no such splitting, Gamma_0(N)-equivalent forms are tried. For
    gcd(D0, N) = 1 this is genus_char; for gcd(D0, N) > 1 it keeps the value on forms such as
    [2, 0, -2] at D0 = -4, N = 2, whose represented values all share a factor with D0.

    Args:
        D0: Fundamental discriminant.
        N: Level, dividing form.a.
        form: A form whose discriminant is D0 times a discriminant.
        exhaustive_check: Evaluate every form of the searched orbit and require a single value.

    Raises:
        PreconditionError: If D0, N or the form do not fit together.
        InvariantError: If two splittings disagree or none exists on the searched orbit.
    """
    check_range(D0, N, *form.as_tuple())
    if not is_fundamental(D0):
        raise PreconditionError(f"D0={D0} is not a fundamental discriminant")
    if N < 1 or form.a % N != 0:
        raise PreconditionError(f"level {N} does not divide a = {form.a}")
    disc = form.discriminant
    if disc % D0 != 0 or (disc // D0) % 4 not in (0, 1):
        raise PreconditionError(f"form {form.as_tuple()} has discriminant {disc}, not D0 times a discriminant")
    h = abs(D0)
    return _genus_char_level_reduced(D0, N, form.a // N % h, form.b % h, form.c % h, exhaustive_check)

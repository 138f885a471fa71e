"""Exact Dirichlet characters, Gauss sums and the character decomposition."""

import cmath
import itertools
import math
from fractions import Fraction
from functools import cached_property, lru_cache

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import factorint
from sympy.ntheory.residue_ntheory import is_primitive_root

from twisted_kernel.arithmetic.formal import FormalExpSum
from twisted_kernel.arithmetic.ntheory import check_range, divisors, kronecker, require_negative_fundamental
from twisted_kernel.utils.exceptions import PreconditionError


class DirichletCharacter(BaseModel):
    """A character mod `modulus` with values exp(2 pi i exponents[n] / order), None meaning zero."""

    model_config = ConfigDict(frozen=True)

    modulus: int
    order: int
    exponents: tuple[int | None, ...]
    conductor: int
    index: int | None = None

    @model_validator(mode="after")
    def _check(self) -> "DirichletCharacter":
        h = self.modulus
        if h < 1 or self.order < 1:
            raise PreconditionError("modulus and order must be positive")
        if len(self.exponents) != h:
            raise PreconditionError(f"value table must have length {h}, got {len(self.exponents)}")
        for n, e in enumerate(self.exponents):
            if (e is None) != (math.gcd(n, h) > 1):
                raise PreconditionError(f"value at {n} must be zero exactly when gcd({n}, {h}) > 1")
            if e is not None and not 0 <= e < self.order:
                raise PreconditionError(f"exponent {e} at {n} outside [0, {self.order})")
        if h % self.conductor != 0:
            raise PreconditionError(f"conductor {self.conductor} does not divide {h}")
        if 2 * self.exponents[h - 1] % self.order != 0:
            raise PreconditionError("value at -1 must be +1 or -1")
        return self

    def exponent(self, n: int) -> int | None:
        return self.exponents[n % self.modulus]

    def value_fraction(self, n: int) -> Fraction | None:
        """Reduced fraction a/M with chi(n) = exp(2 pi i a/M), or None when chi(n) = 0."""
        e = self.exponent(n)
        return None if e is None else Fraction(e, self.order)

    @cached_property
    def complex_values(self) -> tuple[complex, ...]:
        return tuple(
            0j if e is None else _root_of_unity(e, self.order) for e in self.exponents
        )

    def __call__(self, n: int) -> complex:
        return self.complex_values[n % self.modulus]

    @property
    def parity(self) -> int:
        return 1 if self.exponents[self.modulus - 1] == 0 else -1

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_trivial(self) -> bool:
        return all(e in (None, 0) for e in self.exponents)

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            modulus=self.modulus,
            order=self.order,
            exponents=tuple(None if e is None else (-e) % self.order for e in self.exponents),
            conductor=self.conductor,
        )

    def conductor_by_induction(self) -> int:
        """Least d | h such that chi factors through (Z/d)^*."""
        return _conductor_by_induction(self.modulus, self.exponents)


def _root_of_unity(e: int, order: int) -> complex:
    fraction = Fraction(e, order)
    if fraction == 0:
        return 1 + 0j
    if fraction == Fraction(1, 2):
        return -1 + 0j
    if fraction == Fraction(1, 4):
        return 1j
    if fraction == Fraction(3, 4):
        return -1j
    return cmath.exp(2j * cmath.pi * e / order)


def _conductor_by_restriction(h: int, exponents: tuple[int | None, ...]) -> int:
    """Least d | h such that chi is trivial on units congruent to 1 mod d."""
    units = [n for n in range(h) if exponents[n] is not None]
    for d in divisors(h):
        if all(exponents[n] == 0 for n in units if n % d == 1 % d):
            return d
    return h


def _conductor_by_induction(h: int, exponents: tuple[int | None, ...]) -> int:
    for d in divisors(h):
        seen: dict[int, int] = {}
        consistent = True
        for n in range(h):
            e = exponents[n]
            if e is None:
                continue
            if seen.setdefault(n % d, e) != e:
                consistent = False
                break
        if consistent:
            return d
    return h


class _CyclicFactor:
    """One cyclic factor of (Z/q)^* with a generator and a discrete-log table on residues mod q."""

    def __init__(self, q: int, generator: int, order: int, logs: dict[int, int]):
        self.q = q
        self.generator = generator
        self.order = order
        self.logs = logs


def _odd_prime_power_factor(p: int, e: int) -> _CyclicFactor:
    q = p**e
    order = q - q // p
    generator = next(g for g in range(2, q) if math.gcd(g, q) == 1 and is_primitive_root(g, q))
    logs: dict[int, int] = {}
    value = 1
    for j in range(order):
        logs[value] = j
        value = value * generator % q
    return _CyclicFactor(q, generator, order, logs)


def _two_power_factors(e: int) -> list[_CyclicFactor]:
    q = 2**e
    if e == 1:
        return []
    if e == 2:
        return [_CyclicFactor(4, 3, 2, {1: 0, 3: 1})]
    half = 2 ** (e - 2)
    sign_logs: dict[int, int] = {}
    five_logs: dict[int, int] = {}
    value = 1
    for t in range(half):
        sign_logs[value] = 0
        sign_logs[(-value) % q] = 1
        five_logs[value] = t
        five_logs[(-value) % q] = t
        value = value * 5 % q
    return [_CyclicFactor(q, q - 1, 2, sign_logs), _CyclicFactor(q, 5, half, five_logs)]


def _unit_group_factors(modulus: int) -> list[_CyclicFactor]:
    factors: list[_CyclicFactor] = []
    for p, e in sorted(factorint(modulus).items()):
        if p == 2:
            factors.extend(_two_power_factors(e))
        else:
            factors.append(_odd_prime_power_factor(p, e))
    return factors


@lru_cache(maxsize=128)
def all_characters(modulus: int) -> tuple[DirichletCharacter, ...]:
    """All Dirichlet characters mod `modulus`, lexicographic in the generator exponents."""
    check_range(modulus)
    if modulus < 1:
        raise PreconditionError(f"modulus must be positive, got {modulus}")

    factors = _unit_group_factors(modulus)
    order = math.lcm(*(f.order for f in factors)) if factors else 1
    logs_per_unit: list[tuple[int, ...] | None] = []
    for n in range(modulus):
        if math.gcd(n, modulus) > 1:
            logs_per_unit.append(None)
        else:
            logs_per_unit.append(tuple(f.logs[n % f.q] for f in factors))

    characters = []
    for index, choice in enumerate(itertools.product(*(range(f.order) for f in factors))):
        weights = [k * (order // f.order) for k, f in zip(choice, factors)]
        exponents = tuple(
            None if logs is None else sum(w * g for w, g in zip(weights, logs)) % order for logs in logs_per_unit
        )
        characters.append(
            DirichletCharacter(
                modulus=modulus,
                order=order,
                exponents=exponents,
                conductor=_conductor_by_restriction(modulus, exponents),
                index=index,
            )
        )
    return tuple(characters)


def trivial_character(modulus: int) -> DirichletCharacter:
    return all_characters(modulus)[0]


@lru_cache(maxsize=512)
def kronecker_character(D: int) -> DirichletCharacter:
    """The primitive odd quadratic character (D/.) mod |D| for a negative fundamental D."""
    require_negative_fundamental(D)
    h = -D
    exponents = tuple({1: 0, -1: 1, 0: None}[kronecker(D, n)] for n in range(h))
    return DirichletCharacter(
        modulus=h,
        order=2,
        exponents=exponents,
        conductor=_conductor_by_restriction(h, exponents),
    )


def gauss_sum(chi: DirichletCharacter) -> FormalExpSum:
    """Exact G(chi) = sum_l chi(l) e(l/h) over the modulus lcm(h, order)."""
    h = chi.modulus
    common = math.lcm(h, chi.order)
    indices = [
        n * (common // h) + e * (common // chi.order) for n, e in enumerate(chi.exponents) if e is not None
    ]
    return FormalExpSum.from_terms(common, indices)


def gauss_sum_value(chi: DirichletCharacter) -> complex:
    return gauss_sum(chi).evaluate()


def character_decomposition(chi: DirichletCharacter, m: int) -> complex:
    """(1/G(chi)) sum_l chi(l) e(l m / h); equals conj(chi(m)) when chi is primitive."""
    h = chi.modulus
    total = sum(chi(ell) * cmath.exp(2j * cmath.pi * (ell * m % h) / h) for ell in range(h))
    return total / gauss_sum_value(chi)

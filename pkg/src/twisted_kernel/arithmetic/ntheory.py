"""Elementary number theory on Python integers, backed by sympy."""

import math
from functools import lru_cache

from pydantic import BaseModel, ConfigDict
from sympy import divisors as _sympy_divisors
from sympy import factorint, jacobi_symbol, mod_inverse, totient

from twisted_kernel.utils.exceptions import (
    ArithmeticRangeError,
    CongruenceError,
    InvalidDiscriminantError,
    PreconditionError,
)

INT_LIMIT = 2**63


def check_range(*values: int) -> None:
    """Reject integers whose magnitude reaches the 2**63 scale."""
    for value in values:
        if abs(value) >= INT_LIMIT:
            raise ArithmeticRangeError(f"integer {value} exceeds the supported range |x| < 2**63")


def divisors(n: int) -> list[int]:
    """Positive divisors of n, ascending."""
    check_range(n)
    if n == 0:
        raise PreconditionError("divisors of 0 are not finite")
    return [int(d) for d in _sympy_divisors(abs(n))]


def divisor_count(n: int) -> int:
    return len(divisors(n))


def euler_phi(n: int) -> int:
    check_range(n)
    if n < 1:
        raise PreconditionError(f"phi is defined for positive integers, got {n}")
    return int(totient(n))


def inverse_mod(a: int, modulus: int) -> int:
    """Least nonnegative inverse of a modulo |modulus|; 0 when |modulus| = 1."""
    check_range(a, modulus)
    modulus = abs(modulus)
    if modulus == 1:
        return 0
    if math.gcd(a, modulus) != 1:
        raise PreconditionError(f"{a} is not invertible modulo {modulus}")
    return int(mod_inverse(a % modulus, modulus))


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(exponent == 1 for exponent in factorint(abs(n)).values())


def kronecker(D: int, m: int) -> int:
    """Kronecker symbol (D/m) for arbitrary integers D and m.

    Args:
        D: Upper argument.
        m: Lower argument, any sign.

    Returns:
        int: -1, 0 or +1.
    """
    check_range(D, m)
    if m == 0:
        return 1 if D in (1, -1) else 0

    result = 1
    if m < 0:
        m = -m
        if D < 0:
            result = -result

    twos = 0
    while m % 2 == 0:
        m //= 2
        twos += 1
    if twos:
        if D % 2 == 0:
            return 0
        if twos % 2 == 1 and D % 8 in (3, 5):
            result = -result

    if m == 1:
        return result
    return result * int(jacobi_symbol(D % m, m))


def is_fundamental(D: int) -> bool:
    """True iff D is a nontrivial fundamental discriminant (either sign)."""
    check_range(D)
    if D % 4 == 1:
        return D != 1 and is_squarefree(D)
    if D % 4 == 0:
        quarter = D // 4
        return quarter % 4 in (2, 3) and is_squarefree(quarter)
    return False


def require_negative_fundamental(D: int, N: int = 1) -> int:
    """Validate D < 0 fundamental with gcd(D, N) = 1 and return it."""
    if D >= 0 or not is_fundamental(D):
        raise InvalidDiscriminantError(f"D={D} is not a negative fundamental discriminant")
    if math.gcd(D, N) != 1:
        raise InvalidDiscriminantError(f"gcd(D={D}, N={N}) = {math.gcd(D, N)} != 1")
    return D


def fundamental_part(D: int) -> tuple[int, int]:
    """(D0, f) with D = D0 f^2 and D0 fundamental, or D0 = 1 when D is a square.

    Raises:
        InvalidDiscriminantError: If D is zero or not 0, 1 mod 4.
    """
    check_range(D)
    if D == 0 or D % 4 not in (0, 1):
        raise InvalidDiscriminantError(f"D={D} is not a discriminant")
    core, root = (1 if D > 0 else -1), 1
    for p, exponent in factorint(abs(D)).items():
        core *= p ** (exponent % 2)
        root *= p ** (exponent // 2)
    if core % 4 == 1:
        return core, root
    return 4 * core, root // 2


def prime_discriminants(D0: int) -> tuple[int, ...]:
    """The prime discriminants (-3, 5, -4, 8, -8, ...) whose product is the fundamental D0."""
    if not is_fundamental(D0):
        raise InvalidDiscriminantError(f"D={D0} is not a fundamental discriminant")
    factors = []
    rest = D0
    for p in sorted(factorint(abs(D0))):
        if p == 2:
            continue
        starred = p if p % 4 == 1 else -p
        factors.append(starred)
        rest //= starred
    if rest != 1:
        factors.append(rest)
    return tuple(factors)


@lru_cache(maxsize=1024)
def admissible_r(D: int, N: int) -> tuple[int, ...]:
    """Residues r mod 2N with r^2 = D (mod 4N)."""
    return tuple(r for r in range(2 * N) if (r * r - D) % (4 * N) == 0)


class DiscriminantDatum(BaseModel):
    """A negative fundamental discriminant together with a level and a square root of D mod 4N."""

    model_config = ConfigDict(frozen=True)

    D: int
    N: int
    r: int

    def __init__(self, **data):
        # checks run after pydantic validation so the domain errors reach the caller unwrapped
        super().__init__(**data)
        self._check()

    def _check(self) -> None:
        check_range(self.D, self.N, self.r)
        if self.N < 1:
            raise PreconditionError(f"level N must be positive, got {self.N}")
        require_negative_fundamental(self.D, self.N)
        if (self.r * self.r - self.D) % (4 * self.N) != 0:
            raise CongruenceError(
                f"r^2 = D (mod 4N) fails: {self.r}^2 - ({self.D}) = {self.r * self.r - self.D} "
                f"is not divisible by {4 * self.N}"
            )

    @classmethod
    def first(cls, D: int, N: int) -> "DiscriminantDatum":
        """Datum with the least admissible r in [0, 2N)."""
        require_negative_fundamental(D, N)
        roots = admissible_r(D, N)
        if not roots:
            raise CongruenceError(f"no r with r^2 = {D} (mod {4 * N})")
        return cls(D=D, N=N, r=roots[0])


def discriminant_value(D: "int | DiscriminantDatum") -> int:
    return D.D if isinstance(D, DiscriminantDatum) else int(D)

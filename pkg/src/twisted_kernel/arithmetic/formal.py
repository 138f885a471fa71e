"""Exact integer combinations of M-th roots of unity.

A FormalExpSum with modulus M is an element of the group ring Z[Z/M], written as a length-M
coefficient vector. Evaluation sends index j to exp(2 pi i j / M); two sums are *exactly* equal
when their difference lies in the kernel of that evaluation, which is the ideal generated by the
p-cycle sums x^j (1 + x^(M/p) + ... + x^((p-1)M/p)) for primes p | M. That ideal coincides with
the one generated by the cyclotomic polynomial Phi_M, so the reduction is carried out as an exact
polynomial remainder.
"""

import math
from collections.abc import Iterable
from functools import lru_cache

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

from twisted_kernel.utils.exceptions import ModulusError

MAX_MODULUS = 10**6

_x = symbols("x")


def _check_modulus(modulus: int) -> int:
    if modulus < 1:
        raise ModulusError(f"modulus must be positive, got {modulus}")
    if modulus > MAX_MODULUS:
        raise ModulusError(f"modulus {modulus} exceeds the cap of {MAX_MODULUS} coefficients")
    return int(modulus)


class FormalExpSum:
    """Immutable element sum_j coeffs[j] * e_M(j)."""

    __slots__ = ("_modulus", "_coeffs")

    def __init__(self, modulus: int, coeffs: Iterable[int] | np.ndarray | None = None):
        self._modulus = _check_modulus(modulus)
        if coeffs is None:
            array = np.zeros(self._modulus, dtype=np.int64)
        else:
            array = np.array(coeffs, dtype=np.int64)
            if array.shape != (self._modulus,):
                raise ModulusError(f"expected {self._modulus} coefficients, got shape {array.shape}")
        array.setflags(write=False)
        self._coeffs = array

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @classmethod
    def zero(cls, modulus: int) -> "FormalExpSum":
        return cls(modulus)

    @classmethod
    def from_terms(cls, modulus: int, indices: Iterable[int], weights: Iterable[int] | None = None) -> "FormalExpSum":
        """Sum of weights[t] * e_M(indices[t]); indices are reduced mod M."""
        modulus = _check_modulus(modulus)
        idx = np.mod(np.asarray(list(indices), dtype=np.int64), modulus)
        if weights is None:
            w = np.ones(idx.shape, dtype=np.int64)
        else:
            w = np.asarray(list(weights), dtype=np.int64)
        coeffs = np.zeros(modulus, dtype=np.int64)
        np.add.at(coeffs, idx, w)
        return cls(modulus, coeffs)

    def _lifted(self, other: "FormalExpSum") -> tuple[np.ndarray, np.ndarray, int]:
        common = math.lcm(self._modulus, other._modulus)
        return rescale_modulus(self, common).coeffs, rescale_modulus(other, common).coeffs, common

    def __add__(self, other: "FormalExpSum") -> "FormalExpSum":
        a, b, modulus = self._lifted(other)
        return FormalExpSum(modulus, a + b)

    def __sub__(self, other: "FormalExpSum") -> "FormalExpSum":
        a, b, modulus = self._lifted(other)
        return FormalExpSum(modulus, a - b)

    def __neg__(self) -> "FormalExpSum":
        return FormalExpSum(self._modulus, -self._coeffs)

    def scale(self, factor: int) -> "FormalExpSum":
        return FormalExpSum(self._modulus, self._coeffs * int(factor))

    def __mul__(self, other: "FormalExpSum") -> "FormalExpSum":
        """Group-ring product (cyclic convolution)."""
        a, b, modulus = self._lifted(other)
        full = np.convolve(a, b)
        folded = full[:modulus].copy()
        folded[: modulus - 1] += full[modulus:]
        return FormalExpSum(modulus, folded)

    def rotate(self, shift: int) -> "FormalExpSum":
        """Multiply by e_M(shift): index j moves to j + shift mod M."""
        return FormalExpSum(self._modulus, np.roll(self._coeffs, shift % self._modulus))

    def conjugate(self) -> "FormalExpSum":
        return FormalExpSum(self._modulus, np.roll(self._coeffs[::-1], 1))

    def evaluate(self) -> complex:
        nonzero = np.nonzero(self._coeffs)[0]
        if nonzero.size == 0:
            return 0j
        phases = np.exp(2j * np.pi * nonzero / self._modulus)
        return complex(np.sum(self._coeffs[nonzero] * phases))

    def is_zero_vector(self) -> bool:
        return not np.any(self._coeffs)

    def __repr__(self) -> str:
        terms = {int(j): int(c) for j, c in enumerate(self._coeffs) if c}
        return f"FormalExpSum(modulus={self._modulus}, terms={terms})"


def exp_term(modulus: int, j: int, c: int = 1) -> FormalExpSum:
    """The sum c * e_M(j mod M)."""
    return FormalExpSum.from_terms(modulus, [j], [c])


def rescale_modulus(value: FormalExpSum, modulus: int) -> FormalExpSum:
    """Re-express value over a multiple of its modulus without changing its evaluation."""
    modulus = _check_modulus(modulus)
    if modulus % value.modulus != 0:
        raise ModulusError(f"cannot rescale modulus {value.modulus} to {modulus}: not a multiple")
    if modulus == value.modulus:
        return value
    coeffs = np.zeros(modulus, dtype=np.int64)
    coeffs[:: modulus // value.modulus] = value.coeffs
    return FormalExpSum(modulus, coeffs)


@lru_cache(maxsize=256)
def _cyclotomic(modulus: int) -> Poly:
    return Poly(cyclotomic_poly(modulus, _x), _x, domain="ZZ")


def cyclotomic_remainder(value: FormalExpSum) -> Poly:
    """Remainder of sum_j coeffs[j] x^j modulo Phi_M, an exact canonical form."""
    terms = [int(c) for c in value.coeffs[::-1]]
    return Poly(terms, _x, domain="ZZ").rem(_cyclotomic(value.modulus))


def equal_exact(a: FormalExpSum, b: FormalExpSum) -> bool:
    """True iff a and b evaluate to the same algebraic integer."""
    difference = a - b
    if difference.is_zero_vector():
        return True
    return cyclotomic_remainder(difference).is_zero

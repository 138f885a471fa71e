"""Exact arithmetic for twisted_kernel.

This package contains:
- Elementary number theory (Kronecker symbol, fundamental discriminants, DiscriminantDatum)
- Dirichlet characters with exact root-of-unity values, Gauss sums and the character decomposition
- Formal exponential sums (FormalExpSum) with exact equality via cyclotomic reduction
- The character registry used to address characters by (modulus, index)
"""

from twisted_kernel.arithmetic.characters import (
    DirichletCharacter,
    all_characters,
    character_decomposition,
    gauss_sum,
    gauss_sum_value,
    kronecker_character,
    trivial_character,
)
from twisted_kernel.arithmetic.formal import FormalExpSum, equal_exact, exp_term, rescale_modulus
from twisted_kernel.arithmetic.ntheory import (
    DiscriminantDatum,
    admissible_r,
    divisors,
    fundamental_part,
    inverse_mod,
    is_fundamental,
    kronecker,
    prime_discriminants,
    require_negative_fundamental,
)
from twisted_kernel.arithmetic.registry import CharacterRegistry, get_characters_by_index

__all__ = [
    "DirichletCharacter",
    "all_characters",
    "character_decomposition",
    "gauss_sum",
    "gauss_sum_value",
    "kronecker_character",
    "trivial_character",
    "FormalExpSum",
    "equal_exact",
    "exp_term",
    "rescale_modulus",
    "DiscriminantDatum",
    "admissible_r",
    "divisors",
    "fundamental_part",
    "inverse_mod",
    "is_fundamental",
    "kronecker",
    "prime_discriminants",
    "require_negative_fundamental",
    "CharacterRegistry",
    "get_characters_by_index",
]

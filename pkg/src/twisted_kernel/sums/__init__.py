"""Finite exponential sums for twisted_kernel.

This package contains:
- K_{N,n}(m, D), S_{N,n}(m, D) and the Kloosterman-type H_{N,n}(D, r, D', r')
- Quadratic forms and the genus characters, including the level-N character on discriminant D0 D
- Verification reports for S = K and the GKZ lemma, with grid drivers
"""

from twisted_kernel.sums.expsums import (
    ExpSumValue,
    KTerm,
    direct_representatives,
    h_sum,
    k_sum,
    k_terms,
    plus_minus_combine,
    representatives,
    s_sum,
    s_sum_general,
)
from twisted_kernel.sums.genus import QuadraticForm, genus_char, genus_char_level
from twisted_kernel.sums.verify import (
    GKZReport,
    GridSummary,
    SEqualsKReport,
    gkz_base,
    gkz_lemma_grid,
    s_equals_k_grid,
    verify_gkz_lemma,
    verify_s_equals_k,
)

__all__ = [
    "ExpSumValue",
    "KTerm",
    "direct_representatives",
    "h_sum",
    "k_sum",
    "k_terms",
    "plus_minus_combine",
    "representatives",
    "s_sum",
    "s_sum_general",
    "QuadraticForm",
    "genus_char",
    "genus_char_level",
    "GKZReport",
    "GridSummary",
    "SEqualsKReport",
    "gkz_base",
    "gkz_lemma_grid",
    "s_equals_k_grid",
    "verify_gkz_lemma",
    "verify_s_equals_k",
]

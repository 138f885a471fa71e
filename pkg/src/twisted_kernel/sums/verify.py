"""Verification of the exponential-sum identities S = K and the GKZ lemma, singly and over grids.

Verifications never raise for a failed identity; the outcome is part of the returned report.
"""

import itertools
import logging
import math

from pydantic import BaseModel, Field

from twisted_kernel.arithmetic.formal import equal_exact
from twisted_kernel.arithmetic.ntheory import (
    DiscriminantDatum,
    admissible_r,
    discriminant_value,
    divisors,
    fundamental_part,
    is_fundamental,
    kronecker,
)
from twisted_kernel.sums.expsums import h_sum, k_sum, k_terms, s_sum_from_terms, s_sum_general, s_terms
from twisted_kernel.utils.exceptions import CongruenceError, InvariantError, PreconditionError
from twisted_kernel.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

GKZ_RELATIVE_TOLERANCE = 1e-9
DEFAULT_DISCRIMINANTS = (-3, -4, -7, -8, -11, -15, -20)


class TermMatch(BaseModel):
    """One K-term matched against the S-term with the same b"""

    c: int
    ell: int
    b: int
    k_symbol: int
    s_symbol: int | None
    matched: bool


class SEqualsKReport(BaseModel):
    N: int
    n: int
    m: int
    D: int
    k_value: complex
    s_value: complex
    exact_equal: bool
    difference: float
    representatives_match: bool
    termwise: list[TermMatch] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.exact_equal and self.representatives_match and all(t.matched for t in self.termwise)


class GKZReport(BaseModel):
    """One instance of the divisor-sum lemma; lhs is None when the genus character failed"""

    N: int
    nJ: int
    m: int
    r: int
    D: int
    D0: int
    r0: int
    lhs: complex | None
    rhs: complex
    difference: float | None
    agrees: bool
    note: str = ""


class GridSummary(BaseModel):
    """Outcome of a verification grid"""

    name: str
    instances: int = 0
    passed: int = 0
    failures: list[dict] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _s_equals_k_block(args: tuple[int, int, int, tuple[int, ...]]) -> list[SEqualsKReport]:
    N, n, D, ms = args
    terms = k_terms(N, n, D)
    pairs = s_terms(N, n, D)
    s_by_b = dict(pairs)
    representatives_match = sorted(t.b for t in terms) == sorted(b for b, _ in pairs)
    termwise = [
        TermMatch(
            c=t.c,
            ell=t.ell,
            b=t.b,
            k_symbol=t.symbol,
            s_symbol=s_by_b.get(t.b),
            matched=s_by_b.get(t.b) == t.symbol,
        )
        for t in terms
    ]
    reports = []
    for m in ms:
        k_value = k_sum(N, n, m, D)
        s_value = s_sum_from_terms(n, m, pairs)
        reports.append(
            SEqualsKReport(
                N=N,
                n=n,
                m=m,
                D=D,
                k_value=k_value.value,
                s_value=s_value.value,
                exact_equal=equal_exact(k_value.exact, s_value.exact),
                difference=abs(k_value.value - s_value.value),
                representatives_match=representatives_match,
                termwise=termwise,
            )
        )
    return reports


def verify_s_equals_k(N: int, n: int, m: int, D: "int | DiscriminantDatum") -> SEqualsKReport:
    """Compare S_{N,n}(m, D) with K_{N,n}(m, D) exactly, by representatives and term by term.

    Raises:
        PreconditionError: If the inputs are outside the domain of k_sum.
    """
    return _s_equals_k_block((N, n, discriminant_value(D), (m,)))[0]


def gkz_base(D: int, N: int, r: int) -> tuple[int, int]:
    """The character base (D0, r0) used for D = r^2 - 4 N nJ when none is given.

    (D, r) itself when D is fundamental. Otherwise the fundamental part D0 of D with its least
    admissible r0 in [0, 2N), or, when D0 is not a square mod 4N, the negative fundamental
    discriminant of least absolute value that is.
    """
    if is_fundamental(D):
        return D, r
    D0, _ = fundamental_part(D)
    candidates = itertools.chain((D0,), (d for d in itertools.count(-3, -1) if is_fundamental(d)))
    base = next(candidate for candidate in candidates if admissible_r(candidate, N))
    return base, admissible_r(base, N)[0]


def verify_gkz_lemma(N: int, nJ: int, m: int, r: int, D0: int | None = None, r0: int | None = None) -> GKZReport:
    """Compare S_{N,N nJ}(m, D) with sum_{d | (m, nJ)} (D0/d) (nJ/d)^{1/2} H_{N,nJ/d}(D, r, m^2 D0/d^2, m r0/d).

    D = r^2 - 4 N nJ, fundamental or not. The left side is taken over forms [N nJ, b, c] of
    discriminant D0 D with b = r0 r (mod 2N) and weighted by the level-N genus character of D0.
    With D0 = D and r0 = r this is S_{N,N nJ}(m, D). The base defaults to gkz_base(D, N, r); with D0
    given and r0 omitted, the least admissible r0 is used.

    Raises:
        PreconditionError: If D >= 0, an index is not positive, D0 is not a negative fundamental
            discriminant or r0 is given without D0.
        CongruenceError: If D0 has no square root mod 4N, or r0^2 = D0 (mod 4N) fails.
    """
    if N < 1 or nJ < 1 or m < 1:
        raise PreconditionError(f"N, nJ and m must be positive, got N={N}, nJ={nJ}, m={m}")
    D = r * r - 4 * N * nJ
    if D >= 0:
        raise PreconditionError(f"D = r^2 - 4 N nJ = {D} must be negative")
    if D0 is None:
        if r0 is not None:
            raise PreconditionError("r0 needs D0")
        D0, r0 = gkz_base(D, N, r)
    elif D0 >= 0 or not is_fundamental(D0):
        raise PreconditionError(f"D0={D0} is not a negative fundamental discriminant")
    elif r0 is None:
        roots = admissible_r(D0, N)
        if not roots:
            raise CongruenceError(f"D0={D0} has no square root mod {4 * N}")
        r0 = roots[0]
    if (r0 * r0 - D0) % (4 * N) != 0:
        raise CongruenceError(f"r0^2 = D0 (mod {4 * N}) fails for r0={r0}, D0={D0}")

    rhs = 0j
    for d in divisors(math.gcd(m, nJ)):
        symbol = kronecker(D0, d)
        if symbol == 0:
            continue
        e = m // d
        rhs += symbol * math.sqrt(nJ // d) * h_sum(N, nJ // d, D, r, e * e * D0, e * r0)

    note = ""
    try:
        lhs: complex | None = s_sum_general(N, N * nJ, m, D0, r0, D, r).value
    except InvariantError as exc:
        lhs = None
        note = f"genus character not well defined: {exc}"

    difference = None if lhs is None else abs(lhs - rhs)
    agrees = difference is not None and difference <= GKZ_RELATIVE_TOLERANCE * (1 + abs(lhs))
    return GKZReport(
        N=N, nJ=nJ, m=m, r=r, D=D, D0=D0, r0=r0, lhs=lhs, rhs=rhs, difference=difference, agrees=agrees, note=note
    )


def _gkz_block(args: tuple[int, int, int, tuple[int, ...]]) -> list[GKZReport]:
    N, nJ, r, ms = args
    return [verify_gkz_lemma(N, nJ, m, r) for m in ms]


def s_equals_k_grid(
    N_max: int = 6,
    multiples: int = 40,
    m_max: int = 10,
    discriminants: tuple[int, ...] = DEFAULT_DISCRIMINANTS,
    workers: int = 1,
) -> GridSummary:
    """verify_s_equals_k over N <= N_max, n = N * (1..multiples), m <= m_max, D coprime to N."""
    ms = tuple(range(1, m_max + 1))
    blocks = [
        (N, N * j, D, ms)
        for N in range(1, N_max + 1)
        for D in discriminants
        if math.gcd(D, N) == 1
        for j in range(1, multiples + 1)
    ]
    summary = GridSummary(name="s-equals-k")
    for reports in ordered_map(_s_equals_k_block, blocks, workers):
        for report in reports:
            summary.instances += 1
            if report.passed:
                summary.passed += 1
            else:
                summary.failures.append(
                    {"N": report.N, "n": report.n, "m": report.m, "D": report.D, "difference": report.difference}
                )
    logger.info("s-equals-k grid: %d/%d exact", summary.passed, summary.instances)
    return summary


def gkz_lemma_grid(N_max: int = 4, nJ_max: int = 30, m_max: int = 12, workers: int = 1) -> GridSummary:
    """verify_gkz_lemma over N <= N_max, nJ <= nJ_max, m <= m_max and every r in [0, 2N) with D < 0.

    Every instance is asserted, D fundamental or not, with the default character base.
    """
    ms = tuple(range(1, m_max + 1))
    blocks = [
        (N, nJ, r, ms)
        for N in range(1, N_max + 1)
        for nJ in range(1, nJ_max + 1)
        for r in range(2 * N)
        if r * r < 4 * N * nJ
    ]

    summary = GridSummary(name="gkz-lemma")
    for reports in ordered_map(_gkz_block, blocks, workers):
        for report in reports:
            summary.instances += 1
            if report.agrees:
                summary.passed += 1
            else:
                summary.failures.append(
                    {
                        "N": report.N,
                        "nJ": report.nJ,
                        "m": report.m,
                        "r": report.r,
                        "D0": report.D0,
                        "difference": report.difference,
                        "note": report.note,
                    }
                )
    logger.info("gkz-lemma grid: %d/%d instances agree", summary.passed, summary.instances)
    return summary

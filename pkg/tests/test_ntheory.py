import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_kernel.arithmetic import (
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
from twisted_kernel.utils import (
    ArithmeticRangeError,
    CongruenceError,
    InvalidDiscriminantError,
    PreconditionError,
)

FUNDAMENTAL_UP_TO_200 = [D for D in range(-200, 201) if is_fundamental(D)]


@pytest.mark.parametrize(
    ("D", "m", "expected"),
    [(-3, 1, 1), (-4, 2, 0), (-4, 3, -1), (-3, 2, -1), (-7, 2, 1), (-8, 3, 1), (5, 2, -1), (1, 0, 1), (-3, 0, 0)],
)
def test_kronecker_values(D, m, expected):
    assert kronecker(D, m) == expected


@pytest.mark.parametrize(("D", "expected"), [(1, False), (-3, True), (-12, False), (-4, True), (-8, True), (5, True)])
def test_is_fundamental(D, expected):
    assert is_fundamental(D) is expected


def test_fundamental_list_is_nontrivial():
    assert -3 in FUNDAMENTAL_UP_TO_200
    assert -20 in FUNDAMENTAL_UP_TO_200
    assert -12 not in FUNDAMENTAL_UP_TO_200


@pytest.mark.parametrize(
    ("D", "expected"),
    [(-16, (-4, 2)), (-27, (-3, 3)), (-12, (-3, 2)), (-8, (-8, 1)), (-7, (-7, 1)), (-176, (-11, 4)), (9, (1, 3))],
)
def test_fundamental_part(D, expected):
    assert fundamental_part(D) == expected


@given(st.integers(min_value=-3000, max_value=-3).filter(lambda D: D % 4 in (0, 1)))
def test_fundamental_part_recombines(D):
    D0, f = fundamental_part(D)
    assert D0 * f * f == D
    assert is_fundamental(D0)


def test_fundamental_part_rejects_non_discriminants():
    for D in (0, -5, 6):
        with pytest.raises(InvalidDiscriminantError):
            fundamental_part(D)


@pytest.mark.parametrize(
    ("D0", "expected"), [(-3, (-3,)), (-8, (-8,)), (-20, (5, -4)), (-15, (-3, 5)), (-84, (-3, -7, -4)), (8, (8,))]
)
def test_prime_discriminants(D0, expected):
    assert prime_discriminants(D0) == expected
    assert math.prod(expected) == D0


def test_prime_discriminants_need_a_fundamental_discriminant():
    with pytest.raises(InvalidDiscriminantError):
        prime_discriminants(-12)
    assert 0 not in FUNDAMENTAL_UP_TO_200


@pytest.mark.parametrize("D", FUNDAMENTAL_UP_TO_200)
def test_kronecker_has_period_abs_d(D):
    h = abs(D)
    for m in range(1, h + 1):
        assert kronecker(D, m + h) == kronecker(D, m)


@given(
    st.sampled_from(FUNDAMENTAL_UP_TO_200),
    st.integers(min_value=1, max_value=500),
    st.integers(min_value=1, max_value=500),
)
def test_kronecker_completely_multiplicative(D, a, b):
    assert kronecker(D, a * b) == kronecker(D, a) * kronecker(D, b)


def test_divisors_ascending():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(-6) == [1, 2, 3, 6]
    with pytest.raises(PreconditionError):
        divisors(0)


def test_inverse_mod():
    assert inverse_mod(3, 7) == 5
    assert inverse_mod(-1, 5) == 4
    assert inverse_mod(4, 1) == 0
    with pytest.raises(PreconditionError):
        inverse_mod(2, 4)


def test_range_guard():
    with pytest.raises(ArithmeticRangeError):
        kronecker(-3, 2**63)


def test_require_negative_fundamental():
    assert require_negative_fundamental(-7, 2) == -7
    with pytest.raises(InvalidDiscriminantError):
        require_negative_fundamental(5)
    with pytest.raises(InvalidDiscriminantError):
        require_negative_fundamental(-12)
    with pytest.raises(InvalidDiscriminantError):
        require_negative_fundamental(-4, 2)


def test_admissible_r():
    assert admissible_r(-3, 1) == (1,)
    assert admissible_r(-7, 2) == (1, 3)
    assert admissible_r(-3, 2) == ()


def test_discriminant_datum():
    datum = DiscriminantDatum(D=-7, N=2, r=3)
    assert (datum.D, datum.N, datum.r) == (-7, 2, 3)
    assert DiscriminantDatum.first(-7, 2).r == 1


def test_discriminant_datum_errors_reach_caller_unwrapped():
    with pytest.raises(CongruenceError):
        DiscriminantDatum(D=-7, N=2, r=0)
    with pytest.raises(InvalidDiscriminantError):
        DiscriminantDatum(D=-12, N=1, r=0)
    with pytest.raises(InvalidDiscriminantError):
        DiscriminantDatum(D=-3, N=3, r=0)
    with pytest.raises(CongruenceError):
        DiscriminantDatum.first(-3, 2)

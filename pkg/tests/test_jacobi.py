import dataclasses
import math

import pytest

from twisted_kernel.arithmetic import DiscriminantDatum, admissible_r
from twisted_kernel.coefficients import (
    JacobiIndexPair,
    g_coeff,
    g_pm_coeff,
    kernel_coeff_critical,
    lift_coeff_closed,
    lift_coeff_via_g,
    poincare_identity_table,
    values_agree,
    waldspurger_constant,
)
from twisted_kernel.utils import ArithmeticRangeError, CongruenceError, PreconditionError


def acceptance_cases():
    for k2 in (4, 6, 8):
        for N in (1, 2, 3):
            for D in (-3, -4, -7, -8, -11):
                if math.gcd(D, N) == 1 and admissible_r(D, N):
                    yield k2, N, D, admissible_r(D, N)[0]


class TestJacobiIndexPair:
    def test_congruence(self):
        with pytest.raises(CongruenceError, match="not divisible by 8"):
            JacobiIndexPair(Dp=-7, rp=2, N=2)

    def test_negative_discriminant(self):
        with pytest.raises(PreconditionError):
            JacobiIndexPair(Dp=5, rp=1, N=1)

    def test_negated(self):
        pair = JacobiIndexPair(Dp=-7, rp=3, N=2)
        assert pair.negated() == JacobiIndexPair(Dp=-7, rp=-3, N=2)


class TestJacobiCoefficients:
    def test_delta_on_the_diagonal(self):
        base = DiscriminantDatum(D=-7, N=2, r=1)
        value = g_coeff(3, 2, base, JacobiIndexPair(Dp=-7, rp=1, N=2), n_terms=8)
        assert value.parts["delta"] == 1
        shifted = g_coeff(3, 2, base, JacobiIndexPair(Dp=-7, rp=5, N=2), n_terms=8)
        assert shifted.parts["delta"] == 1

    def test_delta_off_the_diagonal(self):
        base = DiscriminantDatum(D=-7, N=2, r=1)
        value = g_coeff(3, 2, base, JacobiIndexPair(Dp=-7, rp=-1, N=2), n_terms=8)
        assert value.parts["delta"] == 0

    @pytest.mark.parametrize(("k", "N", "D", "r", "Dp", "rp"), [(3, 1, -3, 1, -12, 2), (4, 2, -7, 1, -63, 3)])
    def test_plus_minus_is_linear(self, k, N, D, r, Dp, rp):
        base = DiscriminantDatum(D=D, N=N, r=r)
        target = JacobiIndexPair(Dp=Dp, rp=rp, N=N)
        combined = g_pm_coeff(k, N, base, target, n_terms=20)
        sign = 1 if k % 2 == 1 else -1
        separate = g_coeff(k, N, base, target, n_terms=20).value + sign * g_coeff(
            k, N, base, target.negated(), n_terms=20
        ).value
        assert combined.value == pytest.approx(separate, rel=1e-11, abs=1e-10)

    def test_level_mismatch(self):
        base = DiscriminantDatum(D=-7, N=2, r=1)
        with pytest.raises(PreconditionError):
            g_coeff(3, 1, base, JacobiIndexPair(Dp=-7, rp=1, N=1), n_terms=4)
        with pytest.raises(PreconditionError):
            g_coeff(3, 2, base, JacobiIndexPair(Dp=-3, rp=1, N=1), n_terms=4)

    def test_weight_four_has_no_rigorous_tail(self):
        base = DiscriminantDatum(D=-3, N=1, r=1)
        value = g_coeff(2, 1, base, JacobiIndexPair(Dp=-3, rp=1, N=1), n_terms=16)
        assert not value.rigorous
        assert "non-rigorous" in value.flags


class TestLift:
    def test_first_coefficient_is_a_single_jacobi_coefficient(self):
        base = DiscriminantDatum(D=-7, N=2, r=1)
        lifted = lift_coeff_via_g(3, 2, base, 1, n_terms=32)
        direct = g_pm_coeff(3, 2, base, JacobiIndexPair(Dp=-7, rp=1, N=2), n_terms=16)
        assert lifted.value == pytest.approx(direct.value, abs=1e-12)

    def test_ramified_divisor_drops_out(self):
        base = DiscriminantDatum(D=-7, N=1, r=1)
        lifted = lift_coeff_via_g(3, 1, base, 7, n_terms=24)
        direct = g_pm_coeff(3, 1, base, JacobiIndexPair(Dp=-343, rp=7, N=1), n_terms=24)
        assert lifted.value == pytest.approx(direct.value, abs=1e-12)

    def test_closed_form_matches_the_kernel(self):
        base = DiscriminantDatum(D=-3, N=1, r=1)
        for m in (1, 2, 3):
            closed = lift_coeff_closed(3, 1, base, m, n_terms=64)
            critical = kernel_coeff_critical(6, 1, m, base, n_terms=64)
            assert closed.value == pytest.approx(critical.value, rel=1e-9, abs=1e-8)

    def test_independent_of_r(self):
        roots = admissible_r(-11, 3)
        assert len(roots) == 2
        for m in (1, 2, 3):
            a, b = (lift_coeff_via_g(3, 3, DiscriminantDatum(D=-11, N=3, r=r), m, n_terms=48) for r in roots)
            assert values_agree(a, b, 1e-8, aligned=True), (m, a.value, b.value)

    def test_boundary_flag(self):
        base = DiscriminantDatum(D=-4, N=1, r=0)
        assert "boundary-regime" in lift_coeff_via_g(2, 1, base, 2, n_terms=16).flags

    def test_m_must_be_positive(self):
        with pytest.raises(PreconditionError):
            lift_coeff_via_g(3, 1, DiscriminantDatum(D=-3, N=1, r=1), 0)


class TestPoincareIdentity:
    def test_level_one(self):
        rows = poincare_identity_table(6, 1, -3, 1, m_max=3, n_terms=64)
        assert [row.m for row in rows] == [1, 2, 3]
        assert all(row.agree for row in rows)
        assert all("fixed-truncation" in row.flags for row in rows)

    def test_level_two(self):
        rows = poincare_identity_table(8, 2, -7, 1, m_max=2, n_terms=48)
        assert all(row.agree for row in rows)

    def test_weight_must_be_even(self):
        with pytest.raises(PreconditionError):
            poincare_identity_table(7, 1, -3, 1, m_max=1)

    def test_row_tolerance_is_relative_when_aligned(self):
        rows = poincare_identity_table(6, 1, -3, 1, m_max=2, n_terms=64)
        for row in rows:
            assert row.tolerance <= 1e-8 * (1 + max(abs(row.critical), abs(row.closed), abs(row.via_g)))

    @pytest.mark.slow
    @pytest.mark.parametrize(("k2", "N", "D", "r"), list(acceptance_cases()))
    def test_acceptance_grid(self, k2, N, D, r):
        rows = poincare_identity_table(k2, N, D, r, m_max=6, n_terms=256)
        assert all(row.agree for row in rows), [row for row in rows if not row.agree]


class TestValuesAgree:
    def test_same_coefficient_agrees(self):
        base = DiscriminantDatum(D=-3, N=1, r=1)
        critical = kernel_coeff_critical(6, 1, 2, base, n_terms=64)
        closed = lift_coeff_closed(3, 1, base, 2, n_terms=64)
        assert values_agree(critical, closed, 1e-8, aligned=True)

    def test_neighbouring_index_disagrees(self):
        base = DiscriminantDatum(D=-3, N=1, r=1)
        first = kernel_coeff_critical(6, 1, 1, base, n_terms=64)
        second = lift_coeff_closed(3, 1, base, 2, n_terms=64)
        assert not values_agree(first, second, 1e-8, aligned=True)

    def test_zero_disagrees_with_the_largest_row(self):
        base = DiscriminantDatum(D=-7, N=2, r=1)
        values = [kernel_coeff_critical(8, 2, m, base, n_terms=48) for m in (1, 2, 3)]
        largest = max(values, key=lambda value: abs(value.value))
        zeroed = dataclasses.replace(largest, value=0j)
        assert not values_agree(largest, zeroed, 1e-8, aligned=True)

    def test_error_estimates_only_widen_unaligned_comparisons(self):
        base = DiscriminantDatum(D=-3, N=1, r=1)
        value = kernel_coeff_critical(6, 1, 1, base, n_terms=8)
        shifted = dataclasses.replace(value, value=value.value + value.error_estimate / 2)
        assert value.error_estimate > 1e-6
        assert not values_agree(value, shifted, 1e-8, aligned=True)
        assert values_agree(value, shifted, 1e-8, aligned=False)


class TestWaldspurgerConstant:
    def test_weight_four_value(self):
        result = waldspurger_constant(2, 1, -3)
        assert result.constant == pytest.approx(3**1.5 / (8 * math.pi**2), rel=1e-12)
        assert result.relative_error <= 1e-12

    @pytest.mark.parametrize("k", range(2, 11))
    def test_quotient_of_prefactors(self, k):
        result = waldspurger_constant(k, 1, -7)
        assert result.quotient == pytest.approx(result.constant, rel=1e-12)
        assert result.elliptic_prefactor / result.jacobi_prefactor == pytest.approx(result.constant, rel=1e-12)

    @pytest.mark.parametrize("k", [2, 5, 9])
    def test_level_scaling(self, k):
        ratio = waldspurger_constant(k, 2, -3).constant / waldspurger_constant(k, 1, -3).constant
        assert ratio == pytest.approx(2.0 ** (1 - k), rel=1e-12)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            waldspurger_constant(1, 1, -3)
        with pytest.raises(PreconditionError):
            waldspurger_constant(3, 1, 5)

    def test_overflow(self):
        with pytest.raises(ArithmeticRangeError):
            waldspurger_constant(500, 1, -3)

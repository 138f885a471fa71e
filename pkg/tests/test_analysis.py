import math

import mpmath
import pytest

from twisted_kernel.analysis import (
    EstimateStatus,
    delta_grid,
    estimate_breakdown,
    gamma_ratio_deviation,
    min_level,
    min_weight,
    scan_grid,
    zero_scan,
)
from twisted_kernel.arithmetic import kronecker_character, trivial_character
from twisted_kernel.coefficients import KernelSpec, kernel_coeff_general
from twisted_kernel.utils import BoundInapplicableError, PreconditionError

CHI = kronecker_character(-3)


class TestEstimate:
    def test_first_summand_vanishes_above_level_one(self):
        breakdown = estimate_breakdown(12, 2, 3, 1, 0.25, 0.0)
        assert breakdown.summand1 == 0.0
        assert breakdown.sigma == 5.75
        assert breakdown.margin == pytest.approx(breakdown.lhs - breakdown.summand2_bound)

    def test_first_summand_closed_form(self):
        k, h, delta, t0 = 10, 3, 0.3, 1.5
        sigma = k / 2 - delta
        breakdown = estimate_breakdown(k, 1, h, 1, delta, t0)
        expected = (2 * math.pi / h) ** (2 * delta) * float(
            abs(mpmath.gamma(mpmath.mpc(sigma, -t0))) / abs(mpmath.gamma(mpmath.mpc(k - sigma, t0)))
        )
        assert breakdown.summand1 == pytest.approx(expected, rel=1e-10)

    def test_first_summand_decreases_with_weight(self):
        values = [estimate_breakdown(k, 1, 3, 1, 0.25, 0.0).summand1 for k in (16, 32, 64, 128)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_second_summand_scales_with_level(self):
        k, delta = 6, 0.25
        values = [estimate_breakdown(k, N, 3, 1, delta, 0.5).summand2_bound for N in (2, 4, 8, 16)]
        for a, b in zip(values, values[1:]):
            assert b / a == pytest.approx(2.0 ** (k / 2 - delta - k), rel=1e-12)

    def test_right_half_at_level_one_is_uncertified(self):
        breakdown = estimate_breakdown(40, 1, 3, 1, 0.25, 0.0, half="right")
        assert breakdown.status is EstimateStatus.UNCERTIFIED
        assert not breakdown.verdict
        assert breakdown.sigma == 20.25

    def test_right_half_above_level_one_concludes(self):
        breakdown = estimate_breakdown(6, 64, 3, 1, 0.25, 0.0, half="right")
        assert breakdown.status is EstimateStatus.CERTIFIED

    def test_status_follows_verdict(self):
        refuted = estimate_breakdown(6, 1, 3, 1, 0.5, 0.0)
        assert refuted.status is EstimateStatus.REFUTED
        assert refuted.margin < 0

    def test_bound_inapplicable_at_the_strip_edge(self):
        with pytest.raises(BoundInapplicableError):
            estimate_breakdown(3, 1, 3, 1, 0.5, 0.0)

    @pytest.mark.parametrize("delta", [0.0, -0.1, 0.6])
    def test_delta_range(self, delta):
        with pytest.raises(PreconditionError):
            estimate_breakdown(12, 1, 3, 1, delta, 0.0)

    def test_half_must_be_named(self):
        with pytest.raises(PreconditionError):
            estimate_breakdown(12, 1, 3, 1, 0.25, 0.0, half="middle")

    @pytest.mark.parametrize("k", [6, 8])
    @pytest.mark.parametrize("N", [2, 4])
    @pytest.mark.parametrize("m", [1, 2])
    @pytest.mark.parametrize("delta", [0.25, 0.5])
    @pytest.mark.parametrize("t0", [0.0, 1.0])
    def test_second_summand_dominates_the_series(self, k, N, m, delta, t0):
        breakdown = estimate_breakdown(k, N, 3, m, delta, t0)
        spec = KernelSpec(k=k, N=N, psi=trivial_character(N), chi=CHI, s=complex(breakdown.sigma, -t0))
        series = kernel_coeff_general(spec, m, n_terms=24).parts["series"]
        assert abs(series) / m ** (k / 2 - 1) <= breakdown.summand2_bound

    @pytest.mark.parametrize("delta", [0.25, 0.4, 0.5])
    def test_certified_coefficient_is_bounded_away_from_zero(self, delta):
        breakdown = estimate_breakdown(6, 16, 3, 1, delta, 0.0)
        assert breakdown.verdict
        spec = KernelSpec(k=6, N=16, psi=trivial_character(16), chi=CHI, s=complex(breakdown.sigma, 0.0))
        value = kernel_coeff_general(spec, 1, n_terms=32)
        assert abs(value.value) >= breakdown.margin - 1e-12


class TestGammaRatio:
    @pytest.mark.parametrize("delta", [0.1, 0.5])
    @pytest.mark.parametrize("t0", [0.0, 2.0])
    def test_deviation_shrinks_with_weight(self, delta, t0):
        deviations = [gamma_ratio_deviation(k, delta, t0) for k in (8, 16, 32, 64, 128)]
        assert all(a > b for a, b in zip(deviations, deviations[1:]))
        assert deviations[-1] < 0.05


class TestThresholds:
    def test_delta_grid(self):
        grid = delta_grid(0.25, 4)
        assert grid == pytest.approx([0.25, 0.3125, 0.375, 0.4375, 0.5])
        with pytest.raises(PreconditionError):
            delta_grid(0.5)
        with pytest.raises(PreconditionError):
            delta_grid(0.25, 0)

    def test_min_weight_at_level_one(self):
        result = min_weight(0.0, 0.25, 1, 1, 3, grid_points=64)
        assert result.found
        k = result.value
        certificate = result.certificate
        assert estimate_breakdown(k, 1, 3, 1, certificate.worst_delta, 0.0).verdict
        assert certificate.worst_margin > 0
        assert certificate.refuted_at is not None and certificate.refuted_at < k
        if certificate.refuting_margin is None:
            with pytest.raises(BoundInapplicableError):
                estimate_breakdown(certificate.refuted_at, 1, 3, 1, certificate.refuting_delta, 0.0)
        else:
            assert not estimate_breakdown(certificate.refuted_at, 1, 3, 1, certificate.refuting_delta, 0.0).verdict

    def test_min_weight_is_stable_under_grid_refinement(self):
        coarse = min_weight(0.0, 0.25, 1, 1, 3, grid_points=64)
        fine = min_weight(0.0, 0.25, 1, 1, 3, grid_points=128)
        assert coarse.value == fine.value

    def test_min_weight_is_monotone_in_eps(self):
        values = [min_weight(0.0, eps, 1, 1, 3, grid_points=32).value for eps in (0.1, 0.25, 0.4)]
        assert values[0] >= values[1] >= values[2]

    def test_min_weight_not_found(self):
        result = min_weight(0.0, 0.25, 1, 1, 3, grid_points=16, k_max=4)
        assert not result.found
        assert result.value is None
        assert result.searched_up_to == 4

    def test_min_weight_needs_coprime_inputs(self):
        with pytest.raises(PreconditionError):
            min_weight(0.0, 0.25, 3, 1, 3, grid_points=16)
        with pytest.raises(PreconditionError):
            min_weight(0.0, 0.25, 1, 6, 3, grid_points=16)

    def test_min_level(self):
        result = min_level(0.0, 0.25, 6, 1, 3, grid_points=64)
        assert result.found
        assert math.gcd(result.value, 3) == 1
        assert result.value > 1
        assert estimate_breakdown(6, result.value, 3, 1, result.certificate.worst_delta, 0.0).verdict
        assert min_level(0.0, 0.25, 6, 1, 3, grid_points=128).value == result.value

    def test_min_level_decreases_with_weight(self):
        values = [min_level(0.0, 0.25, k, 1, 3, grid_points=32).value for k in (6, 8, 10)]
        assert values[0] >= values[1] >= values[2]

    def test_min_level_weight_bound(self):
        with pytest.raises(PreconditionError):
            min_level(0.0, 0.25, 2, 1, 3)


class TestScan:
    def test_grid(self):
        assert scan_grid(6, (2.6, 3.4), 0.2) == pytest.approx([2.6, 2.8, 3.0, 3.2, 3.4])
        assert scan_grid(4, (1.6, 1.6), 0.1) == [1.6]

    @pytest.mark.parametrize(("sigma_range", "step"), [((2.4, 3.0), 0.1), ((2.6, 3.5), 0.1), ((3.0, 2.8), 0.1)])
    def test_grid_outside_the_strip(self, sigma_range, step):
        with pytest.raises(PreconditionError):
            scan_grid(6, sigma_range, step)

    def test_grid_step(self):
        with pytest.raises(PreconditionError):
            scan_grid(6, (2.6, 3.0), 0.0)

    def test_flags_grow_with_threshold(self):
        args = (6, 2, trivial_character(2), CHI, 1, 0.5, (2.6, 3.4), 0.2)
        low = zero_scan(*args, threshold=1e-3, n_terms=16)
        high = zero_scan(*args, threshold=1e6, n_terms=16)
        assert [p.sigma for p in low] == pytest.approx([2.6, 2.8, 3.0, 3.2, 3.4])
        assert all(math.isfinite(p.abs) and math.isfinite(p.err) for p in low)
        assert {p.sigma for p in low if p.flagged} <= {p.sigma for p in high if p.flagged}
        assert all(p.flagged for p in high)

    def test_certified_region_is_bounded_away_from_zero(self):
        points = zero_scan(6, 16, trivial_character(16), CHI, 1, 0.0, (2.55, 2.75), 0.1, threshold=0.0, n_terms=32)
        assert len(points) == 3
        for point in points:
            breakdown = estimate_breakdown(6, 16, 3, 1, 3 - point.sigma, 0.0)
            assert breakdown.verdict
            assert point.abs >= breakdown.margin - 1e-12

    def test_parallel_matches_serial(self):
        args = (6, 2, trivial_character(2), CHI, 2, 0.0, (2.6, 3.0), 0.2)
        serial = zero_scan(*args, threshold=0.0, n_terms=8)
        parallel = zero_scan(*args, threshold=0.0, n_terms=8, workers=2)
        assert serial == parallel

    def test_preconditions(self):
        args = (6, 2, trivial_character(2), CHI)
        with pytest.raises(PreconditionError):
            zero_scan(*args, 1, 0.0, (2.6, 3.0), 0.2, threshold=-1.0)
        with pytest.raises(PreconditionError):
            zero_scan(*args, 0, 0.0, (2.6, 3.0), 0.2, threshold=0.0)

import pytest
from pydantic import ValidationError

from twisted_kernel.coefficients import CoefficientValue, TruncationConfig, block_schedule, sum_blocks
from twisted_kernel.utils import ConvergenceError


def geometric_block(lo: int, hi: int) -> tuple[complex, int]:
    return complex(sum(2.0**-n for n in range(lo + 1, hi + 1))), hi - lo


def inverse_square_block(lo: int, hi: int) -> tuple[complex, int]:
    return complex(sum(1.0 / (n * n) for n in range(lo + 1, hi + 1))), hi - lo


def test_config_validation():
    with pytest.raises(ValidationError):
        TruncationConfig(growth=1.0)
    with pytest.raises(ValidationError):
        TruncationConfig(n_start=0)
    with pytest.raises(ValidationError):
        TruncationConfig(rel_tol=0.0)


def test_block_schedule_doubles_up_to_the_cap():
    trunc = TruncationConfig(n_start=4, growth=2.0, n_cap=20)
    assert list(block_schedule(trunc)) == [(0, 4), (4, 8), (8, 16), (16, 20)]
    assert list(block_schedule(trunc, n_max=5)) == [(0, 4), (4, 5)]
    assert list(block_schedule(TruncationConfig(n_cap=0))) == []


def test_block_schedule_is_contiguous_for_slow_growth():
    blocks = list(block_schedule(TruncationConfig(n_start=1, growth=1.05, n_cap=200)))
    assert blocks[0] == (0, 1)
    assert blocks[-1][1] == 200
    assert all(prev[1] == nxt[0] and nxt[1] > nxt[0] for prev, nxt in zip(blocks, blocks[1:]))


def test_stabilizes_on_a_geometric_series():
    series = sum_blocks(geometric_block, TruncationConfig(n_start=64))
    assert series.stabilized
    assert not series.fixed
    assert series.blocks == 2
    assert series.n_max == 128
    assert series.total == pytest.approx(1.0, abs=1e-15)


def test_fixed_truncation_sums_exactly_n_terms():
    series = sum_blocks(geometric_block, TruncationConfig(n_start=4), n_terms=10)
    assert series.fixed
    assert series.n_max == 10
    assert series.total == pytest.approx(1.0 - 2.0**-10, abs=1e-15)
    value = CoefficientValue.from_series({"leading": 0j}, series)
    assert "fixed-truncation" in value.flags
    assert "unstable" not in value.flags


def test_unstable_series_raises_or_is_flagged():
    strict = TruncationConfig(n_start=16, rel_tol=1e-12, n_cap=32)
    with pytest.raises(ConvergenceError):
        sum_blocks(inverse_square_block, strict)
    lenient = strict.model_copy(update={"allow_unstable": True})
    series = sum_blocks(inverse_square_block, lenient, tail_bound=lambda n_max: 1.0 / n_max)
    assert not series.stabilized
    value = CoefficientValue.from_series({"leading": 1 + 0j}, series)
    assert "unstable" in value.flags
    assert value.rigorous
    assert value.error_estimate == pytest.approx(series.last_block + 1.0 / 32)


def test_leading_only_when_cap_is_zero():
    series = sum_blocks(geometric_block, TruncationConfig(n_cap=0), tail_bound=lambda n_max: None)
    assert series.n_max == 0
    assert series.total == 0
    value = CoefficientValue.from_series({"leading": 2 + 1j, "delta": 1 + 0j}, series)
    assert value.value == 3 + 1j
    assert value.flags == ("leading-only", "non-rigorous")
    assert not value.rigorous


def test_leading_terms_count_towards_stabilization():
    trunc = TruncationConfig(n_start=4, rel_tol=1e-3, n_cap=64)
    with_leading = sum_blocks(inverse_square_block, trunc, leading=1e6 + 0j)
    assert with_leading.stabilized
    assert with_leading.n_max == 4
    with pytest.raises(ConvergenceError):
        sum_blocks(inverse_square_block, trunc)


def test_as_dict_lists_flags_and_parts():
    series = sum_blocks(geometric_block, TruncationConfig(n_start=64))
    payload = CoefficientValue.from_series({"leading": 1j}, series, ("boundary-regime",)).as_dict()
    assert payload["flags"] == ["boundary-regime", "non-rigorous"]
    assert set(payload["parts"]) == {"leading", "series"}
    assert payload["value"] == pytest.approx(1 + 1j, abs=1e-15)

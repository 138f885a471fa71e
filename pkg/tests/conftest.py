import pytest
from hypothesis import HealthCheck, settings

from twisted_kernel.arithmetic import CharacterRegistry
from twisted_kernel.coefficients import TruncationConfig

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# fundamental discriminants used throughout; all negative
SMALL_DISCRIMINANTS = (-3, -4, -7, -8, -11, -15, -20)


@pytest.fixture
def registry() -> CharacterRegistry:
    return CharacterRegistry()


@pytest.fixture
def trunc() -> TruncationConfig:
    """Loose stabilization settings that keep series tests fast."""
    return TruncationConfig(n_start=32, rel_tol=1e-8, n_cap=4096)


@pytest.fixture
def unstable_trunc() -> TruncationConfig:
    return TruncationConfig(n_start=16, rel_tol=1e-12, n_cap=32, allow_unstable=True)

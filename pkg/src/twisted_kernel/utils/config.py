import os

from dotenv import load_dotenv

load_dotenv()

log_level = os.getenv("TWISTED_KERNEL_LOG_LEVEL", "WARNING").upper()
rel_tol = float(os.getenv("TWISTED_KERNEL_REL_TOL", "1e-10"))
n_start = int(os.getenv("TWISTED_KERNEL_N_START", "64"))
growth = float(os.getenv("TWISTED_KERNEL_GROWTH", "2.0"))
n_cap = int(os.getenv("TWISTED_KERNEL_N_CAP", str(2**20)))
workers = int(os.getenv("TWISTED_KERNEL_WORKERS", "1"))

# Import after load_dotenv to ensure env vars are loaded
from twisted_kernel.arithmetic.registry import CharacterRegistry  # noqa: E402
from twisted_kernel.coefficients.truncation import TruncationConfig  # noqa: E402


def default_truncation(**overrides) -> TruncationConfig:
    """TruncationConfig from the environment, with keyword overrides for values that are not None."""
    values = {"n_start": n_start, "growth": growth, "rel_tol": rel_tol, "n_cap": n_cap}
    values.update({key: value for key, value in overrides.items() if value is not None})
    return TruncationConfig(**values)


# Shared singleton instance
character_registry = CharacterRegistry()

"""Nonvanishing analysis for twisted_kernel.

This package contains:
- The explicit nonvanishing estimate and the Gamma-ratio asymptotic
- Weight and level thresholds with certificates
- Zero scans of kernel coefficients along the critical strip
"""

from twisted_kernel.analysis.estimate import (
    EstimateBreakdown,
    EstimateStatus,
    estimate_breakdown,
    gamma_ratio_deviation,
)
from twisted_kernel.analysis.scan import ScanPoint, scan_grid, zero_scan
from twisted_kernel.analysis.thresholds import (
    ThresholdCertificate,
    ThresholdResult,
    delta_grid,
    min_level,
    min_weight,
)

__all__ = [
    "EstimateBreakdown",
    "EstimateStatus",
    "estimate_breakdown",
    "gamma_ratio_deviation",
    "ScanPoint",
    "scan_grid",
    "zero_scan",
    "ThresholdCertificate",
    "ThresholdResult",
    "delta_grid",
    "min_level",
    "min_weight",
]

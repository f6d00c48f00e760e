"""Nonreciprocal optomechanical amplifier and isolator simulator."""

from ._core import (
    AnalyticTransmission,
    DeviceParams,
    Error,
    IsolationSolution,
    NoiseResult,
    StabilityReport,
    WorkingPoint,
    analytic_transmission,
    drift_full,
    drift_reduced,
    find_amplifier_point,
    optimize_gain,
    output_spectrum_cavity2,
    run_command,
    smatrix_full,
    smatrix_reduced,
    solve_isolation,
    stability_report,
)

__all__ = [
    "AnalyticTransmission",
    "DeviceParams",
    "Error",
    "IsolationSolution",
    "NoiseResult",
    "StabilityReport",
    "WorkingPoint",
    "analytic_transmission",
    "drift_full",
    "drift_reduced",
    "find_amplifier_point",
    "optimize_gain",
    "output_spectrum_cavity2",
    "run_command",
    "smatrix_full",
    "smatrix_reduced",
    "solve_isolation",
    "stability_report",
]

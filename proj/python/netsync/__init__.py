"""Coupled-oscillator network simulation and stability toolkit."""

from ._core import (
    ConfigError,
    BlowUpError,
    NoPeriodError,
    ConvergenceError,
    Graph,
    MsfCurve,
    Trajectory,
    build_from_edges,
    build_scale_free,
    build_star,
    degree_sequence,
    detect_sync,
    discs_bound_left_half_plane,
    estimate_period,
    evaluate_network_msf,
    find_equilibrium,
    floquet,
    general_eigenvalues,
    gershgorin_discs,
    laplacian,
    laplacian_spectrum,
    msf_sweep,
    phase_of,
    simulate,
    symmetric_eigenvalues,
    sync_error,
    wien_predictions,
    wrap_phase,
)

__all__ = [
    "ConfigError",
    "BlowUpError",
    "NoPeriodError",
    "ConvergenceError",
    "Graph",
    "MsfCurve",
    "Trajectory",
    "build_from_edges",
    "build_scale_free",
    "build_star",
    "degree_sequence",
    "detect_sync",
    "discs_bound_left_half_plane",
    "estimate_period",
    "evaluate_network_msf",
    "find_equilibrium",
    "floquet",
    "general_eigenvalues",
    "gershgorin_discs",
    "laplacian",
    "laplacian_spectrum",
    "msf_sweep",
    "phase_of",
    "simulate",
    "symmetric_eigenvalues",
    "sync_error",
    "wien_predictions",
    "wrap_phase",
]

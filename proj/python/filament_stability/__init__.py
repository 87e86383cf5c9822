"""Frenet-frame linear stability analysis of thin plasma filaments.

Thin wrapper over the compiled ``_core`` module. Geometry objects
(curves, frames) and the closed-form mode algebra are exposed directly;
whole runs (`analyze_json`, `verify_json`, `sweep_json`) return the same
JSON documents the CLI writes, so results are layout-identical across the
two front ends.
"""

from ._core import (
    SCHEMA_VERSION,
    DiscreteCurve,
    FrameField,
    FrenetResiduals,
    GrowthRate,
    RootPair,
    ScanResult,
    Stability,
    Vec3,
    __version__,
    adiabatic_relation,
    alfven_frequency,
    alfven_velocity,
    analyze_file_json,
    analyze_json,
    build_circle,
    build_helix,
    build_line,
    build_polyline,
    compute_frame,
    filament_length,
    frenet_residual,
    growth_rate,
    is_planar,
    moivre_expand,
    omega_residual_scan,
    solve_kparallel,
    solve_kperp,
    sweep_csv,
    sweep_json,
    verify_json,
)

__all__ = [
    "SCHEMA_VERSION",
    "DiscreteCurve",
    "FrameField",
    "FrenetResiduals",
    "GrowthRate",
    "RootPair",
    "ScanResult",
    "Stability",
    "Vec3",
    "__version__",
    "adiabatic_relation",
    "alfven_frequency",
    "alfven_velocity",
    "analyze_file_json",
    "analyze_json",
    "build_circle",
    "build_helix",
    "build_line",
    "build_polyline",
    "compute_frame",
    "filament_length",
    "frenet_residual",
    "growth_rate",
    "is_planar",
    "moivre_expand",
    "omega_residual_scan",
    "solve_kparallel",
    "solve_kperp",
    "sweep_csv",
    "sweep_json",
    "verify_json",
]

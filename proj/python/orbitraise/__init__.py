"""HJB value-function solver and feedback simulator for planar low-thrust orbit raising."""

from ._core import (
    EARTH_MU,
    ArchiveError,
    CartesianState,
    ConfigError,
    Control,
    ConvergenceReport,
    DragParams,
    OrbitalElements,
    PolarState,
    Simulation,
    Solution,
    TransferMetrics,
    __version__,
    circular_velocity,
    control_set,
    default_config,
    elements,
    load,
    parse_config,
    rk2_step,
    rk4_step,
    save,
    simulate,
    solve,
    to_cartesian,
    to_polar,
)

__all__ = [
    "EARTH_MU",
    "ArchiveError",
    "CartesianState",
    "ConfigError",
    "Control",
    "ConvergenceReport",
    "DragParams",
    "OrbitalElements",
    "PolarState",
    "Simulation",
    "Solution",
    "TransferMetrics",
    "__version__",
    "circular_velocity",
    "control_set",
    "default_config",
    "elements",
    "load",
    "parse_config",
    "rk2_step",
    "rk4_step",
    "save",
    "simulate",
    "solve",
    "to_cartesian",
    "to_polar",
]

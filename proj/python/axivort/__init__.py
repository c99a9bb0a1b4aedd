"""Axisymmetric Navier-Stokes vorticity in the meridian half-plane.

Fields are numpy arrays of shape ``(grid.n_r, grid.n_z)`` holding the
azimuthal vorticity at cell centres.
"""

from ._core import (
    ConfigError,
    DomainError,
    Grid,
    ResolutionError,
    StepFailure,
    UsageError,
    apply_S,
    eval_F,
    eval_F_prime,
    eval_H,
    eval_H_prime,
    evolve,
    gaussian_ring,
    norms,
    profile,
    semigroup_defect,
    set_num_threads,
    stream_function,
    velocity,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Grid",
    "ResolutionError",
    "StepFailure",
    "UsageError",
    "apply_S",
    "eval_F",
    "eval_F_prime",
    "eval_H",
    "eval_H_prime",
    "evolve",
    "gaussian_ring",
    "norms",
    "profile",
    "semigroup_defect",
    "set_num_threads",
    "stream_function",
    "velocity",
]

"""Numerical laboratory: transfer matrices, cocycles, m-functions, KdV runs, bound states."""

from ..grids import GridFunction, HamiltonianGrid
from .flows import b_matrix_at, b_samples_along_kdv
from .mfunction import MFunctionSample, free_m_function, m_function, shift_m
from .pde import kdv_evolve, kdv_trajectory, mass, soliton, spectral_derivative, stable_dt
from .spectrum import BoundStates, bound_states
from .transfer import (
    IDENTITY,
    TransferMatrix,
    chordal_distance,
    cocycle_residual,
    cocycle_residual_sampled,
    evolve_time,
    evolve_time_sampled,
    joint_cocycle_residual,
    joint_transfer,
    lft_apply,
    step_matrices,
    transfer_between,
    transfer_canonical,
    transfer_schrodinger,
)

__all__ = [
    "GridFunction",
    "HamiltonianGrid",
    "TransferMatrix",
    "IDENTITY",
    "transfer_schrodinger",
    "transfer_canonical",
    "transfer_between",
    "step_matrices",
    "evolve_time",
    "evolve_time_sampled",
    "cocycle_residual",
    "cocycle_residual_sampled",
    "joint_transfer",
    "joint_cocycle_residual",
    "lft_apply",
    "chordal_distance",
    "MFunctionSample",
    "m_function",
    "shift_m",
    "free_m_function",
    "kdv_evolve",
    "kdv_trajectory",
    "mass",
    "soliton",
    "spectral_derivative",
    "stable_dt",
    "BoundStates",
    "bound_states",
    "b_matrix_at",
    "b_samples_along_kdv",
]

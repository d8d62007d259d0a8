"""Exact zero-curvature algebra for the KdV hierarchy and canonical systems, plus a numerical lab."""

from . import canonical, diffpoly, kdv, numlab
from .diffpoly import DiffPoly, FlowRule, Symbol, ZDiffPoly, euler, field, integrate_x, parse
from .errors import ZeroCurveError
from .grids import GridFunction, HamiltonianGrid
from .kdv import HierarchyMember, build_hierarchy, verify_member, zero_curvature_residual

__version__ = "0.1.0"

__all__ = [
    "canonical",
    "diffpoly",
    "kdv",
    "numlab",
    "DiffPoly",
    "ZDiffPoly",
    "Symbol",
    "FlowRule",
    "field",
    "parse",
    "euler",
    "integrate_x",
    "ZeroCurveError",
    "GridFunction",
    "HamiltonianGrid",
    "HierarchyMember",
    "build_hierarchy",
    "verify_member",
    "zero_curvature_residual",
]

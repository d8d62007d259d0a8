"""``zerocurve`` command line: hierarchy generation, canonical-system checks, numerical runs.

Every command prints one JSON report (``schema: 1``) on stdout, or writes it
to ``--report``.  Exit status: 0 when every residual is within tolerance, 2 on
a residual or verdict failure, 1 on bad input, 3 when a numerical routine
refuses to run (overflow, CFL, cutoff, window, step underflow).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import canonical as cs
from .diffpoly import FlowRule, ZDiffPoly, parse
from .errors import (
    CFLViolation,
    CutoffTooSmall,
    DegenerateDeterminant,
    SolverOverflow,
    StepUnderflow,
    WindowTooSmall,
    ZeroCurveError,
)
from .grids import GridFunction, HamiltonianGrid, write_snapshots
from .kdv import build_hierarchy, kdv_prototype_residual, verify_member, zero_curvature_residual
from .numlab import (
    b_matrix_at,
    b_samples_along_kdv,
    bound_states,
    cocycle_residual,
    cocycle_residual_sampled,
    kdv_trajectory,
    m_function,
    mass,
    shift_m,
    soliton,
    stable_dt,
    transfer_between,
)

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_RESIDUAL, EXIT_NUMERIC = 0, 1, 2, 3
TOL_ENV = "ZEROCURVE_TOL_OVERRIDE"
NUMERIC_ERRORS = (SolverOverflow, CFLViolation, CutoffTooSmall, WindowTooSmall, StepUnderflow)

DEFAULT_TOLERANCES = {
    "det": 1e-8,
    "cocycle": 1e-6,
    "closed_form": 1e-7,
    "k_equation": 1e-4,
    "det_identity": 1e-4,
    "wronskian": 1e-6,
    "isospectral_drift": 0.01,
    "mass": 1e-8,
    "m_cutoff": 1e-6,
    "m_shift": 1e-5,
}


class InputError(ValueError):
    """Malformed arguments or input files (exit status 1)."""


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    grid: dict = field(default_factory=dict)  # x0, dx, n of the loaded grid
    degree: int | None = None
    max_degree: int = 6
    constants: dict = field(default_factory=dict)
    output: str | None = None

    def validate(self) -> None:
        bad = {k: v for k, v in self.tolerances.items() if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v))}
        if bad:
            raise InputError(f"tolerances must be positive: {bad}")
        if self.grid and self.grid.get("n", 16) < 16:
            raise InputError(f"grid has {self.grid['n']} points; at least 16 are required")
        if self.degree is not None and self.degree < 0:
            raise InputError("degree must be >= 0")
        if self.degree is not None and self.degree > self.max_degree:
            raise InputError(f"degree {self.degree} exceeds the cap {self.max_degree} (raise it with --max-degree)")

    def tol(self, key: str) -> float:
        return self.tolerances[key]

    def to_json(self) -> dict:
        return asdict(self)


def load_config(path: str | None) -> dict:
    """Tolerances (and ``max_degree``) from an optional JSON file, then the env scale factor."""
    tolerances = dict(DEFAULT_TOLERANCES)
    extra: dict = {}
    if path:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {path}: {exc}") from exc
        unknown = set(data.get("tolerances", {})) - set(tolerances)
        if unknown:
            raise InputError(f"unknown tolerance keys {sorted(unknown)}")
        tolerances.update(data.get("tolerances", {}))
        if "max_degree" in data:
            extra["max_degree"] = int(data["max_degree"])
    scale = os.environ.get(TOL_ENV)
    if scale:
        try:
            factor = float(scale)
        except ValueError as exc:
            raise InputError(f"{TOL_ENV} must be a number, got {scale!r}") from exc
        if not factor > 0:
            raise InputError(f"{TOL_ENV} must be positive")
        tolerances = {k: v * factor for k, v in tolerances.items()}
    return {"tolerances": tolerances, **extra}


# --------------------------------------------------------------------------
# report plumbing


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _clean(obj.real), "im": _clean(obj.imag)}
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def report(config: RunConfig, operation: str, *, results: dict, residuals: dict, tolerances: dict, passed: bool) -> dict:
    return {
        "schema": SCHEMA,
        "operation": operation,
        "inputs": config.inputs,
        "config": config.to_json(),
        "results": results,
        "residuals": residuals,
        "tolerances": tolerances,
        "pass": bool(passed),
    }


def dump(rep: dict) -> str:
    # Python's float repr is the shortest round-trip form, so output is byte-stable.
    return json.dumps(_clean(rep), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _within(residuals: dict, tolerances: dict) -> bool:
    return all(residuals[k] is not None and residuals[k] <= tolerances[k] for k in tolerances)


# --------------------------------------------------------------------------
# input helpers


def _constants(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise InputError(f"--const expects NAME=VALUE, got {item!r}")
        if value.strip().lower() in ("sym", "symbolic"):
            out[name.strip()] = None
            continue
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad constant value in {item!r}") from exc
    return out


def _grid_meta(grid) -> dict:
    return {"x0": grid.x0, "dx": grid.dx, "n": grid.n}


def _load_potential(path: str) -> GridFunction:
    try:
        return GridFunction.from_csv(path)
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"cannot read potential {path}: {exc}") from exc


def _load_hamiltonian(path: str) -> HamiltonianGrid:
    try:
        return HamiltonianGrid.from_csv(path)
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"cannot read Hamiltonian grid {path}: {exc}") from exc


def _zpoly(value, where: str) -> ZDiffPoly:
    if value is None:
        return ZDiffPoly()
    if isinstance(value, str):
        return ZDiffPoly.coerce(parse(value))
    if isinstance(value, dict):
        try:
            return ZDiffPoly.from_mapping({int(k): parse(str(v)) for k, v in value.items()})
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from exc
    raise InputError(f"{where}: expected a text expression or a {{power: expression}} map")


def _load_b(path: str) -> tuple[cs.CsBMatrix, cs.SymbolicHamiltonian]:
    """``{"A": {k: expr}, "C": ..., "D": ..., "H": {"f": expr, "g": expr, "h": expr}?}``."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read B file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("B file must hold a JSON object")
    B = cs.CsBMatrix(*(_zpoly(data.get(k), f"B.{k}") for k in "ACD"))
    H = cs.GENERIC
    if "H" in data:
        try:
            H = cs.SymbolicHamiltonian(*(parse(str(data["H"][k])) for k in "fgh"))
        except (KeyError, ValueError) as exc:
            raise InputError(f"B.H needs expressions f, g, h: {exc}") from exc
    return B, H


def _load_flow(source: str, H: cs.SymbolicHamiltonian) -> FlowRule:
    fields = set()
    for p in (H.f, H.g, H.h):
        fields |= p.field_symbols()
    if source == "zero":
        return FlowRule({s: 0 for s in fields})
    try:
        data = json.loads(Path(source).read_text())
        return FlowRule({name: parse(str(expr)) for name, expr in data.items()})
    except (OSError, json.JSONDecodeError, ValueError, AttributeError) as exc:
        raise InputError(f"--flow must be 'zero' or a JSON file of field -> expression: {exc}") from exc


# --------------------------------------------------------------------------
# commands


def cmd_hierarchy(args, base: dict) -> tuple[dict, int]:
    config = RunConfig(
        command=f"hierarchy {args.action}",
        degree=args.n,
        constants={k: (None if v is None else str(v)) for k, v in _constants(args.const).items()},
        max_degree=args.max_degree or base.get("max_degree", 6),
        tolerances=base["tolerances"],
        inputs={"n": args.n, "const": list(args.const or [])},
    )
    config.validate()
    consts = {k: (None if v is None else Fraction(v)) for k, v in config.constants.items()}
    try:
        member = build_hierarchy(args.n, consts)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    flags = verify_member(member)
    results = member.to_json()
    results["residual_status"] = flags
    if args.action == "verify":
        zc = zero_curvature_residual(member.B, member.flow)
        results["zero_curvature_residual"] = [[e.to_json() for e in row] for row in zc]
        results["prototype_residual"] = kdv_prototype_residual(member.B, member.flow).to_json()
    passed = all(flags.values())
    rep = report(config, config.command, results=results, residuals={k: not v for k, v in flags.items()}, tolerances={"symbolic": "exact"}, passed=passed)
    return rep, EXIT_OK if passed else EXIT_RESIDUAL


def cmd_cs_check(args, base: dict) -> tuple[dict, int]:
    config = RunConfig(command="cs check", tolerances=base["tolerances"], inputs={"b": args.b, "flow": args.flow})
    config.validate()
    B, H = _load_b(args.b)
    flow = _load_flow(args.flow, H)
    r = cs.cs_three_residuals(B, flow, H)
    consistency = cs.consistency_residual(B, flow, H)
    contraction_matches = (cs.kernel_contraction(B, flow, H) - consistency).is_zero()
    kernel_ok = all(p.is_zero() for p in cs.left_kernel_products(H))
    names = ("upper_right", "lower_left", "diagonal")
    results = {
        "three_residuals": {n: p.to_json() for n, p in zip(names, r)},
        "three_residuals_text": {n: str(p) for n, p in zip(names, r)},
        "consistency_residual": consistency.to_json(),
        "kernel_vector": [str(p) for p in cs.kernel_vector(H)],
        "kernel_annihilates_coefficient_matrix": kernel_ok,
        "kernel_contraction_matches_consistency": contraction_matches,
    }
    residual_zero = all(p.is_zero() for p in r) and consistency.is_zero()
    passed = residual_zero and kernel_ok and contraction_matches
    rep = report(config, "cs check", results=results, residuals={"nonzero_residual": not residual_zero}, tolerances={"symbolic": "exact"}, passed=passed)
    return rep, EXIT_OK if passed else EXIT_RESIDUAL


def cmd_cs_obstruct(args, base: dict) -> tuple[dict, int]:
    Hgrid = _load_hamiltonian(args.grid)
    config = RunConfig(command="cs obstruct", degree=args.n, grid=_grid_meta(Hgrid), tolerances=base["tolerances"], inputs={"grid": args.grid, "n": args.n, "kappa": args.kappa})
    config.validate()
    tol = config.tol("k_equation")
    try:
        rep_obj = cs.obstruction_check(Hgrid, args.n, tol=tol, kappa=args.kappa)
    except DegenerateDeterminant as exc:
        results = {"degree": args.n, "degenerate_points": exc.indices, "verdict": f"degenerate: det H <= 0 at {len(exc.indices)} grid point(s)", "max_residual": None, "K_profile": []}
        return report(config, "cs obstruct", results=results, residuals={"k_equation": None}, tolerances={"k_equation": tol}, passed=False), EXIT_RESIDUAL
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    results = rep_obj.to_json()
    rep = report(config, "cs obstruct", results=results, residuals={"k_equation": rep_obj.max_residual}, tolerances={"k_equation": tol}, passed=rep_obj.consistent)
    return rep, EXIT_OK if rep_obj.consistent else EXIT_RESIDUAL


def cmd_cs_convert(args, base: dict) -> tuple[dict, int]:
    V = _load_potential(args.potential)
    config = RunConfig(command="cs convert", grid=_grid_meta(V), tolerances=base["tolerances"], inputs={"potential": args.potential, "x_ref": args.x_ref}, output=args.out_grid)
    config.validate()
    try:
        H = cs.schrodinger_to_hamiltonian(V, x_ref=args.x_ref, wronskian_tol=config.tol("wronskian"), cap=args.cap)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.out_grid:
        H.to_csv(args.out_grid)
    direct = cs.det_second_difference_direct(H) - 4 * V.values[1:-1]
    residuals = {"det_identity": H.meta["det_residual_sup"], "wronskian": H.meta["wronskian_relative_error"]}
    tolerances = {"det_identity": config.tol("det_identity"), "wronskian": config.tol("wronskian")}
    results = {
        "det_residual_sup": H.meta["det_residual_sup"],
        "direct_second_difference_sup": float(np.max(np.abs(direct))),
        "wronskian_relative_error": H.meta["wronskian_relative_error"],
        "max_abs_entry": float(max(np.abs(H.f).max(), np.abs(H.h).max())),
    }
    passed = _within(residuals, tolerances)
    return report(config, "cs convert", results=results, residuals=residuals, tolerances=tolerances, passed=passed), EXIT_OK if passed else EXIT_RESIDUAL


def _steps_for(V: GridFunction, t: float, steps: int | None, method: str) -> int:
    if steps:
        return steps
    limit = stable_dt(V.values, V.dx, method)
    return max(1, math.ceil(abs(t) / (0.5 * limit))) if math.isfinite(limit) else 1


def cmd_sim_kdv(args, base: dict) -> tuple[dict, int]:
    V0 = _load_potential(args.potential)
    steps = _steps_for(V0, args.t, args.steps, args.method)
    config = RunConfig(command="sim kdv", grid=_grid_meta(V0), tolerances=base["tolerances"], inputs={"potential": args.potential, "t": args.t, "steps": steps, "method": args.method}, output=args.out)
    config.validate()
    every = max(1, steps // max(1, args.frames))
    snaps, last = [], V0
    for i, (t, V) in enumerate(kdv_trajectory(V0, args.t, steps, args.method)):
        last = V
        if i % every == 0 or i == steps:
            snaps.append((t, V.values))
    if args.snapshots:
        write_snapshots(args.snapshots, V0.x, snaps)
    if args.out:
        last.to_csv(args.out)
    scale = max(1.0, abs(mass(V0)))
    drift = abs(mass(last) - mass(V0)) / scale
    residuals, tolerances = {"mass": drift}, {"mass": config.tol("mass")}
    results = {
        "t_final": args.t,
        "steps": steps,
        "mass_initial": mass(V0),
        "mass_final": mass(last),
        "max_change": float(np.max(np.abs(last.values - V0.values))),
        "snapshot_times": [t for t, _ in snaps] if args.snapshots else [],
    }
    passed = _within(residuals, tolerances)
    return report(config, "sim kdv", results=results, residuals=residuals, tolerances=tolerances, passed=passed), EXIT_OK if passed else EXIT_RESIDUAL


def cmd_sim_isospec(args, base: dict) -> tuple[dict, int]:
    V0 = _load_potential(args.potential)
    steps = _steps_for(V0, args.t, args.steps, args.method)
    config = RunConfig(command="sim isospec", grid=_grid_meta(V0), tolerances=base["tolerances"], inputs={"potential": args.potential, "t": args.t, "steps": steps, "count": args.count})
    config.validate()
    before = bound_states(V0, args.count)
    last = V0
    for _, last in kdv_trajectory(V0, args.t, steps, args.method):
        pass
    after = bound_states(last, args.count)
    if len(before) != len(after):
        drift = math.inf
    elif len(before) == 0:
        drift = 0.0
    else:
        drift = float(np.max(np.abs(after.values - before.values) / np.abs(before.values)))
    residuals, tolerances = {"isospectral_drift": drift}, {"isospectral_drift": config.tol("isospectral_drift")}
    results = {
        "eigenvalues_initial": before.values,
        "eigenvalues_final": after.values,
        "extrapolated_initial": before.extrapolated,
        "extrapolated_final": after.extrapolated,
        "discretization_error_estimate": before.error_estimate,
        "steps": steps,
    }
    passed = _within(residuals, tolerances)
    return report(config, "sim isospec", results=results, residuals=residuals, tolerances=tolerances, passed=passed), EXIT_OK if passed else EXIT_RESIDUAL


def cmd_sim_cocycle(args, base: dict) -> tuple[dict, int]:
    member = build_hierarchy(args.member) if 0 <= args.member <= (args.max_degree or base.get("max_degree", 6)) else None
    if member is None:
        raise InputError(f"member degree {args.member} outside [0, cap]")
    z = complex(args.z)
    inputs = {"t1": args.t1, "t2": args.t2, "member": args.member, "z": str(z), "potential": args.potential, "x": args.x}
    results: dict = {}
    if args.potential:
        V0 = _load_potential(args.potential)
        config = RunConfig(command="sim cocycle", degree=args.member, grid=_grid_meta(V0), tolerances=base["tolerances"], inputs=inputs)
        config.validate()
        # t2 sits exactly on the step lattice; t1 is rounded to it and reported.
        total = args.t1 + args.t2
        steps = _steps_for(V0, total, args.steps, "ifrk4")
        m2 = max(1, math.ceil(steps * args.t2 / total))
        dt = args.t2 / m2
        m1 = max(1, round(args.t1 / dt))
        samples, dt = b_samples_along_kdv(member, V0, z, (m1 + m2) * dt, m1 + m2, x=args.x)
        res = cocycle_residual_sampled(samples, dt, m1, m2)
        results.update({"mode": "sampled along the KdV trajectory", "dt": dt, "m1": m1, "m2": m2, "t1_used": m1 * dt, "t2_used": m2 * dt})
    else:
        config = RunConfig(command="sim cocycle", degree=args.member, tolerances=base["tolerances"], inputs={**inputs, "V0": args.v0})
        config.validate()
        Vc = GridFunction(-1.0, 0.125, np.full(17, args.v0))
        Bc = b_matrix_at(member, Vc, z, 8)
        res = cocycle_residual(lambda tau: Bc, args.t1, args.t2)
        from scipy.linalg import expm

        closed = float(np.abs(expm(Bc * (args.t1 + args.t2)) - expm(Bc * args.t1) @ expm(Bc * args.t2)).max())
        results.update({"mode": "constant potential, constant B", "B": Bc, "closed_form_cocycle": closed})
    residuals, tolerances = {"cocycle": res}, {"cocycle": config.tol("cocycle")}
    results["residual"] = res
    passed = _within(residuals, tolerances)
    return report(config, "sim cocycle", results=results, residuals=residuals, tolerances=tolerances, passed=passed), EXIT_OK if passed else EXIT_RESIDUAL


def cmd_sim_mfun(args, base: dict) -> tuple[dict, int]:
    z = complex(args.z)
    if args.grid:
        system, kind, path = _load_hamiltonian(args.grid), "canonical", args.grid
    elif args.potential:
        system, kind, path = _load_potential(args.potential), "schrodinger", args.potential
    else:
        raise InputError("sim mfun needs --potential or --grid")
    config = RunConfig(command="sim mfun", grid=_grid_meta(system), tolerances=base["tolerances"], inputs={"input": path, "kind": kind, "z": str(z), "cutoff": args.cutoff, "base": args.base, "shift": args.shift})
    config.validate()
    m0 = m_function(system, z, args.cutoff, args.base, tol=config.tol("m_cutoff"))
    results = {"kind": kind, "m_plus": m0.m_plus, "m_minus": m0.m_minus, "cutoff_doubling_change": m0.doubling_change}
    residuals, tolerances = {"m_cutoff": m0.doubling_change}, {"m_cutoff": config.tol("m_cutoff")}
    if args.shift:
        target = args.base + args.shift
        m1 = m_function(system, z, args.cutoff, target, tol=config.tol("m_cutoff"))
        T = transfer_between(system, z, args.base, target)
        moved = (shift_m(T, m0.m_plus, +1, kind), shift_m(T, m0.m_minus, -1, kind))
        err = max(abs(moved[0] - m1.m_plus), abs(moved[1] - m1.m_minus))
        results.update({"shifted_m_plus": moved[0], "shifted_m_minus": moved[1], "direct_m_plus": m1.m_plus, "direct_m_minus": m1.m_minus})
        residuals["m_shift"], tolerances["m_shift"] = err, config.tol("m_shift")
    passed = _within(residuals, tolerances)
    return report(config, "sim mfun", results=results, residuals=residuals, tolerances=tolerances, passed=passed), EXIT_OK if passed else EXIT_RESIDUAL


SAMPLES = {
    "zero": lambda x, a: np.zeros_like(x),
    "one": lambda x, a: np.ones_like(x),
    "soliton": lambda x, a: soliton(x, 0.0, a),
}


def cmd_sample(args, base: dict) -> tuple[dict, int]:
    """Write a sample potential or Hamiltonian CSV."""
    config = RunConfig(command="sample", tolerances=base["tolerances"], inputs={k: v for k, v in vars(args).items() if k != "func"}, output=args.out)
    if args.kind in SAMPLES:
        g = GridFunction.from_function(lambda x: SAMPLES[args.kind](x, args.a), args.x0, args.x1, args.dx)
    elif args.kind == "hamiltonian":
        g = HamiltonianGrid.from_functions(
            lambda x: 1 + 0.5 * np.sin(x) ** 2,
            lambda x: 0.3 * np.cos(x),
            lambda x: 1 + 0.2 * x**2 / (1 + x**2),
            args.x0, args.x1, args.dx,
        )
    else:
        raise InputError(f"unknown sample {args.kind!r}")
    config.grid = _grid_meta(g)
    config.validate()
    g.to_csv(args.out)
    return report(config, "sample", results={"written": args.out}, residuals={}, tolerances={}, passed=True), EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zerocurve", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON file with a 'tolerances' map and optional 'max_degree'")
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="group", required=True)

    h = sub.add_parser("hierarchy", help="KdV hierarchy members")
    h.add_argument("action", choices=["gen", "verify"])
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--const", action="append", default=[], metavar="NAME=VALUE", help="rational value, or 'sym' to keep symbolic")
    h.add_argument("--max-degree", type=int, default=None)
    h.set_defaults(func=cmd_hierarchy)

    c = sub.add_parser("cs", help="canonical systems")
    csub = c.add_subparsers(dest="action", required=True)
    chk = csub.add_parser("check")
    chk.add_argument("--b", required=True, help="JSON file with A, C, D as {power: expression}")
    chk.add_argument("--flow", default="zero", help="'zero' or a JSON file field -> expression")
    chk.set_defaults(func=cmd_cs_check)
    obs = csub.add_parser("obstruct")
    obs.add_argument("--grid", required=True)
    obs.add_argument("--n", type=int, default=2)
    obs.add_argument("--kappa", type=float, default=1.0)
    obs.set_defaults(func=cmd_cs_obstruct)
    conv = csub.add_parser("convert")
    conv.add_argument("--potential", required=True)
    conv.add_argument("--x-ref", type=float, default=0.0)
    conv.add_argument("--cap", type=float, default=1e150)
    conv.add_argument("--out-grid")
    conv.set_defaults(func=cmd_cs_convert)

    s = sub.add_parser("sim", help="numerical experiments")
    ssub = s.add_subparsers(dest="action", required=True)
    kd = ssub.add_parser("kdv")
    iso = ssub.add_parser("isospec")
    for q in (kd, iso):
        q.add_argument("--potential", required=True)
        q.add_argument("--t", type=float, required=True)
        q.add_argument("--steps", type=int, default=None)
        q.add_argument("--method", choices=["ifrk4", "rk4"], default="ifrk4")
    kd.add_argument("--snapshots", help="plot-ready CSV of V at several times")
    kd.add_argument("--frames", type=int, default=10)
    kd.add_argument("--out", help="final profile CSV")
    kd.set_defaults(func=cmd_sim_kdv)
    iso.add_argument("--count", type=int, default=4)
    iso.set_defaults(func=cmd_sim_isospec)
    co = ssub.add_parser("cocycle")
    co.add_argument("--t1", type=float, required=True)
    co.add_argument("--t2", type=float, required=True)
    co.add_argument("--member", type=int, default=1)
    co.add_argument("--z", default="1j")
    co.add_argument("--potential")
    co.add_argument("--v0", type=float, default=0.0, help="constant potential when no --potential is given")
    co.add_argument("--x", type=float, default=0.0)
    co.add_argument("--steps", type=int, default=None)
    co.add_argument("--max-degree", type=int, default=None)
    co.set_defaults(func=cmd_sim_cocycle)
    mf = ssub.add_parser("mfun")
    mf.add_argument("--potential")
    mf.add_argument("--grid")
    mf.add_argument("--z", default="1j")
    mf.add_argument("--cutoff", type=float, default=8.0)
    mf.add_argument("--base", type=float, default=0.0)
    mf.add_argument("--shift", type=float, default=0.0)
    mf.set_defaults(func=cmd_sim_mfun)

    sm = sub.add_parser("sample", help="write a sample input CSV")
    sm.add_argument("kind", choices=[*SAMPLES, "hamiltonian"])
    sm.add_argument("--out", required=True)
    sm.add_argument("--x0", type=float, default=-20.0)
    sm.add_argument("--x1", type=float, default=20.0)
    sm.add_argument("--dx", type=float, default=0.01)
    sm.add_argument("--a", type=float, default=1.0, help="soliton parameter")
    sm.set_defaults(func=cmd_sample)
    return p


def run(argv=None) -> tuple[dict, int]:
    return execute(build_parser().parse_args(argv))


def execute(args) -> tuple[dict, int]:
    try:
        base = load_config(args.config)
        return args.func(args, base)
    except InputError as exc:
        return {"schema": SCHEMA, "error": "input", "message": str(exc), "pass": False}, EXIT_INPUT
    except NUMERIC_ERRORS as exc:
        return {"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc), "pass": False}, EXIT_NUMERIC
    except (ZeroCurveError, ValueError) as exc:
        return {"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc), "pass": False}, EXIT_INPUT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep, code = execute(args)
    text = dump(rep)
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

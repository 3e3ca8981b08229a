"""Command-line front end.

Exit codes:
  0  relation holds / all checks pass
  1  relation does not hold
  2  input error
  3  oracle disagreement (--oracle both)
  4  feasibility undecided
  5  positivity loss during integration
  6  energy-conservation violation

The default feasibility tolerance can be overridden with the
``GIBBSMAJ_TOL`` environment variable.
"""

import argparse
import math
import os
import sys
import time

import numpy as np

from . import io, linalg
from .channels import (FEASIBLE, INFEASIBLE, UNDECIDED, GibbsReference,
                       cptp_feasibility, qubit_dmaj_check, trace_norm_curve_check)
from .polytope import classical_maximizer, polytope_inequalities, polytope_vertices
from .thermo import (EnergyConservationViolatedError, GibbsContext, GKSLSystem,
                     PositivityLossError, ThermalOperation, build_thermal_operation,
                     covariance_residual, energy_conservation_check, gibbs_state,
                     integrate_gksl, propagator, thermal_gksl)
from .vectors import check_weights, d_majorizes, d_stochastic_witness
from .reachability import md_membership

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_DISAGREE = 3
EXIT_UNDECIDED = 4
EXIT_POSITIVITY = 5
EXIT_ENERGY = 6


def _default_tol() -> float:
    env = os.environ.get("GIBBSMAJ_TOL")
    if env is None:
        return 1e-7
    try:
        return float(env)
    except ValueError:
        raise io.InputError(f"GIBBSMAJ_TOL must be a float, got {env!r}")


def _emit(report: dict, started: float, out=None):
    report["wall_time_s"] = time.perf_counter() - started
    text = io.dump_report(report)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    sys.stdout.write(text)


def cmd_check_vector(args) -> int:
    started = time.perf_counter()
    x = io.load_vector(args.x)
    y = io.load_vector(args.y)
    d = check_weights(io.load_vector(args.d))
    if not (x.size == y.size == d.size):
        raise io.InputError("x, y, d must have equal length")
    report = {"command": "check-vector", "oracle": args.oracle}
    verdicts = {}
    if args.oracle in ("norm", "both"):
        verdicts["norm"] = d_majorizes(x, y, d)
    if args.oracle in ("lp", "both"):
        verdicts["lp"] = d_stochastic_witness(x, y, d) is not None
    report["verdicts"] = verdicts
    if len(set(verdicts.values())) > 1:
        report["verdict"] = "disagreement"
        _emit(report, started)
        return EXIT_DISAGREE
    verdict = next(iter(verdicts.values()))
    report["verdict"] = "majorizes" if verdict else "does-not-majorize"
    _emit(report, started)
    return EXIT_OK if verdict else EXIT_NO


def cmd_check_matrix(args) -> int:
    started = time.perf_counter()
    A = io.load_hermitian(args.A, "A")
    B = io.load_hermitian(args.B, "B")
    D = io.load_hermitian(args.D, "D")
    try:
        ref = GibbsReference(D)
    except ValueError as e:
        raise io.InputError(str(e))
    n = ref.n
    method = args.method
    if method == "auto":
        method = "qubit" if n == 2 else "feasibility"
    report = {"command": "check-matrix", "method": method, "n": n}
    tol = args.tol if args.tol is not None else _default_tol()
    if method == "curve":
        ok = trace_norm_curve_check(A, B, ref)
        report["verdict"] = "majorizes" if ok else "does-not-majorize"
        report["note"] = ("trace-norm condition holds (necessary only for n > 2)"
                          if ok and n > 2 else "")
        _emit(report, started)
        return EXIT_OK if ok else EXIT_NO
    if method == "qubit":
        if n != 2:
            raise io.InputError("--method qubit requires 2x2 inputs")
        ok = qubit_dmaj_check(A, B, ref)
        report["verdict"] = "majorizes" if ok else "does-not-majorize"
        _emit(report, started)
        return EXIT_OK if ok else EXIT_NO
    verdict = cptp_feasibility(A, B, ref, feas_tol=tol, max_iters=args.max_iters)
    report["residual"] = verdict.residual
    report["iterations"] = verdict.iterations
    report["curve_check"] = trace_norm_curve_check(A, B, ref)
    if report["curve_check"] and verdict.status == INFEASIBLE:
        report["note"] = "trace-norm condition holds"
    if verdict.status == UNDECIDED:
        report["verdict"] = "undecided"
        _emit(report, started)
        return EXIT_UNDECIDED
    report["verdict"] = "majorizes" if verdict.feasible else "does-not-majorize"
    _emit(report, started)
    return EXIT_OK if verdict.feasible else EXIT_NO


def cmd_polytope(args) -> int:
    started = time.perf_counter()
    y = io.load_vector(args.y)
    d = check_weights(io.load_vector(args.d))
    if y.size != d.size:
        raise io.InputError("y and d must have equal length")
    if (args.vertices or args.maximizer) and y.size > 5:
        raise io.InputError("--vertices/--maximizer are limited to n <= 5 "
                            "(combinatorial vertex enumeration)")
    P = polytope_inequalities(y, d)
    report = {
        "command": "polytope",
        "n": y.size,
        "row_count": int(P.sign_rows.shape[0]),
        "sign_rows": P.sign_rows,
        "bounds": P.bounds,
    }
    if args.vertices or args.maximizer:
        verts = polytope_vertices(P)
        report["vertices"] = [list(map(float, v)) for v in verts]
    if args.maximizer:
        report["maximizer"] = list(map(float, classical_maximizer(y, d)))
    _emit(report, started, out=args.out)
    return EXIT_OK


def _load_system(path):
    doc = io.load_json(path)
    if not isinstance(doc, dict) or "H_S" not in doc or "T" not in doc:
        raise io.InputError("system file must declare H_S and T")
    H_S = io.hermitian_from_doc(doc["H_S"], "H_S")
    T = math.inf if doc["T"] in ("inf", "Infinity") else float(doc["T"])
    ctx = GibbsContext(H_S=H_S, T=T)
    gamma = float(doc.get("gamma", 1.0))
    controls = []
    for c in doc.get("controls", []):
        controls.append((io.hermitian_from_doc(c["H"], "control H"), float(c["u"])))
    sys_ = thermal_gksl(ctx, gamma=gamma)
    if controls:
        sys_ = GKSLSystem(H0=ctx.H_S, controls=controls, gamma=gamma,
                          dissipators=list(sys_.dissipators))
    return ctx, sys_


def cmd_simulate(args) -> int:
    started = time.perf_counter()
    ctx, sys_ = _load_system(args.system)
    rho0 = io.load_hermitian(args.rho0, "rho0")
    if abs(np.trace(rho0).real - 1.0) > 1e-9:
        raise io.InputError("rho0 must have unit trace")
    if not linalg.is_psd(rho0, rtol=1e-7):
        raise io.InputError("rho0 must be PSD")
    step = args.step if args.step is not None else args.horizon / 1000.0
    try:
        traj = integrate_gksl(sys_, rho0, args.horizon, step)
    except PositivityLossError as e:
        sys.stdout.write(io.dump_report(
            {"command": "simulate", "verdict": "positivity-loss", "detail": str(e)}))
        return EXIT_POSITIVITY
    report = {"command": "simulate", "horizon": args.horizon, "step": step,
              "samples": len(traj)}
    stride = max(1, len(traj) // 32)
    samples = traj[::stride]
    if samples[-1][0] != traj[-1][0]:
        samples.append(traj[-1])
    report["trajectory"] = [
        {"t": t, "rho": io.matrix_to_doc(r)["matrix"]} for t, r in samples
    ]
    report["trace_drift"] = max(abs(np.trace(r).real - 1.0) for _, r in traj)
    audits_ok = True
    if args.audit_monotone:
        ref = GibbsReference(ctx.gibbs)
        pairs = 0
        violations = 0
        pick = samples[:: max(1, len(samples) // 5)]
        for i in range(1, len(pick)):
            v = md_membership(pick[i][1], pick[i - 1][1], ref)
            pairs += 1
            if not v.feasible:
                violations += 1
        report["monotone_audit"] = {"pairs": pairs, "violations": violations}
        audits_ok &= violations == 0
    if args.audit_covariance:
        residuals = []
        for t in np.linspace(args.horizon / 5, args.horizon, 5):
            residuals.append(covariance_residual(propagator(sys_, float(t)), ctx.H_S))
        report["covariance_audit"] = {"max_residual": max(residuals)}
        audits_ok &= max(residuals) <= 1e-8
    report["verdict"] = "ok" if audits_ok else "audit-failed"
    _emit(report, started, out=args.out)
    return EXIT_OK if audits_ok else EXIT_NO


def cmd_thermal_op(args) -> int:
    started = time.perf_counter()
    doc = io.load_json(args.op)
    if not isinstance(doc, dict):
        raise io.InputError("op file must be a JSON object")
    for key in ("H_S", "H_R", "U", "T"):
        if key not in doc:
            raise io.InputError(f"op file missing {key!r}")
    H_S = io.hermitian_from_doc(doc["H_S"], "H_S")
    H_R = io.hermitian_from_doc(doc["H_R"], "H_R")
    U = io.matrix_from_doc(doc["U"])
    T = math.inf if doc["T"] in ("inf", "Infinity") else float(doc["T"])
    try:
        op = ThermalOperation(H_S=H_S, H_R=H_R, U=U, T=T)
    except ValueError as e:
        raise io.InputError(str(e))
    comm = energy_conservation_check(op)
    report = {"command": "thermal-op", "commutator_norm": comm}
    try:
        phi = build_thermal_operation(op)
    except EnergyConservationViolatedError:
        report["verdict"] = "energy-conservation-violated"
        _emit(report, started)
        return EXIT_ENERGY
    gibbs_S = gibbs_state(H_S, T)
    report["gibbs_fixed_point_residual"] = float(
        np.abs(phi.apply(gibbs_S) - gibbs_S).max())
    report["covariance_residual"] = covariance_residual(phi, H_S)
    report["cp_residual"] = phi.cp_residual()
    report["tp_residual"] = phi.tp_residual()
    ok = (report["gibbs_fixed_point_residual"] <= 1e-8
          and report["covariance_residual"] <= 1e-8
          and phi.is_cptp(1e-8))
    report["verdict"] = "ok" if ok else "failed"
    _emit(report, started)
    return EXIT_OK if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gibbsmaj",
                                description="Majorization checks and Gibbs-preserving dynamics")
    sub = p.add_subparsers(dest="subcommand", required=True)

    v = sub.add_parser("check-vector", help="decide d-majorization of vectors")
    v.add_argument("x")
    v.add_argument("y")
    v.add_argument("d")
    v.add_argument("--oracle", choices=["lp", "norm", "both"], default="norm")
    v.set_defaults(func=cmd_check_vector)

    m = sub.add_parser("check-matrix", help="decide D-majorization of hermitian matrices")
    m.add_argument("A")
    m.add_argument("B")
    m.add_argument("D")
    m.add_argument("--method", choices=["auto", "qubit", "feasibility", "curve"],
                   default="auto")
    m.add_argument("--tol", type=float, default=None)
    m.add_argument("--max-iters", type=int, default=50000)
    m.set_defaults(func=cmd_check_matrix)

    pl = sub.add_parser("polytope", help="d-majorization polytope inequalities and vertices")
    pl.add_argument("y")
    pl.add_argument("d")
    pl.add_argument("--vertices", action="store_true")
    pl.add_argument("--maximizer", action="store_true")
    pl.add_argument("--out", default=None)
    pl.set_defaults(func=cmd_polytope)

    s = sub.add_parser("simulate", help="integrate the thermal GKSL equation")
    s.add_argument("system")
    s.add_argument("rho0")
    s.add_argument("--horizon", type=float, default=1.0)
    s.add_argument("--step", type=float, default=None)
    s.add_argument("--audit-monotone", action="store_true")
    s.add_argument("--audit-covariance", action="store_true")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_simulate)

    t = sub.add_parser("thermal-op", help="validate a thermal operation")
    t.add_argument("op")
    t.add_argument("--verify", action="store_true",
                   help="kept for symmetry; validation always runs")
    t.set_defaults(func=cmd_thermal_op)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except io.InputError as e:
        sys.stderr.write(f"input error: {e}\n")
        return EXIT_INPUT
    except (ValueError, OSError) as e:
        sys.stderr.write(f"input error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

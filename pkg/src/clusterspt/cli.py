"""Command-line front end.

Four subcommands: `verify` (stabilizer algebra and symmetry certification),
`spectrum` (low eigenvalues), `protect` (probe audit), `scan` (coupling
sweep).  Output is JSON, or CSV for tabular results, with a fixed schema and
12-significant-digit float formatting so identical configurations produce
byte-identical reports apart from the timings block.

Exit codes: 0 all checks passed, 1 a verified check failed, 2 usage or
resource error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

import numpy as np

from . import engine
from .analysis import (certify_protection, phase_scan, transition_estimate,
                       verify_stabilizer_algebra)
from .errors import (ConvergenceError, DomainError, LengthMismatchError,
                     ResourceLimitError)
from .models import (LatticeSpec, build_model, cross_check_global,
                     perturbed_hamiltonian, printed_global_string)
from .pauli import OperatorSum, PauliString, commutator

SCHEMA_VERSION = 1
SIZE_CAP = 24


def _fmt(x: float) -> float:
    return float(f"{float(x):.12g}")


def _clean(obj):
    """Round floats to 12 significant digits, normalize numpy types, and map
    NaN to null so the JSON stays valid and platform-stable."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return None
        return _fmt(x)
    return obj


def _parse_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"--lambda expects start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise DomainError(f"--lambda expects numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise DomainError("--lambda values must be finite")
    if stop < start:
        raise DomainError(f"--lambda range is reversed: {text!r}")
    if start == stop:
        return np.array([start])
    if step <= 0:
        raise DomainError("--lambda step must be positive")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(n), 12)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]),
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v)
                             for k, v in _clean(row).items()})
    return buf.getvalue()


def _emit(payload: dict, args, csv_rows=None) -> None:
    if getattr(args, "format", "json") == "csv" and csv_rows is not None:
        text = _csv_text(csv_rows)
    else:
        text = json.dumps(_clean(payload), sort_keys=True, indent=2,
                          allow_nan=False) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _lattice(args) -> LatticeSpec:
    if args.size > SIZE_CAP:
        raise ResourceLimitError(
            f"--size {args.size} exceeds the {SIZE_CAP}-site cap")
    return LatticeSpec(args.size, args.boundary)


def _config_dict(args, keys) -> dict:
    out = {"command": args.command}
    for key in keys:
        out[key] = getattr(args, key)
    return out


def cmd_verify(args):
    lattice = _lattice(args)
    report = verify_stabilizer_algebra(lattice, numeric=not args.symbolic_only)
    results = {
        "checks": [{"name": e.name, "passed": e.passed, "detail": e.detail}
                   for e in report.entries],
    }
    ok = report.passed

    if args.global_symmetry or args.tamper:
        if not lattice.supports_global_symmetry():
            raise DomainError(
                "--global-symmetry needs an open chain with --size in "
                "{9,15,21,...}")
        model = build_model(lattice)
        halves = {n: model.registry[n] for n in ("A1", "B1", "A2", "B2")}
        if args.tamper:
            halves[args.tamper] = OperatorSum.from_pauli(
                printed_global_string(args.tamper, lattice))
        sqrt2 = np.sqrt(2.0)
        t1 = (halves["A1"] + halves["B1"]) / sqrt2
        t2 = (halves["A2"] + halves["B2"]) / sqrt2
        h = model.registry["H_C"]
        ident = OperatorSum.identity(lattice.length)
        algebra = {
            "t1_commutes_h": commutator(h, t1).is_zero,
            "t2_commutes_h": commutator(h, t2).is_zero,
            "t1_squares_to_identity": (t1 @ t1).allclose(ident),
            "t2_squares_to_identity": (t2 @ t2).allclose(ident),
            "a1_b1_anticommute": (halves["A1"] @ halves["B1"]
                                  + halves["B1"] @ halves["A1"]).is_zero,
            "a2_b2_anticommute": (halves["A2"] @ halves["B2"]
                                  + halves["B2"] @ halves["A2"]).is_zero,
            "t1_t2_commute": commutator(t1, t2).is_zero,
        }
        results["global_symmetry"] = {
            "algebra": algebra,
            "tamper": args.tamper,
            "cross_checks": [
                {"name": c["name"], "matches": c["matches"],
                 "printed": c["printed"],
                 "printed_conjugated": c["printed_conjugated"],
                 "canonical_pattern": c["canonical_pattern"]}
                for c in cross_check_global(lattice)],
        }
        ok = ok and all(algebra.values())

    payload = {
        "config": _config_dict(args, ("size", "boundary", "global_symmetry",
                                      "tamper", "symbolic_only")),
        "results": results,
    }
    return payload, ok, None


def cmd_spectrum(args):
    lattice = _lattice(args)
    h = perturbed_hamiltonian(lattice, args.lam)
    dim = 1 << lattice.length
    count = min(args.count, dim)
    spectrum = engine.eig_low(h, count=count, method=args.method)
    results = {
        "eigenvalues": [float(v) for v in spectrum.eigenvalues],
        "ground_energy": float(spectrum.ground_energy),
        "ground_degeneracy": spectrum.ground_degeneracy,
        "gap": float(spectrum.gap),
        "max_residual": float(spectrum.max_residual),
        "method": spectrum.method,
    }
    payload = {
        "config": _config_dict(args, ("size", "boundary", "lam", "count",
                                      "method")),
        "results": results,
    }
    return payload, True, None


def cmd_protect(args):
    lattice = _lattice(args)
    probes = None
    if args.probe:
        probes = {}
        for name in args.probe:
            probes[name] = OperatorSum.from_pauli(
                PauliString.from_compact(name, lattice.length))
    rng = np.random.default_rng(args.seed)
    report = certify_protection(
        lattice, probes=probes, numeric=not args.symbolic_only, rng=rng,
        max_probes=args.max_probes, tamper=args.tamper,
        local_only=args.local_only)
    rows = [{
        "probe": v.name,
        "commutes_with_h": v.commutes_with_h,
        "commutes_with_t1": v.commutes_with_t1,
        "commutes_with_t2": v.commutes_with_t2,
        "excluded": v.excluded,
        "bulk_local": v.is_bulk_local,
        "forbidden": v.is_forbidden,
        "splitting": v.splitting,
        "splitting_norm": v.splitting_norm,
    } for v in report.probes]
    results = {
        "mode": report.mode,
        "algebra": report.algebra,
        "per_s_bulk": {str(k): v for k, v in report.per_s_bulk.items()},
        "sigma_all_excluded": report.sigma_all_excluded,
        "bulk_all_excluded": report.bulk_all_excluded,
        "symmetric_probes_harmless": report.symmetric_probes_harmless,
        "numeric_splitting": report.numeric_splitting,
        "cross_check_mismatches": [c["name"] for c in report.cross_checks
                                   if not c["matches"]],
        "probes": rows,
        "verdict": report.verdict,
    }
    payload = {
        "config": _config_dict(args, ("size", "boundary", "local_only",
                                      "tamper", "symbolic_only", "max_probes",
                                      "seed")),
        "results": results,
    }
    return payload, report.verdict == "protected", rows


def cmd_scan(args):
    lattice = _lattice(args)
    grid = _parse_grid(args.lam)
    probes = {}
    for name in args.probe or ():
        probes[name] = PauliString.from_compact(name, lattice.length)
    scan = phase_scan(lattice, grid, probes=probes or None,
                      method=args.method, eig_count=args.count,
                      sector_atol=args.tol)
    rows = scan.rows()
    results = {
        "rows": rows,
        "crossings": list(scan.crossings),
        "parity_commutes": scan.parity_commutes,
        "time_reversal_real": scan.time_reversal_real,
        "transition": None,
    }
    if grid.size >= 5:
        est = transition_estimate(scan)
        results["transition"] = {
            "value": est.value,
            "method": est.method,
            "boundary": est.boundary,
            "gap_used": est.gap_used,
        }
    ok = scan.parity_commutes and scan.time_reversal_real
    payload = {
        "config": _config_dict(args, ("size", "boundary", "lam", "method",
                                      "count", "tol", "seed")),
        "results": results,
    }
    return payload, ok, rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterspt",
        description="Verification suites and scans for cluster-chain "
                    "stabilizer models.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, size_default, boundary_default):
        p.add_argument("--size", type=int, default=size_default,
                       help="number of sites")
        p.add_argument("--boundary", choices=("open", "periodic"),
                       default=boundary_default)
        p.add_argument("--out", default=None, help="output path")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("verify", help="stabilizer algebra suite")
    common(p, 9, "open")
    p.add_argument("--global-symmetry", action="store_true",
                   dest="global_symmetry",
                   help="also certify the extensive symmetry pair")
    p.add_argument("--tamper", choices=("A1", "B1", "A2", "B2"), default=None,
                   help="swap one symmetry half for its literal printed form")
    p.add_argument("--symbolic-only", action="store_true",
                   dest="symbolic_only")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="low eigenvalues")
    common(p, 9, "open")
    p.add_argument("--lambda", dest="lam", type=float, default=0.0,
                   help="perturbation coupling")
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--method", choices=("auto", "dense", "iterative"),
                   default="auto")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("protect", help="probe audit against the symmetries")
    common(p, 9, "open")
    p.add_argument("--local-only", action="store_true", dest="local_only",
                   help="audit against the edge-localized pair")
    p.add_argument("--tamper", choices=("A1", "B1", "A2", "B2"), default=None)
    p.add_argument("--symbolic-only", action="store_true",
                   dest="symbolic_only")
    p.add_argument("--probe", action="append", default=None,
                   help="probe name like X3 or Z1X9 (repeatable)")
    p.add_argument("--max-probes", type=int, default=None, dest="max_probes")
    p.set_defaults(func=cmd_protect)

    p = sub.add_parser("scan", help="coupling sweep of the perturbed model")
    common(p, 12, "periodic")
    p.add_argument("--lambda", dest="lam", default="0.5:1.5:0.05",
                   help="grid as start:stop:step (inclusive)")
    p.add_argument("--count", type=int, default=12,
                   help="eigenvalues per grid point")
    p.add_argument("--method", choices=("auto", "dense", "iterative"),
                   default="auto")
    p.add_argument("--probe", action="append", default=None,
                   help="extra expectation to record (compact Pauli name)")
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    t0 = time.perf_counter()
    try:
        payload, ok, csv_rows = args.func(args)
    except (DomainError, LengthMismatchError, ResourceLimitError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    payload = {
        "schema_version": SCHEMA_VERSION,
        "config": payload["config"],
        "results": payload["results"],
        "verdict": "pass" if ok else "fail",
        "timings": {"total_s": round(time.perf_counter() - t0, 6)},
    }
    _emit(payload, args, csv_rows)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())

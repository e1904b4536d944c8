"""Command-line front end.

Usage:
  eulerfan verify      [--scenario S.json] [--mode exact|floating|auto] [--tol T] [--out R.json]
  eulerfan scan        [--scenario S.json] [--grid a:b:h,c:d:k] [--tol T] [--workers N] [--out M.csv]
  eulerfan apex        [--scenario S.json] [--bracket lo:hi] [--tol T] [--out A.json]
  eulerfan rarefaction [--scenario S.json] [--range lo:hi] [--points N] [--out D.csv]
  eulerfan paper-check [--workers N]

Without ``--scenario`` the built-in scenario rho- = 1, v- = (0, 2 sqrt2),
rho+ = 4, v+ = 0, p = rho**2 is used.

Exit codes: 0 success, 1 verification or certification failed, 2 invalid input,
3 numerical failure (no sign change, result not representable exactly).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .apex import DEFAULT_MAX_DEN, certify_apex, find_and_certify
from .errors import (
    DegenerateCoefficient, DomainError, EulerFanError, ExactnessUnavailable, ModeMismatch,
    NoSignChange, NotRepresentable, SubsolutionViolated,
)
from .model import (
    AUTO, EXACT, MODES, Scenario, candidate_to_dict, load_scenario, witness_scenario,
    dump_number,
)
from .parametrization import ParamPoint
from .rarefaction import build_rarefaction, lipschitz_initial_data, pde_residual
from .scanner import COARSE_GRID, DEFAULT_GRID, DEFAULT_SCAN_TOL, WORKERS_ENV, GridSpec, scan_region
from .verifier import DEFAULT_TOL_EQ, verify_admissible, verify_energy_conserving

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2, 3
SUBCOMMANDS = ("verify", "scan", "apex", "rarefaction", "paper-check")
PDE_TOL = 1e-6


@dataclass
class RunConfig:
    subcommand: str
    scenario_path: str | None = None
    output_path: str | None = None
    mode: str = AUTO
    tol: float | None = None
    grid: GridSpec | None = None
    bracket: tuple = (1.5, 3.0)
    workers: int | None = None
    admissible: bool = False
    max_den: int = DEFAULT_MAX_DEN
    x_range: tuple = (-6.0, 6.0)
    points: int = 1201
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise DomainError(f"unknown subcommand {self.subcommand!r}")
        if self.mode not in MODES:
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.tol is not None and not self.tol > 0:
            raise DomainError("tolerances must be positive")
        if not self.bracket[0] < self.bracket[1]:
            raise DomainError("bracket must satisfy lo < hi")
        if self.workers is not None and self.workers < 1:
            raise DomainError("--workers must be at least 1")
        if self.points < 2 or not self.x_range[0] < self.x_range[1]:
            raise DomainError("invalid sampling range")


def _pair(text: str, what: str) -> tuple:
    try:
        lo, hi = (float(x) for x in text.split(":"))
    except ValueError as exc:
        raise DomainError(f"bad {what} {text!r}, expected lo:hi") from exc
    return lo, hi


def _scenario(cfg: RunConfig) -> Scenario:
    if cfg.scenario_path is None:
        return witness_scenario()
    return load_scenario(cfg.scenario_path)


def _write(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _dump_json(path, doc):
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if path is not None:
        _write(path, text)


def cmd_verify(cfg: RunConfig) -> int:
    sc = _scenario(cfg)
    if sc.candidate is None:
        raise DomainError("scenario has no candidate to verify")
    fn = verify_admissible if cfg.admissible else verify_energy_conserving
    ok, report = fn(sc.data, sc.candidate, sc.law, cfg.mode, cfg.tol or DEFAULT_TOL_EQ)
    print(report.format())
    _dump_json(cfg.output_path, report.to_dict())
    return EXIT_OK if ok else EXIT_FAILED


def cmd_scan(cfg: RunConfig) -> int:
    sc = _scenario(cfg)
    grid = cfg.grid or DEFAULT_GRID
    res = scan_region(sc.data, sc.law, grid, cfg.tol or DEFAULT_SCAN_TOL, cfg.workers)
    if cfg.output_path is None:
        res.write_csv(sys.stdout)
    else:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            res.write_csv(fh)
    n_d = int((res.d == 1).sum())
    print(f"scanned {len(res)} points; conjunction holds at {n_d}", file=sys.stderr)
    return EXIT_OK


def _apex_doc(cert) -> dict:
    apex = cert.apex
    doc = {
        "outcome": cert.outcome,
        "float_root": {"rho1": float(apex.point.rho1), "delta2": float(apex.point.delta2),
                       "e3": apex.e3, "e4": apex.e4, "iterations": apex.iterations},
        "float_candidate": candidate_to_dict(apex.candidate),
        "snapped": None,
        "candidate": None,
        "certificate": None,
        "detail": cert.detail,
    }
    if cert.snapped is not None:
        doc["snapped"] = {"rho1": dump_number(cert.snapped.rho1), "delta2": dump_number(cert.snapped.delta2)}
    if cert.exact_candidate is not None:
        doc["candidate"] = candidate_to_dict(cert.exact_candidate)
    if cert.report is not None:
        doc["certificate"] = cert.report.to_dict()
    return doc


def cmd_apex(cfg: RunConfig) -> int:
    sc = _scenario(cfg)
    cert = find_and_certify(sc.data, sc.law, cfg.bracket, cfg.tol or 1e-10, cfg.max_den)
    doc = _apex_doc(cert)
    print(f"float root rho1 = {doc['float_root']['rho1']:.15g}, delta2 = {doc['float_root']['delta2']:.15g}")
    if cert.snapped is not None:
        print(f"snapped to rho1 = {doc['snapped']['rho1']}, delta2 = {doc['snapped']['delta2']}")
    print(f"outcome: {cert.outcome}" + (f" ({cert.detail})" if cert.detail else ""))
    _dump_json(cfg.output_path, doc)
    if cert.certified:
        return EXIT_OK
    if cert.outcome == "not_representable" and cfg.mode == EXACT:
        return EXIT_NUMERICAL
    return EXIT_FAILED


def cmd_rarefaction(cfg: RunConfig) -> int:
    sc = _scenario(cfg)
    data = sc.data if cfg.extra.get("no_switch") else sc.data.switched()
    prof = build_rarefaction(data, sc.law)
    init = lipschitz_initial_data(prof, cfg.x_range, cfg.points)
    res = pde_residual(prof)
    print(f"fan xi in [{prof.xi_left:.12g}, {prof.xi_right:.12g}], family {prof.family}", file=sys.stderr)
    print(f"PDE residual mass={res.mass:.3e} momentum={res.momentum:.3e} energy={res.energy:.3e}",
          file=sys.stderr)
    if cfg.output_path is None:
        init.write_csv(sys.stdout)
    else:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            init.write_csv(fh)
    return EXIT_OK if max(res[:3]) < (cfg.tol or PDE_TOL) else EXIT_FAILED


def cmd_paper_check(cfg: RunConfig) -> int:
    sc = witness_scenario()
    checks = []
    t0 = time.perf_counter()

    report = certify_apex(sc.data, sc.law, ParamPoint(Fraction(15, 7), Fraction(51, 35)))
    zeros = report.exact_zeros()
    strict_ok = all(report[n].verdict.value == "satisfied" for n in ("order", "sc1", "sc2"))
    checks.append(("exact certificate at (15/7, 51/35)", len(zeros) == 8 and strict_ok,
                   f"{len(zeros)} exact-zero residuals: {', '.join(zeros)}"))

    cert = find_and_certify(sc.data, sc.law, (1.5, 3.0), 1e-10)
    snapped_ok = cert.snapped is not None and (cert.snapped.rho1, cert.snapped.delta2) == (
        Fraction(15, 7), Fraction(51, 35))
    checks.append(("apex search, snap and certify", cert.certified and snapped_ok,
                   f"root ({float(cert.apex.point.rho1):.10f}, {float(cert.apex.point.delta2):.10f}), "
                   f"outcome {cert.outcome}"))

    scan = scan_region(sc.data, sc.law, COARSE_GRID, DEFAULT_SCAN_TOL, cfg.workers)
    n_d = int((scan.d == 1).sum())
    checks.append(("coarse region scan", n_d > 0, f"{n_d} of {len(scan)} points in the conjunction"))

    prof = build_rarefaction(sc.data.switched(), sc.law)
    res = pde_residual(prof)
    checks.append(("rarefaction PDE residual", max(res[:3]) < PDE_TOL,
                   f"mass {res.mass:.2e}, momentum {res.momentum:.2e}, energy {res.energy:.2e}"))

    for name, ok, detail in checks:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    print(f"total time {time.perf_counter() - t0:.2f} s")
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_FAILED


_COMMANDS = {
    "verify": cmd_verify,
    "scan": cmd_scan,
    "apex": cmd_apex,
    "rarefaction": cmd_rarefaction,
    "paper-check": cmd_paper_check,
}


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        return _COMMANDS[cfg.subcommand](cfg)
    except (NoSignChange, DegenerateCoefficient) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (NotRepresentable, ExactnessUnavailable) as exc:
        print(f"exact evaluation impossible: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SubsolutionViolated as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (DomainError, ModeMismatch, ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EulerFanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="JSON scenario file (default: built-in scenario)")
    common.add_argument("--out", help="output file (default: stdout for tables, none for JSON)")
    common.add_argument("--mode", default=AUTO, choices=MODES, help="numeric mode (default: auto)")
    common.add_argument("--tol", type=float, help="tolerance; meaning depends on the subcommand")
    common.add_argument("--workers", type=int,
                        help=f"worker threads for scans (default: ${WORKERS_ENV} or 1)")

    ap = argparse.ArgumentParser(prog="eulerfan", description=__doc__.split("\n\n")[0],
                                 formatter_class=argparse.RawDescriptionHelpFormatter,
                                 epilog=__doc__.split("\n\n", 1)[1])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a candidate's jump conditions")
    p.add_argument("--admissible", action="store_true",
                   help="require only the energy inequalities instead of equalities")

    p = sub.add_parser("scan", parents=[common], help="grid scan of the feasibility region (CSV)")
    p.add_argument("--grid", help="rho1_min:rho1_max:step,delta2_min:delta2_max:step")

    p = sub.add_parser("apex", parents=[common], help="find and certify the energy conserving point")
    p.add_argument("--bracket", default="1.5:3.0", help="rho1 search bracket lo:hi")
    p.add_argument("--max-den", type=int, default=DEFAULT_MAX_DEN, help="largest denominator when snapping")

    p = sub.add_parser("rarefaction", parents=[common], help="Lipschitz initial data table (CSV)")
    p.add_argument("--range", default="-6:6", help="x2 sampling range lo:hi (write --range=-6:6 for a negative lo)")
    p.add_argument("--points", type=int, default=1201, help="number of samples")
    p.add_argument("--no-switch", action="store_true",
                   help="use the scenario's states as given instead of swapping them")

    sub.add_parser("paper-check", parents=[common], help="reproduce the built-in scenario end to end")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.subcommand, ns.scenario, ns.out, ns.mode, ns.tol, workers=ns.workers)
    if ns.subcommand == "verify":
        cfg.admissible = ns.admissible
    elif ns.subcommand == "scan" and ns.grid:
        cfg.grid = GridSpec.parse(ns.grid)
    elif ns.subcommand == "apex":
        cfg.bracket = _pair(ns.bracket, "bracket")
        cfg.max_den = ns.max_den
    elif ns.subcommand == "rarefaction":
        cfg.x_range = _pair(ns.range, "range")
        cfg.points = ns.points
        cfg.extra["no_switch"] = ns.no_switch
    return cfg


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except DomainError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())

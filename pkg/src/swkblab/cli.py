"""Command line front end: ``swkblab {run,figure,validate,spectrum}``.

The exit code is 0 only when every threshold attached to the scenarios passes.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import SWKBError
from .scenario import FIGURE_IDS, load_scenarios, reproduce_figure, run_scenario, write_csv
from .verify import isospectrality_report

SPECTRUM_TOL = 1e-3
_PRECISION = {None: "auto", "double": "double", "dd": "double_double"}


def _common(p: argparse.ArgumentParser):
    p.add_argument("--n-max", type=int, default=None, help="override the last node number of the sweep")
    p.add_argument("--tol", type=float, default=None, help="absolute quadrature tolerance")
    p.add_argument("--out-dir", type=Path, default=Path("out"), help="directory for CSV and manifest files")
    p.add_argument("--threads", type=int, default=1, help="worker threads for the sweep over n")
    p.add_argument("--precision", choices=("double", "dd"), default=None,
                   help="polynomial evaluation precision (default: chosen by degree)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swkblab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, target, helptext in (
            ("run", "scenario", "sweep a scenario or batch file and write CSVs"),
            ("figure", "id", "reproduce the datasets of one figure"),
            ("validate", "scenario", "check parameters and regularity without sweeping"),
            ("spectrum", "scenario", "finite-difference spectrum of the deformed potential")):
        p = sub.add_parser(verb, help=helptext)
        if verb == "figure":
            p.add_argument(target, choices=FIGURE_IDS)
        else:
            p.add_argument(target, help="path to a .scn file (bundled names also accepted)")
        _common(p)
        if verb == "spectrum":
            p.add_argument("-k", type=int, default=5, help="number of levels")
    return parser


def _print_checks(checks) -> bool:
    for label, ok, detail in checks:
        print(f"  {'PASS' if ok else 'FAIL'}  {label}: {detail}")
    return all(ok for _, ok, _ in checks)


def cmd_run(args) -> bool:
    ok = True
    for s in load_scenarios(args.scenario):
        res = run_scenario(s, args.n_max, args.tol, args.threads, _PRECISION[args.precision])
        path = write_csv(res, args.out_dir / (s.output or f"{s.name}.csv"), with_rescaled=True)
        print(res.summary())
        print(f"  wrote {path}")
        for r in res.rows:
            if r.failure:
                print(f"  row n={r.n} failed: {r.failure}")
        ok &= _print_checks(res.checks)
    return ok


def cmd_figure(args) -> bool:
    results, manifest = reproduce_figure(args.id, args.out_dir, args.n_max, args.tol, args.threads,
                                         _PRECISION[args.precision])
    ok = True
    for res in results:
        print(res.summary())
        ok &= _print_checks(res.checks)
    print(f"manifest: {manifest}")
    return ok


def cmd_validate(args) -> bool:
    ok = True
    for s in load_scenarios(args.scenario):
        problems = s.validation_problems()
        if not problems:
            try:
                s.build(_PRECISION[args.precision])
            except SWKBError as exc:
                problems = [f"{type(exc).__name__}: {exc}"]
        print(f"{s.name}: {'valid' if not problems else 'INVALID'}")
        for msg in problems:
            print(f"  {msg}")
        ok &= not problems
    return ok


def cmd_spectrum(args) -> bool:
    ok = True
    for s in load_scenarios(args.scenario):
        rep = isospectrality_report(s.build(_PRECISION[args.precision]), k=args.k)
        print(f"{s.name}: max deviation {rep.max_deviation:.3e}")
        print(f"  {'level':>5} {'numeric':>18} {'reference':>12} {'deviation':>10}")
        for lv in rep.levels:
            print(f"  {lv.index:>5} {lv.numeric:>18.10f} {lv.reference:>12g} {lv.deviation:>10.2e}")
        ok &= rep.max_deviation < SPECTRUM_TOL
    return ok


COMMANDS = {"run": cmd_run, "figure": cmd_figure, "validate": cmd_validate, "spectrum": cmd_spectrum}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ok = COMMANDS[args.verb](args)
    except (SWKBError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

"""``opmeans`` command line: fuzz, check (replay), power, laws."""

from __future__ import annotations

import argparse
import json
import sys

from . import errors
from .funcalc import ContourSpec, default_contour, real_power_contour, real_power_spectral, spectrum_bounds
from .fuzz import DEFAULT_COND_MAX, DEFAULT_DIMS, DEFAULT_SEED, DEFAULT_TRIALS, FuzzConfig, emit_report, run_suite
from .laws.registry import DEFAULT_NU_GRID, LAWS, get_law, law_ids
from .laws.report import canonical_json, decode_value
from .linalg import as_positive, matrix_from_obj, matrix_to_obj


def _int_list(text):
    return [int(t) for t in text.split(",") if t.strip()]


def _float_list(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _glob_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _u64(text):
    return int(text, 0)


def build_parser():
    p = argparse.ArgumentParser(prog="opmeans", description="Check operator-mean identities and inequalities.")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fuzz", help="run seeded random suites")
    f.add_argument("--seed", type=_u64, default=DEFAULT_SEED, help="64-bit master seed (decimal or 0x...)")
    f.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    f.add_argument("--dims", type=_int_list, default=list(DEFAULT_DIMS))
    f.add_argument("--cond-max", type=float, default=DEFAULT_COND_MAX)
    f.add_argument("--nu", type=_float_list, default=list(DEFAULT_NU_GRID))
    f.add_argument("--suite", type=_glob_list, default=["*"], help="comma-separated law id globs")
    f.add_argument("--tol-rel", type=float, default=None, help="override every law's tolerance")
    f.add_argument("--out", default=None, help="report path (stdout if omitted)")
    f.add_argument("--format", choices=("json", "csv"), default="json")
    f.add_argument("--keep-worst", action="store_true", help="include the worst instance of every law")

    c = sub.add_parser("check", help="replay one law on a saved instance")
    c.add_argument("--law", default=None, help="law id (defaults to the one recorded in the input)")
    c.add_argument("--input", required=True, help="worst_instance JSON or a bare inputs object")
    c.add_argument("--tol-rel", type=float, default=None)

    w = sub.add_parser("power", help="real power of a positive matrix")
    w.add_argument("--input", required=True, help="matrix JSON")
    w.add_argument("--alpha", type=float, required=True)
    w.add_argument("--oracle", choices=("spectral", "contour"), default="spectral")
    w.add_argument("--nodes", type=int, default=256)
    w.add_argument("--center", type=float, default=None, help="contour centre (default: fitted to the spectrum)")
    w.add_argument("--radius", type=float, default=None)

    sub.add_parser("laws", help="list law ids")
    return p


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise errors.IoError(f"cannot read {path}: {exc}") from exc


def cmd_fuzz(args):
    config = FuzzConfig(
        master_seed=args.seed,
        trials=args.trials,
        dims=args.dims,
        cond_max=args.cond_max,
        nu_grid=args.nu,
        suites=args.suite,
        tol_rel=args.tol_rel,
        out_path=args.out,
        format=args.format,
        keep_worst=args.keep_worst,
    )
    report = run_suite(config)
    emit_report(report, args.format, args.out)
    total = sum(e["trials"] for e in report.per_law.values())
    print(
        f"{len(report.per_law)} laws, {total} trials, {report.failures} failures, {report.wall_time_ms} ms",
        file=sys.stderr,
    )
    return 0 if report.failures == 0 else 1


def cmd_check(args):
    case = _read_json(args.input)
    law_id = args.law or case.get("law_id")
    if law_id is None:
        raise errors.ConfigError("no --law given and the input records none")
    inputs = decode_value(case["inputs"] if "inputs" in case else case)
    rep = get_law(law_id).run(inputs, args.tol_rel)
    print(canonical_json(rep.to_dict()))
    return 0 if rep.passed else 1


def cmd_power(args):
    a = as_positive(matrix_from_obj(_read_json(args.input)))
    if args.oracle == "spectral":
        out = real_power_spectral(a, args.alpha)
    else:
        if args.center is not None and args.radius is not None:
            contour = ContourSpec(args.center, args.radius, args.nodes)
        else:
            contour = default_contour(spectrum_bounds(a), args.nodes)
        out = real_power_contour(a, args.alpha, contour)
    print(json.dumps(matrix_to_obj(out)))
    return 0


def cmd_laws(args):
    for law_id in law_ids():
        print(f"{law_id}\t{LAWS[law_id].summary}")
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = {"fuzz": cmd_fuzz, "check": cmd_check, "power": cmd_power, "laws": cmd_laws}[args.command]
    try:
        return handler(args)
    except errors.OpmeansError as exc:
        print(f"opmeans: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

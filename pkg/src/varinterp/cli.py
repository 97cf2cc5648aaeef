"""Command line entry point.

Subcommands map onto the library: ``norm`` evaluates a variable-exponent
norm of a sampled function, ``kfunc`` evaluates K-functionals, ``rearrange``
prints a non-increasing rearrangement profile, ``check`` runs one suite
check, and ``suite`` runs a configured batch and writes report files.

Exit codes: 0 success/pass, 1 check failure, 2 usage or config error,
3 numerical divergence.
"""

from __future__ import annotations

import argparse
import json
import sys

from .couples import Couple, k_functional
from .errors import (
    ConstructionError,
    DivergenceError,
    InvalidExponentError,
)
from .exponents import ExponentFunction
from .rearrange import AtomFunction, rearrangement
from .suite import CheckSuiteConfig, run_check, run_check_suite
from .varleb import HaarGrid, SampledFunction, luxemburg_norm

__all__ = ["main", "parse_exponent"]


def parse_exponent(source):
    """Parse DSL source with optional ``@0=`` / ``@inf=`` limit annotations.

    Annotated limits override the probed ones but are rejected when they
    disagree with the probe by more than 0.1: an annotation documents a
    limit, it does not get to contradict the expression.
    """
    head, *annotations = source.split("@")
    at_zero = at_infinity = None
    for ann in annotations:
        ann = ann.strip()
        if ann.startswith("0="):
            at_zero = float(ann[2:])
        elif ann.startswith("inf="):
            at_infinity = float(ann[4:])
        else:
            raise InvalidExponentError(f"unknown annotation '@{ann}'")
    probed = ExponentFunction.from_expression(head.strip())
    for label, annotated, found in (("@0", at_zero, probed.p_at_zero),
                                    ("@inf", at_infinity, probed.p_at_infinity)):
        if annotated is not None and abs(annotated - found) > 0.1:
            raise InvalidExponentError(
                f"{label}={annotated} contradicts the probed limit {found:.6g}")
    if at_zero is None and at_infinity is None:
        return probed
    return ExponentFunction.from_expression(
        head.strip(),
        p_at_zero=at_zero if at_zero is not None else probed.p_at_zero,
        p_at_infinity=at_infinity if at_infinity is not None else probed.p_at_infinity)


def _load_json(arg):
    """Accept inline JSON or a path to a JSON file."""
    text = arg.strip()
    if not text.startswith(("{", "[")):
        with open(arg, "r", encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def _parse_grid(text):
    grid_v, grid_spo = 16, 32
    for part in text.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key == "V":
            grid_v = int(value)
        elif key in ("spo", "samples_per_octave"):
            grid_spo = int(value)
        else:
            raise argparse.ArgumentTypeError(f"unknown grid field {key!r}")
    return HaarGrid(grid_v, grid_spo)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="varinterp",
        description="Variable-exponent real interpolation toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="Luxemburg norm of a sampled function")
    p_norm.add_argument("--exponent", required=True,
                        help="exponent DSL source, e.g. '2 + 1/log(e + 1/t)'")
    p_norm.add_argument("--function", required=True,
                        help="sampled-function JSON (inline or a file path)")
    p_norm.add_argument("--grid", type=_parse_grid, default=None,
                        metavar="V=16,spo=32")

    p_kfunc = sub.add_parser("kfunc", help="K-functional values on a couple")
    p_kfunc.add_argument("--couple", required=True,
                         help="couple JSON (inline or a file path)")
    p_kfunc.add_argument("--function", required=True,
                         help="element JSON: vector or atom list")
    p_kfunc.add_argument("--t", required=True,
                         help="comma-separated positive parameters")

    p_rearr = sub.add_parser("rearrange",
                             help="non-increasing rearrangement of an atom function")
    p_rearr.add_argument("--function", required=True,
                         help="atom-function JSON (inline or a file path)")

    p_check = sub.add_parser("check", help="run a single named check")
    p_check.add_argument("check_id")
    p_check.add_argument("--seed", type=int, default=42)
    p_check.add_argument("--trials", type=int, default=100)
    p_check.add_argument("--grid", type=_parse_grid, default=None,
                         metavar="V=16,spo=32")

    p_suite = sub.add_parser("suite", help="run a configured check suite")
    p_suite.add_argument("--config", required=True,
                         help="suite config JSON (inline or a file path)")
    p_suite.add_argument("--out", default=None,
                         help="report directory (overrides the config)")

    return parser


def _function_from_json(data):
    if isinstance(data, list):
        return [float(x) for x in data]
    if isinstance(data, dict) and "atoms" in data:
        return AtomFunction.from_json(data)
    if isinstance(data, dict) and "values" in data:
        return SampledFunction.from_json(data)
    raise ValueError("unrecognized function JSON: expected a vector, an "
                     "atom list, or a sampled function")


def _cmd_norm(args):
    exponent = parse_exponent(args.exponent)
    data = _load_json(args.function)
    fn = _function_from_json(data)
    if not isinstance(fn, SampledFunction):
        raise ValueError("norm expects a sampled function; use rearrange or "
                         "kfunc for atom functions and vectors")
    if args.grid is not None and fn.grid != args.grid:
        raise ValueError(f"--grid {args.grid.V}/{args.grid.samples_per_octave} "
                         "does not match the grid the function was sampled on")
    value = luxemburg_norm(fn, exponent)
    json.dump({"norm": value,
               "exponent": args.exponent,
               "grid": fn.grid.to_json()}, sys.stdout)
    sys.stdout.write("\n")
    return 0


def _cmd_kfunc(args):
    couple = Couple.from_json(_load_json(args.couple))
    fn = _function_from_json(_load_json(args.function))
    ts = [float(part) for part in args.t.split(",") if part.strip()]
    if not ts:
        raise ValueError("--t needs at least one value")
    values = [k_functional(couple, t, fn) for t in ts]
    json.dump({"t": ts, "K": values}, sys.stdout)
    sys.stdout.write("\n")
    return 0


def _cmd_rearrange(args):
    fn = _function_from_json(_load_json(args.function))
    if not isinstance(fn, AtomFunction):
        raise ValueError("rearrange expects an atom function "
                         '({"atoms": [[value, mass], ...]})')
    profile = rearrangement(fn)
    json.dump({"breakpoints": list(profile.breakpoints),
               "levels": list(profile.levels),
               "total_mass": profile.total_mass,
               "l1": profile.l1}, sys.stdout)
    sys.stdout.write("\n")
    return 0


def _cmd_check(args):
    report = run_check(args.check_id, seed=args.seed, trials=args.trials,
                       grid=args.grid)
    sys.stdout.write(report.to_json())
    return 0 if report.passed else 1


def _cmd_suite(args):
    data = _load_json(args.config)
    if not isinstance(data, dict):
        raise ValueError("suite config must be a JSON object")
    config = CheckSuiteConfig.from_json_dict(data)
    if args.out is not None:
        config = CheckSuiteConfig(seed=config.seed, trials=config.trials,
                                  grid=config.grid, checks=config.checks,
                                  output_dir=args.out)
    exit_code, reports = run_check_suite(config)
    for report in reports:
        status = "pass" if report.passed else "FAIL"
        sys.stdout.write(f"{report.check}: {status} "
                         f"(instances={report.instances}, "
                         f"constant={report.constant:.6g})\n")
    return exit_code


_COMMANDS = {
    "norm": _cmd_norm,
    "kfunc": _cmd_kfunc,
    "rearrange": _cmd_rearrange,
    "check": _cmd_check,
    "suite": _cmd_suite,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (DivergenceError, ConstructionError) as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

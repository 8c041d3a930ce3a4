"""Command-line batch runner.

Exit codes: 0 when every executed check passed, 1 when any check failed,
2 for configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import sys

from .model import ModelError, build_model, solve_phi
from .modelio import ModelIOError, export_model, import_model
from .scalars import ParameterError, ParamSet, format_scalar, parse_scalar
from .suite import (
    ConfigError,
    SuiteConfig,
    all_passed,
    load_config,
    make_file_target,
    make_param_target,
    run_suite,
)

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2


def _add_param_flags(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--d", type=int, required=required, help="diameter (matrix size is d+1)")
    parser.add_argument("--q", required=required, help="rational q outside {0, 1, -1}, e.g. 2 or 3/2")
    parser.add_argument("--a", required=required, help="rational eigenvalue scalar a")
    parser.add_argument("--b", required=required, help="rational eigenvalue scalar b")
    parser.add_argument(
        "--phi",
        nargs="+",
        default=None,
        metavar="PHI",
        help="split sequence phi_1..phi_d; found automatically when omitted",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qonsager",
        description="Exact verification of q-Onsager module identities over Q",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run check suites over targets")
    verify.add_argument("--config", help="JSON config with targets/suites/output/parallel")
    _add_param_flags(verify, required=False)
    verify.add_argument("--file", action="append", default=[], help="model file target (repeatable)")
    verify.add_argument(
        "--suite",
        action="append",
        default=[],
        help="suite name (repeatable): scalars, model, lusztig, splitmaps, equitable, diagrams, all",
    )
    verify.add_argument("--output", help="write one JSON record per check to this path")
    verify.add_argument("--parallel", action="store_true", help="run targets concurrently")
    verify.add_argument("--quiet", action="store_true", help="print only the per-target summaries")

    solve = sub.add_parser("solve-phi", help="find rational phi sequences for given parameters")
    _add_param_flags(solve, required=True)
    solve.add_argument("--limit", type=int, default=3, help="maximum number of sequences to report")

    export = sub.add_parser("export", help="build a model and write it to a model file")
    _add_param_flags(export, required=True)
    export.add_argument("--out", required=True, help="destination path")

    imp = sub.add_parser("import", help="read a model file and validate it")
    imp.add_argument("path", help="model file to read")
    return parser


def _verify_config(args) -> SuiteConfig:
    if args.config:
        return load_config(args.config)
    targets = [make_file_target(path) for path in args.file]
    if args.d is not None or args.q or args.a or args.b:
        missing = [flag for flag, val in (("--d", args.d), ("--q", args.q), ("--a", args.a), ("--b", args.b)) if val is None]
        if missing:
            raise ConfigError(f"inline target needs {', '.join(missing)}")
        phi = tuple(parse_scalar(t) for t in args.phi) if args.phi else ()
        targets.append(
            make_param_target(args.d, parse_scalar(args.q), parse_scalar(args.a), parse_scalar(args.b), phi)
        )
    if not targets:
        raise ConfigError("verify needs --config, --file, or inline --d/--q/--a/--b")
    return SuiteConfig(
        targets=targets,
        suites=tuple(args.suite) if args.suite else ("all",),
        output=args.output,
        parallel=args.parallel,
    )


def _cmd_verify(args) -> int:
    cfg = _verify_config(args)
    reports = run_suite(cfg)
    for rep in reports:
        if not args.quiet:
            for line in rep.to_lines():
                print(line)
        print(rep.summary())
    return EXIT_PASS if all_passed(reports) else EXIT_CHECK_FAILED


def _cmd_solve_phi(args) -> int:
    q, a, b = parse_scalar(args.q), parse_scalar(args.a), parse_scalar(args.b)
    sequences = solve_phi(args.d, q, a, b, limit=args.limit)
    if not sequences:
        print("no rational phi sequence found in the scanned family; vary parameters")
        return EXIT_CHECK_FAILED
    for seq in sequences:
        print(" ".join(format_scalar(x) for x in seq))
    return EXIT_PASS


def _cmd_export(args) -> int:
    q, a, b = parse_scalar(args.q), parse_scalar(args.a), parse_scalar(args.b)
    if args.phi:
        phi = tuple(parse_scalar(t) for t in args.phi)
    else:
        found = solve_phi(args.d, q, a, b, limit=1)
        if not found:
            print("no rational phi sequence found; supply --phi", file=sys.stderr)
            return EXIT_CHECK_FAILED
        phi = found[0]
    model = build_model(ParamSet(args.d, q, a, b, phi))
    export_model(model, args.out)
    print(f"wrote {args.out}")
    return EXIT_PASS


def _cmd_import(args) -> int:
    model = import_model(args.path)
    kind = "constructed" if model.constructed else "imported pair"
    print(
        f"{args.path}: {kind}, d={model.d}, q={format_scalar(model.params.q)}, "
        f"a={format_scalar(model.params.a)}, b={format_scalar(model.params.b)}"
    )
    return EXIT_PASS


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "verify": _cmd_verify,
        "solve-phi": _cmd_solve_phi,
        "export": _cmd_export,
        "import": _cmd_import,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, ModelIOError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (ParameterError, ModelError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())

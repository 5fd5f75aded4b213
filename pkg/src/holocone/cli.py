"""Command line entry point: ``verify run`` and ``verify table``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .verify import CHECKS, SUITES, ConfigError, VerifyConfig, convergence_table, run, table_csv

log = logging.getLogger("holocone.verify")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="run verification suites")
    r.add_argument("--config", help="JSON config; defaults to the built-in acceptance grid")
    r.add_argument("--suite", action="append", choices=SUITES, help="restrict to a suite (repeatable)")
    r.add_argument("--seed", type=int, help="override the config seed")
    r.add_argument("--output", help="write the JSON report here")
    r.add_argument("-q", "--quiet", action="store_true", help="only print the summary")

    t = sub.add_parser("table", help="emit a convergence table as CSV")
    t.add_argument("--check", required=True, help=f"one of {', '.join(sorted(CHECKS))}")
    t.add_argument("--sizes", required=True, help="comma separated list, e.g. 8,16,32")
    t.add_argument("--output", help="write CSV here instead of stdout")
    return p


def _cmd_run(args) -> int:
    cfg = VerifyConfig.from_file(args.config) if args.config else VerifyConfig()
    if args.suite:
        cfg.suites = list(args.suite)
    if args.seed is not None:
        if args.seed < 0 or args.seed >= 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        cfg.seed = args.seed
    report = run(cfg)
    if not args.quiet:
        for rec in report.records:
            if not rec.passed:
                print(f"FAIL {rec.suite}/{rec.check} {rec.inputs} rel={rec.rel_error:.3e} tol={rec.tolerance:.1e}")
    s = report.summary
    print(f"{s['passed']}/{s['total']} checks passed")
    out = args.output or cfg.output
    if out:
        with open(out, "w") as fh:
            fh.write(report.to_json())
    return 0 if report.passed else 1


def _cmd_table(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --sizes: {args.sizes}") from exc
    if not sizes or min(sizes) < 1:
        raise ConfigError("sizes must be positive integers")
    try:
        rows = convergence_table(args.check, sizes)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    text = table_csv(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _cmd_run(args) if args.cmd == "run" else _cmd_table(args)
    except ConfigError as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command line: gradedtraces {run,verify,toy,list}."""
import argparse
import logging
import os
import sys

from .config import ConfigError
from .report import human_report, write_reports
from .runner import resolve_config, run_config, shipped_configs


def _stem(path):
    return os.path.splitext(os.path.basename(path))[0]


def _run(args, verify_level):
    try:
        path = resolve_config(args.config)
        cache = None if args.no_cache else os.path.join(args.out, "cache")
        progress = None
        if args.verbose:
            progress = lambda n, d: print(f"  layer {n}: {d}", file=sys.stderr, flush=True)
        res = run_config(path, verify_level=verify_level, threads=args.threads,
                         cache_dir=cache, progress=progress)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(human_report(res))
    write_reports(res, args.out, _stem(path))
    return 0 if res.ok else 1


def main(argv=None):
    ap = argparse.ArgumentParser(prog="gradedtraces",
                                 description="Graded traces on finite-dimensional Nichols algebras")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name, help_text in (("run", "build, trace, factor and compare with the golden table"),
                            ("verify", "run plus the slower cross-checks"),
                            ("toy", "conjugation characters on a group algebra")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="config file or shipped config name")
        p.add_argument("--out", default="gradedtraces-out", help="output directory")
        p.add_argument("--threads", type=int, default=1, help="worker processes for traces")
        p.add_argument("--no-cache", action="store_true", help="do not read or write the build cache")
        p.add_argument("--verify-level", choices=("fast", "full"),
                       default="full" if name == "verify" else "fast")
        p.add_argument("-v", "--verbose", action="store_true")
    sub.add_parser("list", help="list the shipped configs")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING)
    if args.cmd == "list":
        print("\n".join(shipped_configs()))
        return 0
    return _run(args, args.verify_level)


if __name__ == "__main__":
    sys.exit(main())

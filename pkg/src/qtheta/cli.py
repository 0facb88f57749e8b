"""Batch front end: configure sweeps, run verifiers, emit reports.

Exit status: 0 when every selected identity verifies, otherwise the
number of failed reports (capped at 125); invalid usage exits 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .identities import WHICH_TOKENS, enumerate_jobs, run_jobs
from .selftest import run_selftest

DEFAULT_K_MIN = 2
DEFAULT_K_MAX = 20
DEFAULT_ORDER = 100
DEFAULT_JET_DEGREE = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qtheta",
        description="Exact q-series verification of theta/eta modular equations.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser(
        "verify",
        help="run identity verifiers over a parameter sweep",
        description="Verify the selected identities with exact arithmetic.",
    )
    v.add_argument(
        "which",
        help="comma-separated subset of: " + ", ".join(WHICH_TOKENS),
    )
    v.add_argument("--k-min", type=int, default=None,
                   help=f"lowest k (default {DEFAULT_K_MIN}, clamped to --k-max)")
    v.add_argument("--k-max", type=int, default=DEFAULT_K_MAX,
                   help=f"highest k (default {DEFAULT_K_MAX})")
    v.add_argument("--delta", choices=["0", "1", "both"], default="both",
                   help="parity selector (default both)")
    v.add_argument("--order", type=int, default=DEFAULT_ORDER,
                   help=f"q-expansion order N (default {DEFAULT_ORDER})")
    v.add_argument("--jet-degree", type=int, default=DEFAULT_JET_DEGREE,
                   help=f"z-jet degree J (default {DEFAULT_JET_DEGREE})")
    v.add_argument("--jobs", type=int, default=None,
                   help="parallel worker processes (default: QTHETA_JOBS or CPU count)")
    v.add_argument("--format", choices=["text", "json"], default="text",
                   dest="fmt", help="report format (default text)")
    v.add_argument("--output", default=None,
                   help="write the report stream to this path instead of stdout")

    sub.add_parser(
        "selftest",
        help="run the module-level invariant suites",
        description="Run the named invariant groups and report pass/fail.",
    )
    return p


def _usage_error(msg: str) -> int:
    print(f"qtheta verify: error: {msg}", file=sys.stderr)
    return 2


def _resolve_jobs(flag_value: int | None) -> int:
    if flag_value is not None:
        return max(1, flag_value)
    env = os.environ.get("QTHETA_JOBS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return os.cpu_count() or 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    if args.command == "selftest":
        fault = os.environ.get("QTHETA_SELFTEST_FAULT") or None
        return run_selftest(fault=fault)

    which = frozenset(tok.strip() for tok in args.which.split(",") if tok.strip())
    if not which:
        return _usage_error("empty identity selection")
    unknown = which - set(WHICH_TOKENS)
    if unknown:
        return _usage_error(
            f"unknown identity selector(s) {sorted(unknown)}; "
            f"choose from {', '.join(WHICH_TOKENS)}"
        )
    if args.k_max < 1:
        return _usage_error("--k-max must be >= 1")
    k_min = args.k_min if args.k_min is not None else min(DEFAULT_K_MIN, args.k_max)
    if k_min < 1:
        return _usage_error("--k-min must be >= 1")
    if k_min > args.k_max:
        return _usage_error(f"--k-min {k_min} exceeds --k-max {args.k_max}")
    if args.order < 1:
        return _usage_error("--order must be >= 1")
    needs_jets = bool(which & {"meq1", "lem22", "all"})
    if needs_jets and args.jet_degree < 2:
        return _usage_error("--jet-degree must be >= 2 for meq1/lem22")
    deltas = {"0": (0,), "1": (1,), "both": (0, 1)}[args.delta]
    jobs = _resolve_jobs(args.jobs)

    job_list = enumerate_jobs(
        k_min, args.k_max, deltas, args.order, args.jet_degree, which
    )
    sink = open(args.output, "w") if args.output else sys.stdout
    t0 = time.perf_counter()
    try:
        if args.fmt == "text":
            emit = lambda rep: print(rep.text_line(), file=sink, flush=True)
            reports = run_jobs(job_list, jobs, emit=emit)
        else:
            reports = run_jobs(job_list, jobs)
            json.dump([r.to_json_obj() for r in reports], sink, indent=1)
            sink.write("\n")
    finally:
        if args.output:
            sink.close()
    elapsed = time.perf_counter() - t0
    failures = sum(1 for r in reports if not r.passed)
    print(
        f"# {len(reports)} reports, {failures} failures, {elapsed:.1f} s",
        file=sys.stderr,
    )
    return 0 if failures == 0 else min(failures, 125)


if __name__ == "__main__":
    sys.exit(main())

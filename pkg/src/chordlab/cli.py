"""Command-line driver: reproducible, file-emitting subcommands.

Exit codes: 0 on success, 2 for usage or input validation problems (also
used by argparse itself), 1 for runtime failures. All commands default to
seed 0 so identical invocations write byte-identical output files; pass
``--seed random`` to opt into entropy (the chosen seed is printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__, _kernels
from .bounds import diagnostic_to_csv, diagnostic_to_json, scaling_diagnostic
from .distributions import resolve_distribution
from .ks import (histogram, histogram_to_csv, ks_for_batch, ks_table,
                 ks_table_to_csv)
from .moments import moment_set, moments_report_json, region_moments
from .oracle import batch_check
from .simulation import (SimulationConfig, result_to_csv, result_to_json,
                         run_batch)


def _parse_seed(text: str) -> int:
    if text.strip().lower() == "random":
        seed = int(np.random.SeedSequence().entropy % (2 ** 63))
        print(f"seed: {seed}")
        return seed
    return int(text)


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise ValueError("empty n list")
    return values


def _write_or_print(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _versions() -> dict:
    return {"chordlab": __version__, "numpy": np.__version__,
            "kernel_backend": _kernels.BACKEND}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_simulate(args) -> int:
    config = SimulationConfig(n_chords=args.n, repetitions=args.reps,
                              seed=args.seed, dist=args.dist)
    dist = resolve_distribution(args.dist)
    result = run_batch(config, dist=dist)
    out = args.out or f"simulation.{args.format}"
    if args.format == "json":
        import json as _json
        from .simulation import result_to_dict
        payload = result_to_dict(result)
        payload["meta"] = {"versions": _versions()}
        text = _json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = result_to_csv(result)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    rm = region_moments(args.n, moment_set(dist))
    print(f"wrote {config.repetitions} repetitions to {out}")
    print(f"sample mean F = {result.mean_f:.6g}  "
          f"sample std F = {result.std_f:.6g}")
    print(f"analytic mean F = {rm.mean_f:.6g}  "
          f"analytic sigma = {rm.sigma:.6g}")
    return 0


def _cmd_moments(args) -> int:
    dist = resolve_distribution(args.dist)
    m = moment_set(dist)
    rm = region_moments(args.n, m) if args.n is not None else None
    text = moments_report_json(m, rm)
    _write_or_print(text, args.out)
    if args.out:
        print(f"wrote moments to {args.out}")
    return 0


def _cmd_bounds(args) -> int:
    dist = resolve_distribution(args.dist)
    rows = scaling_diagnostic(dist, _parse_n_list(args.n))
    text = diagnostic_to_json(rows) if args.format == "json" \
        else diagnostic_to_csv(rows)
    _write_or_print(text, args.out)
    return 0


def _cmd_kstest(args) -> int:
    dist = resolve_distribution(args.dist)
    if args.n_list:
        rows = ks_table(_parse_n_list(args.n_list), args.reps, dist=dist,
                        seed=args.seed)
        _write_or_print(ks_table_to_csv(rows), args.out)
        return 0
    if args.n is None:
        raise ValueError("one of --n or --n-list is required")
    report, z = ks_for_batch(args.n, args.reps, dist, args.seed)
    payload = {
        "n_chords": args.n,
        "repetitions": args.reps,
        "dist": args.dist,
        "seed": args.seed,
        "statistic": report.statistic,
        "p_value": report.p_value,
        "sample_size": report.sample_size,
    }
    _write_or_print(json.dumps(payload, sort_keys=True, indent=2) + "\n",
                    args.out)
    if args.bins:
        hist_text = histogram_to_csv(histogram(z, args.bins))
        hist_out = f"{args.out}.hist.csv" if args.out else None
        _write_or_print(hist_text, hist_out)
        if hist_out:
            print(f"wrote histogram to {hist_out}")
    return 0


def _cmd_oracle_check(args) -> int:
    report = batch_check(count=args.count, n_max=args.n_max, seed=args.seed,
                         max_points=args.budget)
    _write_or_print(json.dumps(report, sort_keys=True, indent=2) + "\n",
                    args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordlab",
        description="Simulate and analyze the regions cut out of a disc by "
                    "random chords.")
    parser.add_argument("--version", action="version",
                        version=f"chordlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, reps_default=1000):
        p.add_argument("--dist", default="sine",
                       help="sine | uniform | table:<path> (default: sine)")
        p.add_argument("--seed", type=str, default="0",
                       help="64-bit integer, or 'random' (default: 0)")

    p = sub.add_parser("simulate",
                       help="draw chords, count regions, write per-repetition "
                            "results")
    p.add_argument("--n", type=int, required=True, help="chords per repetition")
    p.add_argument("--reps", type=int, default=1000)
    add_common(p)
    p.add_argument("--out", help="output path (default: simulation.<format>)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("moments",
                       help="crossing probabilities and region-count moments")
    p.add_argument("--dist", default="sine")
    p.add_argument("--n", type=int, default=None,
                   help="also report mean/var/sigma of the region count")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("bounds",
                       help="normal-approximation error bounds and their "
                            "decay diagnostic")
    p.add_argument("--dist", default="sine")
    p.add_argument("--n", required=True,
                   help="comma-separated chord counts, each > 5")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("kstest",
                       help="simulate, normalize analytically and KS-test "
                            "against N(0,1)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-list", default=None,
                   help="comma-separated chord counts for table mode")
    p.add_argument("--reps", type=int, default=1000)
    add_common(p)
    p.add_argument("--bins", type=int, default=None,
                   help="also emit a histogram of the normalized samples")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_kstest)

    p = sub.add_parser("oracle-check",
                       help="verify the region formula against the "
                            "sign-vector oracle on random configurations")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--seed", type=str, default="0")
    p.add_argument("--budget", type=int, default=10_000_000,
                   help="maximum sample points per configuration")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "seed"):
            args.seed = _parse_seed(args.seed)
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

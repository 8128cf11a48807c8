"""Command-line front end.

Subcommands: spectral, spectrum, dynamics, concurrence, selftest.
Exit codes: 0 success, 2 configuration error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import sys

from .config import default_config_text, load_config
from .errors import ConfigError, NumericsError
from .pipeline import run_concurrence, run_dynamics, run_spectral, run_spectrum
from .selftest import run_selftest

_STAGES = {
    "spectral": run_spectral,
    "spectrum": run_spectrum,
    "dynamics": run_dynamics,
    "concurrence": run_concurrence,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plasmonqe",
        description=(
            "Simulate quantum emitters coupled to a lossy surface plasmon "
            "polariton, with quantum surface-response corrections"
        ),
    )
    parser.add_argument(
        "--print-default-config",
        action="store_true",
        help="print the documented default configuration and exit",
    )
    sub = parser.add_subparsers(dest="command")
    for name, help_text in (
        ("spectral", "spectral-density table and peak report"),
        ("spectrum", "bound-state search per spectral channel"),
        ("dynamics", "non-Markovian amplitude trajectory and decay rate"),
        ("concurrence", "two-emitter concurrence with steady-state overlay"),
        ("selftest", "run the built-in oracle suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        if name != "selftest":
            p.add_argument("--config", required=True, help="scenario file (INI)")
            p.add_argument("--out", default=None, help="output directory")
            p.add_argument(
                "--threads", type=int, default=1, help="workers for table builds"
            )
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.print_default_config:
        sys.stdout.write(default_config_text())
        return 0
    if args.command is None:
        parser.print_help()
        return 2
    if args.command == "selftest":
        return 0 if run_selftest() else 3

    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    out_dir = args.out if args.out is not None else cfg.out_dir
    if args.threads < 1:
        print("configuration error: --threads must be >= 1", file=sys.stderr)
        return 2

    try:
        report = _STAGES[args.command](cfg, out_dir, n_jobs=args.threads)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericsError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3

    for key, value in report.items():
        print(f"{key}: {value}")
    print(f"artifacts written to {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

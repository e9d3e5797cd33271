"""Command-line front end.

Exit codes: 0 success, 1 invalid configuration or usage, 2 verification
failure, 3 output I/O error. Flags override fields from --config; the
thread count falls back to the COMMONBATH_THREADS environment variable
when --threads is absent.
"""

from __future__ import annotations

import argparse
import sys

from .runner import (
    EXIT_IO,
    EXIT_OK,
    EXIT_VALIDATION,
    EXIT_VERIFY_FAILED,
    ConfigError,
    RunConfig,
    VerificationFailure,
    default_thread_count,
    run_mode,
)


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x != ""]


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x != ""]


def _str_list(text: str) -> list[str]:
    return [x for x in text.split(",") if x != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commonbath",
        description="Entanglement dynamics of n qubits in a common Lorentzian environment",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode, help_text in (
        ("simulate", "sample quantities on a uniform tau grid"),
        ("zeno", "measurement-protected survival and concurrence"),
        ("stationary", "tau -> infinity concurrence table"),
        ("sweep", "simulate over a grid of n, R, s, phi"),
        ("verify", "run the cross-validation suite"),
    ):
        p = sub.add_parser(mode, help=help_text)
        p.add_argument("--config", help="JSON config file; flags override its fields")
        p.add_argument("--out", help="output file path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--threads", type=int, help="sweep worker threads")
        p.add_argument("--n", type=int, help="number of qubits")
        p.add_argument("--ratio", type=float, help="coupling over linewidth, R = g/kappa")
        p.add_argument("--kind", choices=("w_state", "two_qubit"), help="initial state family")
        p.add_argument("--s", type=float, help="separability parameter, two_qubit family")
        p.add_argument("--phi", type=float, help="relative phase, two_qubit family")
        p.add_argument("--tau-max", type=float, help="end of the time window")
        p.add_argument("--samples", type=int, help="sample count on [0, tau_max]")
        p.add_argument("--pairs", type=_str_list, help="pair classes, comma separated")
        p.add_argument("--intervals", type=_float_list,
                       help="zeno measurement intervals, comma separated")
        p.add_argument("--grid-n", type=_int_list, help="sweep grid over n")
        p.add_argument("--grid-ratio", type=_float_list, help="sweep grid over R")
        p.add_argument("--grid-s", type=_float_list, help="sweep grid over s")
        p.add_argument("--grid-phi", type=_float_list, help="sweep grid over phi")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config:
        cfg = RunConfig.from_json_file(args.config)
    else:
        cfg = RunConfig()
    cfg.mode = args.mode
    overrides = {
        "n": args.n,
        "R": args.ratio,
        "kind": args.kind,
        "s": args.s,
        "phi": args.phi,
        "tau_max": args.tau_max,
        "samples": args.samples,
        "pair_classes": args.pairs,
        "zeno_intervals": args.intervals,
        "sweep_n": args.grid_n,
        "sweep_R": args.grid_ratio,
        "sweep_s": args.grid_s,
        "sweep_phi": args.grid_phi,
        "output_path": args.out,
        "output_format": args.format,
    }
    for name, value in overrides.items():
        if value is not None:
            setattr(cfg, name, value)
    cfg.threads = args.threads if args.threads is not None else default_thread_count()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that slot is reserved for
        # verification failures here, so remap to the validation code.
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        cfg = config_from_args(args)
        text = run_mode(cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except VerificationFailure as exc:
        if cfg.output_path is None and exc.report:
            sys.stdout.write(exc.report)
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    if cfg.output_path is None:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands:
  check     run the bound suite over the builtin corpus
  sweep     run a sharpness sweep (deriv | bohr | increment)
  coeffs    extract crescent-map coefficients and the comparison report
  corpus    list and validate the builtin corpus

Exit codes: 0 pass, 1 check failure, 2 usage/config error, 3 numerical
failure.  Complex flag values accept mathematician's notation ("-i",
"0.5-0.25i"); use ``--p=-i`` or the plain ``--p -i`` form.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .errors import ConfigError, RealboundError
from .harness import (
    EXIT_CHECK_FAILURE,
    EXIT_CONFIG_ERROR,
    EXIT_NUMERICAL_FAILURE,
    EXIT_OK,
    CheckSettings,
    CoeffsSettings,
    ExperimentConfig,
    SweepSettings,
    config_from_dict,
    load_config,
    run_corpus_listing,
    run_experiment,
)


def parse_complex(text: str) -> complex:
    """Parse '1+2i', '-i', '0.5' and the j-forms into a complex number."""
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number from {text!r}") from exc


def _preprocess_argv(argv: list[str]) -> list[str]:
    """Join '--p -i' style pairs so argparse does not eat the value as a flag."""
    out = []
    skip = False
    for k, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in ("--p", "--halfplane-shift") and k + 1 < len(argv) and argv[k + 1].startswith("-"):
            out.append(f"{tok}={argv[k + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realbound",
        description="Certify sharp growth bounds for holomorphic maps into planar regions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=Path, default=None, help="JSON config file")
        p.add_argument("--out", type=Path, default=None, help="report directory (default: reports)")
        p.add_argument("--tol", type=float, default=None, help="relative pass tolerance (default 1e-6)")
        p.add_argument("--jobs", type=int, default=None, help="parallel workers for independent rows")
        p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")

    p_check = sub.add_parser("check", help="run the bound suite over the builtin corpus")
    common(p_check)
    p_check.add_argument("--entries", type=str, default=None, help="comma-separated corpus labels")

    p_sweep = sub.add_parser("sweep", help="run a sharpness sweep")
    p_sweep.add_argument("kind", choices=["deriv", "bohr", "increment"])
    common(p_sweep)
    p_sweep.add_argument("--schedule", type=str, default=None, help="pole ratios, e.g. 1.1,1.01,1.001")
    p_sweep.add_argument("--n", type=int, default=None, help="derivative order")
    p_sweep.add_argument("--radius", type=float, default=None, help="disc radius R")
    p_sweep.add_argument("--r-fraction", type=float, default=None, help="evaluation radius as fraction of R")
    p_sweep.add_argument("--ra-fraction", type=float, default=None, help="comparison radius as fraction of r")
    p_sweep.add_argument("--m", type=int, default=None, help="first coefficient index")
    p_sweep.add_argument("--q", type=float, default=None, help="power-sum exponent")
    p_sweep.add_argument("--a", type=float, default=None, help="crescent disc scale")
    p_sweep.add_argument("--p", type=str, default=None, help="half-plane shift, e.g. --p=-i")

    p_coeffs = sub.add_parser("coeffs", help="extract conformal-map coefficients")
    p_coeffs.add_argument("family", choices=["crescent"])
    common(p_coeffs)
    p_coeffs.add_argument("--a", type=float, default=None, help="crescent disc scale")
    p_coeffs.add_argument("--p", type=str, default=None, help="half-plane shift, e.g. --p=-i")
    p_coeffs.add_argument("--order", type=int, default=None, help="truncation order")

    p_corpus = sub.add_parser("corpus", help="list and validate the builtin corpus")
    p_corpus.add_argument("--out", type=Path, default=None, help="write corpus reports here")
    return parser


def _assemble_config(args: argparse.Namespace, kind: str) -> ExperimentConfig:
    if args.config is not None:
        config = load_config(args.config)
        if config.kind != kind:
            config = dataclasses.replace(config, kind=kind)
    else:
        config = config_from_dict({"kind": kind})

    if args.out is not None:
        config = dataclasses.replace(config, out_dir=args.out)
    if args.tol is not None:
        if args.tol < 0:
            raise ConfigError("tolerance must be nonnegative")
        config = dataclasses.replace(config, tolerance=args.tol)
    if args.jobs is not None:
        if args.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        config = dataclasses.replace(config, jobs=args.jobs)
    if args.no_figures:
        config = dataclasses.replace(config, figures=False)

    if kind == "check" and getattr(args, "entries", None):
        labels = tuple(s for s in args.entries.split(",") if s)
        config = dataclasses.replace(config, check=dataclasses.replace(config.check, entries=labels))

    if kind == "sweep":
        sweep = dataclasses.replace(config.sweep, kind=args.kind)
        if args.schedule is not None:
            try:
                schedule = tuple(float(s) for s in args.schedule.split(","))
            except ValueError as exc:
                raise ConfigError(f"bad schedule {args.schedule!r}") from exc
            sweep = dataclasses.replace(sweep, schedule=schedule)
        for attr, name in [
            ("n", "n"), ("radius", "radius"), ("r_fraction", "r_fraction"),
            ("ra_fraction", "ra_fraction"), ("m", "m"), ("q", "q"),
        ]:
            value = getattr(args, attr)
            if value is not None:
                sweep = dataclasses.replace(sweep, **{name: value})
        if args.a is not None:
            sweep = dataclasses.replace(sweep, disc_scale=args.a)
        if args.p is not None:
            sweep = dataclasses.replace(sweep, halfplane_shift=parse_complex(args.p))
        if args.kind == "bohr" and args.r_fraction is not None:
            sweep = dataclasses.replace(sweep, bohr_r_fraction=args.r_fraction)
        config = dataclasses.replace(config, sweep=sweep)

    if kind == "coeffs":
        coeffs = config.coeffs
        if args.a is not None:
            coeffs = dataclasses.replace(coeffs, disc_scale=args.a)
        if args.p is not None:
            coeffs = dataclasses.replace(coeffs, halfplane_shift=parse_complex(args.p))
        if args.order is not None:
            if args.order < 1:
                raise ConfigError("order must be >= 1")
            coeffs = dataclasses.replace(coeffs, order=args.order)
        config = dataclasses.replace(config, coeffs=coeffs)
    return config


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(_preprocess_argv(argv))
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both through.
        return int(exc.code or 0)

    try:
        if args.command == "corpus":
            code, lines, files = run_corpus_listing(args.out)
            for line in lines:
                print(line)
            for f in files:
                print(f"wrote {f}")
            return code

        config = _assemble_config(args, args.command)
        result = run_experiment(config)
        for f in result.files:
            print(f"wrote {f}")
        if result.failures:
            print(f"FAIL: {result.failures} of {result.rows} rows exceed the bound")
        elif result.flagged:
            print(f"NUMERICAL: {result.flagged} rows flagged")
        else:
            print(f"ok: {result.rows} rows within tolerance {config.tolerance}")
        return result.exit_code
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except RealboundError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())

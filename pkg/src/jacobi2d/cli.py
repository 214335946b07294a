"""Command line interface: ``jacobi2d <command> [options]``.

Exit codes: 0 success, 1 I/O or parse error, 2 validation error,
3 verification failure, 4 precondition error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, asdict

import numpy as np

from . import coefficients as coef
from .bounds import band_envelope, bound_report, envelope_sum, sharpened
from .errors import IndexOutOfRange, JacobiError, DimensionCap, ValidationError
from .oracle import DEFAULT_RTOL, verify_direct_integral
from .spectrum import TOL, MomentumGrid, check_enclosure, check_sandwich, spectrum_estimate, sweep_bands

COMMANDS = ("validate", "bands", "envelope", "bounds", "measure", "verify", "example")

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_VERIFY, EXIT_PRECONDITION = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    grid: tuple[int, int] = (64, 64)
    torus: tuple[int, int] = (3, 3)
    seed: int = 0
    samples: int = 100
    tol_psd: float = TOL.psd
    tol_enclosure: float = TOL.enclosure
    tol_measure: float = TOL.measure
    tol_direct: float = DEFAULT_RTOL
    format: str = "json"
    sharp: bool = False
    name: str | None = None
    p1: int | None = None
    p2: int | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if min(self.grid) < 1 or min(self.torus) < 1:
            raise ValueError("grid and torus sizes must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}")
    if a < 1 or b < 1:
        raise argparse.ArgumentTypeError(f"sizes must be positive, got {text!r}")
    return a, b


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for validation errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jacobi2d", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = _Parser(add_help=False)
    common.add_argument("--input", dest="input_path")
    common.add_argument("--output", dest="output_path")
    common.add_argument("--grid", type=_pair, default=(64, 64), metavar="NX,NY")
    common.add_argument("--torus", type=_pair, default=(3, 3), metavar="N1,N2")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100, help="quasimomentum samples for the sandwich check")
    common.add_argument("--tol-psd", type=float, default=TOL.psd)
    common.add_argument("--tol-enclosure", type=float, default=TOL.enclosure)
    common.add_argument("--tol-measure", type=float, default=TOL.measure)
    common.add_argument("--tol-direct", type=float, default=DEFAULT_RTOL)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--sharp", action="store_true", help="relabel to the minimizing cell before the envelope")

    for name in COMMANDS[:-1]:
        sub.add_parser(name, parents=[common])
    ex = sub.add_parser("example", parents=[common])
    ex.add_argument("--name", choices=sorted(coef.EXAMPLES), required=True)
    ex.add_argument("--p1", type=int, required=True)
    ex.add_argument("--p2", type=int, required=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fmt = args.format or ("csv" if args.command == "bands" else "json")
    return RunConfig(
        command=args.command, input_path=args.input_path, output_path=args.output_path,
        grid=args.grid, torus=args.torus, seed=args.seed, samples=args.samples,
        tol_psd=args.tol_psd, tol_enclosure=args.tol_enclosure, tol_measure=args.tol_measure,
        tol_direct=args.tol_direct, format=fmt, sharp=args.sharp,
        name=getattr(args, "name", None), p1=getattr(args, "p1", None), p2=getattr(args, "p2", None),
    )


def _read_input(cfg: RunConfig) -> tuple[coef.CoefficientField, str]:
    if not cfg.input_path:
        raise _Fail(EXIT_IO, "--input is required")
    try:
        with open(cfg.input_path, "rb") as fh:
            raw = fh.read()
        data = json.loads(raw.decode("utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise _Fail(EXIT_IO, f"cannot read {cfg.input_path}: {exc}")
    if not isinstance(data, dict):
        raise _Fail(EXIT_IO, f"{cfg.input_path}: expected a JSON object")
    try:
        field = coef.validate(data)
    except ValidationError as exc:
        raise _Fail(EXIT_INVALID, str(exc))
    return field, hashlib.sha256(raw).hexdigest()


def _echo(cfg: RunConfig, checksum: str) -> dict:
    out = {k: v for k, v in asdict(cfg).items() if k not in ("output_path", "name", "p1", "p2")}
    out["grid"], out["torus"] = list(cfg.grid), list(cfg.torus)
    out["input_sha256"] = checksum
    return out


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise _Fail(EXIT_IO, f"cannot write {cfg.output_path}: {exc}")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        return _dispatch(cfg)
    except _Fail as exc:
        print(f"jacobi2d: {exc}", file=sys.stderr)
        return exc.code
    except (IndexOutOfRange, DimensionCap) as exc:
        print(f"jacobi2d: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValidationError as exc:
        print(f"jacobi2d: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except JacobiError as exc:
        print(f"jacobi2d: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def _dispatch(cfg: RunConfig) -> int:
    if cfg.command == "example":
        if cfg.name not in coef.EXAMPLES or cfg.p1 is None or cfg.p2 is None:
            raise _Fail(EXIT_IO, "example needs --name, --p1 and --p2")
        _emit(cfg, coef.dumps(coef.EXAMPLES[cfg.name](cfg.p1, cfg.p2)))
        return EXIT_OK

    field, checksum = _read_input(cfg)
    echo = _echo(cfg, checksum)
    grid = MomentumGrid(*cfg.grid)

    if cfg.command == "validate":
        print(f"valid: p1={field.p1} p2={field.p2} fiber size={field.size}")
        for key, arr in field.arrays().items():
            print(f"  {key}: max |entry| = {float(np.max(np.abs(arr))):.6g}")
        return EXIT_OK

    if cfg.command == "bands":
        table = sweep_bands(field, grid)
        if cfg.format == "csv":
            _emit(cfg, table.to_csv())
        else:
            _emit(cfg, _json({"config": echo, "xs": grid.xs.tolist(), "ys": grid.ys.tolist(),
                              "values": table.values.tolist()}))
        return EXIT_OK

    env_field = sharpened(field) if cfg.sharp else field

    if cfg.command == "envelope":
        _emit(cfg, _json({"config": echo, **band_envelope(env_field).to_dict()}))
        return EXIT_OK

    report = bound_report(field, sharp=cfg.sharp)

    if cfg.command == "bounds":
        _emit(cfg, _json({"config": echo, **report.to_dict()}))
        return EXIT_OK

    if cfg.command == "measure":
        spec = spectrum_estimate(field, grid)
        scale = 1.0 + max((max(abs(lo), abs(hi)) for lo, hi in spec), default=0.0)
        limit = min(report.r_min, report.envelope_sum, report.norm_bound)
        _emit(cfg, _json({
            "config": echo,
            "intervals": spec.to_list(),
            "measure": spec.measure,
            "bounds": {"r_min": report.r_min, "envelope_sum": report.envelope_sum,
                       "norm_bound": report.norm_bound},
            "satisfied": bool(spec.measure <= limit + cfg.tol_measure * scale),
        }))
        return EXIT_OK

    if cfg.command == "verify":
        table = sweep_bands(env_field, grid)
        enclosure = check_enclosure(table, band_envelope(env_field), cfg.tol_enclosure)
        sandwich = check_sandwich(env_field, cfg.samples, cfg.seed, cfg.tol_psd)
        direct = verify_direct_integral(field, *cfg.torus, rtol=cfg.tol_direct)
        ok = enclosure.passed and sandwich.passed and direct.passed
        _emit(cfg, _json({
            "config": echo,
            "enclosure_check": enclosure.to_dict(),
            "sandwich_check": sandwich.to_dict(),
            "direct_integral_check": direct.to_dict(),
            "envelope_sum": envelope_sum(band_envelope(env_field)),
            "pass": ok,
        }))
        return EXIT_OK if ok else EXIT_VERIFY

    raise _Fail(EXIT_IO, f"unknown command {cfg.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

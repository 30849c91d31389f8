"""Command-line front end: generate, l2, haar, certify, sweep, constants.

Every command is reproducible: reruns with the same arguments and seeds
produce byte-identical files. Floats are serialized in round-trip-safe form,
rationals as "p/q" strings. Exit codes: 0 success (all certificates pass),
1 certificate failure, 2 usage error, 3 I/O error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .certificate import certify
from .core import (
    DEFAULT_ENUMERATION_BUDGET,
    BudgetExceededError,
    Constants,
    PointSetError,
    load_point_set,
    save_point_set,
)
from .discrepancy import l2_monte_carlo, warnock_l2
from .generators import KINDS, GeneratorSpec, generate
from .haar import write_spectrum_csv

__all__ = ["SweepConfig", "cmd_sweep", "main"]

EXIT_OK = 0
EXIT_CERT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BUDGET = 4


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: a generator template applied across ascending sizes."""

    template: GeneratorSpec
    n_values: tuple[int, ...]
    output: str
    format: str = "csv"
    kmax_offset: int = 20

    def __post_init__(self) -> None:
        if not self.n_values:
            raise ValueError("n_values must be nonempty")
        if list(self.n_values) != sorted(self.n_values):
            raise ValueError("n_values must be ascending")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")


def _rational_str(r) -> str:
    return f"{r.numerator}/{r.denominator}"


def _sweep_record(spec: GeneratorSpec, kmax_offset: int, budget: int) -> dict:
    ps = generate(spec)
    report = certify(ps, kmax_offset=kmax_offset, budget=budget)
    l2 = math.sqrt(max(report.exact_l2sq, 0.0))
    ratio = l2 / math.sqrt(math.log(ps.n)) if ps.n > 1 else None
    return {
        "n": ps.n,
        "d": ps.dim,
        "l2": l2,
        "ratio": ratio,
        "theoretical_lower": report.theoretical_lower,
        "empirical_lower": report.empirical_lower,
        "pass": report.passed,
    }


def cmd_sweep(config: SweepConfig, budget: int = DEFAULT_ENUMERATION_BUDGET, threads: int = 1) -> int:
    """Generate, measure, and certify each size; write the report file.

    Sizes are processed in parallel when threads > 1, but rows are written in
    input order, so the output does not depend on the thread count. Returns
    0 only if every certificate passed.
    """
    specs = [replace(config.template, n=n) for n in config.n_values]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(lambda s: _sweep_record(s, config.kmax_offset, budget), specs))
    else:
        records = [_sweep_record(s, config.kmax_offset, budget) for s in specs]

    consts = Constants()
    if config.format == "json":
        doc = {
            "generator": config.template.kind,
            "context": {
                "c2": consts.c2,
                "classical_lower": consts.classical_lower,
                "best_upper": consts.best_upper,
            },
            "records": records,
        }
        with open(config.output, "w", encoding="utf-8") as handle:
            json.dump(doc, handle, indent=2)
            handle.write("\n")
    else:
        with open(config.output, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(
                ["n", "d", "l2", "ratio", "theoretical_lower_sq", "empirical_lower_sq", "pass"]
            )
            for rec in records:
                writer.writerow(
                    [
                        rec["n"],
                        rec["d"],
                        repr(rec["l2"]),
                        "" if rec["ratio"] is None else repr(rec["ratio"]),
                        repr(rec["theoretical_lower"]),
                        repr(rec["empirical_lower"]),
                        rec["pass"],
                    ]
                )
    return EXIT_OK if all(rec["pass"] for rec in records) else EXIT_CERT_FAIL


def _parse_bits(text: str) -> tuple[int, ...]:
    if not all(c in "01" for c in text):
        raise argparse.ArgumentTypeError("shift must be a string of 0s and 1s")
    return tuple(int(c) for c in text)


def _parse_n_values(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("n-values must be comma-separated integers")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="haardisc",
        description="L2 discrepancy, Haar spectra, and lower-bound certificates",
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_ENUMERATION_BUDGET,
        help="enumeration budget for expensive scans",
    )
    parser.add_argument("--threads", type=int, default=1, help="worker threads for sweep")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated point set")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--shift", type=_parse_bits, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("l2", help="exact (or Monte Carlo) squared L2 discrepancy")
    p.add_argument("--input", required=True)
    p.add_argument("--mc", type=int, default=None, metavar="SAMPLES")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)

    p = sub.add_parser("haar", help="export the Haar coefficient spectrum as CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--jmax", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--force", action="store_true", help="override the enumeration budget")

    p = sub.add_parser("certify", help="run the empty-box lower-bound certificate")
    p.add_argument("--input", required=True)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--kmax-offset", type=int, default=20)
    p.add_argument("--csv", action="store_true", help="emit per-level CSV instead of JSON")
    p.add_argument("--out", default=None)

    p = sub.add_parser("sweep", help="generate/measure/certify across sizes")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n-values", type=_parse_n_values, required=True)
    p.add_argument("--kmax-offset", type=int, default=20)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True)

    sub.add_parser("constants", help="print the constants table")
    return parser


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _run_generate(args) -> int:
    spec = GeneratorSpec(kind=args.kind, n=args.n, dim=args.d, seed=args.seed, shift=args.shift)
    save_point_set(generate(spec), args.out)
    return EXIT_OK


def _run_l2(args) -> int:
    ps = load_point_set(args.input)
    if args.mc is not None:
        estimate, std_error = l2_monte_carlo(ps, args.mc, seed=args.seed)
        doc = {
            "n": ps.n,
            "d": ps.dim,
            "weighted": ps.weighted,
            "l2": math.sqrt(max(estimate, 0.0)),
            "l2_squared": estimate,
            "std_error": std_error,
            "samples": args.mc,
            "seed": args.seed,
        }
    else:
        value = warnock_l2(ps)
        doc = {
            "n": ps.n,
            "d": ps.dim,
            "weighted": ps.weighted,
            "l2": value.l2_norm,
            "l2_squared": value.l2_norm_squared,
        }
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _run_haar(args) -> int:
    ps = load_point_set(args.input)
    write_spectrum_csv(ps, args.jmax, args.out, force=args.force)
    return EXIT_OK


def _run_certify(args, budget: int) -> int:
    ps = load_point_set(args.input)
    report = certify(ps, k_max=args.kmax, kmax_offset=args.kmax_offset, budget=budget)
    if args.csv:
        lines = ["k,total,empty,guaranteed,energy"]
        for lv in report.levels:
            lines.append(
                f"{lv.level_sum},{lv.boxes_total},{lv.boxes_empty},"
                f"{lv.guaranteed_empty},{lv.energy!r}"
            )
        _write_text(args.out, "\n".join(lines) + "\n")
    else:
        _write_text(args.out, json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_CERT_FAIL


def _run_sweep(args, budget: int, threads: int) -> int:
    template = GeneratorSpec(kind=args.kind, n=1, dim=args.d, seed=args.seed)
    config = SweepConfig(
        template=template,
        n_values=args.n_values,
        output=args.out,
        format=args.format,
        kmax_offset=args.kmax_offset,
    )
    return cmd_sweep(config, budget=budget, threads=threads)


def _run_constants() -> int:
    consts = Constants()
    lines = [
        f"gamma            = {_rational_str(consts.gamma)} = {float(consts.gamma):.15g}",
        f"y_star           = {_rational_str(consts.y_star)} = {float(consts.y_star):.15g}",
        f"improvement      = {_rational_str(consts.improvement)} = {float(consts.improvement):.15g}",
        f"c_2              = {consts.c2:.15g}",
    ]
    for d in range(3, 9):
        lines.append(f"c_{d}              = {consts.cd(d):.15g}")
    lines.append(f"classical_lower  = {consts.classical_lower:.15g}")
    for d in range(3, 9):
        lines.append(f"classical_c_{d}    = {consts.classical_cd(d):.15g}")
    lines.append(f"best_upper       = {consts.best_upper:.15g}")
    for d in range(2, 9):
        lines.append(
            f"gamma_{d}          = {_rational_str(consts.gamma_d(d))} "
            f"= {float(consts.gamma_d(d)):.15g}"
        )
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return _run_generate(args)
        if args.command == "l2":
            return _run_l2(args)
        if args.command == "haar":
            return _run_haar(args)
        if args.command == "certify":
            return _run_certify(args, args.budget)
        if args.command == "sweep":
            return _run_sweep(args, args.budget, args.threads)
        if args.command == "constants":
            return _run_constants()
        parser.error(f"unknown command {args.command!r}")
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PointSetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

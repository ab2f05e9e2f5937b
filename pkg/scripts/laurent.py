#!/usr/bin/env python3
"""Command-line front end for the Laurent-coefficient library.

Data goes to stdout in the requested format; diagnostics go to stderr as
[OK]/[WARN]/[ERROR]/[SUMMARY] lines. Status codes: 0 success, 1 domain or usage
error, 2 accuracy failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from collections.abc import Sequence
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, NamedTuple

try:
    import yaml
except ImportError as exc:  # pragma: no cover - dependency guard
    raise SystemExit("Missing dependency: pyyaml. Install with `pip install pyyaml`.") from exc

from constants import PAPER_TABLE
from cuspform import (
    DEFAULT_TERMS,
    CuspForm,
    delta_form,
    l_f_direct,
    laurent_cuspform,
    load_coefficient_file,
)
from dirichlet import (
    DirichletCharacter,
    estimate_character_constant,
    estimate_residue_euler_constant,
    kronecker_character,
    load_character_file,
)
from errors import AccuracyError, DomainError, VerificationFailure
from specfun import DEFAULT_QUADRATURE, QuadratureSpec
from stieltjes import (
    DEFAULT_CONTROL,
    SummationControl,
    estimate_hurwitz_euler_constant,
    estimate_stieltjes_constant,
)
from verify import DEFAULT_SUITES, SUITE_NAMES, SuiteContext, richardson_derivative, run_suite, write_report

MAX_TERMS_ENV = "LAURENT_MAX_TERMS"
CONFIG_SECTIONS = {
    "summation": ("max_terms", "em_order", "target_abs_tol"),
    "quadrature": ("rel_tolerance", "abs_tolerance", "max_refinement_levels"),
    "cuspform": ("terms", "orders", "workers"),
}


@dataclass(frozen=True)
class LaurentConfig:
    ctl: SummationControl = DEFAULT_CONTROL
    spec: QuadratureSpec = DEFAULT_QUADRATURE
    terms: int = DEFAULT_TERMS
    orders: int = 2
    workers: int = 1


class ResultRow(NamedTuple):
    name: str
    value: complex | float
    abs_error_bound: float | None


def load_config(path: Path | None) -> LaurentConfig:
    config = LaurentConfig()
    if path is not None:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(data, dict):
            raise ValueError(f"Invalid config format: {path}")
        for section, values in data.items():
            if section not in CONFIG_SECTIONS or not isinstance(values, dict):
                raise ValueError(f"Invalid config section: {section!r}")
            unknown = set(values) - set(CONFIG_SECTIONS[section])
            if unknown:
                raise ValueError(f"Unknown keys in config section {section!r}: {sorted(unknown)}")
        summation = data.get("summation") or {}
        quadrature = data.get("quadrature") or {}
        cusp = data.get("cuspform") or {}
        config = LaurentConfig(
            ctl=SummationControl(**summation),
            spec=QuadratureSpec(**quadrature),
            terms=int(cusp.get("terms", DEFAULT_TERMS)),
            orders=int(cusp.get("orders", 2)),
            workers=int(cusp.get("workers", 1)),
        )
    cap = os.environ.get(MAX_TERMS_ENV)
    if cap:
        try:
            limit = int(cap)
        except ValueError as exc:
            raise DomainError(f"{MAX_TERMS_ENV} must be an integer, got {cap!r}") from exc
        config = replace(config, ctl=replace(config.ctl, max_terms=min(config.ctl.max_terms, limit)))
    return config


def parse_range(text: str) -> list[int]:
    """'a..b' (inclusive) or a single integer."""
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
        else:
            low = high = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer or a range 'a..b', got {text!r}") from exc
    if high < low:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(low, high + 1))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"[ERROR] {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text", help="Output format")
    common.add_argument("--tol", type=float, default=None, help="Target absolute tolerance")
    common.add_argument("--config", type=Path, default=None, help="YAML configuration file")

    parser = _Parser(description="Laurent coefficients of zeta, Hurwitz, Dirichlet and cusp-form L-functions")
    commands = parser.add_subparsers(dest="command", required=True)

    stieltjes = commands.add_parser("stieltjes", parents=[common], help="Stieltjes constants gamma_k")
    stieltjes.add_argument("--k", type=parse_range, default=[0], help="Order or range a..b")

    hurwitz = commands.add_parser("hurwitz", parents=[common], help="Hurwitz-Euler constants gamma_k(a)")
    hurwitz.add_argument("--k", type=parse_range, default=[0], help="Order or range a..b")
    hurwitz.add_argument("--a", type=float, required=True, help="Shift, 0 < a <= 1")

    residue = commands.add_parser("residue", parents=[common], help="Residue-class constants gamma_k(a, q)")
    residue.add_argument("--k", type=parse_range, default=[0], help="Order or range a..b")
    residue.add_argument("--q", type=int, required=True, help="Modulus")
    residue.add_argument("--a", type=parse_range, default=None, help="Residue or range (default 1..q)")

    dirichlet = commands.add_parser("dirichlet", parents=[common], help="Character constants gamma_k(chi)")
    source = dirichlet.add_mutually_exclusive_group(required=True)
    source.add_argument("--char-file", type=Path, help="Character table file")
    source.add_argument("--kronecker", type=int, help="Kronecker character (d/.)")
    dirichlet.add_argument("--q", type=int, default=None, help="Modulus for --kronecker (default |d|)")
    dirichlet.add_argument("--k", type=parse_range, default=[0], help="Order or range a..b")

    cusp = commands.add_parser("cuspform", parents=[common], help="Coefficients C(n, k) of L(f, s) at s = 0")
    form = cusp.add_mutually_exclusive_group(required=True)
    form.add_argument("--delta", action="store_true", help="Ramanujan Delta, weight 12")
    form.add_argument("--coeff-file", type=Path, help="Coefficient file")
    cusp.add_argument("--orders", type=int, default=None, help="Number of coefficients (default 2)")
    cusp.add_argument("--terms", type=int, default=None, help="Fourier terms (default 30)")
    cusp.add_argument("--workers", type=int, default=None, help="Threads for the Fourier-index series")

    verify = commands.add_parser("verify", parents=[common], help="Run a golden verification suite")
    verify.add_argument("--suite", required=True, help=f"One of: {', '.join([*SUITE_NAMES, 'all'])}")
    verify.add_argument("--suites-file", type=Path, default=DEFAULT_SUITES)
    verify.add_argument("--json-out", type=Path, default=None)
    verify.add_argument("--md-out", type=Path, default=None)
    verify.add_argument("--workers", type=int, default=None)
    return parser


# -- rendering -------------------------------------------------------------------


def _split(value: complex | float) -> tuple[float, float | None]:
    if isinstance(value, complex):
        return value.real, (value.imag if value.imag != 0.0 else None)
    return float(value), None


def render_rows(command: str, params: dict[str, Any], rows: Sequence[ResultRow], fmt: str) -> str:
    if fmt == "json":
        results = []
        for row in rows:
            real, imag = _split(row.value)
            item: dict[str, Any] = {"name": row.name, "value": real, "abs_error_bound": row.abs_error_bound}
            if imag is not None:
                item["imag"] = imag
            results.append(item)
        return json.dumps({"command": command, "params": params, "results": results}, indent=2) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "value", "imag", "abs_error_bound"])
        for row in rows:
            real, imag = _split(row.value)
            bound = "" if row.abs_error_bound is None else repr(row.abs_error_bound)
            writer.writerow([row.name, repr(real), "" if imag is None else repr(imag), bound])
        return buffer.getvalue()
    width = max(len(row.name) for row in rows)
    lines = []
    for row in rows:
        real, imag = _split(row.value)
        shown = f"{real:.17g}" if imag is None else f"{real:.17g} {imag:+.17g}i"
        bound = "" if row.abs_error_bound is None else f"  +/- {row.abs_error_bound:.1e}"
        lines.append(f"{row.name.ljust(width)}  {shown}{bound}")
    return "\n".join(lines) + "\n"


def _cell(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.17f}"


def render_cusp_table(
    f: CuspForm, orders: Sequence[float], oracle: dict[int, float], terms: int
) -> str:
    """n | printed derivative column | printed C(n,12) | derivative oracle | computed C(n,k)."""
    is_delta = f.supplied is None
    header = ["n"]
    if is_delta:
        header += ["published L^(n)(0)/n!", "published C(n,12)"]
    header += ["oracle L^(n)(0)/n!", f"computed C(n,{f.weight})"]
    rows = [header]
    for n, value in enumerate(orders, start=1):
        row = [str(n)]
        if is_delta:
            printed = PAPER_TABLE.get(n)
            row += [_cell(printed[0] if printed else None), _cell(printed[1] if printed else None)]
        row += [_cell(oracle.get(n)), _cell(value)]
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = [f"# L({f.label}, s) at s = 0, weight {f.weight}, {terms} Fourier terms"]
    lines += ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


# -- commands --------------------------------------------------------------------


def _character(args: argparse.Namespace) -> DirichletCharacter:
    if args.char_file is not None:
        return load_character_file(args.char_file)
    return kronecker_character(args.kronecker, args.q)


def _cusp_form(args: argparse.Namespace) -> CuspForm:
    if args.delta:
        return delta_form()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        form = load_coefficient_file(args.coeff_file)
    for warning in caught:
        print(f"[WARN] {warning.message}", file=sys.stderr)
    return form


def run_cuspform(args: argparse.Namespace, config: LaurentConfig) -> str:
    f = _cusp_form(args)
    orders = args.orders if args.orders is not None else config.orders
    terms = args.terms if args.terms is not None else config.terms
    workers = args.workers if args.workers is not None else config.workers
    expansion = laurent_cuspform(f, orders, terms, spec=config.spec, workers=workers)

    oracle: dict[int, float] = {}
    for n in range(1, min(orders, 2) + 1):
        derivative = richardson_derivative(lambda s: l_f_direct(s, f, spec=config.spec), 0.0, n)
        oracle[n] = derivative / math.factorial(n)

    if args.format == "text":
        return render_cusp_table(f, expansion.orders, oracle, terms)
    rows = [
        ResultRow(f"C({n},{f.weight})", value, expansion.term_tail_bound)
        for n, value in enumerate(expansion.orders, start=1)
    ]
    rows += [ResultRow(f"oracle C({n},{f.weight})", value, None) for n, value in oracle.items()]
    params = {
        "form": f.label,
        "weight": f.weight,
        "orders": orders,
        "terms": terms,
        "canonical": expansion.canonical,
    }
    return render_rows("cuspform", params, rows, args.format)


def run_verify(args: argparse.Namespace, config: LaurentConfig) -> str:
    workers = args.workers if args.workers is not None else config.workers
    report = run_suite(
        args.suite,
        suites_path=args.suites_file,
        ctx=SuiteContext(ctl=config.ctl, spec=config.spec, workers=workers),
    )
    for path in write_report(report, args.json_out, args.md_out):
        print(f"[OK] Wrote report: {path}", file=sys.stderr)
    print(f"[SUMMARY] suite={report.suite} passed={report.passed}/{len(report.entries)}", file=sys.stderr)
    if args.format == "json":
        output = report.to_json(include_runtime=False) + "\n"
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        columns = ["name", "computed", "reference", "abs_err", "tolerance", "pass", "provenance"]
        writer.writerow(columns)
        for entry in report.to_dict(include_runtime=False)["entries"]:
            writer.writerow([entry[key] for key in columns])
        output = buffer.getvalue()
    else:
        output = report.to_text()
    if report.failed:
        sys.stdout.write(output)
        raise VerificationFailure(report.suite, report.failed, len(report.entries))
    return output


def run_command(args: argparse.Namespace, config: LaurentConfig) -> str:
    ctl = config.ctl if args.tol is None else config.ctl.with_tolerance(args.tol)
    config = replace(config, ctl=ctl)
    if args.command == "cuspform":
        return run_cuspform(args, config)
    if args.command == "verify":
        return run_verify(args, config)

    params: dict[str, Any] = {"k": args.k, "tol": ctl.target_abs_tol}
    rows: list[ResultRow] = []
    if args.command == "stieltjes":
        for k in args.k:
            estimate = estimate_stieltjes_constant(k, ctl)
            rows.append(ResultRow(f"gamma_{k}", estimate.value, estimate.abs_error_bound))
    elif args.command == "hurwitz":
        params["a"] = args.a
        for k in args.k:
            estimate = estimate_hurwitz_euler_constant(k, args.a, ctl)
            rows.append(ResultRow(f"gamma_{k}({args.a!r})", estimate.value, estimate.abs_error_bound))
    elif args.command == "residue":
        if args.q < 1:
            raise DomainError(f"modulus q must be >= 1, got {args.q}")
        residues = args.a if args.a is not None else list(range(1, args.q + 1))
        params.update(q=args.q, a=residues)
        for k in args.k:
            for a in residues:
                estimate = estimate_residue_euler_constant(k, a, args.q, ctl)
                rows.append(ResultRow(f"gamma_{k}({a},{args.q})", estimate.value, estimate.abs_error_bound))
    elif args.command == "dirichlet":
        chi = _character(args)
        params.update(character=chi.label, q=chi.modulus)
        for k in args.k:
            estimate = estimate_character_constant(chi, k, ctl)
            rows.append(ResultRow(f"gamma_{k}(chi)", estimate.value, estimate.abs_error_bound))
    return render_rows(args.command, params, rows, args.format)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = load_config(args.config)
        sys.stdout.write(run_command(args, config))
    except (DomainError, ValueError, OSError) as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return 1
    except AccuracyError as exc:
        print(f"[ERROR] accuracy not met: {exc}", file=sys.stderr)
        if exc.best_estimate is not None:
            print(f"[ERROR] best estimate {exc.best_estimate!r} +/- {exc.error_estimate!r}", file=sys.stderr)
        if exc.required_terms is not None:
            print(f"[ERROR] required terms: {exc.required_terms}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

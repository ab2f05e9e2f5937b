#!/usr/bin/env python3
"""Golden verification suites for the Laurent-coefficient modules.

Each suite in benchmarks/golden_suites.yaml is a list of cases:

    - id: gamma_0
      computed: {probe: stieltjes_constant, params: {k: 0}}
      reference: {constant: euler_gamma}      # or {value: ...} or {probe: ..., params: ...}
      tolerance: 1.0e-12
      provenance: derived                      # paper | trivial | derived
      note: oeis A001620

A probe is a named computation from the PROBES registry. Reports list the
entries in suite order, whatever order they finished in.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

try:
    import yaml
except ImportError as exc:  # pragma: no cover - dependency guard
    raise SystemExit("Missing dependency: pyyaml. Install with `pip install pyyaml`.") from exc

from constants import PAPER_TABLE, TAU_HEAD, reference_constant, reference_provenance
from cuspform import (
    DEFAULT_TERMS,
    a_coefficient_quadrature,
    a_coefficients,
    c_coefficient,
    delta_coefficients,
    delta_form,
    deligne_bound,
    functional_equation_residual,
    l_f_direct,
    l_f_series,
    sparse_eta_power,
)
from dirichlet import (
    DIRECT_TOLERANCE,
    character_constant,
    kronecker_character,
    l_derivative_at_one,
    l_direct,
    laurent_dirichlet,
    periodic_sum_check,
    residue_euler_constant,
)
from errors import AccuracyError, DomainError, LaurentError
from specfun import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    log_weighted_incomplete_gamma,
    upper_incomplete_gamma,
)
from stieltjes import (
    DEFAULT_CONTROL,
    SummationControl,
    hurwitz_direct,
    hurwitz_euler_constant,
    laurent_hurwitz,
    laurent_zeta,
    raw_stieltjes_limit,
    raw_stieltjes_richardson,
    raw_trailing_bound,
    stieltjes_constant,
    zeta_direct,
)

ROOT = Path(__file__).resolve().parents[1]
DEFAULT_SUITES = ROOT / "benchmarks" / "golden_suites.yaml"
SUITE_NAMES = ("paper-table", "stieltjes", "hurwitz", "dirichlet", "cuspform-invariants")
PROVENANCE = ("paper", "trivial", "derived")
DEFAULT_STEP = 1.0e-3


def richardson_derivative(fn: Callable[[float], float], s0: float, order: int, h0: float = DEFAULT_STEP) -> float:
    """order-th derivative of fn at s0 from central differences at h0 and h0/2.

    D(h) has error c h^2 + O(h^4), so (4 D(h0/2) - D(h0)) / 3 is O(h0^4).
    """
    if order not in (1, 2):
        raise DomainError(f"order must be 1 or 2, got {order}")
    if not 1.0e-5 <= h0 <= 1.0e-2:
        raise DomainError(f"h0 must lie in [1e-5, 1e-2], got {h0}")

    def central(h: float) -> float:
        if order == 1:
            return (fn(s0 + h) - fn(s0 - h)) / (2.0 * h)
        return math.fsum([fn(s0 + h), -2.0 * fn(s0), fn(s0 - h)]) / (h * h)

    return (4.0 * central(h0 / 2.0) - central(h0)) / 3.0


@dataclass(frozen=True)
class SuiteContext:
    ctl: SummationControl = DEFAULT_CONTROL
    spec: QuadratureSpec = DEFAULT_QUADRATURE
    workers: int = 1


# -- probes ----------------------------------------------------------------------
# Every probe takes the suite context plus the case's params and returns a number.


def _probe_constant(ctx: SuiteContext, name: str) -> float:
    return reference_constant(name)


def _probe_paper_table(ctx: SuiteContext, n: int, column: str) -> float:
    derivative, formula = PAPER_TABLE[n]
    return derivative if column == "derivative" else formula


def _probe_stieltjes(ctx: SuiteContext, k: int) -> float:
    return stieltjes_constant(k, ctx.ctl)


def _probe_raw_richardson(ctx: SuiteContext, k: int, m: int) -> float:
    return raw_stieltjes_richardson(k, m)


def _probe_raw_limit(ctx: SuiteContext, k: int, m: int) -> float:
    return raw_stieltjes_limit(k, m)


def _probe_raw_bound(ctx: SuiteContext, k: int, m: int) -> float:
    return raw_trailing_bound(k, m)


def _probe_laurent_zeta(ctx: SuiteContext, s: float, k_max: int) -> float:
    return float(laurent_zeta(k_max, ctx.ctl).evaluate(s))


def _probe_zeta_direct(ctx: SuiteContext, s: float) -> float:
    return zeta_direct(s)


def _probe_hurwitz_constant(ctx: SuiteContext, k: int, a: float) -> float:
    return hurwitz_euler_constant(k, a, ctx.ctl)


def _probe_hurwitz_gamma1_difference(ctx: SuiteContext, a: float, h0: float = DEFAULT_STEP) -> float:
    # zeta(s, a) - 1/(s - 1) = gamma_0(a) - gamma_1(a) (s - 1) + ...
    def regular(s: float) -> float:
        return hurwitz_direct(s, a) - 1.0 / (s - 1.0)

    return -richardson_derivative(regular, 1.0, 1, h0)


def _probe_laurent_hurwitz(ctx: SuiteContext, s: float, a: float, k_max: int) -> float:
    return float(laurent_hurwitz(k_max, a, ctx.ctl).evaluate(s))


def _probe_hurwitz_direct(ctx: SuiteContext, s: float, a: float, n_split: int = 0) -> float:
    return hurwitz_direct(s, a, n_split)


def _probe_residue_sum(ctx: SuiteContext, k: int, q: int) -> float:
    share = ctx.ctl.with_tolerance(ctx.ctl.target_abs_tol / q)
    return math.fsum(residue_euler_constant(k, a, q, share) for a in range(1, q + 1))


def _probe_character_constant(ctx: SuiteContext, d: int, k: int) -> complex:
    return character_constant(kronecker_character(d), k, ctx.ctl)


@lru_cache(maxsize=None)
def _periodic(d: int, k: int, ctl: SummationControl):
    return periodic_sum_check(kronecker_character(d), k, ctl)


def _probe_periodic_lhs(ctx: SuiteContext, d: int, k: int) -> complex:
    return _periodic(d, k, ctx.ctl).lhs


def _probe_periodic_rhs(ctx: SuiteContext, d: int, k: int) -> complex:
    return _periodic(d, k, ctx.ctl).rhs


def _direct_control(ctx: SuiteContext) -> SummationControl:
    return ctx.ctl.with_tolerance(min(ctx.ctl.target_abs_tol, DIRECT_TOLERANCE))


def _probe_l_direct(ctx: SuiteContext, d: int, s: float) -> complex:
    return l_direct(s, kronecker_character(d), _direct_control(ctx))


def _probe_laurent_dirichlet(ctx: SuiteContext, d: int, s: float, k_max: int) -> complex:
    return complex(laurent_dirichlet(kronecker_character(d), k_max, ctx.ctl).evaluate(s))


def _probe_l_derivative(ctx: SuiteContext, d: int, k: int) -> complex:
    return l_derivative_at_one(kronecker_character(d), k, ctx.ctl)


def _probe_l_derivative_difference(ctx: SuiteContext, d: int, k: int = 1, h0: float = 1.0e-2) -> float:
    chi = kronecker_character(d)
    ctl = _direct_control(ctx)
    if k == 0:
        return l_direct(1.0, chi, ctl).real
    return richardson_derivative(lambda s: l_direct(s, chi, ctl).real, 1.0, k, h0)


def _probe_c_coefficient(ctx: SuiteContext, n: int, terms: int = DEFAULT_TERMS) -> float:
    return c_coefficient(n, delta_form(), terms, spec=ctx.spec)


def _probe_l_f_difference(ctx: SuiteContext, n: int, h0: float = DEFAULT_STEP) -> float:
    f = delta_form()
    derivative = richardson_derivative(lambda s: l_f_direct(s, f, spec=ctx.spec), 0.0, n, h0)
    return derivative / math.factorial(n)


def _probe_l_f_direct(ctx: SuiteContext, s: float) -> float:
    return l_f_direct(s, delta_form(), spec=ctx.spec)


def _probe_l_f_series(ctx: SuiteContext, s: float, terms: int) -> float:
    return float(l_f_series(s, delta_form(), terms).value)


def _probe_fe_residual(ctx: SuiteContext, y: float) -> float:
    return functional_equation_residual(y, delta_form())


def _probe_a_quadrature_gap(ctx: SuiteContext, n: int, terms: int = DEFAULT_TERMS) -> float:
    f = delta_form()
    series = a_coefficients(n, f, terms, spec=ctx.spec, workers=ctx.workers)[-1]
    return abs(series - a_coefficient_quadrature(n, f, terms, spec=ctx.spec))


def _probe_tau_mismatch(ctx: SuiteContext, count: int) -> int:
    fast = delta_coefficients(count)
    # Delta = q prod (1 - q^m)^24, so tau(n) is the (n-1)-th coefficient of the product.
    slow = sparse_eta_power(count, 24)
    mismatch = max(abs(x - y) for x, y in zip(fast, slow))
    head = max(abs(x - y) for x, y in zip(fast, TAU_HEAD))
    return max(mismatch, head)


def _probe_deligne_excess(ctx: SuiteContext, n_max: int) -> float:
    tau = delta_coefficients(n_max)
    return max(0.0, max(abs(t) / deligne_bound(n, 12) - 1.0 for n, t in enumerate(tau, start=1)))


def _probe_closed_form_gap(ctx: SuiteContext, s: int, m_max: int) -> float:
    gaps = []
    for m in range(1, m_max + 1):
        a = 2.0 * math.pi * m
        closed = upper_incomplete_gamma(s, a, ctx.spec).value
        quadrature = log_weighted_incomplete_gamma(0, float(s), a, ctx.spec).value
        gaps.append(abs(closed - quadrature) / abs(closed))
    return max(gaps)


def _probe_log_gamma_difference_gap(ctx: SuiteContext, s: float, a: float, h0: float = 1.0e-5) -> float:
    quadrature = log_weighted_incomplete_gamma(1, s, a, ctx.spec).value
    difference = richardson_derivative(lambda x: upper_incomplete_gamma(x, a, ctx.spec).value, s, 1, h0)
    return abs(quadrature / difference - 1.0)


def _probe_asymptotic_ratio(ctx: SuiteContext, ell: int, s: float, a: float) -> float:
    value = log_weighted_incomplete_gamma(ell, s, a, ctx.spec).value
    return value / (a ** (s - 1.0) * math.log(a) ** ell * math.exp(-a))


PROBES: dict[str, Callable[..., complex | float | int]] = {
    "constant": _probe_constant,
    "paper_table": _probe_paper_table,
    "stieltjes_constant": _probe_stieltjes,
    "raw_stieltjes_richardson": _probe_raw_richardson,
    "raw_stieltjes_limit": _probe_raw_limit,
    "raw_trailing_bound": _probe_raw_bound,
    "laurent_zeta_at": _probe_laurent_zeta,
    "zeta_direct": _probe_zeta_direct,
    "hurwitz_euler_constant": _probe_hurwitz_constant,
    "hurwitz_gamma1_by_difference": _probe_hurwitz_gamma1_difference,
    "laurent_hurwitz_at": _probe_laurent_hurwitz,
    "hurwitz_direct": _probe_hurwitz_direct,
    "residue_sum": _probe_residue_sum,
    "character_constant": _probe_character_constant,
    "periodic_lhs": _probe_periodic_lhs,
    "periodic_rhs": _probe_periodic_rhs,
    "l_direct": _probe_l_direct,
    "laurent_dirichlet_at": _probe_laurent_dirichlet,
    "l_derivative_at_one": _probe_l_derivative,
    "l_derivative_by_difference": _probe_l_derivative_difference,
    "c_coefficient": _probe_c_coefficient,
    "l_f_coefficient_by_difference": _probe_l_f_difference,
    "l_f_direct": _probe_l_f_direct,
    "l_f_series": _probe_l_f_series,
    "fe_residual": _probe_fe_residual,
    "a_quadrature_gap": _probe_a_quadrature_gap,
    "tau_oracle_mismatch": _probe_tau_mismatch,
    "deligne_excess": _probe_deligne_excess,
    "closed_form_quadrature_gap": _probe_closed_form_gap,
    "log_gamma_difference_gap": _probe_log_gamma_difference_gap,
    "asymptotic_ratio": _probe_asymptotic_ratio,
}


# -- reports ---------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationEntry:
    name: str
    computed: complex | float | None
    reference: complex | float | None
    abs_err: float
    tolerance: float
    provenance: str
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.abs_err <= self.tolerance


def _number(value: complex | float | None) -> Any:
    if value is None:
        return None
    if isinstance(value, complex):
        if value.imag == 0.0:
            return value.real
        return {"re": value.real, "im": value.imag}
    return float(value)


def _show(value: complex | float | None) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, complex) and value.imag != 0.0:
        return f"{value.real:.17g}{value.imag:+.17g}i"
    return f"{_number(value):.17g}"


@dataclass
class VerificationReport:
    suite: str
    entries: list[VerificationEntry] = field(default_factory=list)
    runtime_ms: int = 0

    @property
    def passed(self) -> int:
        return sum(1 for entry in self.entries if entry.passed)

    @property
    def failed(self) -> int:
        return len(self.entries) - self.passed

    def to_dict(self, *, include_runtime: bool = True) -> dict[str, Any]:
        report: dict[str, Any] = {
            "suite": self.suite,
            "entries": [
                {
                    "name": entry.name,
                    "computed": _number(entry.computed),
                    "reference": _number(entry.reference),
                    "abs_err": entry.abs_err,
                    "tolerance": entry.tolerance,
                    "pass": entry.passed,
                    "provenance": entry.provenance,
                    "note": entry.note,
                }
                for entry in self.entries
            ],
        }
        if include_runtime:
            report["runtime_ms"] = self.runtime_ms
        return report

    def to_json(self, *, include_runtime: bool = True) -> str:
        return json.dumps(self.to_dict(include_runtime=include_runtime), indent=2)

    def to_text(self) -> str:
        rows = [("name", "computed", "reference", "abs_err", "tolerance", "pass", "provenance")]
        for entry in self.entries:
            rows.append(
                (
                    entry.name,
                    _show(entry.computed),
                    _show(entry.reference),
                    f"{entry.abs_err:.3e}",
                    f"{entry.tolerance:.1e}",
                    "yes" if entry.passed else "NO",
                    entry.provenance,
                )
            )
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
        lines.append(f"suite={self.suite} passed={self.passed}/{len(self.entries)}")
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        lines = [
            f"# Verification Report: {self.suite}",
            "",
            f"- Total entries: {len(self.entries)}",
            f"- Passed: {self.passed}",
            f"- Failed: {self.failed}",
            f"- Runtime: {self.runtime_ms} ms",
            "",
            "| Entry | Computed | Reference | Abs err | Tolerance | Pass | Provenance | Note |",
            "|---|---|---|---|---|---|---|---|",
        ]
        for entry in self.entries:
            lines.append(
                f"| `{entry.name}` | {_show(entry.computed)} | {_show(entry.reference)} | "
                f"{entry.abs_err:.3e} | {entry.tolerance:.1e} | {'yes' if entry.passed else 'no'} | "
                f"{entry.provenance} | {entry.note} |"
            )
        return "\n".join(lines) + "\n"


def write_report(report: VerificationReport, json_out: Path | None, md_out: Path | None) -> list[Path]:
    written = []
    if json_out is not None:
        json_out.parent.mkdir(parents=True, exist_ok=True)
        json_out.write_text(report.to_json() + "\n", encoding="utf-8")
        written.append(json_out)
    if md_out is not None:
        md_out.parent.mkdir(parents=True, exist_ok=True)
        md_out.write_text(report.to_markdown(), encoding="utf-8")
        written.append(md_out)
    return written


# -- suites ----------------------------------------------------------------------


def load_suites(path: Path = DEFAULT_SUITES) -> dict[str, list[dict[str, Any]]]:
    data = yaml.safe_load(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict) or not isinstance(data.get("suites"), dict):
        raise ValueError("Invalid golden suite format")
    suites = data["suites"]
    for name, cases in suites.items():
        if not isinstance(cases, list):
            raise ValueError(f"Invalid golden suite format: {name} must be a list")
        for case in cases:
            if not isinstance(case, dict) or not {"id", "computed", "reference", "tolerance"} <= case.keys():
                raise ValueError(f"Invalid golden case in {name}: {case!r}")
            if not isinstance(case["id"], str) or not case["id"]:
                raise ValueError(f"Invalid golden case id in {name}: {case['id']!r} must be a non-empty string")
            if case.get("provenance", "derived") not in PROVENANCE:
                raise ValueError(f"Invalid provenance in {name}/{case['id']}: {case['provenance']!r}")
    return suites


def _call_probe(spec: dict[str, Any], ctx: SuiteContext) -> complex | float:
    if "value" in spec:
        return float(spec["value"])
    if "constant" in spec:
        return reference_constant(spec["constant"])
    probe = PROBES.get(spec.get("probe", ""))
    if probe is None:
        raise ValueError(f"unknown probe: {spec.get('probe')!r}")
    return probe(ctx, **(spec.get("params") or {}))


def evaluate_case(case: dict[str, Any], ctx: SuiteContext) -> VerificationEntry:
    tolerance = float(case["tolerance"])
    provenance = case.get("provenance", "derived")
    note = str(case.get("note", ""))
    if not note and "constant" in case["reference"]:
        note = reference_provenance(case["reference"]["constant"])
    try:
        computed = _call_probe(case["computed"], ctx)
        reference = _call_probe(case["reference"], ctx)
    except LaurentError as exc:
        kind = "accuracy failure" if isinstance(exc, AccuracyError) else "domain error"
        return VerificationEntry(
            name=case["id"],
            computed=getattr(exc, "best_estimate", None),
            reference=None,
            abs_err=math.inf,
            tolerance=tolerance,
            provenance=provenance,
            note=f"{kind}: {exc}",
        )
    abs_err = abs(computed - reference)
    if math.isnan(abs_err):
        abs_err = math.inf
    return VerificationEntry(
        name=case["id"],
        computed=computed,
        reference=reference,
        abs_err=abs_err,
        tolerance=tolerance,
        provenance=provenance,
        note=note,
    )


def suite_cases(name: str, suites: dict[str, list[dict[str, Any]]]) -> list[dict[str, Any]]:
    if name == "all":
        seen: set[str] = set()
        cases = []
        for suite_name in suites:
            for case in suites[suite_name]:
                if case["id"] not in seen:
                    seen.add(case["id"])
                    cases.append(case)
        return cases
    if name not in suites:
        known = ", ".join([*suites, "all"])
        raise DomainError(f"unknown suite {name!r}; expected one of: {known}")
    return list(suites[name])


def run_suite(
    name: str,
    *,
    suites_path: Path = DEFAULT_SUITES,
    ctx: SuiteContext | None = None,
) -> VerificationReport:
    ctx = ctx or SuiteContext()
    cases = suite_cases(name, load_suites(suites_path))
    started = time.perf_counter()
    if ctx.workers > 1:
        with ThreadPoolExecutor(max_workers=ctx.workers) as pool:
            entries = list(pool.map(lambda case: evaluate_case(case, ctx), cases))
    else:
        entries = [evaluate_case(case, ctx) for case in cases]
    runtime_ms = int(round((time.perf_counter() - started) * 1000))
    return VerificationReport(suite=name, entries=entries, runtime_ms=runtime_ms)


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Run the golden verification suites")
    parser.add_argument("--suite", default="all")
    parser.add_argument("--suites-file", default=str(DEFAULT_SUITES))
    parser.add_argument("--json-out", default="docs/verification/golden_report.json")
    parser.add_argument("--md-out", default="docs/verification/golden_report.md")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--strict", action="store_true", help="Exit non-zero when any entry fails")
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    try:
        report = run_suite(args.suite, suites_path=Path(args.suites_file), ctx=SuiteContext(workers=args.workers))
    except DomainError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return 1
    for path in write_report(report, Path(args.json_out), Path(args.md_out)):
        print(f"[OK] Wrote report: {path}")
    print(f"[SUMMARY] suite={report.suite} passed={report.passed}/{len(report.entries)}")
    if args.strict and report.failed:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

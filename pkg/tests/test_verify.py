from __future__ import annotations

import json
import math

import pytest

from cuspform import c_coefficient, delta_form, l_f_direct
from errors import DomainError
from verify import (
    DEFAULT_SUITES,
    SUITE_NAMES,
    SuiteContext,
    VerificationEntry,
    VerificationReport,
    evaluate_case,
    load_suites,
    richardson_derivative,
    run_suite,
    suite_cases,
    write_report,
)

SUITES_YAML = """
version: 1
name: tiny
suites:
  first:
    - id: log_two
      computed: {probe: constant, params: {name: log_2}}
      reference: {value: 0.6931471805599453}
      tolerance: 1.0e-15
      provenance: trivial
    - id: zeta_two
      computed: {probe: zeta_direct, params: {s: 2.0}}
      reference: {constant: zeta_2}
      tolerance: 1.0e-11
      provenance: derived
  second:
    - id: log_two
      computed: {probe: constant, params: {name: log_2}}
      reference: {value: 0.6931471805599453}
      tolerance: 1.0e-15
      provenance: trivial
    - id: wrong_on_purpose
      computed: {probe: constant, params: {name: log_2}}
      reference: {value: 0.7}
      tolerance: 1.0e-6
      provenance: trivial
"""


@pytest.fixture
def tiny_suites(tmp_path):
    path = tmp_path / "suites.yaml"
    path.write_text(SUITES_YAML, encoding="utf-8")
    return path


def test_richardson_first_derivative_of_square():
    assert richardson_derivative(lambda s: s * s, 3.0, 1) == pytest.approx(6.0, abs=1e-10)


def test_richardson_second_derivative_of_exp():
    assert richardson_derivative(math.exp, 0.0, 2, 1e-2) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize(("order", "h0"), [(3, 1e-3), (0, 1e-3), (1, 1e-1), (2, 1e-6)])
def test_richardson_domain(order, h0):
    with pytest.raises(DomainError):
        richardson_derivative(math.exp, 0.0, order, h0)


def test_richardson_propagates_evaluation_failure():
    def broken(s: float) -> float:
        raise ZeroDivisionError("boom")

    with pytest.raises(ZeroDivisionError):
        richardson_derivative(broken, 0.0, 1)


def test_richardson_oracle_for_first_cusp_coefficient():
    f = delta_form()
    oracle = richardson_derivative(lambda s: l_f_direct(s, f), 0.0, 1)
    assert oracle == pytest.approx(c_coefficient(1, f), abs=1e-9)


def test_default_suites_cover_every_name():
    suites = load_suites(DEFAULT_SUITES)
    assert set(SUITE_NAMES) <= set(suites)
    assert len(suites["paper-table"]) == 2
    ids = [case["id"] for cases in suites.values() for case in cases]
    assert len(ids) == len(set(ids))
    assert {"chi3_laurent_at_1_3", "chi4_value_at_one_direct", "chi4_second_derivative_difference"} <= set(ids)


def test_all_is_deduplicated_union(tiny_suites):
    suites = load_suites(tiny_suites)
    cases = suite_cases("all", suites)
    assert [case["id"] for case in cases] == ["log_two", "zeta_two", "wrong_on_purpose"]


def test_unknown_suite_is_domain_error(tiny_suites):
    with pytest.raises(DomainError):
        run_suite("unknown", suites_path=tiny_suites)


def test_run_suite_reports_in_definition_order(tiny_suites):
    report = run_suite("second", suites_path=tiny_suites, ctx=SuiteContext(workers=2))
    assert [entry.name for entry in report.entries] == ["log_two", "wrong_on_purpose"]
    assert report.passed == 1
    assert report.failed == 1
    assert report.entries[1].abs_err == pytest.approx(0.7 - math.log(2))


@pytest.mark.parametrize(
    "text",
    [
        "- just a list\n",
        "suites: []\n",
        "suites:\n  first: {id: x}\n",
        "suites:\n  first:\n    - {id: x, computed: {value: 1}, reference: {value: 1}}\n",
        "suites:\n  first:\n    - {id: x, computed: {value: 1}, reference: {value: 1}, tolerance: 0, provenance: folklore}\n",
        "suites:\n  first:\n    - {id: off, computed: {value: 1}, reference: {value: 1}, tolerance: 1}\n",
        "suites:\n  first:\n    - {id: 12, computed: {value: 1}, reference: {value: 1}, tolerance: 1}\n",
    ],
)
def test_malformed_suites(tmp_path, text):
    path = tmp_path / "bad.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ValueError):
        load_suites(path)


def test_unknown_probe_is_rejected():
    case = {"id": "x", "computed": {"probe": "nope"}, "reference": {"value": 0}, "tolerance": 1}
    with pytest.raises(ValueError):
        evaluate_case(case, SuiteContext())


def test_accuracy_failure_becomes_failed_entry():
    case = {
        "id": "capped",
        "computed": {"probe": "stieltjes_constant", "params": {"k": 0}},
        "reference": {"constant": "euler_gamma"},
        "tolerance": 1.0,
    }
    from stieltjes import SummationControl

    entry = evaluate_case(case, SuiteContext(ctl=SummationControl(max_terms=10, em_order=0)))
    assert not entry.passed
    assert entry.abs_err == math.inf
    assert entry.note.startswith("accuracy failure")


def test_domain_error_becomes_failed_entry():
    case = {
        "id": "order_too_high",
        "computed": {"probe": "stieltjes_constant", "params": {"k": 21}},
        "reference": {"value": 0.0},
        "tolerance": 1.0,
    }
    entry = evaluate_case(case, SuiteContext())
    assert not entry.passed
    assert entry.abs_err == math.inf
    assert entry.computed is None
    assert entry.note.startswith("domain error")


def test_failing_case_does_not_abort_the_suite(tmp_path):
    path = tmp_path / "suites.yaml"
    path.write_text(
        "suites:\n  mixed:\n"
        "    - {id: too_high, computed: {probe: stieltjes_constant, params: {k: 21}},"
        " reference: {value: 0.0}, tolerance: 1.0}\n"
        "    - {id: log_two, computed: {probe: constant, params: {name: log_2}},"
        " reference: {value: 0.6931471805599453}, tolerance: 1.0e-15}\n",
        encoding="utf-8",
    )
    report = run_suite("mixed", suites_path=path)
    assert [entry.passed for entry in report.entries] == [False, True]


def _report() -> VerificationReport:
    return VerificationReport(
        suite="demo",
        entries=[
            VerificationEntry("real", 1.0, 1.0 + 1e-13, 1e-13, 1e-12, "trivial"),
            VerificationEntry("complex", 1 + 2j, 1 + 2j, 0.0, 1e-12, "derived", "note"),
        ],
        runtime_ms=12,
    )


def test_report_json_shape():
    payload = json.loads(_report().to_json())
    assert list(payload) == ["suite", "entries", "runtime_ms"]
    assert list(payload["entries"][0]) == [
        "name",
        "computed",
        "reference",
        "abs_err",
        "tolerance",
        "pass",
        "provenance",
        "note",
    ]
    assert payload["entries"][1]["computed"] == {"re": 1.0, "im": 2.0}
    assert all(entry["pass"] for entry in payload["entries"])


def test_report_json_without_runtime_is_deterministic():
    first = _report().to_json(include_runtime=False)
    assert "runtime_ms" not in json.loads(first)
    assert first == _report().to_json(include_runtime=False)


def test_report_text_and_markdown():
    text = _report().to_text()
    assert text.splitlines()[0].split()[:3] == ["name", "computed", "reference"]
    assert text.rstrip().endswith("passed=2/2")
    markdown = _report().to_markdown()
    assert markdown.startswith("# Verification Report: demo")
    assert "| `complex` |" in markdown


def test_write_report(tmp_path):
    json_out = tmp_path / "out" / "report.json"
    md_out = tmp_path / "out" / "report.md"
    written = write_report(_report(), json_out, md_out)
    assert written == [json_out, md_out]
    assert json.loads(json_out.read_text(encoding="utf-8"))["suite"] == "demo"
    assert md_out.read_text(encoding="utf-8").startswith("# Verification Report")
    assert write_report(_report(), None, None) == []


def test_paper_table_suite_passes():
    report = run_suite("paper-table")
    assert len(report.entries) == 2
    assert report.failed == 0
    assert [entry.provenance for entry in report.entries] == ["paper", "derived"]
    assert "0.01894525791618929" in report.entries[1].note


@pytest.mark.parametrize(
    "case_id", ["chi3_laurent_at_1_3", "chi4_value_at_one_direct", "chi4_second_derivative_difference"]
)
def test_dirichlet_coefficient_checks_pass(case_id):
    cases = {case["id"]: case for case in load_suites()["dirichlet"]}
    entry = evaluate_case(cases[case_id], SuiteContext())
    assert entry.passed, (entry.abs_err, entry.note)


@pytest.mark.slow
@pytest.mark.parametrize("name", SUITE_NAMES)
def test_golden_suites_pass(name):
    report = run_suite(name)
    failures = [(entry.name, entry.abs_err, entry.note) for entry in report.entries if not entry.passed]
    assert failures == []


@pytest.mark.slow
def test_all_suite_has_no_duplicates():
    report = run_suite("all", ctx=SuiteContext(workers=4))
    names = [entry.name for entry in report.entries]
    assert len(names) == len(set(names))
    assert len(names) == sum(len(cases) for cases in load_suites().values())


def test_constant_reference_notes_its_provenance(tiny_suites):
    report = run_suite("first", suites_path=tiny_suites)
    assert report.failed == 0
    assert report.entries[1].note == "oeis A013661"

from __future__ import annotations

import math

import pytest

from constants import EULER_GAMMA, reference_constant
from errors import AccuracyError, DomainError
from stieltjes import (
    LaurentExpansion,
    SummationControl,
    estimate_stieltjes_constant,
    euler_maclaurin_weights,
    hurwitz_direct,
    hurwitz_euler_constant,
    laurent_hurwitz,
    laurent_zeta,
    log_power_derivative,
    log_power_derivative_poly,
    raw_stieltjes_limit,
    raw_stieltjes_richardson,
    raw_trailing_bound,
    stieltjes_constant,
    zeta_direct,
)

mpmath = pytest.importorskip("mpmath")
mpmath.mp.dps = 30


def test_gamma_zero_and_one():
    assert stieltjes_constant(0) == pytest.approx(0.577215664901532861, abs=1e-12)
    assert stieltjes_constant(1) == pytest.approx(-0.072815845483676725, abs=1e-10)


@pytest.mark.parametrize("k", range(6))
def test_stieltjes_matches_mpmath(k):
    assert stieltjes_constant(k) == pytest.approx(float(mpmath.stieltjes(k)), abs=1e-11)


def test_estimate_reports_bound_within_tolerance():
    estimate = estimate_stieltjes_constant(2, SummationControl(target_abs_tol=1e-10))
    assert 0 < estimate.abs_error_bound <= 1e-10
    assert estimate.terms_used >= 4
    assert estimate.value == pytest.approx(reference_constant("stieltjes_gamma_2"), abs=1e-10)


def test_accuracy_error_when_cutoff_is_capped():
    ctl = SummationControl(max_terms=10, em_order=0)
    with pytest.raises(AccuracyError) as caught:
        stieltjes_constant(0, ctl)
    assert caught.value.required_terms == 10
    assert caught.value.best_estimate == pytest.approx(EULER_GAMMA, abs=1e-2)


@pytest.mark.parametrize("kwargs", [{"max_terms": 5}, {"em_order": 11}, {"target_abs_tol": 0.0}])
def test_summation_control_validation(kwargs):
    with pytest.raises(DomainError):
        SummationControl(**kwargs)


@pytest.mark.parametrize("k", [-1, 21, 1.5])
def test_order_domain(k):
    with pytest.raises(DomainError):
        stieltjes_constant(k)


@pytest.mark.parametrize("a", [0.25, 0.5, 0.75, 1.0])
@pytest.mark.parametrize("k", range(4))
def test_hurwitz_constants_match_mpmath(k, a):
    assert hurwitz_euler_constant(k, a) == pytest.approx(float(mpmath.stieltjes(k, a)), abs=1e-11)


@pytest.mark.parametrize("k", range(6))
def test_hurwitz_at_one_is_stieltjes(k):
    assert hurwitz_euler_constant(k, 1.0) == pytest.approx(stieltjes_constant(k), abs=1e-13)


def test_hurwitz_half_closed_form():
    assert hurwitz_euler_constant(0, 0.5) == pytest.approx(EULER_GAMMA + 2 * math.log(2), abs=1e-10)


@pytest.mark.parametrize("a", [0.0, -0.5, 1.5])
def test_hurwitz_shift_domain(a):
    with pytest.raises(DomainError):
        hurwitz_euler_constant(0, a)


def test_zeta_laurent_reconstruction():
    expansion = laurent_zeta(10)
    assert expansion.pole_order == 1
    assert expansion.principal_coefficient == 1.0
    assert len(expansion.coefficients) == 11
    assert expansion.evaluate(1.5) == pytest.approx(zeta_direct(1.5), abs=1e-10)
    assert expansion.evaluate(1.5) == pytest.approx(float(mpmath.zeta(1.5)), abs=1e-10)


def test_zeta_laurent_coefficient_signs():
    expansion = laurent_zeta(3)
    gammas = [stieltjes_constant(k) for k in range(4)]
    expected = [(-1) ** k * g / math.factorial(k) for k, g in enumerate(gammas)]
    assert list(expansion.coefficients) == pytest.approx(expected, abs=2e-12)


def test_laurent_evaluate_rejects_pole():
    with pytest.raises(DomainError):
        laurent_zeta(2).evaluate(1.0)


def test_laurent_expansion_pole_order_validation():
    with pytest.raises(DomainError):
        LaurentExpansion(center=1.0, pole_order=2, principal_coefficient=1.0, coefficients=(1.0,), meta="")


def test_laurent_error_bound_grows_with_distance():
    expansion = laurent_zeta(10)
    assert len(expansion.error_bounds) == 11
    assert expansion.error_bound(1.0) == expansion.error_bounds[0]
    assert 0 < expansion.error_bound(1.5) < expansion.error_bound(2.0)
    assert expansion.error_bound(1.5) <= 1e-11


def test_laurent_error_bound_unknown_without_coefficient_bounds():
    bare = LaurentExpansion(center=1.0, pole_order=0, principal_coefficient=0.0, coefficients=(1.0,), meta="")
    assert bare.error_bound(1.5) == math.inf


def test_hurwitz_laurent_reconstruction():
    expansion = laurent_hurwitz(10, 0.5)
    assert expansion.evaluate(1.25) == pytest.approx(hurwitz_direct(1.25, 0.5), abs=1e-9)
    assert expansion.evaluate(1.25) == pytest.approx(float(mpmath.zeta(1.25, 0.5)), abs=1e-9)


@pytest.mark.parametrize("s", [0.5, 1.5, 2.0, 3.7, 12.0])
def test_zeta_direct_matches_mpmath(s):
    assert zeta_direct(s) == pytest.approx(float(mpmath.zeta(s)), abs=1e-11)


def test_zeta_direct_references():
    assert zeta_direct(2.0) == pytest.approx(reference_constant("zeta_2"), abs=1e-11)
    assert zeta_direct(0.5) == pytest.approx(reference_constant("zeta_half"), abs=1e-11)


@pytest.mark.parametrize("s", [1.0, 0.0, -1.0])
def test_zeta_direct_domain(s):
    with pytest.raises(DomainError):
        zeta_direct(s)


@pytest.mark.parametrize(("s", "a"), [(0.5, 0.3), (1.5, 0.5), (2.0, 0.5), (4.0, 0.9)])
def test_hurwitz_direct_matches_mpmath(s, a):
    assert hurwitz_direct(s, a) == pytest.approx(float(mpmath.zeta(s, a)), abs=1e-11)


def test_hurwitz_direct_split_invariance():
    assert hurwitz_direct(1.5, 0.5, 0) == pytest.approx(hurwitz_direct(1.5, 0.5, 50), abs=1e-11)


def test_hurwitz_direct_half_at_two():
    assert hurwitz_direct(2.0, 0.5) == pytest.approx(math.pi**2 / 2, abs=1e-11)


def test_euler_maclaurin_weights():
    assert euler_maclaurin_weights(2) == pytest.approx([1 / 12, -1 / 720], rel=1e-15)


def test_log_power_derivative_polynomial():
    # d/dy log^2(y)/y = (2 log y - log^2 y) / y^2
    assert log_power_derivative_poly(2, 1) == (0, 2, -1)
    y = 3.7
    expected = (2 * math.log(y) - math.log(y) ** 2) / y**2
    assert log_power_derivative(2, 1, y) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(("k", "r"), [(0, 3), (1, 2), (3, 5)])
def test_log_power_derivative_matches_mpmath(k, r):
    y = 2.5
    expected = mpmath.diff(lambda x: mpmath.log(x) ** k / x, y, r)
    assert log_power_derivative(k, r, y) == pytest.approx(float(expected), rel=1e-12)


def test_raw_richardson_confirms_gamma_zero():
    assert raw_stieltjes_richardson(0, 100_000) == pytest.approx(EULER_GAMMA, abs=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("k", range(3))
def test_raw_limit_within_trailing_bound(k):
    m = 1_000_000
    assert abs(raw_stieltjes_limit(k, m) - stieltjes_constant(k)) <= raw_trailing_bound(k, m)


def test_raw_limit_domain():
    with pytest.raises(DomainError):
        raw_stieltjes_limit(0, 1)

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from constants import EULER_GAMMA, LOG_TWO_PI, reference_constant
from errors import AccuracyError, DomainError
from specfun import (
    GammaMethod,
    QuadratureSpec,
    b_coefficients,
    bernoulli_number,
    complete_gamma,
    exp_integral_e1,
    integrate_semi_infinite,
    log_weighted_incomplete_gamma,
    reciprocal_gamma,
    reciprocal_gamma_taylor,
    upper_incomplete_gamma,
)

mpmath = pytest.importorskip("mpmath")
mpmath.mp.dps = 30

TWO_PI = 2.0 * math.pi


def test_complete_gamma_values():
    assert complete_gamma(1) == 1.0
    assert complete_gamma(12) == pytest.approx(39916800.0, rel=1e-14)
    assert complete_gamma(0.5) == pytest.approx(reference_constant("sqrt_pi"), rel=1e-14)


@pytest.mark.parametrize("s", [0.0, -1.0, -0.5, math.inf])
def test_complete_gamma_domain(s):
    with pytest.raises(DomainError):
        complete_gamma(s)


def test_gamma_one_one_is_exp_minus_one():
    result = upper_incomplete_gamma(1, 1.0)
    assert result.method is GammaMethod.CLOSED_FORM
    assert result.value == pytest.approx(math.exp(-1.0), rel=1e-15)


@pytest.mark.parametrize("m", [1, 2, 7, 30])
def test_integer_gamma_matches_mpmath(m):
    a = TWO_PI * m
    result = upper_incomplete_gamma(12, a)
    assert result.method is GammaMethod.CLOSED_FORM
    assert result.value == pytest.approx(float(mpmath.gammainc(12, a)), rel=1e-13)


@pytest.mark.parametrize(
    ("s", "a", "method"),
    [
        (2.5, 10.0, GammaMethod.CONTINUED_FRACTION),
        (0.5, 1.0, GammaMethod.QUADRATURE),
        (11.5, 2.0, GammaMethod.QUADRATURE),
        (-1.5, 3.0, GammaMethod.CONTINUED_FRACTION),
    ],
)
def test_non_integer_gamma_matches_mpmath(s, a, method):
    result = upper_incomplete_gamma(s, a)
    assert result.method is method
    assert result.value == pytest.approx(float(mpmath.gammainc(s, a)), rel=1e-13)
    assert result.abs_error_estimate >= 0


def test_gamma_zero_delegates_to_e1():
    assert upper_incomplete_gamma(0, 2.0) == exp_integral_e1(2.0)


@pytest.mark.parametrize("s", [0.5, 1.0, 2.5, 11.0])
@pytest.mark.parametrize("a", [1.0, TWO_PI, 10.0])
def test_gamma_recurrence(s, a):
    left = upper_incomplete_gamma(s + 1, a).value
    right = s * upper_incomplete_gamma(s, a).value + a**s * math.exp(-a)
    assert left == pytest.approx(right, rel=1e-12)


@pytest.mark.parametrize("a", [0.0, -1.0])
def test_gamma_domain(a):
    with pytest.raises(DomainError):
        upper_incomplete_gamma(2, a)


def test_e1_at_one():
    result = exp_integral_e1(1.0)
    assert result.value == pytest.approx(0.21938393439552028, rel=1e-13)
    assert result.value == pytest.approx(reference_constant("e1_at_1"), rel=1e-13)


@pytest.mark.parametrize("a", [1.0e-3, 0.5, 0.999, 1.0, TWO_PI, 30.0])
def test_e1_matches_mpmath(a):
    assert exp_integral_e1(a).value == pytest.approx(float(mpmath.e1(a)), rel=1e-13)


def test_e1_crossover_methods():
    assert exp_integral_e1(0.5).method is GammaMethod.POWER_SERIES
    assert exp_integral_e1(2.0).method is GammaMethod.CONTINUED_FRACTION


def test_e1_asymptotic_band():
    ratio = exp_integral_e1(40.0).value / (math.exp(-40.0) / 40.0)
    assert 0.9 <= ratio <= 1.0


def test_log_weighted_zero_reduces_to_gamma():
    weighted = log_weighted_incomplete_gamma(0, 12.0, TWO_PI)
    assert weighted.method is GammaMethod.QUADRATURE
    assert weighted.value == pytest.approx(upper_incomplete_gamma(12, TWO_PI).value, rel=1e-13)


@pytest.mark.parametrize(("ell", "s", "a"), [(1, 12.0, TWO_PI), (2, 0.0, TWO_PI), (3, 5.5, 2.0), (1, 0.0, 40.0)])
def test_log_weighted_matches_mpmath(ell, s, a):
    expected = mpmath.quad(lambda y: mpmath.exp(-y) * mpmath.log(y) ** ell * y ** (s - 1), [a, mpmath.inf])
    assert log_weighted_incomplete_gamma(ell, s, a).value == pytest.approx(float(expected), rel=1e-12)


def test_log_weighted_domain():
    with pytest.raises(DomainError):
        log_weighted_incomplete_gamma(-1, 2.0, 1.0)
    with pytest.raises(DomainError):
        log_weighted_incomplete_gamma(1, 2.0, 0.0)


def _ratio(ell: int, s: float, a: float) -> float:
    return log_weighted_incomplete_gamma(ell, s, a).value / (a ** (s - 1) * math.log(a) ** ell * math.exp(-a))


@pytest.mark.parametrize(("ell", "s"), [(0, 0.0), (1, 0.0), (2, 0.0), (0, 5.0), (1, 5.0)])
def test_asymptotic_band_at_fifty(ell, s):
    assert 0.9 <= _ratio(ell, s, 50.0) <= 1.1


def test_upper_bands_for_s_five():
    assert 1.0 <= _ratio(0, 5.0, 50.0) <= 1.1
    assert 1.0 <= _ratio(1, 5.0, 50.0) <= 1.1


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_asymptotic_trend_for_weight_twelve(ell):
    ratios = [_ratio(ell, 12.0, a) for a in (50.0, 100.0, 400.0)]
    assert ratios[0] > ratios[1] > ratios[2]
    assert 0.9 <= ratios[2] <= 1.1


def test_reciprocal_gamma_taylor_head():
    assert reciprocal_gamma_taylor(1) == [1.0]
    coefficients = reciprocal_gamma_taylor(3)
    assert coefficients[1] == pytest.approx(0.5772156649015329, abs=1e-15)
    assert coefficients[2] == pytest.approx(EULER_GAMMA**2 / 2 - math.pi**2 / 12, abs=1e-13)
    assert coefficients[2] == pytest.approx(-0.6558780715202538, abs=1e-13)


def test_reciprocal_gamma_taylor_matches_mpmath():
    expected = mpmath.taylor(mpmath.rgamma, 0, 16)[1:]
    for ours, theirs in zip(reciprocal_gamma_taylor(16), expected):
        assert ours == pytest.approx(float(theirs), abs=1e-13)


@pytest.mark.parametrize("n_max", [0, 17, 2.5])
def test_reciprocal_gamma_taylor_domain(n_max):
    with pytest.raises(DomainError):
        reciprocal_gamma_taylor(n_max)


@pytest.mark.parametrize("s", [-2.5, -0.7, -0.1, 0.1, 0.25, 0.3, 3.7, 12.0])
def test_reciprocal_gamma_matches_mpmath(s):
    assert reciprocal_gamma(s) == pytest.approx(float(mpmath.rgamma(s)), rel=1e-13)


@pytest.mark.parametrize("s", [0.0, -1.0, -5.0])
def test_reciprocal_gamma_zeros(s):
    assert reciprocal_gamma(s) == 0.0


def test_reciprocal_gamma_overflow_is_accuracy_error():
    with pytest.raises(AccuracyError):
        reciprocal_gamma(-200.5)


def test_reciprocal_gamma_underflows_to_zero_for_large_s():
    assert reciprocal_gamma(200.5) == 0.0


def test_b_coefficients_head():
    b = b_coefficients(2)
    assert b[0] == 1.0
    assert b[1] == pytest.approx(2 * (EULER_GAMMA + LOG_TWO_PI), abs=1e-13)
    assert b[1] == pytest.approx(float(2 * (mpmath.euler + mpmath.log(2 * mpmath.pi))), abs=1e-13)


@pytest.mark.parametrize("s", [-0.25, -0.1, 0.1, 0.25])
def test_b_series_reproduces_two_pi_power_over_gamma(s):
    b = b_coefficients(8)
    series = math.fsum(b[n - 1] * s**n / math.factorial(n) for n in range(1, 9))
    expected = float(mpmath.power(2 * mpmath.pi, s) * mpmath.rgamma(s))
    assert series == pytest.approx(expected, abs=1e-8)


def test_quadrature_exponential():
    value, error = integrate_semi_infinite(lambda y: np.exp(-y), 0.0)
    assert value == pytest.approx(1.0, abs=1e-14)
    assert error >= 0


def test_quadrature_matches_closed_form():
    value, _ = integrate_semi_infinite(lambda y: np.exp(-y) * y**11, TWO_PI)
    assert value == pytest.approx(upper_incomplete_gamma(12, TWO_PI).value, rel=1e-13)


def test_quadrature_self_consistent_under_refinement():
    coarse, _ = integrate_semi_infinite(lambda y: np.exp(-y) * np.log(y), 1.0)
    fine, _ = integrate_semi_infinite(
        lambda y: np.exp(-y) * np.log(y), 1.0, QuadratureSpec(rel_tolerance=1e-16, max_refinement_levels=14)
    )
    assert coarse == pytest.approx(fine, rel=1e-14)


def test_quadrature_non_convergence_keeps_best_estimate():
    with pytest.raises(AccuracyError) as caught:
        integrate_semi_infinite(lambda y: np.exp(-y), 0.0, QuadratureSpec(max_refinement_levels=1))
    assert caught.value.best_estimate == pytest.approx(1.0, abs=1e-3)


def test_quadrature_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(rel_tolerance=0.0)
    with pytest.raises(DomainError):
        QuadratureSpec(max_refinement_levels=0)


def test_bernoulli_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(12) == Fraction(-691, 2730)
    assert all(bernoulli_number(n) == 0 for n in range(3, 40, 2))

#!/usr/bin/env python3
"""Special-function kernels: complete and incomplete gamma functions.

Gamma(s, a) picks a closed form, a continued fraction or quadrature depending on
(s, a). The log-weighted family Gamma_l(s, a) = int_a^inf e^-y log^l(y) y^(s-1) dy
always goes through the shared semi-infinite quadrature engine, which the cusp-form
module also uses for its integral oracles.
"""

from __future__ import annotations

import math
import sys
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

try:
    import numpy as np
except ImportError as exc:  # pragma: no cover - dependency guard
    raise SystemExit("Missing dependency: numpy. Install with `pip install numpy`.") from exc

from constants import EULER_GAMMA, LOG_TWO_PI, ZETA
from errors import AccuracyError, DomainError

EPS = sys.float_info.epsilon
TINY = 1.0e-300

# Exp-sinh grid: y = a + exp(t - exp(-t)). Beyond these limits the mapped
# weights are below the binary64 range for integrands decaying like e^-y.
T_MIN = -4.5
T_MAX = 6.8
BASE_STEP = 0.5

MAX_TAYLOR_ORDER = 16
TAYLOR_RADIUS = 0.25
E1_SERIES_CROSSOVER = 1.0
MAX_CF_ITERATIONS = 5000


class GammaMethod(str, Enum):
    CLOSED_FORM = "closed-form-finite-sum"
    CONTINUED_FRACTION = "continued-fraction"
    QUADRATURE = "quadrature"
    POWER_SERIES = "power-series"


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tolerance: float = 1.0e-15
    abs_tolerance: float = 1.0e-300
    max_refinement_levels: int = 12

    def __post_init__(self) -> None:
        if not self.rel_tolerance > 0:
            raise DomainError(f"rel_tolerance must be > 0, got {self.rel_tolerance}")
        if self.abs_tolerance < 0:
            raise DomainError(f"abs_tolerance must be >= 0, got {self.abs_tolerance}")
        if self.max_refinement_levels < 1:
            raise DomainError(
                f"max_refinement_levels must be >= 1, got {self.max_refinement_levels}"
            )


DEFAULT_QUADRATURE = QuadratureSpec()


@dataclass(frozen=True)
class IncompleteGammaResult:
    value: float
    abs_error_estimate: float
    method: GammaMethod


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be a finite number > 0, got {value}")
    return value


def _is_positive_integer(s: float) -> bool:
    return float(s).is_integer() and s >= 1


def complete_gamma(s: float) -> float:
    s = _require_positive("s", s)
    try:
        return math.gamma(s)
    except OverflowError as exc:
        raise DomainError(f"Gamma({s}) overflows binary64") from exc


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """Integrate f over [a, inf) with the exp-sinh substitution.

    f receives a numpy array of abscissae and must return an array of the same
    shape. The trapezoid step is halved each level and only the new odd nodes
    are evaluated. Returns (value, abs_error_estimate).
    """
    a = float(a)
    if not math.isfinite(a):
        raise DomainError(f"lower limit must be finite, got {a}")

    level_sums: list[float] = []
    level_magnitudes: list[float] = []
    previous: float | None = None
    best = 0.0
    diff = math.inf
    for level in range(spec.max_refinement_levels + 1):
        step = BASE_STEP / (1 << level)
        if level == 0:
            index = np.arange(math.ceil(T_MIN / step), math.floor(T_MAX / step) + 1)
        else:
            lo = math.ceil(T_MIN / step)
            lo += 1 - (lo % 2)
            index = np.arange(lo, math.floor(T_MAX / step) + 1, 2)
        t = index * step
        inner = np.exp(-t)
        x = np.exp(t - inner)
        weight = x * (1.0 + inner)
        values = f(a + x) * weight
        if not np.all(np.isfinite(values)):
            raise AccuracyError(
                f"integrand is not finite on [{a}, inf)",
                best_estimate=best if previous is not None else None,
            )
        level_sums.append(math.fsum(values.tolist()))
        level_magnitudes.append(math.fsum(np.abs(values).tolist()))
        current = step * math.fsum(level_sums)
        floor = 16.0 * EPS * step * math.fsum(level_magnitudes)
        if previous is not None:
            diff = abs(current - previous)
            if level >= 2 and (
                diff <= max(spec.abs_tolerance, spec.rel_tolerance * abs(current))
                or diff <= floor
            ):
                return current, max(diff, floor)
        previous = current
        best = current
    raise AccuracyError(
        f"quadrature did not converge within {spec.max_refinement_levels} levels",
        best_estimate=best,
        error_estimate=diff,
    )


def _lentz(
    a_term: Callable[[int], float],
    b_term: Callable[[int], float],
    *,
    tol: float = EPS,
    max_iterations: int = MAX_CF_ITERATIONS,
) -> tuple[float, int]:
    """Modified Lentz evaluation of b0 + a1/(b1 + a2/(b2 + ...))."""
    value = b_term(0) or TINY
    c = value
    d = 0.0
    for j in range(1, max_iterations + 1):
        a_j = a_term(j)
        b_j = b_term(j)
        d = b_j + a_j * d
        if d == 0.0:
            d = TINY
        c = b_j + a_j / c
        if c == 0.0:
            c = TINY
        d = 1.0 / d
        delta = c * d
        value *= delta
        if abs(delta - 1.0) < tol:
            return value, j
    raise AccuracyError(
        f"continued fraction did not converge in {max_iterations} iterations",
        best_estimate=value,
    )


def _gamma_continued_fraction(s: float, a: float) -> IncompleteGammaResult:
    # Gamma(s, a) = e^-a a^s / (a + 1 - s - 1(1 - s)/(a + 3 - s - 2(2 - s)/(...)))
    def a_term(j: int) -> float:
        return 1.0 if j == 1 else -(j - 1) * (j - 1 - s)

    def b_term(j: int) -> float:
        return 0.0 if j == 0 else a + 2 * j - 1 - s

    fraction, iterations = _lentz(a_term, b_term)
    value = math.exp(-a + s * math.log(a)) * fraction
    return IncompleteGammaResult(
        value=value,
        abs_error_estimate=4.0 * EPS * (iterations ** 0.5 + abs(s) + a) * abs(value),
        method=GammaMethod.CONTINUED_FRACTION,
    )


def exp_integral_e1(a: float) -> IncompleteGammaResult:
    """E1(a) = Gamma(0, a): power series below a = 1, continued fraction above."""
    a = _require_positive("a", a)
    if a >= E1_SERIES_CROSSOVER:
        return _gamma_continued_fraction(0.0, a)
    terms: list[float] = []
    term = 1.0
    n = 1
    while True:
        term *= -a / n
        contribution = -term / n
        terms.append(contribution)
        if abs(contribution) < EPS * EPS or n > 200:
            break
        n += 1
    value = math.fsum([-EULER_GAMMA, -math.log(a), *terms])
    return IncompleteGammaResult(
        value=value,
        abs_error_estimate=4.0 * EPS * (EULER_GAMMA + abs(math.log(a)) + math.fsum(abs(t) for t in terms)),
        method=GammaMethod.POWER_SERIES,
    )


def _gamma_closed_form(k: int, a: float) -> IncompleteGammaResult:
    terms = [1.0]
    term = 1.0
    for j in range(1, k):
        term *= a / j
        terms.append(term)
    value = float(math.factorial(k - 1)) * math.exp(-a) * math.fsum(terms)
    return IncompleteGammaResult(
        value=value,
        abs_error_estimate=(k + 2) * EPS * abs(value),
        method=GammaMethod.CLOSED_FORM,
    )


def _log_weighted_integrand(ell: int, s: float, a: float) -> Callable[[np.ndarray], np.ndarray]:
    # Scaled by e^a so the integrand stays representable for large a.
    def integrand(y: np.ndarray) -> np.ndarray:
        log_y = np.log(y)
        values = np.exp(-(y - a) + (s - 1.0) * log_y)
        if ell:
            values = values * log_y**ell
        return values

    return integrand


def upper_incomplete_gamma(
    s: float, a: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> IncompleteGammaResult:
    a = _require_positive("a", a)
    s = float(s)
    if not math.isfinite(s):
        raise DomainError(f"s must be finite, got {s}")
    if _is_positive_integer(s) and s <= 170:
        return _gamma_closed_form(int(s), a)
    if s == 0.0:
        return exp_integral_e1(a)
    if a > s + 1.0:
        return _gamma_continued_fraction(s, a)
    value, error = integrate_semi_infinite(_log_weighted_integrand(0, s, a), a, spec)
    scale = math.exp(-a)
    return IncompleteGammaResult(
        value=value * scale,
        abs_error_estimate=error * scale,
        method=GammaMethod.QUADRATURE,
    )


@lru_cache(maxsize=4096)
def log_weighted_incomplete_gamma(
    ell: int, s: float, a: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> IncompleteGammaResult:
    """Gamma_l(s, a) = int_a^inf e^-y log^l(y) y^(s-1) dy by quadrature."""
    if int(ell) != ell or ell < 0:
        raise DomainError(f"ell must be a non-negative integer, got {ell}")
    a = _require_positive("a", a)
    value, error = integrate_semi_infinite(_log_weighted_integrand(int(ell), float(s), a), a, spec)
    scale = math.exp(-a)
    return IncompleteGammaResult(
        value=value * scale,
        abs_error_estimate=error * scale,
        method=GammaMethod.QUADRATURE,
    )


@lru_cache(maxsize=1)
def _reciprocal_gamma_coefficients() -> tuple[float, ...]:
    # (n - 1) c_n = gamma c_{n-1} - zeta(2) c_{n-2} + zeta(3) c_{n-3} - ...
    coefficients = [1.0, EULER_GAMMA]
    for n in range(3, MAX_TAYLOR_ORDER + 1):
        terms = [EULER_GAMMA * coefficients[n - 2]]
        for j in range(2, n):
            sign = -1.0 if j % 2 == 0 else 1.0
            terms.append(sign * ZETA[j] * coefficients[n - 1 - j])
        coefficients.append(math.fsum(terms) / (n - 1))
    return tuple(coefficients)


def _check_series_order(n_max: int) -> None:
    if int(n_max) != n_max or not 1 <= n_max <= MAX_TAYLOR_ORDER:
        raise DomainError(f"n_max must be an integer in [1, {MAX_TAYLOR_ORDER}], got {n_max}")


def reciprocal_gamma_taylor(n_max: int) -> list[float]:
    """Coefficients c_1..c_n_max of 1/Gamma(s) = sum c_n s^n."""
    _check_series_order(n_max)
    return list(_reciprocal_gamma_coefficients()[: int(n_max)])


def reciprocal_gamma(s: float) -> float:
    """1/Gamma(s) for real s, exactly zero at the poles of Gamma."""
    s = float(s)
    if not math.isfinite(s):
        raise DomainError(f"s must be finite, got {s}")
    if s <= 0 and s.is_integer():
        return 0.0
    if abs(s) <= TAYLOR_RADIUS:
        acc = 0.0
        for coefficient in reversed(_reciprocal_gamma_coefficients()):
            acc = (acc + coefficient) * s
        return acc
    if s > 0:
        try:
            return 1.0 / math.gamma(s)
        except OverflowError:
            return 0.0
    try:
        return math.sin(math.pi * s) * math.gamma(1.0 - s) / math.pi
    except OverflowError:
        raise AccuracyError(f"1/Gamma({s}) exceeds the binary64 range", best_estimate=math.inf) from None


def b_coefficients(n_max: int) -> list[float]:
    """B(1)..B(n_max) with (2 pi)^s / Gamma(s) = sum B(n) s^n / n!."""
    _check_series_order(n_max)
    c = _reciprocal_gamma_coefficients()
    powers = [LOG_TWO_PI**j / math.factorial(j) for j in range(int(n_max))]
    result = []
    for n in range(1, int(n_max) + 1):
        # B(n)/n! = sum_{j=0}^{n-1} log^j(2 pi)/j! * c_{n-j}
        result.append(math.factorial(n) * math.fsum(powers[j] * c[n - j - 1] for j in range(n)))
    return result


@lru_cache(maxsize=None)
def _bernoulli_table(n_max: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = sum(math.comb(m + 1, j) * table[j] for j in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return _bernoulli_table(max(int(n), 32))[n]

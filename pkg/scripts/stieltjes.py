#!/usr/bin/env python3
"""Stieltjes and Hurwitz-Euler constants and the zeta-function Laurent series.

gamma_k and gamma_k(a) are computed from their defining limits

    gamma_k(a) = lim_m [ sum_{i=0}^{m} log^k(i + a)/(i + a) - log^(k+1)(m + a)/(k + 1) ]

with the partial sums corrected by Euler-Maclaurin terms whose derivatives are
obtained analytically. The same engine (euler_maclaurin_limit) drives the
residue-class and character sums in the dirichlet module.

zeta_direct and hurwitz_direct evaluate zeta(s, a) from its fractional-part
integral representation and serve as independent oracles for the expansions.
"""

from __future__ import annotations

import math
import sys
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from functools import lru_cache

try:
    import numpy as np
except ImportError as exc:  # pragma: no cover - dependency guard
    raise SystemExit("Missing dependency: numpy. Install with `pip install numpy`.") from exc

from errors import AccuracyError, DomainError
from specfun import bernoulli_number
from summation import exact_sum, horner, magnitude_sum

EPS = sys.float_info.epsilon
MAX_ORDER = 20
MAX_EM_ORDER = 10
MIN_CUTOFF = 4
DIRECT_TOLERANCE = 1.0e-13


@dataclass(frozen=True)
class SummationControl:
    max_terms: int = 100_000
    em_order: int = 6
    target_abs_tol: float = 1.0e-12

    def __post_init__(self) -> None:
        if int(self.max_terms) != self.max_terms or self.max_terms < 10:
            raise DomainError(f"max_terms must be an integer >= 10, got {self.max_terms}")
        if int(self.em_order) != self.em_order or not 0 <= self.em_order <= MAX_EM_ORDER:
            raise DomainError(f"em_order must be in [0, {MAX_EM_ORDER}], got {self.em_order}")
        if not self.target_abs_tol > 0:
            raise DomainError(f"target_abs_tol must be > 0, got {self.target_abs_tol}")

    def with_tolerance(self, target_abs_tol: float) -> SummationControl:
        return replace(self, target_abs_tol=target_abs_tol)


DEFAULT_CONTROL = SummationControl()


@dataclass(frozen=True)
class LimitEstimate:
    value: complex | float
    abs_error_bound: float
    terms_used: int


@dataclass(frozen=True)
class LaurentExpansion:
    """Truncated Laurent series principal/(s - center) + sum c_k (s - center)^k."""

    center: float
    pole_order: int
    principal_coefficient: float
    coefficients: tuple[complex | float, ...]
    meta: str
    error_bounds: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.pole_order not in (0, 1):
            raise DomainError(f"pole_order must be 0 or 1, got {self.pole_order}")
        if not all(math.isfinite(abs(c)) for c in self.coefficients):
            raise AccuracyError("non-finite Laurent coefficient")

    def evaluate(self, s: complex | float) -> complex | float:
        shift = s - self.center
        regular = horner(list(self.coefficients), shift)
        if self.pole_order == 1:
            if shift == 0:
                raise DomainError(f"s = {s} is the pole of this expansion")
            return self.principal_coefficient / shift + regular
        return regular

    def error_bound(self, s: complex | float) -> float:
        """Propagated coefficient error sum_k eps_k |s - center|^k; truncation not included.

        Infinite when the builder recorded no per-coefficient bounds.
        """
        if len(self.error_bounds) != len(self.coefficients):
            return math.inf
        distance = abs(s - self.center)
        return math.fsum(bound * distance**k for k, bound in enumerate(self.error_bounds))


def check_order(k: int, *, name: str = "k", upper: int = MAX_ORDER) -> int:
    if int(k) != k or not 0 <= k <= upper:
        raise DomainError(f"{name} must be an integer in [0, {upper}], got {k}")
    return int(k)


def check_shift(a: float) -> float:
    a = float(a)
    if not 0 < a <= 1:
        raise DomainError(f"a must satisfy 0 < a <= 1, got {a}")
    return a


def euler_maclaurin_weights(order: int) -> list[float]:
    """B_2j/(2j)! for j = 1..order."""
    return [float(bernoulli_number(2 * j) / math.factorial(2 * j)) for j in range(1, order + 1)]


def euler_maclaurin_limit(
    term: Callable[[int], complex | float],
    derivative: Callable[[int, float], complex | float],
    antiderivative: Callable[[float], complex | float],
    ctl: SummationControl,
    *,
    amplification: float = 1.0,
) -> LimitEstimate:
    """lim_X [ sum_{i=0}^{X} f(i) - G(X) ] for smooth f with antiderivative G.

    Uses sum_{i<N} f(i) - G(N) + f(N)/2 - sum_j B_2j/(2j)! f^(2j-1)(N). For a
    convergent series pass G(x) = -int_x^inf f. The cutoff N grows until the
    first omitted correction is below a quarter of the tolerance.
    """
    p = ctl.em_order
    weights = euler_maclaurin_weights(p + 1)

    def omitted(n: int) -> float:
        order = 2 * p + 1
        return abs(weights[p]) * max(abs(derivative(order, n)), abs(derivative(order, n + 1)))

    cutoff = MIN_CUTOFF
    while omitted(cutoff) > ctl.target_abs_tol / 4 and cutoff < ctl.max_terms:
        cutoff = min(ctl.max_terms, max(cutoff + 1, int(cutoff * 1.25)))

    head = [term(i) for i in range(cutoff)]
    corrections = [-antiderivative(cutoff), 0.5 * term(cutoff)]
    corrections.extend(-weights[j - 1] * derivative(2 * j - 1, cutoff) for j in range(1, p + 1))
    value = exact_sum(head + corrections)
    rounding = amplification * EPS * (magnitude_sum(head) + magnitude_sum(corrections))
    bound = 2.0 * omitted(cutoff) + rounding
    if not bound <= ctl.target_abs_tol:
        raise AccuracyError(
            f"accelerated limit reached error bound {bound:.3e} > {ctl.target_abs_tol:.3e} "
            f"with {cutoff} terms",
            best_estimate=value,
            error_estimate=bound,
            required_terms=cutoff,
        )
    return LimitEstimate(value=value, abs_error_bound=bound, terms_used=cutoff)


@lru_cache(maxsize=None)
def log_power_derivative_poly(k: int, r: int) -> tuple[int, ...]:
    """Coefficients of P_r with d^r/dy^r [log^k(y)/y] = y^(-r-1) P_r(log y)."""
    if r == 0:
        return tuple([0] * k + [1])
    prev = log_power_derivative_poly(k, r - 1)
    return tuple((i + 1) * prev[i + 1] - r * prev[i] if i + 1 < len(prev) else -r * prev[i] for i in range(len(prev)))


def log_power_derivative(k: int, r: int, y: float) -> float:
    return horner(list(log_power_derivative_poly(k, r)), math.log(y)) * y ** (-r - 1)


@lru_cache(maxsize=None)
def estimate_hurwitz_euler_constant(
    k: int, a: float, ctl: SummationControl = DEFAULT_CONTROL
) -> LimitEstimate:
    k = check_order(k)
    a = check_shift(a)

    def term(i: int) -> float:
        y = i + a
        return math.log(y) ** k / y

    def derivative(r: int, x: float) -> float:
        return log_power_derivative(k, r, x + a)

    def antiderivative(x: float) -> float:
        return math.log(x + a) ** (k + 1) / (k + 1)

    return euler_maclaurin_limit(term, derivative, antiderivative, ctl, amplification=k + 2)


def hurwitz_euler_constant(k: int, a: float, ctl: SummationControl = DEFAULT_CONTROL) -> float:
    return float(estimate_hurwitz_euler_constant(k, a, ctl).value)


def estimate_stieltjes_constant(k: int, ctl: SummationControl = DEFAULT_CONTROL) -> LimitEstimate:
    # sum_{i=1}^{m} log^k(i)/i is the a = 1 sum shifted by one index.
    return estimate_hurwitz_euler_constant(k, 1.0, ctl)


def stieltjes_constant(k: int, ctl: SummationControl = DEFAULT_CONTROL) -> float:
    return float(estimate_stieltjes_constant(k, ctl).value)


def _laurent_coefficients(
    k_max: int, constant: Callable[[int, SummationControl], LimitEstimate], ctl: SummationControl
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    coefficients = []
    bounds = []
    for k in range(k_max + 1):
        # c_k carries 1/k!, so gamma_k only needs k! times the tolerance.
        factorial = math.factorial(k)
        estimate = constant(k, ctl.with_tolerance(ctl.target_abs_tol * factorial))
        coefficients.append((-1) ** k * float(estimate.value) / factorial)
        bounds.append(estimate.abs_error_bound / factorial)
    return tuple(coefficients), tuple(bounds)


def laurent_zeta(k_max: int, ctl: SummationControl = DEFAULT_CONTROL) -> LaurentExpansion:
    k_max = check_order(k_max, name="k_max")
    coefficients, bounds = _laurent_coefficients(k_max, estimate_stieltjes_constant, ctl)
    return LaurentExpansion(
        center=1.0,
        pole_order=1,
        principal_coefficient=1.0,
        coefficients=coefficients,
        meta=f"zeta(s) at s=1; Stieltjes constants via Euler-Maclaurin order {ctl.em_order}",
        error_bounds=bounds,
    )


def laurent_hurwitz(k_max: int, a: float, ctl: SummationControl = DEFAULT_CONTROL) -> LaurentExpansion:
    k_max = check_order(k_max, name="k_max")
    a = check_shift(a)
    coefficients, bounds = _laurent_coefficients(
        k_max, lambda k, c: estimate_hurwitz_euler_constant(k, a, c), ctl
    )
    return LaurentExpansion(
        center=1.0,
        pole_order=1,
        principal_coefficient=1.0,
        coefficients=coefficients,
        meta=f"zeta(s, {a!r}) at s=1; Hurwitz-Euler constants via Euler-Maclaurin order {ctl.em_order}",
        error_bounds=bounds,
    )


def _expm1_ratio(z: float) -> float:
    return math.expm1(z) / z if z != 0.0 else 1.0


def _unit_interval_integral(s: float, c: float) -> float:
    """int_0^1 t (c + t)^(-s-1) dt for c > 0."""
    step = math.log1p(1.0 / c)
    return c ** (1.0 - s) * step * (_expm1_ratio((1.0 - s) * step) - _expm1_ratio(-s * step))


def hurwitz_direct(
    s: float, a: float, n_split: int = 0, *, tol: float = DIRECT_TOLERANCE, em_order: int = 6
) -> float:
    """zeta(s, a) = sum_{n<=N} (n+a)^-s + (N+a)^(1-s)/(s-1) - s int_N^inf {x}(x+a)^(-s-1) dx.

    The integral is summed interval by interval in closed form up to a cutoff M,
    and the remainder int_M^inf is expanded with Bernoulli corrections.
    """
    s = float(s)
    if not math.isfinite(s) or s <= 0 or s == 1.0:
        raise DomainError(f"s must satisfy s > 0 and s != 1, got {s}")
    a = check_shift(a)
    if int(n_split) != n_split or n_split < 0:
        raise DomainError(f"n_split must be a non-negative integer, got {n_split}")
    n_split = int(n_split)
    weights = euler_maclaurin_weights(em_order + 1)

    def kernel_derivative(r: int, x: float) -> float:
        # d^r/dx^r (x + a)^(-s-1)
        rising = math.prod(s + 1 + i for i in range(r))
        return (-1) ** r * rising * (x + a) ** (-s - 1 - r)

    def omitted(m: int) -> float:
        return s * abs(weights[em_order]) * abs(kernel_derivative(2 * em_order, m))

    cutoff = max(n_split, 8)
    while omitted(cutoff) > tol / 4:
        cutoff = max(cutoff + 1, int(cutoff * 1.25))

    head = [(n + a) ** (-s) for n in range(n_split + 1)]
    lead = (n_split + a) ** (1.0 - s) / (s - 1.0)
    pieces = [_unit_interval_integral(s, n + a) for n in range(n_split, cutoff)]
    pieces.append((cutoff + a) ** (-s) / (2.0 * s))
    pieces.extend(-weights[j - 1] * kernel_derivative(2 * j - 2, cutoff) for j in range(1, em_order + 1))
    integral = math.fsum(pieces)
    return math.fsum([*head, lead, -s * integral])


def zeta_direct(s: float) -> float:
    """zeta(s) = s/(s-1) - s int_1^inf {x} x^(-s-1) dx."""
    return hurwitz_direct(s, 1.0, 0)


def raw_stieltjes_limit(k: int, m: int) -> float:
    """Unaccelerated sum_{i<=m} log^k(i)/i - log^(k+1)(m)/(k+1)."""
    k = check_order(k)
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    n = np.arange(1, int(m) + 1, dtype=float)
    terms = np.log(n) ** k / n
    return math.fsum(terms.tolist()) - math.log(m) ** (k + 1) / (k + 1)


def raw_trailing_bound(k: int, m: int) -> float:
    """Bound on |raw_stieltjes_limit(k, m) - gamma_k| for m >= e^k."""
    return math.log(m) ** k / m


def raw_stieltjes_richardson(k: int, m: int) -> float:
    """Richardson combination 2 R(2m) - R(m) cancelling the 1/(2m) leading error."""
    return 2.0 * raw_stieltjes_limit(k, 2 * m) - raw_stieltjes_limit(k, m)

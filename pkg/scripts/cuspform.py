#!/usr/bin/env python3
"""Laurent coefficients of cusp-form L-functions at s = 0.

For a normalized eigenform f of weight k on SL2(Z) with Fourier coefficients a(n),
W(y) = sum a(n) exp(-2 pi n y) and

    (2 pi)^-s Gamma(s) L(f, s) = int_1^inf W(y) (i^k y^(k-1-s) + y^(s-1)) dy = I(s).

Expanding both factors of L(f, s) = (2 pi)^s / Gamma(s) * I(s) around s = 0 gives

    L(f, s) = sum_{n>=1} C(n, k) s^n,   C(n, k) = sum_{i+j=n, j>=1} A(i, k)/i! * B(j)/j!,

where A(i, k) is the i-th derivative of I at 0. Each Fourier index m contributes to
A(i, k) through incomplete gamma functions at c = 2 pi m.
"""

from __future__ import annotations

import math
import sys
import warnings
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

try:
    import numpy as np
except ImportError as exc:  # pragma: no cover - dependency guard
    raise SystemExit("Missing dependency: numpy. Install with `pip install numpy`.") from exc

from errors import AccuracyError, DomainError
from specfun import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    b_coefficients,
    integrate_semi_infinite,
    log_weighted_incomplete_gamma,
    reciprocal_gamma,
    upper_incomplete_gamma,
)
from stieltjes import LimitEstimate

EPS = sys.float_info.epsilon
TWO_PI = 2.0 * math.pi
DEFAULT_TERMS = 30
MAX_DELTA_TERMS = 100_000
MAX_A_ORDER = 12
MAX_C_ORDER = 8
W_RELATIVE_TAIL = 1.0e-16
RESIDUAL_TAIL = 1.0e-18
INTEGRAND_TAIL = 1.0e-22
# Beyond this |s| the prefactor (2 pi)^s / Gamma(s) is formed in log space.
DIRECT_PREFACTOR_LIMIT = 150.0
LOG_FLOAT_MAX = math.log(sys.float_info.max)


class DeligneBoundWarning(UserWarning):
    """Supplied coefficients exceed d(n) n^((k-1)/2)."""


# -- tau(n) ---------------------------------------------------------------------


def pentagonal_terms(length: int) -> list[tuple[int, int]]:
    """(exponent, sign) pairs of prod_{m>=1} (1 - q^m) below q^length."""
    terms = [(0, 1)]
    k = 1
    while k * (3 * k - 1) // 2 < length:
        sign = -1 if k % 2 else 1
        for exponent in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if exponent < length:
                terms.append((exponent, sign))
        k += 1
    return sorted(terms)


@lru_cache(maxsize=None)
def _digit_bias(count: int, width: int) -> int:
    half = (1 << (8 * width - 1)).to_bytes(width, "little")
    return int.from_bytes(half * count, "little")


def _pack(coefficients: Sequence[int], width: int) -> int:
    half = 1 << (8 * width - 1)
    raw = b"".join((c + half).to_bytes(width, "little") for c in coefficients)
    return int.from_bytes(raw, "little") - _digit_bias(len(coefficients), width)


def _unpack(value: int, count: int, width: int) -> list[int]:
    half = 1 << (8 * width - 1)
    mask = (1 << (8 * width * count)) - 1
    raw = ((value + _digit_bias(count, width)) & mask).to_bytes(width * count, "little")
    return [int.from_bytes(raw[i * width : (i + 1) * width], "little") - half for i in range(count)]


def truncated_product(left: Sequence[int], right: Sequence[int], length: int) -> list[int]:
    """First `length` coefficients of left * right, exact, by Kronecker substitution."""
    left = list(left[:length])
    right = list(right[:length])
    if not left or not right:
        return [0] * length
    bits = (
        max(abs(c) for c in left).bit_length()
        + max(abs(c) for c in right).bit_length()
        + min(len(left), len(right)).bit_length()
        + 2
    )
    width = (bits + 7) // 8
    product = _pack(left, width) * _pack(right, width)
    return _unpack(product, length, width)


def sparse_product(dense: Sequence[int], sparse: Sequence[tuple[int, int]], length: int) -> list[int]:
    result = [0] * length
    for exponent, coefficient in sparse:
        for i in range(exponent, length):
            result[i] += coefficient * dense[i - exponent]
    return result


@lru_cache(maxsize=8)
def _delta_table(n_max: int) -> tuple[int, ...]:
    eta = pentagonal_terms(n_max)
    dense = [0] * n_max
    for exponent, sign in eta:
        dense[exponent] = sign
    power = truncated_product(dense, dense, n_max)  # E^2
    power = truncated_product(power, dense, n_max)  # E^3
    for _ in range(3):  # E^6, E^12, E^24
        power = truncated_product(power, power, n_max)
    return tuple(power)


def delta_coefficients(n_max: int) -> list[int]:
    """tau(1..n_max) from q prod (1 - q^m)^24."""
    if int(n_max) != n_max or not 1 <= n_max <= MAX_DELTA_TERMS:
        raise DomainError(f"n_max must be an integer in [1, {MAX_DELTA_TERMS}], got {n_max}")
    size = max(64, 1 << (int(n_max) - 1).bit_length())
    return list(_delta_table(size)[: int(n_max)])


def divisor_count(n: int) -> int:
    count = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            count += 1 if d * d == n else 2
        d += 1
    return count


def deligne_bound(n: int, weight: int) -> float:
    return divisor_count(n) * n ** ((weight - 1) / 2)


def deligne_violations(coefficients: Sequence[float], weight: int) -> list[int]:
    return [
        n
        for n, value in enumerate(coefficients, start=1)
        if abs(value) > deligne_bound(n, weight) * (1.0 + 1.0e-12)
    ]


# -- cusp forms ------------------------------------------------------------------


@dataclass(frozen=True)
class CuspForm:
    """Weight k eigenform; supplied=None selects the built-in tau(n) generator."""

    weight: int
    label: str
    supplied: tuple[float, ...] | None = None

    @property
    def root_number(self) -> int:
        """i^k for even k."""
        return -1 if (self.weight // 2) % 2 else 1

    def coefficients(self, n_terms: int) -> np.ndarray:
        if n_terms < 1:
            raise DomainError(f"n_terms must be >= 1, got {n_terms}")
        if self.supplied is None:
            return np.array(delta_coefficients(n_terms), dtype=float)
        if n_terms > len(self.supplied):
            raise DomainError(
                f"{self.label} provides {len(self.supplied)} coefficients, {n_terms} needed"
            )
        return np.array(self.supplied[:n_terms], dtype=float)


def delta_form() -> CuspForm:
    return CuspForm(weight=12, label="Delta")


def _check_weight(weight: int) -> int:
    if int(weight) != weight or weight < 12 or weight % 2:
        raise DomainError(f"weight must be an even integer >= 12, got {weight}")
    return int(weight)


def cusp_form_from_file(weight: int, coefficients: Sequence[float], label: str = "user form") -> CuspForm:
    """Validate supplied a(1..N); Deligne-bound excesses only warn."""
    weight = _check_weight(weight)
    values = tuple(float(v) for v in coefficients)
    if not values:
        raise DomainError("at least one coefficient is required")
    if abs(values[0] - 1.0) > 1.0e-12:
        raise DomainError(f"a(1) must be 1 for a normalized eigenform, got {values[0]}")
    violations = deligne_violations(values, weight)
    if violations:
        warnings.warn(
            DeligneBoundWarning(
                f"{label}: {len(violations)} coefficient(s) exceed d(n) n^((k-1)/2), "
                f"first at n={violations[0]}"
            ),
            stacklevel=2,
        )
    return CuspForm(weight=weight, label=label, supplied=values)


def load_coefficient_file(path: Path) -> CuspForm:
    """Read "weight <k>" followed by lines "n a_n" with n = 1, 2, ..."""
    lines = [
        line.strip()
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise DomainError(f"{path}: empty coefficient file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "weight":
        raise DomainError(f"{path}: first line must read 'weight <k>', got {lines[0]!r}")
    try:
        weight = int(header[1])
    except ValueError as exc:
        raise DomainError(f"{path}: bad weight in {lines[0]!r}") from exc

    values: list[float] = []
    for expected, line in enumerate(lines[1:], start=1):
        parts = line.split()
        if len(parts) != 2:
            raise DomainError(f"{path}: expected 'n a_n', got {line!r}")
        try:
            n = int(parts[0])
            value = float(parts[1])
        except ValueError as exc:
            raise DomainError(f"{path}: cannot parse {line!r}") from exc
        if n != expected:
            raise DomainError(f"{path}: indices must be contiguous from 1, got {n} at position {expected}")
        values.append(value)
    return cusp_form_from_file(weight, values, label=path.stem)


# -- W(y) ------------------------------------------------------------------------


def w_tail_bound(y: float, weight: int, n_terms: int) -> float:
    """Bound on sum_{n>N} |a(n)| e^(-2 pi n y) using |a(n)| <= 2 n^(k/2)."""
    first = n_terms + 1
    log_ratio = (weight / 2) * math.log1p(1.0 / first) - TWO_PI * y
    if log_ratio >= 0:
        return math.inf
    log_first = math.log(2.0) + (weight / 2) * math.log(first) - TWO_PI * first * y
    return math.exp(log_first) / -math.expm1(log_ratio)


def required_terms(y: float, f: CuspForm, abs_tol: float) -> int:
    """Smallest N whose W(y) tail bound is at most abs_tol."""
    if y <= 0:
        raise DomainError(f"y must be > 0, got {y}")
    n_terms = 1
    while w_tail_bound(y, f.weight, n_terms) > abs_tol:
        n_terms = n_terms + 1 if n_terms < 64 else int(n_terms * 1.25)
        if n_terms > MAX_DELTA_TERMS:
            raise AccuracyError(f"W({y}) needs more than {MAX_DELTA_TERMS} terms", required_terms=n_terms)
    return n_terms


def _w_array(y: np.ndarray, coefficients: np.ndarray) -> np.ndarray:
    n = np.arange(1, coefficients.size + 1, dtype=float)
    return coefficients @ np.exp(-TWO_PI * np.outer(n, y))


def w_value(y: float, f: CuspForm, n_terms: int) -> float:
    y = float(y)
    if not math.isfinite(y) or y <= 0:
        raise DomainError(f"y must be > 0, got {y}")
    coefficients = f.coefficients(n_terms)
    n = np.arange(1, n_terms + 1, dtype=float)
    value = math.fsum((coefficients * np.exp(-TWO_PI * n * y)).tolist())
    tail = w_tail_bound(y, f.weight, n_terms)
    if tail > W_RELATIVE_TAIL * abs(value):
        needed = required_terms(y, f, W_RELATIVE_TAIL * abs(value))
        raise AccuracyError(
            f"W({y}) with {n_terms} terms has tail bound {tail:.3e}; {needed} terms required",
            best_estimate=value,
            error_estimate=tail,
            required_terms=needed,
        )
    return value


def functional_equation_residual(y: float, f: CuspForm) -> float:
    """|i^k y^k W(y) - W(1/y)| with both tails below 1e-18."""
    y = float(y)
    if not math.isfinite(y) or y <= 0:
        raise DomainError(f"y must be > 0, got {y}")
    scale = y**f.weight
    near = required_terms(y, f, RESIDUAL_TAIL / max(1.0, scale))
    far = required_terms(1.0 / y, f, RESIDUAL_TAIL)
    left = f.root_number * scale * float(_w_array(np.array([y]), f.coefficients(near))[0])
    right = float(_w_array(np.array([1.0 / y]), f.coefficients(far))[0])
    return abs(left - right)


# -- A(n, k), B(n), C(n, k) ------------------------------------------------------


def _fourier_index_terms(
    i_max: int, m: int, a_m: float, f: CuspForm, spec: QuadratureSpec
) -> list[float]:
    """Contribution of Fourier index m to A(0..i_max, k)."""
    if a_m == 0.0:
        return [0.0] * (i_max + 1)
    c = TWO_PI * m
    log_c = math.log(c)
    k = f.weight
    weighted_k = [upper_incomplete_gamma(k, c).value]
    weighted_0 = [upper_incomplete_gamma(0, c).value]
    for j in range(1, i_max + 1):
        weighted_k.append(log_weighted_incomplete_gamma(j, k, c, spec).value)
        weighted_0.append(log_weighted_incomplete_gamma(j, 0, c, spec).value)
    scale = math.exp(-k * log_c)
    terms = []
    for i in range(i_max + 1):
        # (log u - log c)^i expanded binomially under u = c y
        powers = [math.comb(i, j) * (-log_c) ** (i - j) for j in range(i + 1)]
        part_k = math.fsum(p * g for p, g in zip(powers, weighted_k))
        part_0 = math.fsum(p * g for p, g in zip(powers, weighted_0))
        sign = f.root_number * (-1) ** i
        terms.append(a_m * math.fsum([sign * scale * part_k, part_0]))
    return terms


def _check_terms(n_terms: int) -> int:
    if int(n_terms) != n_terms or n_terms < 1:
        raise DomainError(f"n_terms must be a positive integer, got {n_terms}")
    return int(n_terms)


def a_coefficients(
    i_max: int,
    f: CuspForm,
    n_terms: int = DEFAULT_TERMS,
    *,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    workers: int = 1,
) -> list[float]:
    """A(0..i_max, k), each summed over Fourier indices 1..n_terms.

    Per-index contributions may be computed on several threads; the reduction is
    math.fsum in index order, so the result does not depend on `workers`.
    """
    if int(i_max) != i_max or not 0 <= i_max <= MAX_A_ORDER:
        raise DomainError(f"n must be an integer in [0, {MAX_A_ORDER}], got {i_max}")
    n_terms = _check_terms(n_terms)
    coefficients = f.coefficients(n_terms).tolist()

    def contribution(m: int) -> list[float]:
        return _fourier_index_terms(int(i_max), m, coefficients[m - 1], f, spec)

    indices = range(1, n_terms + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(contribution, indices))
    else:
        rows = [contribution(m) for m in indices]
    return [math.fsum(row[i] for row in rows) for i in range(int(i_max) + 1)]


def a_coefficient(
    n: int, f: CuspForm, n_terms: int = DEFAULT_TERMS, *, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    return a_coefficients(n, f, n_terms, spec=spec)[-1]


def a_coefficient_quadrature(
    n: int, f: CuspForm, n_terms: int = DEFAULT_TERMS, *, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """A(n, k) = int_1^inf W(y)/y (i^k (-1)^n y^k log^n y + log^n y) dy by quadrature."""
    coefficients = f.coefficients(_check_terms(n_terms))
    sign = f.root_number * (-1) ** n

    def integrand(y: np.ndarray) -> np.ndarray:
        log_y = np.log(y)
        return _w_array(y, coefficients) / y * (sign * y**f.weight + 1.0) * log_y**n

    value, _ = integrate_semi_infinite(integrand, 1.0, spec)
    return value


def m_series_tail_bound(i: int, weight: int, n_terms: int) -> float:
    """Bound on the Fourier indices m > n_terms omitted from A(i, k).

    Index m contributes at most 2 m^(k/2) * 2 e^(-c) / (c - (k - 1 + i)), c = 2 pi m.
    """
    degree = weight - 1 + i
    first = n_terms + 1
    c = TWO_PI * first
    if c <= degree:
        return math.inf
    log_ratio = (weight / 2) * math.log1p(1.0 / first) - TWO_PI
    log_first = math.log(4.0) + (weight / 2) * math.log(first) - c - math.log(c - degree)
    return math.exp(log_first) / -math.expm1(log_ratio)


def _convolve(a_values: Sequence[float], b_values: Sequence[float], n: int) -> float:
    return math.fsum(
        a_values[i] / math.factorial(i) * b_values[n - i - 1] / math.factorial(n - i) for i in range(n)
    )


def _check_c_order(n: int, name: str = "n") -> int:
    if int(n) != n or not 1 <= n <= MAX_C_ORDER:
        raise DomainError(f"{name} must be an integer in [1, {MAX_C_ORDER}], got {n}")
    return int(n)


def c_coefficient(
    n: int, f: CuspForm, n_terms: int = DEFAULT_TERMS, *, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    n = _check_c_order(n)
    return _convolve(a_coefficients(n - 1, f, n_terms, spec=spec), b_coefficients(n), n)


@dataclass(frozen=True)
class CuspFormLaurent:
    orders: tuple[float, ...]
    terms_used: int
    term_tail_bound: float
    weight: int
    label: str
    canonical: bool = True

    def evaluate(self, s: float) -> float:
        # no constant term: L(f, 0) = 0
        return math.fsum(c * s ** (n + 1) for n, c in enumerate(self.orders))


def laurent_cuspform(
    f: CuspForm,
    n_orders: int,
    n_terms: int = DEFAULT_TERMS,
    *,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    workers: int = 1,
) -> CuspFormLaurent:
    n_orders = _check_c_order(n_orders, name="n_orders")
    n_terms = _check_terms(n_terms)
    a_values = a_coefficients(n_orders - 1, f, n_terms, spec=spec, workers=workers)
    b_values = b_coefficients(n_orders)
    orders = tuple(_convolve(a_values, b_values, n) for n in range(1, n_orders + 1))
    tails = [
        math.fsum(
            m_series_tail_bound(i, f.weight, n_terms)
            / math.factorial(i)
            * abs(b_values[n - i - 1])
            / math.factorial(n - i)
            for i in range(n)
        )
        for n in range(1, n_orders + 1)
    ]
    return CuspFormLaurent(
        orders=orders,
        terms_used=n_terms,
        term_tail_bound=max(tails),
        weight=f.weight,
        label=f.label,
    )


# -- L(f, s) ---------------------------------------------------------------------


def _integrand_terms(f: CuspForm) -> np.ndarray:
    return f.coefficients(required_terms(1.0, f, INTEGRAND_TAIL))


def completed_l_value(s: float, f: CuspForm, *, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Lambda(s) = (2 pi)^-s Gamma(s) L(f, s) = int_1^inf W(y) (i^k y^(k-1-s) + y^(s-1)) dy."""
    s = float(s)
    if not math.isfinite(s):
        raise DomainError(f"s must be finite, got {s}")
    coefficients = _integrand_terms(f)
    sign = f.root_number

    n = np.arange(coefficients.size, dtype=float)

    def integrand(y: np.ndarray) -> np.ndarray:
        # e^(2 pi y) W(y); the e^(-2 pi y) factor goes into the powers of y so
        # that y^(s-1) cannot overflow where W(y) has already underflowed.
        scaled = coefficients @ np.exp(-TWO_PI * np.outer(n, y))
        log_y = np.log(y)
        return scaled * (
            sign * np.exp((f.weight - 1 - s) * log_y - TWO_PI * y) + np.exp((s - 1) * log_y - TWO_PI * y)
        )

    value, _ = integrate_semi_infinite(integrand, 1.0, spec)
    return value


def l_f_direct(s: float, f: CuspForm, *, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """L(f, s) = (2 pi)^s / Gamma(s) * I(s); zero at s = 0 and negative integers."""
    s = float(s)
    if not math.isfinite(s):
        raise DomainError(f"s must be finite, got {s}")
    if s <= 0 and s.is_integer():
        return 0.0
    completed = completed_l_value(s, f, spec=spec)
    if abs(s) <= DIRECT_PREFACTOR_LIMIT:
        return TWO_PI**s * reciprocal_gamma(s) * completed
    if completed == 0.0:
        return 0.0
    # sign of Gamma(s) alternates on each interval (-m-1, -m)
    sign = 1.0 if s > 0 else (-1.0) ** math.ceil(-s)
    log_magnitude = s * math.log(TWO_PI) - math.lgamma(s) + math.log(abs(completed))
    if log_magnitude > LOG_FLOAT_MAX:
        raise AccuracyError(
            f"L(f, {s}) exceeds the binary64 range",
            best_estimate=math.inf,
        )
    return math.copysign(math.exp(log_magnitude), sign * completed)


def l_f_series(s: float, f: CuspForm, n_terms: int) -> LimitEstimate:
    """Partial Dirichlet series sum_{n<=N} a(n) n^-s with its Deligne tail bound."""
    s = float(s)
    threshold = (f.weight + 1) / 2 + 1
    if not s > threshold:
        raise DomainError(f"the Dirichlet series needs s > {threshold}, got {s}")
    n_terms = _check_terms(n_terms)
    coefficients = f.coefficients(n_terms)
    n = np.arange(1, n_terms + 1, dtype=float)
    value = math.fsum((coefficients * n**-s).tolist())
    # sum_{n>N} 2 n^(k/2 - s) <= 2 N^(k/2 - s + 1) / (s - k/2 - 1)
    exponent = f.weight / 2 - s
    tail = 2.0 * n_terms ** (exponent + 1) / -(exponent + 1)
    return LimitEstimate(value=value, abs_error_bound=tail + n_terms * EPS * abs(value), terms_used=n_terms)


def sparse_eta_power(length: int, exponent: int) -> list[int]:
    """prod (1 - q^m)^exponent by repeated sparse multiplication, for cross-checks."""
    eta = pentagonal_terms(length)
    power = [1] + [0] * (length - 1)
    for _ in range(exponent):
        power = sparse_product(power, eta, length)
    return power

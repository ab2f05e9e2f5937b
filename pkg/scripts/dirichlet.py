#!/usr/bin/env python3
"""Dirichlet characters, residue-class Euler constants and L(s, chi) at s = 1.

gamma_k(a, q) is read with the logarithmic correction applied once outside the
congruence-restricted sum:

    gamma_k(a, q) = lim_x [ sum_{n<=x, n=a mod q} log^k(n)/n - log^(k+1)(x)/(q(k+1)) ]

Writing n = q m + a reduces it to Hurwitz-Euler constants at b = a/q:

    gamma_k(a, q) = (1/q) [ sum_j C(k,j) log^(k-j)(q) gamma_j(b) - log^(k+1)(q)/(k+1) ]
"""

from __future__ import annotations

import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

from errors import AccuracyError, CharacterValidationError, DomainError
from stieltjes import (
    DEFAULT_CONTROL,
    LaurentExpansion,
    LimitEstimate,
    SummationControl,
    check_order,
    estimate_hurwitz_euler_constant,
    euler_maclaurin_limit,
    log_power_derivative,
)
from summation import exact_sum, magnitude_sum

EPS = sys.float_info.epsilon
VALUE_TOLERANCE = 1.0e-12
DIRECT_TOLERANCE = 1.0e-13
DIRECT_CONTROL = SummationControl(target_abs_tol=DIRECT_TOLERANCE)


@dataclass(frozen=True)
class DirichletCharacter:
    """Validated value table; values[a - 1] is chi(a) for a = 1..q."""

    modulus: int
    values: tuple[complex, ...]
    label: str

    def __call__(self, n: int) -> complex:
        return self.values[(n - 1) % self.modulus]

    @property
    def is_real(self) -> bool:
        return all(abs(v.imag) <= VALUE_TOLERANCE for v in self.values)

    def partial_sums(self) -> list[complex]:
        """A(r) = sum_{j<=r} chi(j) for r = 1..q."""
        sums: list[complex] = []
        for r in range(1, self.modulus + 1):
            sums.append(complex(exact_sum(self.values[:r])))
        return sums


def character_from_table(
    q: int, values: Sequence[complex | float], label: str | None = None
) -> DirichletCharacter:
    """Validate a value table and wrap it as a non-principal character."""
    if int(q) != q or q < 1:
        raise DomainError(f"modulus must be a positive integer, got {q}")
    q = int(q)
    if len(values) != q:
        raise CharacterValidationError("length", f"expected {q} values, got {len(values)}")
    table = tuple(complex(v) for v in values)

    for a, value in enumerate(table, start=1):
        coprime = math.gcd(a, q) == 1
        if coprime and abs(value) <= VALUE_TOLERANCE:
            raise CharacterValidationError("zero-pattern", f"chi({a}) = 0 but gcd({a}, {q}) = 1")
        if not coprime and abs(value) > VALUE_TOLERANCE:
            raise CharacterValidationError(
                "zero-pattern", f"chi({a}) = {value} but gcd({a}, {q}) = {math.gcd(a, q)}"
            )
        if coprime and abs(abs(value) - 1.0) > VALUE_TOLERANCE:
            raise CharacterValidationError("unit-modulus", f"|chi({a})| = {abs(value)}")

    for a in range(1, q + 1):
        for b in range(a, q + 1):
            product = table[(a * b - 1) % q]
            if abs(product - table[a - 1] * table[b - 1]) > VALUE_TOLERANCE:
                raise CharacterValidationError(
                    "multiplicativity", f"chi({a}*{b}) != chi({a}) chi({b}) mod {q}"
                )

    total = exact_sum(table)
    if abs(total) > VALUE_TOLERANCE:
        raise CharacterValidationError(
            "principal or non-character", f"sum of values over one period is {total}"
        )
    return DirichletCharacter(modulus=q, values=table, label=label or f"chi mod {q}")


def jacobi_symbol(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs a positive odd modulus, got {n}")
    sign = 1
    if n == 1:
        return 1
    while True:
        a %= n
        if a == 0:
            return 0
        while a & 3 == 0:
            a >>= 2
        if a & 1 == 0:
            a >>= 1
            if n & 7 in (3, 5):
                sign = -sign
        if a == 1:
            return sign
        if 3 & a & n == 3:
            sign = -sign
        a, n = n, a


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol (d / n) for n >= 1."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    result = 1
    while n % 2 == 0:
        if d % 2 == 0:
            return 0
        n //= 2
        if d % 8 in (3, 5):
            result = -result
    return result * jacobi_symbol(d, n)


def kronecker_character(d: int, q: int | None = None) -> DirichletCharacter:
    """Real character a -> (d / a) on residues 1..q, q = |d| by default."""
    if d == 0:
        raise DomainError("d must be non-zero")
    q = abs(d) if q is None else q
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q}")
    values = [kronecker_symbol(d, a) for a in range(1, q + 1)]
    return character_from_table(q, values, label=f"kronecker({d}/.) mod {q}")


def load_character_file(path: Path) -> DirichletCharacter:
    """Read "q = <int>" followed by q lines "a re im"."""
    lines = [
        line.strip()
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise DomainError(f"{path}: empty character file")
    header = lines[0].replace(" ", "")
    if not header.startswith("q="):
        raise DomainError(f"{path}: first line must read 'q = <int>', got {lines[0]!r}")
    try:
        q = int(header[2:])
    except ValueError as exc:
        raise DomainError(f"{path}: bad modulus in {lines[0]!r}") from exc
    if q < 1:
        raise DomainError(f"{path}: modulus must be positive, got {q}")

    values: dict[int, complex] = {}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise DomainError(f"{path}: expected 'a re im', got {line!r}")
        try:
            a = int(parts[0])
            value = complex(float(parts[1]), float(parts[2]))
        except ValueError as exc:
            raise DomainError(f"{path}: cannot parse {line!r}") from exc
        if not 1 <= a <= q or a in values:
            raise DomainError(f"{path}: residue {a} out of range or repeated")
        values[a] = value
    if len(values) != q:
        raise CharacterValidationError("length", f"{path}: expected {q} residues, got {len(values)}")
    return character_from_table(q, [values[a] for a in range(1, q + 1)], label=path.stem)


def _check_residue(a: int, q: int) -> tuple[int, int]:
    if int(q) != q or q < 1:
        raise DomainError(f"q must be a positive integer, got {q}")
    if int(a) != a or not 1 <= a <= q:
        raise DomainError(f"a must be an integer with 1 <= a <= q, got a={a}, q={q}")
    return int(a), int(q)


def estimate_residue_euler_constant(
    k: int, a: int, q: int, ctl: SummationControl = DEFAULT_CONTROL
) -> LimitEstimate:
    k = check_order(k)
    a, q = _check_residue(a, q)
    shift = a / q
    log_q = math.log(q)

    weights = [math.comb(k, j) * log_q ** (k - j) for j in range(k + 1)]
    terms: list[float] = []
    bound = 0.0
    used = 0
    for j in range(k + 1):
        if weights[j] == 0.0:
            continue
        share = ctl.target_abs_tol * q / ((k + 1) * max(1.0, weights[j]))
        estimate = estimate_hurwitz_euler_constant(j, shift, ctl.with_tolerance(share))
        terms.append(weights[j] * float(estimate.value))
        bound += weights[j] * estimate.abs_error_bound
        used = max(used, estimate.terms_used)
    terms.append(-(log_q ** (k + 1)) / (k + 1))
    value = math.fsum(terms) / q
    bound = bound / q + 2.0 * EPS * magnitude_sum(terms) / q
    return LimitEstimate(value=value, abs_error_bound=bound, terms_used=used)


def residue_euler_constant(k: int, a: int, q: int, ctl: SummationControl = DEFAULT_CONTROL) -> float:
    return float(estimate_residue_euler_constant(k, a, q, ctl).value)


def _require_non_principal(chi: DirichletCharacter) -> None:
    if abs(exact_sum(chi.values)) > VALUE_TOLERANCE:
        raise DomainError("principal or non-character: values do not sum to zero over a period")


def _real_value(value: complex, scale: float) -> complex:
    """Drop the imaginary rounding residue of a real-character sum, or refuse it."""
    if abs(value.imag) > VALUE_TOLERANCE * max(1.0, scale):
        raise AccuracyError(
            f"real character produced an imaginary part {value.imag:.3e}",
            best_estimate=value,
            error_estimate=abs(value.imag),
        )
    return complex(value.real, 0.0)


def estimate_character_constant(
    chi: DirichletCharacter, k: int, ctl: SummationControl = DEFAULT_CONTROL
) -> LimitEstimate:
    """gamma_k(chi) = sum_a chi(a) gamma_k(a, q)."""
    _require_non_principal(chi)
    k = check_order(k)
    q = chi.modulus
    support = [a for a in range(1, q + 1) if chi(a) != 0]
    share = ctl.with_tolerance(ctl.target_abs_tol / len(support))
    terms: list[complex] = []
    bound = 0.0
    used = 0
    for a in support:
        estimate = estimate_residue_euler_constant(k, a, q, share)
        terms.append(chi(a) * estimate.value)
        bound += estimate.abs_error_bound
        used = max(used, estimate.terms_used)
    value = complex(exact_sum(terms))
    if chi.is_real:
        value = _real_value(value, magnitude_sum(terms) + bound)
    return LimitEstimate(value=value, abs_error_bound=bound, terms_used=used)


def character_constant(chi: DirichletCharacter, k: int, ctl: SummationControl = DEFAULT_CONTROL) -> complex:
    return complex(estimate_character_constant(chi, k, ctl).value)


def l_derivative_at_one(chi: DirichletCharacter, k: int, ctl: SummationControl = DEFAULT_CONTROL) -> complex:
    """L^(k)(1, chi) = (-1)^k gamma_k(chi)."""
    return (-1) ** k * character_constant(chi, k, ctl)


def laurent_dirichlet(
    chi: DirichletCharacter, k_max: int, ctl: SummationControl = DEFAULT_CONTROL
) -> LaurentExpansion:
    _require_non_principal(chi)
    k_max = check_order(k_max, name="k_max")
    coefficients: list[complex] = []
    bounds: list[float] = []
    for k in range(k_max + 1):
        factorial = math.factorial(k)
        estimate = estimate_character_constant(chi, k, ctl.with_tolerance(ctl.target_abs_tol * factorial))
        coefficients.append((-1) ** k * complex(estimate.value) / factorial)
        bounds.append(estimate.abs_error_bound / factorial)
    return LaurentExpansion(
        center=1.0,
        pole_order=0,
        principal_coefficient=0.0,
        coefficients=tuple(coefficients),
        meta=f"L(s, {chi.label}) at s=1; residue-class constants via Euler-Maclaurin order {ctl.em_order}",
        error_bounds=tuple(bounds),
    )


def _interval_integral(s: float, c: float) -> float:
    """int_c^(c+1) u^-s du."""
    step = math.log1p(1.0 / c)
    z = (1.0 - s) * step
    ratio = math.expm1(z) / z if z != 0.0 else 1.0
    return c ** (1.0 - s) * step * ratio


def estimate_l_direct(s: float, chi: DirichletCharacter, ctl: SummationControl = DIRECT_CONTROL) -> LimitEstimate:
    """L(s, chi) = s int_1^inf A(x) x^(-s-1) dx = sum_n A(n) (n^-s - (n+1)^-s).

    Summed one period at a time; the sum over periods is closed with
    Euler-Maclaurin corrections of order ctl.em_order, and ctl.max_terms caps
    the number of periods. The reported bound is the Euler-Maclaurin remainder
    estimate, not the cruder |A(x)| <= phi(q) / 2 integral bound.
    """
    s = float(s)
    if not math.isfinite(s) or s <= 0:
        raise DomainError(f"s must be > 0, got {s}")
    _require_non_principal(chi)
    q = chi.modulus
    partial = chi.partial_sums()

    def term(m: int) -> complex:
        return complex(
            exact_sum(
                partial[r - 1] * ((q * m + r) ** (-s) - (q * m + r + 1) ** (-s)) for r in range(1, q + 1)
            )
        )

    def derivative(j: int, x: float) -> complex:
        rising = math.prod(s + i for i in range(j))
        scale = (-1) ** j * rising * q**j
        return scale * complex(
            exact_sum(
                partial[r - 1] * ((q * x + r) ** (-s - j) - (q * x + r + 1) ** (-s - j))
                for r in range(1, q + 1)
            )
        )

    def antiderivative(x: float) -> complex:
        return -complex(
            exact_sum(partial[r - 1] * _interval_integral(s, q * x + r) for r in range(1, q + 1))
        ) / q

    return euler_maclaurin_limit(term, derivative, antiderivative, ctl, amplification=4.0 * q)


def l_direct(s: float, chi: DirichletCharacter, ctl: SummationControl = DIRECT_CONTROL) -> complex:
    return complex(estimate_l_direct(s, chi, ctl).value)


class PeriodicSumCheck(NamedTuple):
    lhs: complex
    rhs: complex
    abs_diff: float


def periodic_sum_check(
    g: Sequence[complex | float] | DirichletCharacter, k: int, ctl: SummationControl = DEFAULT_CONTROL
) -> PeriodicSumCheck:
    """Compare sum_n g(n) log^k(n)/n with sum_a g(a) gamma_k(a, q)."""
    table = list(g.values) if isinstance(g, DirichletCharacter) else [complex(v) for v in g]
    q = len(table)
    if q < 1:
        raise DomainError("g must have period >= 1")
    k = check_order(k)
    if abs(exact_sum(table)) > VALUE_TOLERANCE:
        raise DomainError("sum of g over one period must vanish for the series to converge")

    support = [(a, table[a - 1]) for a in range(1, q + 1) if table[a - 1] != 0]

    def term(m: int) -> complex:
        return complex(exact_sum(v * math.log(q * m + a) ** k / (q * m + a) for a, v in support))

    def derivative(r: int, x: float) -> complex:
        return q**r * complex(exact_sum(v * log_power_derivative(k, r, q * x + a) for a, v in support))

    def antiderivative(x: float) -> complex:
        return complex(exact_sum(v * math.log(q * x + a) ** (k + 1) for a, v in support)) / (q * (k + 1))

    lhs = complex(
        euler_maclaurin_limit(term, derivative, antiderivative, ctl, amplification=(k + 2) * q).value
    )
    share = ctl.with_tolerance(ctl.target_abs_tol / len(support))
    rhs = complex(exact_sum(v * residue_euler_constant(k, a, q, share) for a, v in support))
    return PeriodicSumCheck(lhs=lhs, rhs=rhs, abs_diff=abs(lhs - rhs))

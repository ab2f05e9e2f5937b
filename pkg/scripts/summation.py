#!/usr/bin/env python3
"""Exactly rounded accumulation helpers.

math.fsum returns the correctly rounded value of the exact sum, so the result
does not depend on the order in which terms were produced. Complex sums are
accumulated per component.
"""

from __future__ import annotations

import math
from collections.abc import Iterable


def exact_sum(values: Iterable[complex | float]) -> complex | float:
    """Correctly rounded sum; returns a float unless some term is complex."""
    reals: list[float] = []
    imags: list[float] = []
    is_complex = False
    for value in values:
        if isinstance(value, complex):
            is_complex = True
            reals.append(value.real)
            imags.append(value.imag)
        else:
            reals.append(float(value))
    if is_complex:
        return complex(math.fsum(reals), math.fsum(imags))
    return math.fsum(reals)


def magnitude_sum(values: Iterable[complex | float]) -> float:
    return math.fsum(abs(value) for value in values)


def horner(coefficients: list[complex] | list[float], x: complex | float) -> complex | float:
    """Evaluate sum(c[i] * x**i) by Horner's rule."""
    acc: complex | float = 0.0
    for coefficient in reversed(coefficients):
        acc = acc * x + coefficient
    return acc

from __future__ import annotations

from summation import exact_sum, horner, magnitude_sum


def test_exact_sum_is_order_independent():
    values = [1e16, 1.0, -1e16, 1.0]
    assert exact_sum(values) == 2.0
    assert exact_sum(reversed(values)) == 2.0


def test_exact_sum_complex():
    total = exact_sum([1.0, 2j, 1e16 + 0j, -1e16])
    assert isinstance(total, complex)
    assert total == 1 + 2j


def test_exact_sum_empty_is_zero():
    assert exact_sum([]) == 0.0


def test_magnitude_sum():
    assert magnitude_sum([3 + 4j, -2.0]) == 7.0


def test_horner():
    assert horner([1.0, -3.0, 2.0], 2.0) == 3.0
    assert horner([], 5.0) == 0.0

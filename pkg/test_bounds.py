#!/usr/bin/env python3
"""
Tests for the closed-form bounds, β tables and sweeps
"""

from fractions import Fraction

import pytest

from hall_kernel import bounds
from hall_kernel.bounds import (BoundSelector, a_theta, applicable_selectors, ars_closed, ars_def, beta,
                                beta_closed_form, beta_table, bound_asym, bound_fibo, bound_fibo_x0,
                                bound_general_theta, bound_geom, bound_length_ratio, cn, fib,
                                rough_bound_log2, two_letter_norm, verify_sweep, x3_norm)
from hall_kernel.hall import generate
from hall_kernel.order import OrderKind
from hall_kernel.utils.error_handling import CapacityError, KernelError


def test_fibonacci():
    assert [fib(n) for n in range(0, 11)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    with pytest.raises(ValueError):
        fib(-1)


@pytest.mark.parametrize("theta,expected", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 65)])
def test_general_theta_bound(theta, expected):
    assert bound_general_theta(theta) == expected


def test_general_theta_bound_is_exact_past_64_bits():
    value = bound_general_theta(23)
    assert value > 2 ** 64
    assert value == 22 * bound_general_theta(22) + 1


def test_small_closed_forms():
    assert bound_geom(1) == 1 and bound_geom(5) == 16
    assert bound_length_ratio(2, 5) == 2
    assert bound_length_ratio(1, 1) == 1
    assert a_theta(3) == 4 and a_theta(4) == 13 and a_theta(1) == 1
    assert [cn(n) for n in (1, 2, 3)] == [1, 4, 16]
    assert bound_fibo(1, 1) == 2
    assert bound_fibo_x0(1, 1) == 1
    assert bound_asym(2, 1) == 16 * 2
    assert bound_asym(0, 3) == 1
    assert rough_bound_log2(2, 2) == 8


@pytest.mark.parametrize("call", [
    lambda: bound_geom(0),
    lambda: bound_length_ratio(3, 2),
    lambda: cn(0),
    lambda: bound_fibo(-1, 0),
    lambda: ars_def(2, 1, 9),
    lambda: ars_closed(1, 3, 6),
])
def test_out_of_range_arguments(call):
    with pytest.raises(ValueError):
        call()


def test_ars_definition_matches_closed_form():
    assert bounds.ars_identity_failures(8, 25) == []
    assert ars_def(1, 1, 3) == ars_closed(1, 1, 3) == 1


def test_binomial_sum_identities():
    assert bounds.a1_sum_failures(3, 24) == []
    assert bounds.ars_fibo_failures(3, 24) == []


def test_fibonacci_identities():
    assert bounds.fibonacci_inequality_failures(30) == []
    assert bounds.fibonacci_estimate_failures(30) == []
    assert bounds.general_theta_recurrence_failures(25) == []


def test_two_letter_norms():
    assert [two_letter_norm(n, None) for n in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]
    assert two_letter_norm(2, 1) == fib(2)
    assert two_letter_norm(4, 2) == fib(4)
    assert x3_norm(3) == 8 and x3_norm(3, 1) == 8
    with pytest.raises(ValueError):
        x3_norm(3, 2)


# -- β tables ---------------------------------------------------------------------------

def test_beta_length_three_letters(length3):
    assert [beta(length3, n) for n in range(2, 7)] == [2 ** (n - 2) for n in range(2, 7)]


def test_beta_length_two_letters(length2):
    assert [beta(length2, n) for n in range(2, 9)] == [max(1, 2 ** (n - 4)) for n in range(2, 9)]


def test_beta_lyndon(lyndon2):
    expected = [max(1, fib(n - 2), 2 ** (n - 5) if n >= 5 else 0) for n in range(2, 9)]
    assert [beta(lyndon2, n) for n in range(2, 9)] == expected


def test_beta_fibo(fibo):
    assert [beta(fibo, n) for n in range(3, 9)] == [fib(n - 2) for n in range(3, 9)]


def test_beta_table_rows(fibo, supergeom):
    rows = beta_table(fibo, 8)
    assert [r.n for r in rows] == list(range(2, 9))
    assert all(r.match for r in rows)
    assert all(r.match is None for r in beta_table(supergeom, 5))


def test_beta_closed_forms():
    assert beta_closed_form(OrderKind.LENGTH_LEX, 3, 8) == 64
    assert beta_closed_form(OrderKind.LENGTH_LEX, 2, 3) == 1
    assert beta_closed_form(OrderKind.LYNDON, 2, 10) == 32
    assert beta_closed_form(OrderKind.SUPER_GEOM, 2, 6) is None


def test_beta_capacity(length2):
    assert beta(length2, 8) >= 1
    with pytest.raises(CapacityError) as info:
        beta(length2, 9)
    assert "n <= max length" in info.value.message
    assert info.value.context == {"n": 9, "max_len": 8}
    with pytest.raises(ValueError):
        beta(length2, 1)


# -- sweeps ---------------------------------------------------------------------------

def test_general_sweep_on_every_two_letter_order(any_two_letter):
    report = verify_sweep(any_two_letter, 7, BoundSelector.EN1)
    assert report.ok
    assert report.pairs_checked > 0
    assert 0 < report.max_ratio <= 1


@pytest.mark.parametrize("selector", [BoundSelector.GEOM, BoundSelector.LENGTH_RATIO, BoundSelector.ASYM,
                                      BoundSelector.FACTORIAL, BoundSelector.RECURSIVE])
def test_length_sweeps(length2, selector):
    assert verify_sweep(length2, 8, selector).ok


@pytest.mark.parametrize("selector", [BoundSelector.FIBO_SIZE, BoundSelector.ATHETA,
                                      BoundSelector.FIBO_LENGTH, BoundSelector.ASYM])
def test_fibo_sweeps(fibo, selector):
    assert verify_sweep(fibo, 8, selector).ok


def test_fibo_x0_sweep_reaches_equality(fibo):
    report = verify_sweep(fibo, 8, BoundSelector.FIBO_X0)
    assert report.ok
    assert report.max_ratio == Fraction(1)


def test_lyndon_sweeps(lyndon2, lyndon3):
    assert verify_sweep(lyndon2, 8, BoundSelector.GEOM).ok
    assert verify_sweep(lyndon3, 6, BoundSelector.GEOM).ok
    assert verify_sweep(lyndon3, 6, BoundSelector.EN1).ok


@pytest.mark.parametrize("selector", [BoundSelector.EN1, BoundSelector.ASYM])
def test_sharp_order_sweeps(sharp3, selector):
    report = verify_sweep(sharp3, 5, selector)
    assert report.ok
    assert report.pairs_checked > 0


def test_sweep_is_the_same_with_threads(fibo):
    serial = verify_sweep(fibo, 7, BoundSelector.FIBO_SIZE)
    threaded = verify_sweep(fibo, 7, BoundSelector.FIBO_SIZE, jobs=4)
    assert (serial.pairs_checked, serial.max_ratio) == (threaded.pairs_checked, threaded.max_ratio)


def test_sweep_rejects_mismatched_bounds(supergeom, length2):
    with pytest.raises(KernelError) as info:
        verify_sweep(supergeom, 6, BoundSelector.GEOM)
    assert info.value.code == "BOUND_ORDER_MISMATCH"
    with pytest.raises(CapacityError):
        verify_sweep(length2, 9, BoundSelector.EN1)


def test_applicable_selectors():
    assert BoundSelector.FIBO_X0 in applicable_selectors(OrderKind.FIBO_MIN)
    assert BoundSelector.GEOM not in applicable_selectors(OrderKind.SUPER_GEOM)
    assert BoundSelector.EN1 in applicable_selectors(OrderKind.SHARP_EN1)


@pytest.mark.slow
def test_acceptance_sweeps(two_letter_sets):
    for name, hs in two_letter_sets.items():
        big = generate(hs.spec, 9)
        assert verify_sweep(big, 9, BoundSelector.EN1, jobs=2).ok, name

#!/usr/bin/env python3
"""
Tests for the equality and lower-bound bracket families
"""

import math

import pytest

from hall_kernel.bounds import a_theta, bound_general_theta, fib, two_letter_norm
from hall_kernel.families import (FAMILIES, fam_alphabetic_factorial, fam_fibo_sature, fam_length_sharp,
                                  fam_lyndon_sharp, fam_sharp_en1, fam_super_geom, fam_super_geom_at_length,
                                  fam_theta_lower, fam_two_letter_bn, fam_x3, run_family, supergeom_length)
from hall_kernel.utils.error_handling import KernelError


def check(inst):
    result = run_family(inst)
    assert result.passed, (inst.name, inst.params, result.norm, inst.expected_norm)
    return result


@pytest.mark.parametrize("n", range(0, 6))
def test_three_letter_family(n):
    result = check(fam_x3(n))
    assert result.norm == 2 ** n
    assert result.theta == n + 1
    assert result.oracle_verified


@pytest.mark.parametrize("n", range(1, 9))
def test_fibonacci_family(n):
    inst = fam_two_letter_bn(n, "fibo")
    assert inst.exact
    assert check(inst).norm == fib(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_two_letter_family_with_finite_r(n):
    inst = fam_two_letter_bn(n, "length")
    result = check(inst)
    assert result.norm >= fib(n)
    if n >= 2:
        assert result.norm <= 2 ** (n - 2)


@pytest.mark.parametrize("n", range(3, 10))
def test_two_letter_norm_is_exact_past_the_fibonacci_range(n):
    inst = fam_two_letter_bn(n, "length")
    assert inst.exact
    assert inst.expected_norm == two_letter_norm(n, 1)
    assert check(inst).norm == two_letter_norm(n, 1)


def test_two_letter_norm_beats_fibonacci():
    assert [two_letter_norm(n, 1) for n in range(3, 9)] == [2, 3, 6, 10, 20, 35]


@pytest.mark.parametrize("theta", range(1, 5))
def test_theta_lower_family(theta):
    result = check(fam_theta_lower(theta, "length"))
    assert result.norm == 2 ** (theta - 1)
    assert result.theta == theta


def test_theta_lower_is_a_lower_bound_elsewhere():
    for order in ("fibo", "supergeom"):
        inst = fam_theta_lower(3, order)
        assert not inst.exact
        assert check(inst).norm >= 4


@pytest.mark.parametrize("n", range(0, 6))
def test_length_sharp_family(n):
    assert check(fam_length_sharp(n)).norm == 2 ** n


@pytest.mark.parametrize("n", range(1, 6))
def test_lyndon_sharp_family(n):
    assert check(fam_lyndon_sharp(n)).norm == 2 ** (n - 1)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_saturated_fibo_family(p):
    result = check(fam_fibo_sature(p))
    assert result.norm == a_theta(p + 1)
    assert result.theta == p + 1


def test_saturated_fibo_example():
    assert check(fam_fibo_sature(2, 2)).norm == 4


@pytest.mark.parametrize("p,nu", [(2, 0), (2, 3), (3, 0), (3, 2), (4, 1)])
def test_supergeom_family(p, nu):
    inst = fam_super_geom(p, nu)
    assert inst.hall_set.magma.length(inst.b) == supergeom_length(p, nu)
    result = check(inst)
    assert result.norm == p ** nu + p - 2
    assert result.theta == p - 1 + nu
    assert inst.checks == {"chain_members": True, "chain_scores": True}


def test_supergeom_example():
    assert check(fam_super_geom(3, 2)).norm == 10


def test_supergeom_at_length():
    inst = fam_super_geom_at_length(12)
    assert inst.hall_set.magma.length(inst.b) == 12
    check(inst)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sharp_family(n):
    result = check(fam_sharp_en1(n))
    assert result.norm == bound_general_theta(n)
    assert result.theta == n


@pytest.mark.parametrize("n", range(2, 6))
def test_alphabetic_factorial_family(n):
    assert check(fam_alphabetic_factorial(n)).norm == math.factorial(n - 1)


def test_family_errors():
    with pytest.raises(KernelError) as info:
        fam_two_letter_bn(3, "supergeom")
    assert info.value.code == "FAMILY_ORDER_MISMATCH"
    with pytest.raises(KernelError) as info:
        fam_x3(2, "length", k=2)
    assert info.value.code == "ALPHABET_TOO_SMALL"
    with pytest.raises(ValueError):
        fam_two_letter_bn(0)
    with pytest.raises(ValueError):
        fam_super_geom(1, 0)


def test_registry_names():
    assert set(FAMILIES) >= {"x3", "two-letter", "fibo-sature", "supergeom", "sharp-en1", "alphabetic-factorial"}
    assert FAMILIES["x3"] is fam_x3

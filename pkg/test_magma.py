#!/usr/bin/env python3
"""
Tests for the free magma: interning, structure and bracket text
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hall_kernel.magma import LEAF, Letter, Magma
from hall_kernel.utils.error_handling import AlphabetError, ErrorCategory, ParseError


def nested_trees(k: int):
    return st.recursive(st.integers(0, k - 1), lambda kids: st.tuples(kids, kids), max_leaves=12)


def test_letters_own_the_first_ids():
    m = Magma(3)
    assert [m.intern_leaf(i) for i in range(3)] == [0, 1, 2]
    assert m.intern_leaf(Letter(2)) == 2
    assert Letter(1).name == "X1"
    assert len(m) == 3


def test_interning_is_canonical():
    m = Magma(2)
    t1 = m.intern_node(0, 1)
    t2 = m.intern_node(0, 1)
    assert t1 == t2 == 2
    assert m.intern_node(1, 0) != t1
    assert len(m) == 4


def test_letter_out_of_range():
    m = Magma(2)
    with pytest.raises(AlphabetError) as info:
        m.intern_leaf(2)
    assert info.value.category == ErrorCategory.VALIDATION
    with pytest.raises(AlphabetError):
        m.parse_tree("[X0,X7]")


def test_unknown_tree_id():
    m = Magma(2)
    with pytest.raises(ValueError):
        m.intern_node(0, 99)


def test_structure_of_a_node():
    m = Magma(2)
    t = m.build(((0, 1), 1))
    assert m.length(t) == 3
    assert m.foliage(t) == (0, 1, 1)
    assert m.letter_counts(t) == (1, 2)
    assert m.count_letter(t, 1) == 2
    assert m.max_letter(t) == 1
    assert m.lambda_of(t) == m.build((0, 1))
    assert m.mu_of(t) == 1
    assert not m.is_leaf(t)
    assert m.letter_index(t) == LEAF


def test_factors_undefined_on_letters():
    m = Magma(2)
    with pytest.raises(ValueError):
        m.lambda_of(0)
    with pytest.raises(ValueError):
        m.mu_of(1)
    assert m.letter_of(1) == Letter(1)


def test_iterated_left_factors():
    m = Magma(2)
    x01 = m.build((0, 1))
    t = m.build((((0, 1), 1), (0, 1)))
    assert m.iterated_left_factors(t) == [t, m.lambda_of(t), x01, 0]
    assert m.iterated_left_factors(1) == [1]
    assert m.iterated_left_factors(x01) == [x01, 0]


def test_ad_power_sides():
    m = Magma(2)
    assert m.format_tree(m.ad_power(0, 1, 2, "left")) == "[X0,[X0,X1]]"
    assert m.format_tree(m.ad_power(1, 0, 2, "right")) == "[[X0,X1],X1]"
    assert m.ad_power(0, 1, 0) == 1
    with pytest.raises(ValueError):
        m.ad_power(0, 1, -1)
    with pytest.raises(ValueError):
        m.ad_power(0, 1, 1, "middle")


def test_parse_ignores_whitespace():
    m = Magma(3)
    t = m.parse_tree("[ X0 , [X1,X2] ]")
    assert m.format_tree(t) == "[X0,[X1,X2]]"


@pytest.mark.parametrize("text", ["[X0,X1", "X", "[X0 X1]", "", "[X0,X1]]"])
def test_parse_errors_carry_a_position(text):
    m = Magma(2)
    with pytest.raises(ParseError) as info:
        m.parse_tree(text)
    assert info.value.code == "SYNTAX_ERROR"
    assert "position" in info.value.context


@settings(max_examples=100, deadline=None)
@given(nested_trees(3))
def test_text_round_trip(nested):
    m = Magma(3)
    t = m.build(nested)
    text = m.format_tree(t)
    assert m.parse_tree(text) == t
    assert m.format_tree(m.parse_tree(text)) == text


@settings(max_examples=100, deadline=None)
@given(nested_trees(3))
def test_structure_is_consistent(nested):
    m = Magma(3)
    t = m.build(nested)
    assert m.length(t) == len(m.foliage(t)) == sum(m.letter_counts(t))
    chain = m.iterated_left_factors(t)
    assert m.is_leaf(chain[-1])
    assert chain[-1] == m.foliage(t)[0]

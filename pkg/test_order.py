#!/usr/bin/env python3
"""
Tests for the Hall orders and the Lyndon word helpers
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hall_kernel.hall import generate, witt_dimension
from hall_kernel.magma import Magma
from hall_kernel.order import (Comparison, HallOrderSpec, OrderKind, SharpEn1Order, SuperGeomOrder,
                               is_lyndon, lyndon_bracketing, lyndon_standard_factorization,
                               lyndon_words, make_order, parse_word)
from hall_kernel.families import sharp_order_properties
from hall_kernel.utils.error_handling import DomainError, ErrorCategory, KernelError

X0, X1, X2 = 0, 1, 2


def all_trees(m: Magma, max_len: int):
    by_len = {1: list(range(m.alphabet_size))}
    for n in range(2, max_len + 1):
        by_len[n] = [m.intern_node(a, b)
                     for i in range(1, n)
                     for a in by_len[i]
                     for b in by_len[n - i]]
    return [t for n in sorted(by_len) for t in by_len[n]]


def order_for(kind: OrderKind, k: int = 2, n=None, memoize=True):
    return make_order(HallOrderSpec(kind, k, n), memoize=memoize)


def assert_strict_total(order, trees):
    ordered = order.sorted(trees)
    for i, x in enumerate(ordered):
        assert order.sign(x, x) == 0
        for y in ordered[i + 1:]:
            assert order.sign(x, y) == -1
            assert order.sign(y, x) == 1


# -- specs ----------------------------------------------------------------------

def test_spec_parse():
    spec = HallOrderSpec.parse("sharp:3")
    assert spec.kind == OrderKind.SHARP_EN1
    assert spec.alphabet_size == 4 and spec.n == 3
    assert spec.name == "sharp:3"
    assert HallOrderSpec.parse("length", 3).alphabet_size == 3
    assert HallOrderSpec.parse("fibo").alphabet_size == 2


@pytest.mark.parametrize("text,k", [("supergeom", 3), ("fibo", 4), ("sharp:3", 3), ("sharp:1", None), ("hall", 2)])
def test_spec_rejects_bad_combinations(text, k):
    with pytest.raises(KernelError) as info:
        HallOrderSpec.parse(text, k)
    assert info.value.category == ErrorCategory.VALIDATION


def test_magma_alphabet_must_match():
    with pytest.raises(KernelError):
        make_order(HallOrderSpec(OrderKind.LENGTH_LEX, 3), Magma(2))


# -- comparisons ------------------------------------------------------------------

def test_length_lex_examples():
    order = order_for(OrderKind.LENGTH_LEX)
    m = order.magma
    x01 = m.build((0, 1))
    assert order.compare(X1, x01) == Comparison.LESS
    assert order.compare(X0, X1) == Comparison.LESS
    assert order.compare(x01, x01) == Comparison.EQUAL
    assert order.less(m.build((0, (0, 1))), m.build((1, (0, 1))))


def test_fibo_min_examples():
    order = order_for(OrderKind.FIBO_MIN)
    m = order.magma
    assert order.compare(m.build((0, (0, 1))), X1) == Comparison.LESS
    assert order.compare(X0, m.build((0, 1))) == Comparison.LESS
    assert order.compare(m.build((0, 1)), m.build((0, (0, 1)))) == Comparison.GREATER


def test_lyndon_examples():
    order = order_for(OrderKind.LYNDON)
    m = order.magma
    assert order.compare(m.build((0, 1)), m.build((0, (0, 1)))) == Comparison.GREATER
    assert order.compare(m.build(((0, 1), 1)), X1) == Comparison.LESS


def test_supergeom_scores_and_blocks():
    order: SuperGeomOrder = order_for(OrderKind.SUPER_GEOM)
    assert [order.score(order.block(i)) for i in range(6)] == [0, 1, 2, 3, 6, 12]
    assert order.compare(order.block(2), order.block(3)) == Comparison.LESS
    t = order.magma.intern_node(order.block(1), order.block(3))
    assert order.score(t) == 4
    assert order.block_index(order.block(4)) == 4


def test_supergeom_domain():
    order: SuperGeomOrder = order_for(OrderKind.SUPER_GEOM)
    m = order.magma
    x10 = m.build((1, 0))
    assert not order.in_domain(x10)
    assert order.in_domain(order.block(4))
    assert order.in_domain(X0) and order.in_domain(X1)
    with pytest.raises(DomainError) as info:
        order.compare(x10, X0)
    assert info.value.category == ErrorCategory.DOMAIN


def test_supergeom_germ_reassembles():
    order: SuperGeomOrder = order_for(OrderKind.SUPER_GEOM)
    m = order.magma
    t = m.ad_power(X1, m.intern_node(order.block(1), order.block(2)), 3, "right")
    germ, nu = order.germ(t)
    assert nu == 3
    assert m.ad_power(X1, germ, nu, "right") == t
    block_germ, block_nu = order.germ(order.block(1))
    assert block_germ == order.block(1) and block_nu == 0


def test_sharp_pieces():
    order: SharpEn1Order = order_for(OrderKind.SHARP_EN1, 4, 3)
    m = order.magma
    assert order.piece(X0) == 1
    assert order.piece(order.a_pi([2, 3])) == 1
    assert order.piece(m.build((0, (2, 3)))) == order.OUTSIDE
    assert order.piece(X1) == 2
    assert order.piece(order.x1_chain(2)) == 2
    assert order.piece(X2) == 3
    assert order.piece(m.build((2, 3))) == 3
    assert order.piece(m.build(((0, 2), 1))) == 4
    assert order.piece(m.build((((0, 2), 1), 3))) == 4
    assert order.piece(m.build((1, (0, 2)))) == 4
    assert order.piece(m.build(((0, 1), 0))) == order.OUTSIDE
    assert order.x1_chain(4) == X1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sharp_order_properties(n):
    order = order_for(OrderKind.SHARP_EN1, n + 1, n)
    assert all(sharp_order_properties(order, n + 2).values())


def test_sharp_letters_keep_their_order():
    order = order_for(OrderKind.SHARP_EN1, 5, 4)
    assert order.sorted([4, 3, 2, 1, 0]) == [0, 1, 2, 3, 4]
    for pi in [(), (2,), (2, 4), (3, 4), (2, 3, 4)]:
        assert order.sign(order.a_pi(pi), X1) < 0
    for j in range(2, 4):
        assert order.sign(order.x1_chain(j + 1), j) < 0


# -- total order properties -----------------------------------------------------------

@pytest.mark.parametrize("kind,k,n", [
    (OrderKind.LENGTH_LEX, 2, None),
    (OrderKind.LYNDON, 2, None),
    (OrderKind.FIBO_MIN, 2, None),
    (OrderKind.LENGTH_LEX, 3, None),
    (OrderKind.LYNDON, 3, None),
    (OrderKind.SHARP_EN1, 3, 2),
    (OrderKind.ALPHABETIC, 3, None),
])
def test_strict_total_order_on_short_trees(kind, k, n):
    order = order_for(kind, k, n)
    trees = all_trees(order.magma, 4 if k == 2 else 3)
    assert_strict_total(order, trees)


def test_supergeom_total_on_its_domain():
    order: SuperGeomOrder = order_for(OrderKind.SUPER_GEOM)
    trees = [t for t in all_trees(order.magma, 5) if order.in_domain(t)]
    assert len(trees) > 10
    assert_strict_total(order, trees)


def test_length_lex_is_length_compatible():
    order = order_for(OrderKind.LENGTH_LEX)
    m = order.magma
    trees = all_trees(m, 5)
    ordered = order.sorted(trees)
    assert [m.length(t) for t in ordered] == sorted(m.length(t) for t in trees)


@pytest.fixture(scope="module")
def supergeom_set():
    return generate(HallOrderSpec(OrderKind.SUPER_GEOM, 2), 8)


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_supergeom_memo_agrees_with_recomputation(data, supergeom_set):
    t1 = data.draw(st.sampled_from(supergeom_set.members))
    t2 = data.draw(st.sampled_from(supergeom_set.members))
    plain = make_order(supergeom_set.spec, supergeom_set.magma, memoize=False)
    assert plain.sign(t1, t2) == supergeom_set.order.sign(t1, t2)


# -- Lyndon words ---------------------------------------------------------------------

def test_lyndon_words_small():
    assert set(lyndon_words(2, 3)) == {(0,), (1,), (0, 1), (0, 0, 1), (0, 1, 1)}
    words = list(lyndon_words(2, 6))
    assert words == sorted(words)


@pytest.mark.parametrize("n", range(1, 11))
def test_lyndon_word_counts_match_witt(n):
    assert sum(1 for w in lyndon_words(2, n) if len(w) == n) == witt_dimension(2, n)


def test_standard_factorization():
    assert lyndon_standard_factorization((0, 0, 1, 1)) == ((0, 0, 1), (1,))
    assert lyndon_standard_factorization((0, 1)) == ((0,), (1,))
    with pytest.raises(ValueError):
        lyndon_standard_factorization((0, 0))
    with pytest.raises(ValueError):
        lyndon_standard_factorization((0,))


def test_lyndon_bracketing():
    m = Magma(2)
    assert lyndon_bracketing(m, (0, 1)) == m.build((0, 1))
    assert m.format_tree(lyndon_bracketing(m, parse_word("0011"))) == "[[X0,[X0,X1]],X1]"
    assert is_lyndon((0, 1, 1)) and not is_lyndon((1, 0)) and not is_lyndon(())
    with pytest.raises(ValueError):
        parse_word("0a1")

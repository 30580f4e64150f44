from math import comb, prod

import pytest
from hypothesis import given, strategies as st

from conftest import elements
from schubcone.errors import InvalidInput, ParityViolation, ResourceLimit
from schubcone.roots import Root, RootSystemSpec, positive_roots, simple_roots
from schubcone.weyl import (
    SignedPermutation, act_on_root, apply, all_reduced_words, basic_involutions,
    enumerate_group, from_one_line, group_order, identity, inverse,
    inversion_length, involutions, is_basic_involution, left_descents, length,
    reduced_word, reflection, right_descents, simple_reflection, support,
    word_product,
)


def root_inversions(w):
    """Independent length: positive roots sent to negative roots."""
    return sum(1 for a in positive_roots(w.spec) if not act_on_root(w, a).is_positive())


def test_parity_enforced():
    with pytest.raises(ParityViolation):
        from_one_line("D", "-2,4,1,3")
    with pytest.raises(InvalidInput):
        from_one_line("D", "1,1,2,3")
    with pytest.raises(InvalidInput):
        from_one_line("A", "-1,2,3")
    from_one_line("B", "-2,4,1,3")


def test_signed_application():
    w = from_one_line("D", "-2,4,1,-3")
    assert [w(i) for i in (1, 2, 3, 4)] == [-2, 4, 1, -3]
    assert [w(-i) for i in (1, 2, 3, 4)] == [2, -4, -1, 3]
    for bad in (0, 5, -5):
        with pytest.raises(InvalidInput):
            apply(w, bad)


@pytest.mark.parametrize("family,rank,order", [
    ("A", 2, 6), ("A", 3, 24), ("B", 2, 8), ("B", 3, 48), ("C", 3, 48),
    ("D", 3, 24), ("D", 4, 192), ("D", 5, 1920),
])
def test_group_order_matches_enumeration(family, rank, order):
    spec = RootSystemSpec(family, rank)
    assert group_order(spec) == order
    if order <= 2000:
        assert len(set(enumerate_group(spec))) == order


def test_enumeration_budget():
    with pytest.raises(ResourceLimit):
        list(enumerate_group(RootSystemSpec("D", 8), budget=1000))


def test_length_three_ways(small_spec):
    for w in enumerate_group(small_spec):
        l = root_inversions(w)
        assert length(w) == l
        assert inversion_length(w) == l
        assert len(reduced_word(w)) == l
        assert word_product(small_spec, reduced_word(w)) == w


def test_longest_element_length(small_spec):
    top = max(enumerate_group(small_spec), key=length)
    assert length(top) == len(positive_roots(small_spec))


def test_simple_reflections_act_on_simple_roots(small_spec):
    simple = simple_roots(small_spec)
    for i, a in enumerate(simple, 1):
        s = simple_reflection(small_spec, i)
        assert act_on_root(s, a) == -a
        assert length(s) == 1
        # s_i permutes the other positive roots
        others = {b for b in positive_roots(small_spec) if b != a}
        assert {act_on_root(s, b) for b in others} == others


@given(elements("D", 4), elements("D", 4))
def test_group_laws_D4(u, v):
    e = identity(u.spec)
    assert u * inverse(u) == e == inverse(u) * u
    assert inverse(u * v) == inverse(v) * inverse(u)
    assert length(inverse(u)) == length(u)
    assert length(u * v) <= length(u) + length(v)
    for a in positive_roots(u.spec):
        assert act_on_root(u * v, a) == act_on_root(u, act_on_root(v, a))


@given(st.sampled_from(["A", "B", "C", "D"]).flatmap(lambda f: elements(f, 3)))
def test_descents_change_length(w):
    for i in range(1, w.rank + 1):
        s = simple_reflection(w.spec, i)
        step = -1 if i in right_descents(w) else 1
        assert length(w * s) == length(w) + step
        step = -1 if i in left_descents(w) else 1
        assert length(s * w) == length(w) + step


def test_reflection_formula():
    d4 = RootSystemSpec("D", 4)
    assert reflection(d4, Root((0, 0, 1, 1))).images == (1, 2, -4, -3)
    assert reflection(d4, Root((1, 0, -1, 0))).images == (3, 2, 1, 4)
    for a in positive_roots(d4):
        s = reflection(d4, a)
        assert act_on_root(s, a) == -a
        assert s * s == identity(d4)
        assert length(s) % 2 == 1


def test_all_reduced_words():
    a2 = RootSystemSpec("A", 2)
    w0 = word_product(a2, [1, 2, 1])
    assert all_reduced_words(w0) == {(1, 2, 1), (2, 1, 2)}
    d4 = RootSystemSpec("D", 4)
    w = from_one_line("D", "-2,4,1,-3")
    words = all_reduced_words(w)
    assert all(word_product(d4, wd) == w and len(wd) == length(w) for wd in words)
    assert reduced_word(w) in words
    with pytest.raises(ResourceLimit):
        all_reduced_words(max(enumerate_group(d4), key=length), cap=8)


def basic_count(n):
    # partial matchings of n points with a sign on every matched pair
    return sum(comb(n, 2 * k) * prod(range(1, 2 * k, 2)) * 2 ** k for k in range(n // 2 + 1))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_basic_involution_count(n):
    basics = basic_involutions(RootSystemSpec("D", n))
    assert len(basics) == basic_count(n)
    assert all(is_basic_involution(w) for w in basics)
    assert set(basics) <= set(involutions(RootSystemSpec("D", n)))


def test_support_example_D6():
    s = from_one_line("D", "-6,2,5,4,3,-1")
    assert [str(b) for b in support(s)] == ["e1+e6", "e3-e5"]


@pytest.mark.parametrize("n", [4, 5])
def test_support_product_reproduces_element(n):
    spec = RootSystemSpec("D", n)
    for w in basic_involutions(spec):
        sup = support(w)
        u = identity(spec)
        for b in sup:
            u = u * reflection(spec, b)
        assert u == w
        # the support is orthogonal and uses each column at most once
        assert all(a.dot(b) == 0 for a in sup for b in sup if a != b)
        assert len({a.support()[0][0] for a in sup}) == len(sup)


def test_support_rejects_non_basic():
    with pytest.raises(InvalidInput):
        support(from_one_line("D", "-1,-2,3,4"))
    with pytest.raises(InvalidInput):
        support(from_one_line("D", "2,3,1,4"))

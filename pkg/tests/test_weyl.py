import itertools

import pytest
from hypothesis import given, strategies as st

from degen.errors import DomainError
from degen.rootsys import build_root_system
from degen.weyl import (
    build_wc,
    element_of,
    extremal_columns,
    identity,
    inversion_set,
    inversion_set_direct,
    inversion_set_from_word,
    reduced_word,
    verify_prop_weylgroup,
    wc_by_definition,
    wc_element,
    wc_type_a_violations,
    word_to_element,
)

from strategies import root_systems, systems_with_cuts

A2 = build_root_system("A", 2)
A3 = build_root_system("A", 3)
B2 = build_root_system("B", 2)


def test_word_to_element_a3():
    w, red = word_to_element(A3, [2, 3, 1])
    assert w.one_line() == (3, 1, 4, 2) and red


def test_non_reduced_word():
    w, red = word_to_element(A2, [1, 1])
    assert w == identity(A2) and not red


def test_b2_sign_change():
    w, red = word_to_element(B2, [2])
    assert w.one_line() == (1, -2) and red


def test_inversion_set_a3():
    w, _ = word_to_element(A3, [2, 3, 1])
    assert inversion_set(w) == {A3.root("1,1"), A3.root("3,3"), A3.root("1,3")}


def test_inversion_extremes():
    assert inversion_set(identity(A2)) == frozenset()
    w0, _ = word_to_element(A2, [1, 2, 1])
    assert inversion_set(w0) == set(A2.positive)


def test_build_wc_examples():
    assert list(build_wc(A2, [1])) == [2, 3, 1]
    assert len(build_wc(B2, [1])) == 4
    assert len(build_wc(build_root_system("D", 4), [1])) == 12


def test_build_wc_bad_cuts():
    with pytest.raises(DomainError):
        build_wc(A2, [3])


def test_extremal_columns_examples():
    assert extremal_columns(A2, [1], 1) == (3,)
    assert extremal_columns(A2, [1], 2) == (1, 3, 4)
    assert extremal_columns(A2, [], 1) == (3,)
    with pytest.raises(DomainError):
        extremal_columns(A2, [1], 3)
    with pytest.raises(DomainError):
        extremal_columns(build_root_system("C", 3), [1], 1)


def test_prop_a2():
    assert verify_prop_weylgroup(A2, [1]).ok


@given(root_systems(4), st.lists(st.integers(1, 4), max_size=12))
def test_inversion_set_from_word_matches_direct(rs, word):
    word = [i for i in word if i <= rs.rank]
    w, red = word_to_element(rs, word)
    if red:
        assert set(inversion_set_from_word(rs, word)) == inversion_set_direct(w)
    assert w.length() <= len(word)


@given(root_systems(5), st.lists(st.integers(1, 5), max_size=14))
def test_reduced_word_is_reduced_and_equivalent(rs, word):
    w = element_of(rs, [i for i in word if i <= rs.rank])
    r = reduced_word(w)
    v, red = word_to_element(rs, r)
    assert v == w and red and len(r) == w.length()


@given(root_systems(4), st.lists(st.integers(1, 4), max_size=8), st.lists(st.integers(1, 4), max_size=8))
def test_group_laws(rs, x, y):
    a = element_of(rs, [i for i in x if i <= rs.rank])
    b = element_of(rs, [i for i in y if i <= rs.rank])
    assert a * a.inverse() == identity(rs)
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(systems_with_cuts(5))
def test_prop_weylgroup(pair):
    rs, c = pair
    rep = verify_prop_weylgroup(rs, c)
    assert rep.ok, rep.failures[:3]
    big, word, w = wc_element(rs, c)
    assert len(word) == len(rs.positive) == w.length()
    assert w == wc_by_definition(rs, c)


def test_d_lengths():
    for n in (4, 5, 6):
        rs = build_root_system("D", n)
        for c in ([], [1], list(range(1, n - 2))):
            assert len(build_wc(rs, c)) == n * (n - 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_type_a_closed_form(n):
    rs = build_root_system("A", n)
    for t in range(n):
        for c in itertools.combinations(range(1, n), t):
            assert wc_type_a_violations(rs, c) == []

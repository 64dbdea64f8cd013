import pytest
from hypothesis import given, strategies as st

from degen.errors import DomainError
from degen.rootsys import build_root_system
from degen.stretch import (
    closure_and_convexity_check,
    ideal_exponents,
    image_set,
    pi_section,
    psi_property_report,
    psi_root,
    psi_root_by_definition,
    psi_weight,
    stretch_map,
)

from strategies import dominant, systems_with_cuts

A2 = build_root_system("A", 2)
B2 = build_root_system("B", 2)
B3 = build_root_system("B", 3)


def _labels(roots):
    return {str(r.label) for r in roots}


def test_sigma_a2():
    m = stretch_map(A2, [1])
    assert m.sigma == (1, 3) and m.t == 1 and m.missing == {2}


def test_image_a2():
    m = stretch_map(A2, [1])
    a3 = m.target
    assert image_set(m, A2) == {a3.root("1,1"), a3.root("3,3"), a3.root("1,3")}


def test_image_b2_has_four_roots_in_b3():
    m = stretch_map(B2, [1])
    img = image_set(m, B2)
    assert len(img) == 4 and m.target.rank == 3


def test_empty_cut_is_identity():
    for rs in (A2, B3, build_root_system("D", 4)):
        m = stretch_map(rs, [])
        assert image_set(m, rs) == set(rs.positive)


def test_closure_a2_passes():
    assert closure_and_convexity_check(stretch_map(A2, [1]), A2).ok


def test_fault_injection_breaks_closure():
    m = stretch_map(A2, [1])
    psi = {b: psi_root(m, A2, b) for b in A2.positive}
    # send alpha_12 somewhere wrong
    psi[A2.root("1,2")] = m.target.root("1,2")
    rep = closure_and_convexity_check(m, A2, psi)
    assert not rep.ok and rep.failures


def test_pi_two_short_b():
    res = pi_section(stretch_map(B3, [1]), "2,3b")
    assert res.kind == "two-short-B" and res.index == 2 and res.coords == (0, 2, 0)


def test_pi_type_a_always_root_or_zero():
    m = stretch_map(build_root_system("A", 3), [1, 2])
    kinds = {pi_section(m, b).kind for b in m.target.positive}
    assert kinds <= {"root", "zero"} and "root" in kinds


def test_psi_weight():
    m = stretch_map(A2, [1])
    assert tuple(psi_weight(m, [1, 1])) == (1, 0, 1)
    with pytest.raises(DomainError):
        psi_weight(m, [1, -1])
    with pytest.raises(DomainError):
        psi_weight(m, [1])


def test_ideal_exponents_at_zero():
    m = stretch_map(B3, [2])
    assert set(ideal_exponents(m, [0, 0, 0]).values()) == {1}


@given(systems_with_cuts(5))
def test_psi_matches_definition(pair):
    rs, c = pair
    m = stretch_map(rs, c)
    for b in rs.positive:
        assert psi_root(m, rs, b) == psi_root_by_definition(m, rs, b)


@given(systems_with_cuts(5))
def test_pi_inverts_psi(pair):
    rs, c = pair
    m = stretch_map(rs, c)
    for b in rs.positive:
        res = pi_section(m, psi_root(m, rs, b))
        assert res.kind == "root" and res.root == b


@given(systems_with_cuts(5))
def test_closure_and_convexity(pair):
    rs, c = pair
    assert closure_and_convexity_check(stretch_map(rs, c), rs).ok


@given(systems_with_cuts(4))
def test_psi_identities(pair):
    rs, c = pair
    rep = psi_property_report(stretch_map(rs, c), rs, 2)
    assert rep.ok, rep.failures[:3]


@given(systems_with_cuts(4), st.data())
def test_psi_weight_additive(pair, data):
    rs, c = pair
    m = stretch_map(rs, c)
    x = data.draw(dominant(rs.rank, 3))
    y = data.draw(dominant(rs.rank, 3))
    s = tuple(a + b for a, b in zip(x, y))
    assert tuple(psi_weight(m, s)) == tuple(a + b for a, b in zip(psi_weight(m, x), psi_weight(m, y)))

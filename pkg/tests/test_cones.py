import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from degen.cones import (
    ConeSpec,
    DegreeVector,
    abelianisation_cone,
    all_cut_sets,
    constant_point,
    dynkin_cone,
    facet_witness,
    height_point,
    implied_equalities,
    membership,
    random_cone_point,
    relint_point,
    summable_pairs,
    validate_cuts,
    violated,
)
from degen.errors import DomainError
from degen.rootsys import build_root_system

from strategies import root_systems, systems_with_cuts

A2 = build_root_system("A", 2)
A3 = build_root_system("A", 3)
B2 = build_root_system("B", 2)


def _coeffs(rs, c):
    return {str(rs.positive[k].label): int(v) for k, v in c.coeffs}


def test_a2_single_constraint():
    (c,) = abelianisation_cone(A2).inequalities()
    want = {str(A2.root(s).label): v for s, v in (("1,1", 1), ("2,2", 1), ("1,2", -1))}
    assert _coeffs(A2, c) == want


def test_constraint_counts_are_unordered_pairs():
    assert len(abelianisation_cone(A3).inequalities()) == 4
    assert len(abelianisation_cone(B2).inequalities()) == 2
    assert len(summable_pairs(A3)) == 4


def test_dynkin_a2_cut():
    cone = dynkin_cone(A2, [1])
    assert len(cone.inequalities()) == 1 and cone.equalities() == []


def test_dynkin_a3_empty_cut():
    cone = dynkin_cone(A3, [])
    eqs = cone.equalities()
    assert cone.inequalities() == []
    # four base equalities plus one rule d12 + d23 = d13 + d22
    assert len(eqs) == 5
    assert sum(1 for c in eqs if c.tag == "DO") == 1


def test_dynkin_b2_cut_constraints_are_pa():
    cone = dynkin_cone(B2, [1])
    assert cone.inequalities() and all(c.tag == "PA" for c in cone.inequalities())


def test_membership_oracles():
    assert membership(abelianisation_cone(A2), [2, 2, 2], "relint")
    assert membership(abelianisation_cone(A2), constant_point(A2, 2), "closure")
    cone = dynkin_cone(A2, [1])
    assert membership(cone, height_point(A2))
    assert not membership(cone, height_point(A2), "relint")
    assert membership(cone, [1, 1, 1], "relint")


def test_membership_dimension_mismatch():
    with pytest.raises(DomainError):
        membership(abelianisation_cone(A2), [1, 1])
    with pytest.raises(DomainError):
        membership(abelianisation_cone(A2), [1, 1, 1], "interior")


def test_facet_witness_a2():
    d = facet_witness(A2, "1,1", "2,2", "1,2")
    assert d["1,1"] == 1 and d["2,2"] == 1 and d["1,2"] == 3
    assert len(violated(abelianisation_cone(A2), d)) == 1


def test_facet_witness_invalid_triple():
    with pytest.raises(DomainError):
        facet_witness(A2, "1,1", "1,2", "2,2")


def test_facet_witness_a3_and_b2():
    for rs, t in ((A3, ("1,1", "2,3", "1,3")), (B2, ("2,2", "1,2", "1,2b"))):
        bad = violated(abelianisation_cone(rs), facet_witness(rs, *t))
        assert len(bad) == 1


def test_cut_validation():
    with pytest.raises(DomainError):
        validate_cuts(A2, [2])
    with pytest.raises(DomainError):
        validate_cuts(A3, [2, 1, 1])
    assert [tuple(c) for c in all_cut_sets(A3)] == [(), (1,), (2,), (1, 2)]


def test_cone_json_roundtrip():
    cone = dynkin_cone(build_root_system("B", 3), [1, 2])
    again = ConeSpec.from_json(cone.to_json())
    assert again.inequalities() == cone.inequalities()
    assert again.equalities() == cone.equalities()


@given(root_systems(5))
def test_witnesses_violate_only_their_own_facet(rs):
    cone = abelianisation_cone(rs)
    for a, b, g in summable_pairs(rs):
        (bad,) = violated(cone, facet_witness(rs, a, b, g))
        own = {(rs.index[a.coords], 1), (rs.index[b.coords], 1), (rs.index[g.coords], -1)}
        assert {(k, int(v)) for k, v in bad.coeffs} == own


@given(systems_with_cuts(5))
def test_relint_point_is_in_relint(pair):
    rs, c = pair
    cone = dynkin_cone(rs, c)
    d = relint_point(cone)
    assert membership(cone, d, "relint")
    assert membership(abelianisation_cone(rs), d, "closure")


@given(systems_with_cuts(5))
def test_dynkin_cone_contains_height_point(pair):
    rs, c = pair
    assert membership(dynkin_cone(rs, c), height_point(rs))


@given(root_systems(4), st.integers(0, 10_000))
def test_random_cone_points_are_interior(rs, seed):
    cone = abelianisation_cone(rs)
    d = random_cone_point(cone, random.Random(seed))
    assert membership(cone, d, "relint")
    assert all(isinstance(v, Fraction) for v in d.values)


def test_implied_equalities_of_abelianisation_cone_empty():
    for rs in (A3, B2, build_root_system("D", 4)):
        assert implied_equalities(abelianisation_cone(rs)) == frozenset()


def test_degree_vector_from_map():
    d = DegreeVector.from_map(A2, {"1,1": 1, "2,2": 2, "1,2": 3})
    assert d.values == (1, 3, 2)
    with pytest.raises(DomainError):
        DegreeVector.from_map(A2, {"1,1": 1})

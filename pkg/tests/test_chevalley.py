import pytest
from hypothesis import given

from degen.chevalley import (
    bracket_table,
    build_chevalley,
    chevalley_property_violations,
    graded_algebra,
    graded_bracket,
    jacobi_check,
    verify_laiso,
)
from degen.cones import DegreeVector, constant_point, dynkin_cone, height_point, relint_point
from degen.errors import ConeMembershipError
from degen.rootsys import build_root_system

from strategies import root_systems, systems_with_cuts

A2 = build_root_system("A", 2)
A3 = build_root_system("A", 3)
B3 = build_root_system("B", 3)


def test_jacobi_at_height_point():
    assert jacobi_check(graded_algebra(A3, height_point(A3)))


def test_jacobi_b3_relint():
    assert jacobi_check(graded_algebra(B3, relint_point(dynkin_cone(B3, [2]))))


def test_flipped_sign_breaks_jacobi():
    table = build_chevalley(B3)
    a, b = next(iter(table.constants))
    assert not jacobi_check(graded_algebra(B3, height_point(B3), table.with_flipped(a, b)))


def test_graded_bracket_height_point_keeps_everything():
    g = graded_algebra(A2, height_point(A2))
    got = graded_bracket(g, "1,1", "2,2")
    assert got is not None and got[1] == A2.root("1,2") and abs(got[0]) == 1
    assert graded_bracket(g, "1,2", "1,1") is None


def test_strict_superadditive_point_is_abelian():
    g = graded_algebra(A3, constant_point(A3, 2))
    assert bracket_table(g) == {}


def test_outside_cone():
    with pytest.raises(ConeMembershipError):
        graded_algebra(A2, DegreeVector.of(A2, [1, 3, 1]))


def test_laiso_examples():
    assert verify_laiso(A2, [1], DegreeVector.of(A2, [1, 1, 1])).ok
    rep = verify_laiso(A2, [], height_point(A2))
    assert rep.ok and set(rep.signs.values()) <= {1}
    assert verify_laiso(B3, [1], relint_point(dynkin_cone(B3, [1]))).ok


@given(root_systems(5))
def test_chevalley_properties(rs):
    assert chevalley_property_violations(rs) == []


@given(systems_with_cuts(4))
def test_laiso_at_relint(pair):
    rs, c = pair
    assert verify_laiso(rs, c, relint_point(dynkin_cone(rs, c))).ok

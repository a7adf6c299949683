import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanopoly.constructions import bipyramid, del_pezzo, direct_sum, direct_sum_all, polygon, segment
from fanopoly.equivalence import (
    are_equivalent,
    canonical_form,
    decompose_direct_sum,
    direct_sum_partition,
)
from fanopoly.errors import PreconditionError, UnsupportedClassError
from fanopoly.lattice import random_unimodular
from fanopoly.polytope import LatticePolytope

from conftest import EXAMPLE_A, str_fixtures
from oracles import brute_equivalent, matroid_components

SMALL = ["P3", "P4a", "P4b", "P5", "P6", "segment", "cross3", "A", "bipyr-P6", "skew-P6"]


@pytest.mark.parametrize("name", sorted(str_fixtures()))
def test_canonical_form_invariant_under_random_maps(name):
    P = str_fixtures()[name]
    key = canonical_form(P).key()
    for seed in range(100):
        Q = P.transform(random_unimodular(P.dim, seed))
        assert canonical_form(Q).key() == key


def test_canonical_form_shape():
    cf = canonical_form(polygon("P6"))
    assert cf.dim == 2
    assert len(cf.matrix) == 6
    assert list(cf.matrix) == sorted(cf.matrix)
    assert canonical_form(polygon("P6")) == cf


@pytest.mark.parametrize("a", SMALL)
@pytest.mark.parametrize("b", SMALL)
def test_equivalence_matches_bruteforce(a, b):
    fx = str_fixtures()
    P, Q = fx[a], fx[b]
    if P.dim != Q.dim or P.n != Q.n:
        assert not are_equivalent(P, Q)
        return
    assert are_equivalent(P, Q) == brute_equivalent(P.vertices, Q.vertices)


def test_named_equivalences():
    assert are_equivalent(polygon("P6"), del_pezzo(2))
    assert not are_equivalent(polygon("P4a"), polygon("P4b"))
    assert not are_equivalent(bipyramid(polygon("P6")), bipyramid(polygon("P6"), (1, 0)))
    assert are_equivalent(LatticePolytope(EXAMPLE_A), bipyramid(polygon("P5"), (1, 0)))
    # every skew apex over the hexagon gives the same class
    skews = [bipyramid(polygon("P6"), v) for v in polygon("P6").vertices]
    assert len({canonical_form(S).key() for S in skews}) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_equivalence_is_an_equivalence_relation(s1, s2):
    P = str_fixtures()["P5+P6"]
    Q = P.transform(random_unimodular(4, s1))
    R = Q.transform(random_unimodular(4, s2))
    assert are_equivalent(P, P)
    assert are_equivalent(P, Q) and are_equivalent(Q, P)
    assert are_equivalent(P, R)


def test_canonical_form_needs_unimodular_facet():
    Q = LatticePolytope([(2, -1), (-1, 2), (-1, -1)])
    with pytest.raises(UnsupportedClassError):
        canonical_form(Q)


def partition_as_sets(P):
    return sorted((frozenset(s) for s in direct_sum_partition(P)), key=min)


@pytest.mark.parametrize("name", sorted(str_fixtures()))
def test_partition_matches_matroid_oracle(name):
    P = str_fixtures()[name]
    if P.n > 12:
        pytest.skip("circuit enumeration too large")
    assert partition_as_sets(P) == matroid_components(P.vertices)


def test_decompositions():
    fx = str_fixtures()
    assert len(decompose_direct_sum(fx["P6"])) == 1
    assert len(decompose_direct_sum(fx["skew-P6"])) == 1
    parts = decompose_direct_sum(fx["bipyr-P6"])
    assert sorted(p.dim for p in parts) == [1, 2]
    assert sum(are_equivalent(p, segment()) for p in parts) == 1
    assert sum(are_equivalent(p, polygon("P6")) for p in parts) == 1
    parts = decompose_direct_sum(fx["P5+P6"])
    assert sorted(p.n for p in parts) == [5, 6]
    assert len(decompose_direct_sum(fx["cross3"])) == 3


@pytest.mark.parametrize("name", ["bipyr-P6", "P5+P6", "cross3", "B", "DP4"])
def test_resumming_parts_recovers_class(name):
    P = str_fixtures()[name]
    assert are_equivalent(direct_sum_all(decompose_direct_sum(P)), P)


def test_decomposition_hidden_by_a_change_of_basis():
    P = direct_sum(polygon("P5"), direct_sum(polygon("P6"), segment()))
    Q = P.transform(random_unimodular(5, 7))
    assert sorted(p.n for p in decompose_direct_sum(Q)) == [2, 5, 6]


def test_decomposition_needs_interior_origin():
    with pytest.raises(PreconditionError):
        decompose_direct_sum(LatticePolytope([(0, 0), (1, 0), (0, 1)]))

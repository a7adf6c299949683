from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanopoly.constructions import del_pezzo, polygon
from fanopoly.errors import NotReflexiveError, PreconditionError
from fanopoly.invariants import (
    EtaVector,
    admissible_eta_vectors,
    are_distant,
    distant_vertex_pairs,
    eccentricity,
    eta_vector,
    excluded_eta_vector,
    frame,
    good_vertices,
    level_sets,
    phi,
    special_facets,
    vertex_sum,
)
from fanopoly.lattice import random_unimodular
from fanopoly.polytope import LatticePolytope, facets

from conftest import EXAMPLE_B, str_fixtures
from oracles import level_histogram


def facet_by_normal(P, normal):
    (fid,) = [i for i, F in enumerate(facets(P)) if F.normal == tuple(normal)]
    return fid


def facet_by_vertices(P, verts):
    want = {P.index(v) for v in verts}
    (fid,) = [i for i, F in enumerate(facets(P)) if set(F.vertices) == want]
    return fid


E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def test_example_a_special_facets(A):
    assert vertex_sum(A) == (1, 1, 0)
    special = {facets(A)[f].normal for f in special_facets(A)}
    assert special == {(1, 1, 1), (1, 1, 0)}
    F = facet_by_vertices(A, [E1, E2, E3])
    G = facet_by_vertices(A, [E1, E2, (1, 0, -1)])
    assert facets(A)[F].normal == (1, 1, 1)
    assert facets(A)[G].normal == (1, 1, 0)
    assert str(eta_vector(A, F)) == "(3,3,1)"
    assert eta_vector(A, G) == eta_vector(A, F)
    assert eccentricity(A) == 2


def test_example_a_phi(A):
    F = facet_by_vertices(A, [E1, E2, E3])
    ph = phi(A, F)
    assert A[ph[A.index(E1)]] == E2
    assert A[ph[A.index(E2)]] == E1
    assert A[ph[A.index(E3)]] == E1
    assert {A[v] for v in good_vertices(A, F)} == {E1, E2, E3}
    # -e1 is a vertex, so phi(phi(e1)) = e1
    assert ph[ph[A.index(E1)]] == A.index(E1)


def test_example_a_distant_pairs(A):
    pairs = {frozenset((A[i], A[j])) for i, j in distant_vertex_pairs(A)}
    non_antipodal = {
        frozenset({E1, (-1, 1, 0)}),
        frozenset({E2, (-1, 0, 0)}),
        frozenset({E2, (1, -1, 0)}),
        frozenset({E3, (1, 0, -1)}),
    }
    antipodal = {frozenset({E1, (-1, 0, 0)}), frozenset({(1, -1, 0), (-1, 1, 0)})}
    assert pairs == non_antipodal | antipodal
    # the printed list has (e1, -e2), but -e2 is not a vertex of A
    assert not A.has_vertex((0, -1, 0))


def test_example_b_eta_vectors(B):
    assert vertex_sum(B) == (0, 0, 0, 0)
    assert len(special_facets(B)) == 24
    assert eccentricity(B) == 0
    F = facet_by_normal(B, (1, 1, 1, 1))
    # u_H = 1 - e1; the printed form -e2-e3-e4 has the wrong sign
    H = facet_by_normal(B, (0, 1, 1, 1))
    assert set(facets(B)[H].vertices) == {B.index(v) for v in
                                          [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, 1, 0, 0)]}
    assert str(eta_vector(B, F)) == "(4,2,4)"
    assert str(eta_vector(B, H)) == "(4,3,2,1)"
    assert [B[i] for i in level_sets(B, H)[-2]] == [(1, -1, -1, 0)]


def test_example_b_frames(B):
    F = facet_by_normal(B, (1, 1, 1, 1))
    H = facet_by_normal(B, (0, 1, 1, 1))
    fr = frame(B, F)
    e1 = B.index((1, 0, 0, 0))
    assert fr.neighbor[e1] == H
    assert B[fr.opposite[e1]] == (-1, 1, 0, 0)
    assert fr.vertex_normals[e1] == (1, 0, 0, 0)
    # the level -2 vertex of H is opposite to e3
    frH = frame(B, H)
    assert B[frH.opposite[B.index((0, 0, 1, 0))]] == (1, -1, -1, 0)


def test_example_b_good_vertices(B):
    F = facet_by_normal(B, (1, 1, 1, 1))
    good = {B[v] for v in good_vertices(B, F)}
    assert (1, 0, 0, 0) in good
    # e3 and e4 are not good: their opposite vertices e1-e2-e3 and e2-e1-e4
    # sit on level -1, so only e1 and e2 qualify
    assert good == {(1, 0, 0, 0), (0, 1, 0, 0)}
    fr = frame(B, F)
    assert B[fr.opposite[B.index((0, 0, 1, 0))]] == (1, -1, -1, 0)


def test_del_pezzo_good_but_phi_zero():
    P = del_pezzo(4)
    H = facet_by_vertices(P, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1)])
    assert facets(P)[H].normal == (1, 1, -1, -1)
    fr = frame(P, H)
    opp = {P[v]: P[fr.opposite[v]] for v in fr.facet.vertices}
    assert opp[(1, 0, 0, 0)] == opp[(0, 1, 0, 0)] == (-1, -1, -1, -1)
    assert opp[(0, 0, -1, 0)] == opp[(0, 0, 0, -1)] == (1, 1, 1, 1)
    assert len(good_vertices(P, H)) == 4
    assert phi(P, H).image() == set()


def test_planar_eta_vectors():
    for kind, eta, vp in (("P4a", "(2,0,2)", (0, 0)), ("P4b", "(2,1,1)", (1, 0))):
        P = polygon(kind)
        F = facet_by_vertices(P, [(1, 0), (0, 1)])
        assert F in special_facets(P)
        assert str(eta_vector(P, F)) == eta
        assert vertex_sum(P) == vp


@pytest.mark.parametrize("name", sorted(str_fixtures()))
def test_eta_matches_oracle(name):
    P = str_fixtures()[name]
    for fid, F in enumerate(facets(P)):
        assert eta_vector(P, fid).dense() == level_histogram(F.normal, P.vertices)


@pytest.mark.parametrize("name", sorted(str_fixtures()))
def test_eta_sum_identity(name):
    P = str_fixtures()[name]
    vp = vertex_sum(P)
    for fid, F in enumerate(facets(P)):
        eta = eta_vector(P, fid)
        assert eta.total == P.n
        assert eta[1] == P.dim
        assert eta.level_sum == F.level(vp)


@pytest.mark.parametrize("name", sorted(str_fixtures()))
def test_frame_duality(name):
    P = str_fixtures()[name]
    for fid in range(len(facets(P))):
        fr = frame(P, fid)
        for v, u in fr.vertex_normals.items():
            for w in fr.facet.vertices:
                assert sum(a * b for a, b in zip(u, P[w])) == (1 if w == v else 0)
            g = fr.neighbor[v]
            assert frame(P, g).opposite[fr.opposite[v]] == v


def test_distant_needs_a_shared_face(A):
    assert are_distant(A, E3, (1, 0, -1))
    assert not are_distant(A, E1, E2)


def test_eta_vector_format():
    eta = EtaVector.from_tuple((4, 3, 2, 1))
    assert str(eta) == "(4,3,2,1)"
    assert eta[-2] == 1 and eta[-5] == 0
    assert eta.lowest_level == -2
    assert EtaVector.from_tuple((4, 4, 1, 0, 1)).dense() == (4, 4, 1, 0, 1)
    assert EtaVector.from_levels([1, 1, -1, -1]) == EtaVector.from_tuple((2, 0, 2))
    with pytest.raises(ValueError):
        EtaVector.from_tuple((2, -1))


def table_columns(d):
    cols = [(d, d, d - 2), (d, d, d - 3, 1), (d, d - 1, d - 1), (d, d, d - 3, 0, 1),
            (d, d, d - 4, 2), (d, d - 1, d - 2, 1), (d, d - 2, d)]
    return {EtaVector.from_tuple(c) for c in cols if min(c) >= 0}


@pytest.mark.parametrize("d", range(2, 9))
def test_admissible_eta_vectors_are_the_table(d):
    assert admissible_eta_vectors(d, 3 * d - 2) == table_columns(d)


def test_admissible_counts():
    assert len(admissible_eta_vectors(4, 10)) == 7
    assert len(admissible_eta_vectors(3, 7)) == 6
    assert len(admissible_eta_vectors(2, 4)) == 4
    with pytest.raises(PreconditionError):
        admissible_eta_vectors(4, 11)


def test_excluded_column():
    assert str(excluded_eta_vector(5)) == "(5,5,2,0,1)"
    assert excluded_eta_vector(2) is None


def test_requires_reflexive():
    P = LatticePolytope([(1, 0), (-1, 0), (0, 2), (0, -2)])
    with pytest.raises(NotReflexiveError):
        eta_vector(P, 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_eta_multiset_is_a_lattice_invariant(seed):
    P = LatticePolytope(EXAMPLE_B)
    Q = P.transform(random_unimodular(4, seed))
    hist = lambda X: Counter(str(eta_vector(X, f)) for f in range(len(facets(X))))
    assert hist(Q) == hist(P)
    assert eccentricity(Q) == eccentricity(P)
    assert len(special_facets(Q)) == len(special_facets(P))

import importlib

import pytest

from fanopoly.catalog import (
    Recipe,
    box_candidate_count,
    box_classification,
    catalog,
    catalog_3d_minus_1,
    expected_centrally_symmetric,
    expected_class_count,
    verify_catalog,
)
from fanopoly.constructions import polygon
from fanopoly.equivalence import are_equivalent, canonical_form
from fanopoly.errors import ClassificationError, PolytopeError, PreconditionError
from fanopoly.polytope import LatticePolytope, is_centrally_symmetric, is_smooth_fano

from conftest import EXAMPLE_A, EXAMPLE_B


def keys(entries):
    return {e.class_id.key() for e in entries}


@pytest.mark.parametrize("d", range(1, 6))
def test_class_counts(d):
    for n in (3 * d - 2, 3 * d - 1, 3 * d):
        entries = catalog(d, n)
        assert len(entries) == expected_class_count(d, n)
        assert len(keys(entries)) == len(entries)
        for e in entries:
            assert (e.polytope.dim, e.polytope.n) == (d, n)
            assert is_smooth_fano(e.polytope)


def test_expected_counts_table():
    assert [expected_class_count(d, 3 * d - 2) for d in range(2, 9)] == [2, 4, 10, 5, 11, 5, 11]
    assert [expected_class_count(d, 3 * d - 1) for d in range(1, 7)] == [1, 1, 2, 1, 2, 1]
    assert [expected_class_count(d, 3 * d) for d in range(1, 7)] == [0, 1, 0, 1, 0, 1]
    with pytest.raises(PreconditionError):
        expected_class_count(4, 9)


def test_d3_has_four_classes():
    # the pentagon's skew apices w1, w2, w3 all give different classes
    entries = catalog(3, 7)
    assert sorted(e.name for e in entries) == sorted(
        f"bipyr[v={a}](P5)" for a in ("0", "w1", "w2", "w3"))


def test_paper_examples_are_catalogued():
    assert LatticePolytope(EXAMPLE_A).n == 7
    assert canonical_form(LatticePolytope(EXAMPLE_A)).key() in keys(catalog(3, 7))
    assert canonical_form(LatticePolytope(EXAMPLE_B)).key() in keys(catalog(4, 10))


@pytest.mark.parametrize("d", range(2, 6))
def test_exhaustive_candidates_agree(d):
    assert keys(catalog(d, 3 * d - 2, exhaustive=True)) == keys(catalog(d, 3 * d - 2))


def test_exhaustive_mode_records_aliases():
    entries = catalog(3, 7, exhaustive=True)
    aliases = {a for e in entries for a in e.aliases}
    assert "bipyr[v=w4](P5)" in aliases and "bipyr[v=w5](P5)" in aliases


@pytest.mark.parametrize("d", range(2, 6))
def test_bipyramid_bases_are_3d_minus_1(d):
    bases = [b.polytope for b in catalog_3d_minus_1(d - 1)]
    for e in catalog(d, 3 * d - 2):
        if e.recipe.op == "bipyr":
            assert any(are_equivalent(e.recipe.base.build(), B) for B in bases), e.name


def test_summand_counts():
    names = {e.name: e.recipe.summand_count for e in catalog(4, 10)}
    assert names["P5^2"] == 2
    assert names["DP4"] == 1
    assert sum(1 for k in names.values() if k == 1) == 9


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_centrally_symmetric_counts(d):
    sym = [e for e in catalog(d, 3 * d - 2) if is_centrally_symmetric(e.polytope)]
    assert len(sym) == expected_centrally_symmetric(d, 3 * d - 2)
    if d == 4:
        assert {e.name for e in sym} == {"DP4", "bipyr[v=0](bipyr[v=0](P6))"}


@pytest.mark.parametrize("d,n", [(2, 4), (3, 7), (4, 10), (5, 13), (4, 11), (5, 15)])
def test_recipe_round_trip(d, n):
    for e in catalog(d, n):
        r = Recipe.parse(e.name)
        assert r == e.recipe
        assert str(r) == e.name
        assert canonical_form(r.build()) == e.class_id


def test_recipe_strings():
    assert str(Recipe.sum([Recipe.leaf("P5"), Recipe.leaf("P5"), Recipe.leaf("P6")])) == "P5^2 + P6"
    nested = Recipe.bipyr(Recipe.bipyr(Recipe.power("P6", 2), "v1"), "x")
    assert str(nested) == "bipyr[v=x](bipyr[v=v1](P6^2))"
    assert Recipe.parse("PDP4 + (P6 + P5)") == Recipe.parse("PDP4 + P6 + P5")
    assert Recipe.parse("bipyr[v=0](P5)").build().vertex_set() == \
        Recipe.bipyr(Recipe.leaf("P5")).build().vertex_set()


def test_recipe_labels():
    P, labels = Recipe.parse("bipyr[v=v1'](P6^2)").build_labeled()
    assert labels["v1'"] == (0, 0, 1, 0, 0)
    assert labels["x"] == (0, 0, 0, 0, 1)
    assert labels["x'"] == (0, 0, 1, 0, -1)
    assert set(labels.values()) == P.vertex_set()
    Q, lab = Recipe.parse("bipyr[v=x](bipyr[v=0](point))").build_labeled()
    assert Q.vertex_set() == polygon("P4b").vertex_set()
    assert set(lab) == {"x", "x'", "y", "y'"}


@pytest.mark.parametrize("bad", ["", "P5 +", "bipyr[v=0](P5", "P9", "P5)", "^2"])
def test_recipe_parse_errors(bad):
    with pytest.raises(ValueError):
        Recipe.parse(bad).build()


def test_recipe_build_errors():
    with pytest.raises(PolytopeError):
        Recipe.parse("bipyr[v=w9](P5)").build()
    with pytest.raises(PreconditionError):
        Recipe.leaf("point").build()
    with pytest.raises(PolytopeError):
        Recipe.parse("bipyr[v=x](point)").build()


def test_dedup_reports_collisions(monkeypatch):
    cat = importlib.import_module("fanopoly.catalog")
    monkeypatch.setattr(cat, "expected_class_count", lambda d, n: 5)
    with pytest.raises(ClassificationError) as exc:
        catalog(3, 7, exhaustive=True)
    assert any(len(v) > 1 for v in exc.value.collisions.values())


@pytest.mark.parametrize("d", [2, 3, 4])
def test_verify_catalog(d):
    report = verify_catalog(d, 3 * d - 2)
    assert report.ok, [str(c) for c in report.failures]
    assert report.summary() == f"{expected_class_count(d, 3 * d - 2)} classes, all checks pass"
    names = {c.name for c in report.checks}
    assert {"class-count", "special-eta-admissible", "structure-lemmas",
            "centrally-symmetric-count"} <= names


def test_verify_catalog_other_counts():
    assert verify_catalog(4, 11, lemmas=False).summary() == "1 class, all checks pass"
    assert verify_catalog(5, 14, lemmas=False).ok
    with pytest.raises(PreconditionError):
        verify_catalog(4, 8)


def test_box_oracle_planar():
    # the five smooth Fano polygons of the figure, sorted by vertex count
    found = {n: box_classification(2, n) for n in range(3, 7)}
    assert [len(found[n]) for n in range(3, 7)] == [1, 2, 1, 1]
    assert set(found[4]) == keys(catalog(2, 4))
    assert set(found[5]) == keys(catalog(2, 5))
    assert set(found[6]) == keys(catalog(2, 6))


def test_box_oracle_small_counts():
    assert box_candidate_count(2) == 70
    assert box_candidate_count(3) == 657800
    assert box_classification(2, 9) == {}
    assert box_classification(2, 2) == {}


def test_d3_classes_distinct_by_bruteforce():
    import itertools

    from oracles import brute_equivalent

    entries = catalog(3, 7)
    for e, f in itertools.combinations(entries, 2):
        assert not brute_equivalent(e.polytope.vertices, f.polytope.vertices), (e.name, f.name)
    # and the five skew apices of the pentagon collapse to three classes
    skews = [Recipe.parse(f"bipyr[v=w{i}](P5)").build() for i in range(1, 6)]
    assert brute_equivalent(skews[3].vertices, skews[2].vertices)
    assert brute_equivalent(skews[4].vertices, skews[1].vertices)

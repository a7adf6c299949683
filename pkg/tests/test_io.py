import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanopoly.catalog import catalog
from fanopoly.constructions import polygon
from fanopoly.errors import ParseError
from fanopoly.invariants import eta_vector
from fanopoly.polytope import facets
from fanopoly.io import (
    HEADER,
    PolytopeFile,
    load,
    parse,
    parse_json,
    parse_text,
    read_polytope,
    serialize_json,
    serialize_text,
    write_polytope,
)

from conftest import EXAMPLE_A

EXAMPLE_A_TEXT = """#fano-poly v1
3 7
1 0 0
0 1 0
0 0 1
1 -1 0
-1 1 0
1 0 -1
-1 0 0
"""


def test_hexagon_text_layout():
    text = serialize_text(polygon("P6"))
    lines = text.splitlines()
    assert lines[0] == HEADER
    assert lines[1] == "2 6"
    assert len(lines) == 8
    assert all(len(row.split()) == 2 for row in lines[2:])
    assert parse(text).polytope() == polygon("P6")


def test_example_a_file():
    f = parse_text(EXAMPLE_A_TEXT)
    assert f.vertices == EXAMPLE_A
    assert f.lines == [3, 4, 5, 6, 7, 8, 9]
    P = f.polytope()
    assert serialize_text(P) == EXAMPLE_A_TEXT
    want = {P.index(v) for v in EXAMPLE_A[:3]}
    (F,) = [k for k, G in enumerate(facets(P)) if set(G.vertices) == want]
    assert str(eta_vector(P, F)) == "(3,3,1)"


def test_recipe_and_class_comments():
    e = catalog(4, 10)[0]
    text = serialize_text(e.polytope, e.recipe, e.class_id.key())
    lines = text.splitlines()
    assert lines[2] == f"# recipe: {e.name}"
    assert lines[3].startswith("# class: ")
    f = parse(text)
    assert f.recipe == e.name
    assert f.class_id == e.class_id.key()
    assert parse(serialize_text(f)) == f


def test_comments_and_blank_lines():
    text = "#fano-poly v1\n# a hexagon\n\n2 3\n1 0\n\n0 1\n# tail\n-1 -1\n"
    f = parse(text)
    assert f.comments == ["a hexagon", "tail"]
    assert f.vertices == [(1, 0), (0, 1), (-1, -1)]
    assert f.lines == [5, 7, 9]


vertex_lists = st.integers(1, 4).flatmap(
    lambda d: st.lists(st.tuples(*[st.integers(-50, 50)] * d), min_size=1, max_size=8, unique=True))


@given(vertex_lists, st.one_of(st.none(), st.from_regex(r"[A-Za-z0-9^+ ]{1,20}", fullmatch=True)))
def test_round_trip(verts, recipe):
    recipe = (recipe or "").strip() or None
    f = PolytopeFile(len(verts[0]), list(verts), recipe)
    assert parse(serialize_text(f)) == f
    assert parse(serialize_json(f)) == f


def test_json_format():
    text = serialize_json(polygon("P5"), recipe="P5")
    obj = json.loads(text)
    assert obj == {"dim": 2, "vertices": [list(v) for v in polygon("P5").vertices], "recipe": "P5"}
    assert parse_json(text).polytope() == polygon("P5")


@pytest.mark.parametrize(
    "text,line,token",
    [
        ("#fano-poly v1\n3 1\n1 x 0\n", 3, 2),
        ("#fano-poly v1\n2 2\n1 0\n0 1 1\n", 4, 3),
        ("#fano-poly v1\n2 two\n", 2, 2),
        ("#fano-poly v1\n2 1.5\n", 2, 2),
    ],
)
def test_addressed_errors(text, line, token):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (line, token)
    assert str(exc.value).startswith(f"line {line}, token {token}: ")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "fano-poly v1\n2 1\n1 0\n",
        "#fano-poly v2\n2 1\n1 0\n",
        "#fano-poly v1\n",
        "#fano-poly v1\n2 3\n1 0\n0 1\n",
        "#fano-poly v1\n2 1 1\n",
        "#fano-poly v1\n0 1\n",
    ],
)
def test_structural_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_duplicate_vertex_is_named():
    text = "#fano-poly v1\n2 4\n1 0\n0 1\n-1 -1\n0 1\n"
    with pytest.raises(ParseError, match=r"duplicate vertex \[0, 1\]") as exc:
        parse(text).polytope()
    assert exc.value.line == 6


def test_non_vertex_is_named():
    text = "#fano-poly v1\n2 4\n1 0\n0 1\n-1 -1\n0 0\n"
    with pytest.raises(ParseError, match=r"\(0, 0\)") as exc:
        parse(text).polytope()
    assert exc.value.line == 6


@pytest.mark.parametrize(
    "obj",
    [
        "{not json",
        '{"vertices": [[1]]}',
        '{"dim": 0, "vertices": []}',
        '{"dim": 2, "vertices": [[1, 0.5]]}',
        '{"dim": 2, "vertices": [[1, 0, 0]]}',
        '{"dim": 2, "vertices": {"a": 1}}',
        '{"dim": true, "vertices": [[1]]}',
    ],
)
def test_json_errors(obj):
    with pytest.raises(ParseError):
        parse(obj)


def test_files(tmp_path):
    P = polygon("P6")
    write_polytope(tmp_path / "p6.poly", P, recipe="P6")
    write_polytope(tmp_path / "p6.json", P)
    assert read_polytope(tmp_path / "p6.poly") == P
    assert read_polytope(tmp_path / "p6.json") == P
    assert load(tmp_path / "p6.poly").recipe == "P6"
    assert (tmp_path / "p6.json").read_text().startswith("{")

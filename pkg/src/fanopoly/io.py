"""Polytope files.

Text format::

    #fano-poly v1
    <d> <n>
    # recipe: bipyr[v=w2](P5)
    1 0 0
    ...

Line 1 is the format tag, line 2 gives dimension and vertex count, and the
remaining non-comment lines hold one vertex each.  Lines starting with ``#``
after line 1 are comments; ``# recipe:`` and ``# class:`` comments are
recognized and kept.  The JSON alternative is an object with ``dim``,
``vertices`` and optionally ``recipe`` / ``class``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError, PolytopeError
from .polytope import LatticePolytope

__all__ = [
    "HEADER",
    "PolytopeFile",
    "parse_text",
    "parse_json",
    "parse",
    "serialize_text",
    "serialize_json",
    "load",
    "read_polytope",
    "write_polytope",
]

HEADER = "#fano-poly v1"
_INT = re.compile(r"[+-]?\d+")
_META = re.compile(r"#\s*(recipe|class)\s*:\s*(.*?)\s*$")


@dataclass
class PolytopeFile:
    dim: int
    vertices: list[tuple[int, ...]]
    recipe: str | None = None
    class_id: str | None = None
    comments: list[str] = field(default_factory=list)
    # 1-based source line of each vertex row, when parsed from text
    lines: list[int] | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_polytope(cls, P: LatticePolytope, recipe=None, class_id=None, comments=()) -> "PolytopeFile":
        return cls(P.dim, list(P.vertices), None if recipe is None else str(recipe), class_id, list(comments))

    def polytope(self) -> LatticePolytope:
        """Build the polytope; semantic errors name the offending vertex."""
        seen: dict[tuple[int, ...], int] = {}
        for k, v in enumerate(self.vertices):
            if v in seen:
                raise ParseError(
                    f"duplicate vertex {list(v)} (also vertex {seen[v] + 1})", self._line(k)
                )
            seen[v] = k
        try:
            return LatticePolytope(self.vertices)
        except PolytopeError as exc:
            line = None
            for k, v in enumerate(self.vertices):
                if str(v) in str(exc):
                    line = self._line(k)
                    break
            raise ParseError(str(exc), line) from exc

    def _line(self, k):
        return self.lines[k] if self.lines else None


def _ints(tokens, line):
    out = []
    for col, tok in enumerate(tokens, start=1):
        if not _INT.fullmatch(tok):
            raise ParseError(f"expected an integer, got {tok!r}", line, col)
        out.append(int(tok))
    return out


def parse_text(text: str) -> PolytopeFile:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError(f"first line must be {HEADER!r}", 1)
    recipe = class_id = None
    comments: list[str] = []
    size = None
    rows: list[tuple[int, ...]] = []
    where: list[int] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _META.match(line)
            if m and m.group(1) == "recipe":
                recipe = m.group(2)
            elif m:
                class_id = m.group(2)
            else:
                comments.append(line[1:].strip())
            continue
        tokens = line.split()
        if size is None:
            if len(tokens) != 2:
                raise ParseError(f"expected '<d> <n>', got {len(tokens)} tokens", lineno)
            d, n = _ints(tokens, lineno)
            if d < 1 or n < 1:
                raise ParseError("dimension and vertex count must be positive", lineno)
            size = (d, n)
            continue
        d, n = size
        if len(tokens) != d:
            raise ParseError(f"expected {d} coordinates, got {len(tokens)}", lineno, min(len(tokens), d) + 1)
        rows.append(tuple(_ints(tokens, lineno)))
        where.append(lineno)
    if size is None:
        raise ParseError("missing '<d> <n>' line", len(lines) + 1)
    if len(rows) != size[1]:
        raise ParseError(f"header announces {size[1]} vertices, found {len(rows)}", len(lines))
    return PolytopeFile(size[0], rows, recipe, class_id, comments, where)


def parse_json(text: str) -> PolytopeFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(obj, dict) or "dim" not in obj or "vertices" not in obj:
        raise ParseError("JSON polytope needs 'dim' and 'vertices'")
    d = obj["dim"]
    if type(d) is not int or d < 1:
        raise ParseError("'dim' must be a positive integer")
    verts = obj["vertices"]
    if not isinstance(verts, list):
        raise ParseError("'vertices' must be an array")
    rows = []
    for k, v in enumerate(verts, start=1):
        if not isinstance(v, list) or len(v) != d:
            raise ParseError(f"vertex {k} must be an array of {d} integers")
        for col, x in enumerate(v, start=1):
            if type(x) is not int:
                raise ParseError(f"vertex {k}: expected an integer, got {x!r}", None, col)
        rows.append(tuple(v))
    return PolytopeFile(d, rows, obj.get("recipe"), obj.get("class"))


def parse(text: str) -> PolytopeFile:
    """Dispatch on the first non-blank character: ``{`` means JSON."""
    return parse_json(text) if text.lstrip().startswith("{") else parse_text(text)


def serialize_text(data: PolytopeFile | LatticePolytope, recipe=None, class_id=None) -> str:
    if isinstance(data, LatticePolytope):
        data = PolytopeFile.from_polytope(data, recipe, class_id)
    out = [HEADER, f"{data.dim} {len(data.vertices)}"]
    if data.recipe is not None:
        out.append(f"# recipe: {data.recipe}")
    if data.class_id is not None:
        out.append(f"# class: {data.class_id}")
    out.extend(f"# {c}" if c else "#" for c in data.comments)
    out.extend(" ".join(str(x) for x in v) for v in data.vertices)
    return "\n".join(out) + "\n"


def serialize_json(data: PolytopeFile | LatticePolytope, recipe=None, class_id=None) -> str:
    if isinstance(data, LatticePolytope):
        data = PolytopeFile.from_polytope(data, recipe, class_id)
    obj: dict = {"dim": data.dim, "vertices": [list(v) for v in data.vertices]}
    if data.recipe is not None:
        obj["recipe"] = data.recipe
    if data.class_id is not None:
        obj["class"] = data.class_id
    return json.dumps(obj) + "\n"


def load(path) -> PolytopeFile:
    return parse(Path(path).read_text())


def read_polytope(path) -> LatticePolytope:
    return load(path).polytope()


def write_polytope(path, P: LatticePolytope, recipe=None, class_id=None) -> None:
    path = Path(path)
    text = serialize_json(P, recipe, class_id) if path.suffix == ".json" else serialize_text(P, recipe, class_id)
    path.write_text(text)

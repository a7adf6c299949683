"""Vertex-described lattice polytopes, exact facets and classification predicates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    InconsistencyError,
    NotFullDimensionalError,
    NotReflexiveError,
    OriginNotInteriorError,
    PolytopeError,
)
from .lattice import (
    LatticePoint,
    UnimodularMap,
    determinant,
    dot,
    neg,
    nullspace,
    rank,
    sub,
)

__all__ = [
    "Facet",
    "FacetStructure",
    "LatticePolytope",
    "facets",
    "contains_origin_interior",
    "is_full_dimensional",
    "is_simplicial",
    "is_reflexive",
    "polar_dual",
    "lattice_points",
    "boundary_lattice_points",
    "is_terminal",
    "is_canonical",
    "is_smooth_fano",
    "is_str",
    "facet_determinant",
    "is_pseudo_symmetric",
    "is_centrally_symmetric",
]


@dataclass(frozen=True)
class Facet:
    """Facet ``{x in P : <normal, x> = rhs}`` with primitive ``normal``.

    ``vertices`` holds sorted indices into the owning polytope's vertex list.
    """

    vertices: tuple[int, ...]
    normal: LatticePoint
    rhs: int

    def level(self, x: Sequence[int]) -> int:
        return dot(self.normal, x)

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class FacetStructure:
    facets: tuple[Facet, ...]
    # ridge (d-1 vertex indices) -> the two facet ids through it; simplicial case only
    ridges: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __getitem__(self, i):
        return self.facets[i]

    def neighbor(self, fid: int, vertex: int) -> int:
        """Id of the facet sharing with facet ``fid`` the ridge opposite ``vertex``."""
        F = self.facets[fid]
        ridge = frozenset(F.vertices) - {vertex}
        pair = self.ridges.get(ridge)
        if pair is None or len(pair) != 2:
            from .errors import NotSimplicialError

            raise NotSimplicialError(
                f"ridge {sorted(ridge)} does not lie in exactly two facets"
            )
        return pair[1] if pair[0] == fid else pair[0]


def _hull_facets(points: Sequence[LatticePoint]) -> list[Facet]:
    n, d = len(points), len(points[0])
    found: dict[tuple[LatticePoint, int], tuple[int, ...]] = {}
    for combo in itertools.combinations(range(n), d):
        base = points[combo[0]]
        diffs = [sub(points[i], base) for i in combo[1:]]
        ker = nullspace(diffs, d)
        if len(ker) != 1:
            continue
        a = ker[0]
        c = dot(a, base)
        pos = negv = False
        for p in points:
            s = dot(a, p) - c
            if s > 0:
                pos = True
            elif s < 0:
                negv = True
            if pos and negv:
                break
        else:
            if pos:
                a, c = neg(a), -c
            key = (a, c)
            if key not in found:
                found[key] = tuple(i for i, p in enumerate(points) if dot(a, p) == c)
    return sorted(
        (Facet(vertices=vs, normal=a, rhs=c) for (a, c), vs in found.items()),
        key=lambda F: (F.normal, F.rhs),
    )


def _affine_witness(points: Sequence[LatticePoint]):
    d = len(points[0])
    diffs = [sub(p, points[0]) for p in points[1:]]
    if rank(diffs) == d:
        return None
    a = nullspace(diffs, d)[0]
    return a, dot(a, points[0])


class LatticePolytope:
    """Convex hull of a list of lattice points, all of which must be vertices.

    The vertex order given at construction is preserved everywhere (facet
    vertex indices, file output).  Construction validates that points are
    distinct and, for full-dimensional input, in convex position; pass
    ``validate=False`` only for vertex lists known to be correct.
    """

    def __init__(self, vertices: Iterable[Sequence[int]], *, validate: bool = True):
        verts = tuple(tuple(int(x) for x in v) for v in vertices)
        if not verts:
            raise PolytopeError("a polytope needs at least one vertex")
        d = len(verts[0])
        if d == 0:
            raise PolytopeError("ambient dimension must be positive")
        for v in verts:
            if len(v) != d:
                raise PolytopeError(f"vertex {v} has dimension {len(v)}, expected {d}")
        seen = set()
        for v in verts:
            if v in seen:
                raise PolytopeError(f"duplicate vertex {v}")
            seen.add(v)
        self._vertices = verts
        self._index = {v: i for i, v in enumerate(verts)}
        self._cache: dict = {}
        if validate and is_full_dimensional(self):
            _check_convex_position(self)

    @property
    def vertices(self) -> tuple[LatticePoint, ...]:
        return self._vertices

    @property
    def dim(self) -> int:
        return len(self._vertices[0])

    @property
    def n(self) -> int:
        return len(self._vertices)

    def __len__(self):
        return len(self._vertices)

    def __iter__(self):
        return iter(self._vertices)

    def __getitem__(self, i: int) -> LatticePoint:
        return self._vertices[i]

    def index(self, v: Sequence[int]) -> int:
        return self._index[tuple(v)]

    def has_vertex(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._index

    def vertex_set(self) -> frozenset:
        return frozenset(self._vertices)

    def same_vertices(self, other: "LatticePolytope") -> bool:
        return self.vertex_set() == other.vertex_set()

    def transform(self, U: UnimodularMap) -> "LatticePolytope":
        return LatticePolytope((U(v) for v in self._vertices), validate=False)

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self._vertices == other._vertices

    def __hash__(self):
        return hash(self._vertices)

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, n={self.n}, vertices={list(self._vertices)})"


def _check_convex_position(P: LatticePolytope) -> None:
    fs = facets(P)
    d = P.dim
    for i, v in enumerate(P.vertices):
        tight = [F.normal for F in fs if i in F.vertices]
        if rank(tight) < d:
            raise PolytopeError(f"point {v} is not a vertex of the convex hull")


def is_full_dimensional(P: LatticePolytope) -> bool:
    if "full_dim" not in P._cache:
        P._cache["full_dim"] = _affine_witness(P.vertices) is None
    return P._cache["full_dim"]


def facets(P: LatticePolytope) -> FacetStructure:
    """All facets, sorted by normal; computed once per polytope."""
    fs = P._cache.get("facets")
    if fs is not None:
        return fs
    witness = _affine_witness(P.vertices)
    if witness is not None:
        a, c = witness
        raise NotFullDimensionalError(
            f"polytope is not full-dimensional: all vertices satisfy <{a}, x> = {c}",
            normal=a,
            rhs=c,
        )
    flist = _hull_facets(P.vertices)
    ridges: dict = {}
    if all(len(F.vertices) == P.dim for F in flist):
        for fid, F in enumerate(flist):
            for r in itertools.combinations(F.vertices, P.dim - 1):
                ridges.setdefault(frozenset(r), []).append(fid)
        ridges = {r: tuple(ids) for r, ids in ridges.items()}
    fs = FacetStructure(tuple(flist), ridges)
    P._cache["facets"] = fs
    return fs


def contains_origin_interior(P: LatticePolytope) -> bool:
    if not is_full_dimensional(P):
        return False
    return all(F.rhs > 0 for F in facets(P))


def is_simplicial(P: LatticePolytope) -> bool:
    return all(len(F.vertices) == P.dim for F in facets(P))


def _require_origin(P: LatticePolytope) -> None:
    if not contains_origin_interior(P):
        raise OriginNotInteriorError("the origin is not an interior point")


def is_reflexive(P: LatticePolytope) -> bool:
    _require_origin(P)
    return all(F.rhs == 1 for F in facets(P))


def polar_dual(P: LatticePolytope) -> LatticePolytope:
    """The polar, whose vertices are the facet normals of reflexive ``P``."""
    if not is_reflexive(P):
        raise NotReflexiveError("polar of a non-reflexive polytope is not a lattice polytope")
    return LatticePolytope((F.normal for F in facets(P)), validate=False)


def lattice_points(P: LatticePolytope) -> tuple[LatticePoint, ...]:
    """Integer points of ``P`` in lexicographic order."""
    pts = P._cache.get("lattice_points")
    if pts is not None:
        return pts
    fs = facets(P)
    d = P.dim
    lo = [min(v[j] for v in P.vertices) for j in range(d)]
    hi = [max(v[j] for v in P.vertices) for j in range(d)]
    ineqs = [(F.normal, F.rhs) for F in fs]
    pts = tuple(
        x
        for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        if all(dot(u, x) <= c for u, c in ineqs)
    )
    P._cache["lattice_points"] = pts
    return pts


def boundary_lattice_points(P: LatticePolytope) -> tuple[LatticePoint, ...]:
    fs = facets(P)
    return tuple(x for x in lattice_points(P) if any(F.level(x) == F.rhs for F in fs))


def is_terminal(P: LatticePolytope) -> bool:
    _require_origin(P)
    expected = set(P.vertices) | {(0,) * P.dim}
    return set(lattice_points(P)) == expected


def is_canonical(P: LatticePolytope) -> bool:
    _require_origin(P)
    fs = facets(P)
    interior = [x for x in lattice_points(P) if all(F.level(x) < F.rhs for F in fs)]
    return interior == [(0,) * P.dim]


def facet_determinant(P: LatticePolytope, F: Facet) -> int:
    if len(F.vertices) != P.dim:
        raise PolytopeError("determinant of a non-simplex facet")
    return determinant([P.vertices[i] for i in F.vertices])


def is_smooth_fano(P: LatticePolytope) -> bool:
    if not contains_origin_interior(P) or not is_simplicial(P):
        return False
    smooth = all(abs(facet_determinant(P, F)) == 1 for F in facets(P))
    if smooth and not (is_reflexive(P) and is_terminal(P)):
        raise InconsistencyError("smooth Fano polytope that is not reflexive and terminal")
    return smooth


def is_str(P: LatticePolytope) -> bool:
    """Simplicial, terminal and reflexive."""
    if not contains_origin_interior(P):
        return False
    return is_simplicial(P) and is_reflexive(P) and is_terminal(P)


def is_pseudo_symmetric(P: LatticePolytope) -> bool:
    vsets = {frozenset(P.vertices[i] for i in F.vertices) for F in facets(P)}
    return any(frozenset(neg(v) for v in s) in vsets for s in vsets)


def is_centrally_symmetric(P: LatticePolytope) -> bool:
    return all(P.has_vertex(neg(v)) for v in P.vertices)

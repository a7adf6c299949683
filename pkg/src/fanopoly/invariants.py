"""Facet-relative invariants of simplicial reflexive polytopes.

Facets are addressed by their id, the position in ``facets(P)``; vertices by
their index in ``P.vertices``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import InconsistencyError, NotReflexiveError, NotSimplicialError, PreconditionError
from .lattice import LatticePoint, RationalVector, add, dot, rational_inverse, transpose, solve_exact
from .polytope import (
    Facet,
    LatticePolytope,
    boundary_lattice_points,
    contains_origin_interior,
    facets,
    is_reflexive,
    is_simplicial,
)

__all__ = [
    "EtaVector",
    "FacetFrame",
    "PhiMap",
    "vertex_sum",
    "special_facets",
    "level_sets",
    "eta_vector",
    "eccentricity",
    "frame",
    "phi",
    "is_good",
    "good_vertices",
    "are_distant",
    "distant_vertex_pairs",
    "admissible_eta_vectors",
    "excluded_eta_vector",
]


@dataclass(frozen=True)
class EtaVector:
    """Number of vertices on each level ``<u_F, x> = k``, ``k <= 1``.

    Stored sparsely as ``(level, count)`` pairs, highest level first.
    """

    counts: tuple[tuple[int, int], ...]
    dim: int | None = field(default=None, compare=False)

    @classmethod
    def from_levels(cls, levels, dim=None) -> "EtaVector":
        c = Counter(levels)
        return cls(tuple(sorted(((k, m) for k, m in c.items() if m), reverse=True)), dim)

    @classmethod
    def from_tuple(cls, dense, dim=None) -> "EtaVector":
        """Build from ``(eta_1, eta_0, eta_-1, ...)``."""
        if any(m < 0 for m in dense):
            raise ValueError(f"negative count in {dense}")
        pairs = tuple((1 - i, m) for i, m in enumerate(dense) if m)
        return cls(pairs, dim)

    def __getitem__(self, level: int) -> int:
        return dict(self.counts).get(level, 0)

    @property
    def lowest_level(self) -> int:
        return self.counts[-1][0] if self.counts else 1

    def dense(self) -> tuple[int, ...]:
        """Counts from level 1 downward, trailing zeros trimmed."""
        d = dict(self.counts)
        out = [d.get(k, 0) for k in range(1, self.lowest_level - 1, -1)]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.counts)

    @property
    def level_sum(self) -> int:
        """``sum_k k * eta_k``, the level of the vertex sum."""
        return sum(k * m for k, m in self.counts)

    def __str__(self):
        return "(" + ",".join(str(m) for m in self.dense()) + ")"


@dataclass(frozen=True)
class FacetFrame:
    facet_id: int
    facet: Facet
    vertex_normals: dict[int, RationalVector]
    opposite: dict[int, int]
    neighbor: dict[int, int]

    def coordinates(self, x) -> dict[int, Fraction]:
        """Coordinates of ``x`` in the basis given by the facet's vertices."""
        return {v: dot(u, x) for v, u in self.vertex_normals.items()}


@dataclass(frozen=True)
class PhiMap:
    facet_id: int
    # vertex index -> vertex index of the facet, or None for zero
    values: dict[int, int | None]

    def __getitem__(self, v: int) -> int | None:
        return self.values[v]

    def image(self) -> set[int]:
        return {w for w in self.values.values() if w is not None}


def _require_simplicial(P: LatticePolytope) -> None:
    if not is_simplicial(P):
        raise NotSimplicialError("operation needs a simplicial polytope")


def _require_reflexive(P: LatticePolytope) -> None:
    if not is_reflexive(P):
        raise NotReflexiveError("operation needs a reflexive polytope")


def _fid(P: LatticePolytope, F) -> int:
    if isinstance(F, Facet):
        return facets(P).facets.index(F)
    return int(F)


def vertex_sum(P: LatticePolytope) -> LatticePoint:
    total = (0,) * P.dim
    for v in P.vertices:
        total = add(total, v)
    return total


def special_facets(P: LatticePolytope) -> tuple[int, ...]:
    """Facets whose cone contains the vertex sum (boundary cases included)."""
    cached = P._cache.get("special")
    if cached is not None:
        return cached
    if not contains_origin_interior(P):
        raise PreconditionError("special facets need the origin in the interior")
    _require_simplicial(P)
    vp = vertex_sum(P)
    out = []
    for fid, F in enumerate(facets(P)):
        cols = transpose([P.vertices[i] for i in F.vertices])
        if all(c >= 0 for c in solve_exact(cols, vp)):
            out.append(fid)
    if not out:
        raise InconsistencyError("no facet cone contains the vertex sum")
    P._cache["special"] = tuple(out)
    return P._cache["special"]


def level_sets(P: LatticePolytope, F) -> dict[int, tuple[int, ...]]:
    """Map level k to the vertex indices with ``<u_F, v> = k``."""
    _require_reflexive(P)
    Fc = facets(P)[_fid(P, F)]
    out: dict[int, list[int]] = {}
    for i, v in enumerate(P.vertices):
        out.setdefault(Fc.level(v), []).append(i)
    return {k: tuple(vs) for k, vs in sorted(out.items(), reverse=True)}


def eta_vector(P: LatticePolytope, F) -> EtaVector:
    _require_reflexive(P)
    Fc = facets(P)[_fid(P, F)]
    return EtaVector.from_levels((Fc.level(v) for v in P.vertices), dim=P.dim)


def eccentricity(P: LatticePolytope) -> int:
    """Common level of the vertex sum on all special facets."""
    _require_reflexive(P)
    vp = vertex_sum(P)
    fs = facets(P)
    levels = {fs[f].level(vp) for f in special_facets(P)}
    if len(levels) != 1:
        raise InconsistencyError(f"vertex sum lies on different levels {sorted(levels)} of special facets")
    return levels.pop()


def frame(P: LatticePolytope, F) -> FacetFrame:
    """Vertex normals, neighboring facets and opposite vertices of facet ``F``."""
    fid = _fid(P, F)
    cache = P._cache.setdefault("frames", {})
    if fid in cache:
        return cache[fid]
    fs = facets(P)
    Fc = fs[fid]
    if len(Fc.vertices) != P.dim:
        raise NotSimplicialError(f"facet {fid} is not a simplex")
    inv = rational_inverse([P.vertices[i] for i in Fc.vertices])
    cols = transpose(inv)
    normals = {v: tuple(cols[k]) for k, v in enumerate(Fc.vertices)}
    neighbor, opposite = {}, {}
    for v in Fc.vertices:
        g = fs.neighbor(fid, v)
        neighbor[v] = g
        (extra,) = set(fs[g].vertices) - set(Fc.vertices)
        opposite[v] = extra
    fr = FacetFrame(fid, Fc, normals, opposite, neighbor)
    cache[fid] = fr
    return fr


def phi(P: LatticePolytope, F) -> PhiMap:
    """v -> w when ``opp(F, v) + v = w`` is a vertex of F, else zero (None)."""
    fr = frame(P, F)
    members = {P.vertices[i]: i for i in fr.facet.vertices}
    values = {}
    for v in fr.facet.vertices:
        w = add(P.vertices[fr.opposite[v]], P.vertices[v])
        values[v] = members.get(w)
    return PhiMap(fr.facet_id, values)


def is_good(P: LatticePolytope, F, v: int) -> bool:
    """opp(F, v) is on level 0 and has coordinate -1 along v."""
    fr = frame(P, F)
    z = P.vertices[fr.opposite[v]]
    return fr.facet.level(z) == 0 and dot(fr.vertex_normals[v], z) == -1


def good_vertices(P: LatticePolytope, F) -> tuple[int, ...]:
    fr = frame(P, F)
    return tuple(v for v in fr.facet.vertices if is_good(P, fr.facet_id, v))


def are_distant(P: LatticePolytope, x, y) -> bool:
    """True when no face of ``P`` contains both boundary points."""
    x, y = tuple(x), tuple(y)
    return not any(F.level(x) == F.rhs and F.level(y) == F.rhs for F in facets(P))


def distant_vertex_pairs(P: LatticePolytope) -> tuple[tuple[int, int], ...]:
    return tuple(
        (i, j)
        for i, j in itertools.combinations(range(P.n), 2)
        if are_distant(P, P.vertices[i], P.vertices[j])
    )


def distant_boundary_pairs(P: LatticePolytope) -> Iterator[tuple[LatticePoint, LatticePoint]]:
    bd = boundary_lattice_points(P)
    for x, y in itertools.combinations(bd, 2):
        if are_distant(P, x, y):
            yield x, y


def _negative_tails(count: int, budget: int, level: int) -> Iterator[tuple[int, ...]]:
    """Distribute ``count`` vertices on levels ``level, level-1, ...`` with
    ``sum (-k) * eta_k <= budget``."""
    if count == 0:
        yield ()
        return
    weight = -level
    if weight > budget:
        return
    for m in range(min(count, budget // weight), -1, -1):
        for rest in _negative_tails(count - m, budget - m * weight, level - 1):
            yield (m,) + rest


def admissible_eta_vectors(d: int, n: int) -> frozenset[EtaVector]:
    """Eta-vectors allowed for a special facet of an STR d-polytope with 3d-2 vertices.

    The constraints are ``eta_1 = d``, ``d-2 <= eta_0 <= d``,
    ``d-2 <= sum_{k<0} eta_k <= d``, total count ``n`` and a nonnegative
    level for the vertex sum.  For d >= 4 this gives seven vectors; in
    dimensions 2 and 3 some of them would need negative counts and drop out.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    if n != 3 * d - 2:
        raise PreconditionError(f"only n = 3d - 2 is supported (got n={n}, d={d})")
    out = set()
    for eta0 in range(max(d - 2, 0), d + 1):
        below = n - d - eta0
        if not d - 2 <= below <= d:
            continue
        for tail in _negative_tails(below, d, -1):
            while tail and tail[-1] == 0:
                tail = tail[:-1]
            out.add(EtaVector.from_tuple((d, eta0) + tail, dim=d))
    return frozenset(out)


def excluded_eta_vector(d: int) -> EtaVector | None:
    """The column (d, d, d-3, 0, 1), which never occurs; None when d < 3."""
    if d < 3:
        return None
    return EtaVector.from_tuple((d, d, d - 3, 0, 1), dim=d)

"""Lattice equivalence via canonical forms, and direct-sum decomposition.

A canonical form is computed over every facet whose vertices form a lattice
basis: that facet is sent to the standard basis, each of the d! coordinate
permutations is applied, the vertex rows are sorted, and the lexicographic
minimum over all choices is kept.  Since the only freedom left after fixing
a unimodular facet onto the standard basis is a permutation of coordinates,
two polytopes with such a facet are GL(d, Z)-equivalent exactly when their
canonical forms agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, UnsupportedClassError
from .lattice import integer_inverse, matvec, rank, transpose
from .polytope import (
    LatticePolytope,
    contains_origin_interior,
    facet_determinant,
    facets,
    is_simplicial,
)

__all__ = [
    "CanonicalForm",
    "canonical_form",
    "are_equivalent",
    "decompose_direct_sum",
    "direct_sum_partition",
]

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CanonicalForm:
    matrix: tuple[tuple[int, ...], ...]
    basis_facet: int = field(default=-1, compare=False)

    @property
    def dim(self) -> int:
        return len(self.matrix[0])

    def key(self) -> str:
        """Row-major serialization, rows separated by ';'."""
        return ";".join(" ".join(str(x) for x in row) for row in self.matrix)

    def __str__(self):
        return self.key()


def _unimodular_facets(P: LatticePolytope) -> list[int]:
    if not is_simplicial(P):
        return []
    return [fid for fid, F in enumerate(facets(P)) if abs(facet_determinant(P, F)) == 1]


def _facet_coordinates(P: LatticePolytope, fid: int) -> list[tuple[int, ...]]:
    F = facets(P)[fid]
    A = integer_inverse(transpose([P.vertices[i] for i in F.vertices]))
    return [matvec(A, v) for v in P.vertices]


def _lexmin_python(coords, perms):
    best = None
    for perm in perms:
        rows = sorted(tuple(w[j] for j in perm) for w in coords)
        if best is None or rows < best[0]:
            best = (rows, perm)
    return best


def canonical_form(P: LatticePolytope) -> CanonicalForm:
    cached = P._cache.get("canonical")
    if cached is not None:
        return cached
    fids = _unimodular_facets(P)
    if not fids:
        raise UnsupportedClassError("no facet whose vertices form a lattice basis")
    d, n = P.dim, P.n
    transformed = {fid: _facet_coordinates(P, fid) for fid in fids}
    perms = list(itertools.permutations(range(d)))
    bound = max(abs(x) for W in transformed.values() for w in W for x in w)
    base = 2 * bound + 1
    best_rows, best_fid = None, None
    if base**d < _INT64_SAFE:
        perm_arr = np.array(perms, dtype=np.intp)
        weights = np.array([base ** (d - 1 - j) for j in range(d)], dtype=np.int64)
        best_codes = None
        for fid in fids:
            W = np.array(transformed[fid], dtype=np.int64) + bound
            # codes[p, i]: row i under permutation p, encoded order-preservingly
            codes = np.sort((W[:, perm_arr] @ weights).T, axis=1)
            top = codes[np.lexsort(codes.T[::-1])[0]]
            cand = tuple(top.tolist())
            if best_codes is None or cand < best_codes:
                best_codes, best_fid = cand, fid
        best_rows = _decode(best_codes, bound, base, d)
    else:
        for fid in fids:
            rows, _ = _lexmin_python(transformed[fid], perms)
            if best_rows is None or rows < best_rows:
                best_rows, best_fid = rows, fid
    assert len(best_rows) == n
    cf = CanonicalForm(tuple(tuple(r) for r in best_rows), best_fid)
    P._cache["canonical"] = cf
    return cf


def _decode(codes, bound, base, d):
    rows = []
    for c in codes:
        digits = []
        for _ in range(d):
            c, r = divmod(c, base)
            digits.append(r - bound)
        rows.append(tuple(reversed(digits)))
    return rows


def are_equivalent(P: LatticePolytope, Q: LatticePolytope) -> bool:
    if P.dim != Q.dim or P.n != Q.n:
        return False
    if len(facets(P)) != len(facets(Q)):
        return False
    return canonical_form(P) == canonical_form(Q)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _coordinate_split(coords: list[tuple[int, ...]]):
    """Groups (vertex indices, coordinate indices) that separate in this basis,
    or None when the coordinate graph is connected or a piece is invalid."""
    d = len(coords[0])
    uf = _UnionFind(d)
    for w in coords:
        support = [j for j, x in enumerate(w) if x]
        for j in support[1:]:
            uf.union(support[0], j)
    comps: dict[int, list[int]] = {}
    for j in range(d):
        comps.setdefault(uf.find(j), []).append(j)
    if len(comps) < 2:
        return None
    groups = []
    for cols in comps.values():
        members = [i for i, w in enumerate(coords) if any(w[j] for j in cols)]
        proj = [tuple(coords[i][j] for j in cols) for i in members]
        if rank(proj) != len(cols):
            return None
        piece = LatticePolytope(proj, validate=False)
        if not contains_origin_interior(piece):
            return None
        groups.append((members, piece))
    return groups


def _bases(P: LatticePolytope):
    yield list(P.vertices)
    for fid in _unimodular_facets(P):
        yield _facet_coordinates(P, fid)


def _split(P: LatticePolytope, labels: list[int]):
    for coords in _bases(P):
        groups = _coordinate_split(coords)
        if groups is None:
            continue
        out = []
        for members, piece in groups:
            out.extend(_split(piece, [labels[i] for i in members]))
        return out
    return [(P, labels)]


def _order_key(item):
    piece = item[0]
    try:
        cf = canonical_form(piece).matrix
    except UnsupportedClassError:
        cf = tuple(sorted(piece.vertices))
    return (piece.dim, piece.n, cf)


def _decomposition(P: LatticePolytope):
    if not contains_origin_interior(P):
        raise PreconditionError("decomposition needs the origin in the interior")
    return sorted(_split(P, list(range(P.n))), key=_order_key)


def decompose_direct_sum(P: LatticePolytope) -> list[LatticePolytope]:
    """Finest direct-sum decomposition; summands in canonical order.

    Summands are returned in their own coordinates; re-summing them in the
    returned order gives a polytope lattice-equivalent to ``P``.
    """
    return [piece for piece, _ in _decomposition(P)]


def direct_sum_partition(P: LatticePolytope) -> list[frozenset[int]]:
    """The vertex-index groups of :func:`decompose_direct_sum`, same order."""
    return [frozenset(labels) for _, labels in _decomposition(P)]

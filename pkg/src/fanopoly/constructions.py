"""Named polytopes and the direct-sum / bipyramid combinators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PolytopeError, PreconditionError
from .lattice import LatticePoint, neg, unit
from .polytope import LatticePolytope, contains_origin_interior, facets

__all__ = [
    "ApexSpec",
    "POLYGONS",
    "HEXAGON_LABELS",
    "PENTAGON_LABELS",
    "segment",
    "polygon",
    "cross_polytope",
    "del_pezzo",
    "pseudo_del_pezzo",
    "direct_sum",
    "direct_sum_all",
    "bipyramid",
]

# Cyclic vertex orders.  Hexagon v1..v6 starts at e1; pentagon w1..w5 starts
# at the unique vertex whose negative is missing.
HEXAGON_LABELS: dict[str, LatticePoint] = {
    "v1": (1, 0),
    "v2": (0, 1),
    "v3": (-1, 1),
    "v4": (-1, 0),
    "v5": (0, -1),
    "v6": (1, -1),
}
PENTAGON_LABELS: dict[str, LatticePoint] = {
    "w1": (0, 1),
    "w2": (1, 0),
    "w3": (1, -1),
    "w4": (-1, 0),
    "w5": (-1, 1),
}

POLYGONS: dict[str, tuple[LatticePoint, ...]] = {
    "P3": ((1, 0), (0, 1), (-1, -1)),
    "P4a": ((1, 0), (0, 1), (-1, 0), (0, -1)),
    "P4b": ((1, 0), (0, 1), (-1, 0), (1, -1)),
    "P5": ((1, 0), (0, 1), (-1, 1), (-1, 0), (1, -1)),
    "P6": tuple(HEXAGON_LABELS.values()),
}


def segment() -> LatticePolytope:
    """The interval [-1, 1]."""
    return LatticePolytope([(1,), (-1,)])


def polygon(kind: str) -> LatticePolytope:
    try:
        return LatticePolytope(POLYGONS[kind])
    except KeyError:
        raise ValueError(f"unknown polygon {kind!r}; choose from {sorted(POLYGONS)}") from None


def cross_polytope(d: int) -> LatticePolytope:
    if d < 1:
        raise ValueError("cross polytope needs d >= 1")
    return LatticePolytope([unit(d, i) for i in range(d)] + [neg(unit(d, i)) for i in range(d)])


def _del_pezzo_vertices(d: int) -> list[LatticePoint]:
    if d < 2 or d % 2:
        raise PreconditionError(f"del Pezzo polytopes are simplicial only for even d >= 2, got {d}")
    ones = (1,) * d
    return (
        [unit(d, i) for i in range(d)]
        + [neg(unit(d, i)) for i in range(d)]
        + [ones, neg(ones)]
    )


def del_pezzo(d: int) -> LatticePolytope:
    """conv{+-e_1, ..., +-e_d, +-(1, ..., 1)} for even d."""
    return LatticePolytope(_del_pezzo_vertices(d))


def pseudo_del_pezzo(d: int) -> LatticePolytope:
    """The del Pezzo polytope without the vertex -(1, ..., 1)."""
    return LatticePolytope(_del_pezzo_vertices(d)[:-1])


def direct_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """conv(P x {0} u {0} x Q); ``P`` occupies the leading coordinates."""
    for name, X in (("first", P), ("second", Q)):
        if not contains_origin_interior(X):
            raise PreconditionError(f"{name} summand does not contain the origin in its interior")
    zq, zp = (0,) * Q.dim, (0,) * P.dim
    return LatticePolytope(
        [v + zq for v in P.vertices] + [zp + w for w in Q.vertices], validate=False
    )


def direct_sum_all(parts: Sequence[LatticePolytope]) -> LatticePolytope:
    if not parts:
        raise ValueError("empty direct sum")
    out = parts[0]
    for Q in parts[1:]:
        out = direct_sum(out, Q)
    return out


@dataclass(frozen=True)
class ApexSpec:
    """Lower apex ``-e_d + base_vertex``; ``None`` gives the proper bipyramid."""

    base_vertex: LatticePoint | None = None

    @property
    def is_proper(self) -> bool:
        return self.base_vertex is None or not any(self.base_vertex)


def bipyramid(Q: LatticePolytope, apex: ApexSpec | Sequence[int] | None = None) -> LatticePolytope:
    """conv(Q x {0} u {e_d, -e_d + v}) for a base vertex ``v`` (or ``v = 0``)."""
    if not isinstance(apex, ApexSpec):
        apex = ApexSpec(None if apex is None else tuple(apex))
    e = Q.dim
    if not contains_origin_interior(Q):
        raise PreconditionError("bipyramid base must contain the origin in its interior")
    v = (0,) * e if apex.is_proper else tuple(apex.base_vertex)
    if len(v) != e:
        raise PolytopeError(f"apex vertex {v} has the wrong dimension")
    if any(v) and not Q.has_vertex(v):
        raise PolytopeError(f"apex parameter {v} is not a vertex of the base")
    # [e_d, -e_d + v] crosses x_d = 0 at v/2, which must be interior to Q
    mid = tuple(Fraction(x, 2) for x in v)
    if not all(sum(a * b for a, b in zip(F.normal, mid)) < F.rhs for F in facets(Q)):
        raise PolytopeError("apex segment does not meet the relative interior of the base")
    top = (0,) * e + (1,)
    bottom = v + (-1,)
    return LatticePolytope([q + (0,) for q in Q.vertices] + [top, bottom], validate=False)

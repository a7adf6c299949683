"""Catalogs of smooth Fano d-polytopes with 3d, 3d-1 and 3d-2 vertices.

Every catalog entry carries a :class:`Recipe`, a small expression tree over
named polygons, direct sums and (proper or skew) bipyramids.  Recipes print
as strings such as ``bipyr[v=w1](P5 + P6^2)`` and parse back with
:meth:`Recipe.parse`.

Vertex labels follow the hexagon/pentagon convention of
:mod:`fanopoly.constructions`.  Labels of repeated summands get primes
(``v1`` in the first hexagon, ``v1'`` in the second), and the apices of a
bipyramid are named ``x`` (top, ``e_d``) and ``x'`` (bottom); a bipyramid
over a bipyramid uses ``y``/``y'`` and so on.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .constructions import (
    HEXAGON_LABELS,
    PENTAGON_LABELS,
    POLYGONS,
    bipyramid,
    cross_polytope,
    del_pezzo,
    direct_sum_all,
    pseudo_del_pezzo,
    segment,
)
from .equivalence import CanonicalForm, are_equivalent, canonical_form
from .errors import ClassificationError, PolytopeError, PreconditionError
from .invariants import (
    admissible_eta_vectors,
    eccentricity,
    eta_vector,
    excluded_eta_vector,
    special_facets,
)
from .lattice import LatticePoint
from .lemmas import check_structure_lemmas
from .polytope import (
    LatticePolytope,
    is_centrally_symmetric,
    is_reflexive,
    is_simplicial,
    is_smooth_fano,
    is_str,
    is_terminal,
)

__all__ = [
    "Recipe",
    "CatalogEntry",
    "Check",
    "CatalogReport",
    "expected_class_count",
    "expected_centrally_symmetric",
    "catalog",
    "catalog_3d",
    "catalog_3d_minus_1",
    "catalog_3d_minus_2",
    "verify_catalog",
    "box_classification",
    "box_candidate_count",
]

_APEX_LETTERS = "xyzts"


# -- recipes ----------------------------------------------------------------------


@dataclass(frozen=True)
class Recipe:
    """``op`` is ``"leaf"``, ``"sum"`` or ``"bipyr"``."""

    op: str
    name: str = ""
    parts: tuple["Recipe", ...] = ()
    apex: str = "0"

    @classmethod
    def leaf(cls, name: str) -> "Recipe":
        return cls("leaf", name=name)

    @classmethod
    def sum(cls, parts) -> "Recipe":
        flat = []
        for p in parts:
            flat.extend(p.parts if p.op == "sum" else (p,))
        if len(flat) == 1:
            return flat[0]
        return cls("sum", parts=tuple(flat))

    @classmethod
    def power(cls, name: str, k: int) -> "Recipe":
        if k < 1:
            raise ValueError("power needs k >= 1")
        return cls.sum([cls.leaf(name)] * k)

    @classmethod
    def bipyr(cls, base: "Recipe", apex: str = "0") -> "Recipe":
        return cls("bipyr", parts=(base,), apex=apex)

    @property
    def base(self) -> "Recipe":
        if self.op != "bipyr":
            raise AttributeError("only bipyramid recipes have a base")
        return self.parts[0]

    @property
    def summand_count(self) -> int:
        return len(self.parts) if self.op == "sum" else 1

    def __str__(self) -> str:
        if self.op == "leaf":
            return self.name
        if self.op == "bipyr":
            return f"bipyr[v={self.apex}]({self.parts[0]})"
        chunks = []
        for key, group in itertools.groupby(self.parts, key=str):
            k = len(list(group))
            atomic = "+" not in key
            term = key if atomic else f"({key})"
            chunks.append(term if k == 1 else f"{term}^{k}")
        return " + ".join(chunks)

    def build(self) -> LatticePolytope:
        P, _ = self.build_labeled()
        if P is None:
            raise PreconditionError("a point is not a full-dimensional polytope")
        return P

    def build_labeled(self) -> tuple[LatticePolytope | None, dict[str, LatticePoint]]:
        """The polytope plus a map from vertex labels to coordinates."""
        if self.op == "leaf":
            return _build_leaf(self.name)
        if self.op == "sum":
            built = [p.build_labeled() for p in self.parts]
            if any(P is None for P, _ in built):
                raise PreconditionError("a point cannot be a direct summand")
            total = sum(P.dim for P, _ in built)
            labels: dict[str, LatticePoint] = {}
            offset = 0
            for P, lab in built:
                for name, v in lab.items():
                    while name in labels:
                        name += "'"
                    labels[name] = (0,) * offset + v + (0,) * (total - offset - P.dim)
                offset += P.dim
            return direct_sum_all([P for P, _ in built]), labels
        base, base_labels = self.parts[0].build_labeled()
        used = {name.rstrip("'") for name in base_labels}
        letter = next(c for c in _APEX_LETTERS if c not in used)
        if base is None:
            if self.apex != "0":
                raise PolytopeError("a bipyramid over a point has no skew apex")
            return segment(), {letter: (1,), letter + "'": (-1,)}
        if self.apex == "0":
            v = None
        elif self.apex in base_labels:
            v = base_labels[self.apex]
        else:
            raise PolytopeError(f"unknown apex label {self.apex!r}; base has {sorted(base_labels)}")
        P = bipyramid(base, v)
        labels = {name: w + (0,) for name, w in base_labels.items()}
        labels[letter] = P.vertices[-2]
        labels[letter + "'"] = P.vertices[-1]
        return P, labels

    @classmethod
    def parse(cls, text: str) -> "Recipe":
        parser = _RecipeParser(text)
        r = parser.expr()
        parser.expect_end()
        return r


def _build_leaf(name: str):
    if name == "point":
        return None, {}
    if name == "P6":
        return LatticePolytope(HEXAGON_LABELS.values()), dict(HEXAGON_LABELS)
    if name == "P5":
        return LatticePolytope(POLYGONS["P5"]), dict(PENTAGON_LABELS)
    if name == "segment":
        P = segment()
    elif name in POLYGONS:
        P = LatticePolytope(POLYGONS[name])
    else:
        m = re.fullmatch(r"(DP|PDP|cross)(\d+)", name)
        if not m:
            raise ValueError(f"unknown building block {name!r}")
        kind, k = m.group(1), int(m.group(2))
        P = {"DP": del_pezzo, "PDP": pseudo_del_pezzo, "cross": cross_polytope}[kind](k)
    prefix = name.lower()
    return P, {f"{prefix}.{i + 1}": v for i, v in enumerate(P.vertices)}


class _RecipeParser:
    _token = re.compile(r"\s*(bipyr\[v=([A-Za-z0-9.']+)\]\(|[A-Za-z][A-Za-z0-9]*|\^\d+|\+|\(|\))")

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _peek(self):
        m = self._token.match(self.text, self.pos)
        return m

    def _fail(self, what):
        raise ValueError(f"bad recipe {self.text!r} at offset {self.pos}: expected {what}")

    def expr(self):
        terms = [self.term()]
        while (m := self._peek()) and m.group(1) == "+":
            self.pos = m.end()
            terms.append(self.term())
        return Recipe.sum(terms)

    def term(self):
        m = self._peek()
        if not m:
            self._fail("a term")
        tok = m.group(1)
        self.pos = m.end()
        if tok.startswith("bipyr["):
            inner = self.expr()
            self.close()
            node = Recipe.bipyr(inner, m.group(2))
        elif tok == "(":
            node = self.expr()
            self.close()
        elif tok[0].isalpha():
            node = Recipe.leaf(tok)
        else:
            self._fail("a term")
        m = self._peek()
        if m and m.group(1).startswith("^"):
            self.pos = m.end()
            node = Recipe.sum([node] * int(m.group(1)[1:]))
        return node

    def close(self):
        m = self._peek()
        if not m or m.group(1) != ")":
            self._fail("')'")
        self.pos = m.end()

    def expect_end(self):
        if self.text[self.pos:].strip():
            self._fail("end of recipe")


# -- catalog entries ----------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    polytope: LatticePolytope
    recipe: Recipe
    class_id: CanonicalForm
    # other generated recipes that landed in the same class
    aliases: tuple[str, ...] = field(default=(), compare=False)

    @property
    def name(self) -> str:
        return str(self.recipe)


def expected_class_count(d: int, n: int) -> int:
    if d < 1:
        raise PreconditionError("dimension must be positive")
    if n == 3 * d:
        return 1 if d % 2 == 0 else 0
    if n == 3 * d - 1:
        return 1 if d % 2 == 0 or d == 1 else 2
    if n == 3 * d - 2:
        if d == 1:
            return 0
        if d == 2:
            return 2
        if d == 3:
            # proper bipyramid over P5 plus the skew ones with v = w1, w2, w3;
            # these four are pairwise inequivalent (distinct eta histograms)
            return 4
        if d == 4:
            return 10
        return 11 if d % 2 == 0 else 5
    raise PreconditionError(f"no catalog for n={n} in dimension {d}; need n in 3d-2..3d")


def expected_centrally_symmetric(d: int, n: int) -> int:
    """Number of centrally symmetric classes with 3d-2 vertices."""
    if n != 3 * d - 2:
        raise PreconditionError("only the 3d-2 catalog is covered")
    if d % 2:
        return 0
    return 1 if d == 2 else 2


def _hexagons(k: int) -> Recipe:
    return Recipe.power("P6", k) if k else Recipe.leaf("point")


def _candidates_3d(d):
    return [Recipe.power("P6", d // 2)] if d % 2 == 0 else []


def _candidates_3d_minus_1(d):
    if d == 1:
        return [Recipe.leaf("segment")]
    if d % 2 == 0:
        return [Recipe.sum([Recipe.leaf("P5"), _hexagons(d // 2 - 1)]) if d > 2 else Recipe.leaf("P5")]
    base = _hexagons((d - 1) // 2)
    return [Recipe.bipyr(base, "0"), Recipe.bipyr(base, "v1")]


def _labels(recipe: Recipe) -> list[str]:
    return list(recipe.build_labeled()[1])


def _candidates_3d_minus_2(d, exhaustive):
    if d == 1:
        return []
    out = []
    if d % 2 == 0:
        base = _hexagons((d - 2) // 2)
        base_labels = _labels(base)
        if exhaustive:
            for a in ["0"] + base_labels:
                first = Recipe.bipyr(base, a)
                for b in ["0"] + _labels(first):
                    out.append(Recipe.bipyr(first, b))
        else:
            pairs = [("0", "0"), ("0", "x"), ("0", "v1"), ("v1", "v1"), ("v1", "v2"),
                     ("v1", "v3"), ("v1", "v4"), ("v1", "x"), ("v1", "v1'")]
            for a, b in pairs:
                first = Recipe.bipyr(base, a)
                if a != "0" and a not in base_labels:
                    continue
                if b != "0" and b not in _labels(first):
                    continue
                out.append(Recipe.bipyr(first, b))
        if d >= 4:
            rest = [Recipe.power("P6", d // 2 - 2)] if d >= 6 else []
            out.append(Recipe.sum([Recipe.leaf("P5"), Recipe.leaf("P5")] + rest))
            out.append(Recipe.sum([Recipe.leaf("DP4")] + rest))
    else:
        k = (d - 3) // 2
        base = Recipe.sum([Recipe.leaf("P5")] + ([Recipe.power("P6", k)] if k else []))
        base_labels = _labels(base)
        apices = ["0"] + base_labels if exhaustive else ["0", "w1", "w2", "w3", "v1"]
        out = [Recipe.bipyr(base, a) for a in apices if a == "0" or a in base_labels]
    return out


def _dedup(candidates, d, n):
    groups: dict[CanonicalForm, list[tuple[Recipe, LatticePolytope]]] = {}
    for r in candidates:
        P = r.build()
        groups.setdefault(canonical_form(P), []).append((r, P))
    entries = [
        CatalogEntry(members[0][1], members[0][0], cf, tuple(str(r) for r, _ in members[1:]))
        for cf, members in groups.items()
    ]
    entries.sort(key=lambda e: e.class_id.matrix)
    expected = expected_class_count(d, n)
    if len(entries) != expected:
        collisions = {cf.key(): [str(r) for r, _ in m] for cf, m in groups.items() if len(m) > 1}
        raise ClassificationError(
            f"dimension {d}, {n} vertices: {len(entries)} classes after deduplication, expected {expected}",
            collisions,
        )
    return entries


def catalog_3d(d: int) -> list[CatalogEntry]:
    if d < 1:
        raise PreconditionError("catalog_3d needs d >= 1")
    return _dedup(_candidates_3d(d), d, 3 * d)


def catalog_3d_minus_1(d: int) -> list[CatalogEntry]:
    if d < 1:
        raise PreconditionError("catalog_3d_minus_1 needs d >= 1")
    return _dedup(_candidates_3d_minus_1(d), d, 3 * d - 1)


def catalog_3d_minus_2(d: int, exhaustive: bool = False) -> list[CatalogEntry]:
    """All classes with 3d-2 vertices.

    The default candidate list is the one needed to reach every class; with
    ``exhaustive=True`` every apex choice is generated and the duplicates are
    merged, which checks that the short list misses nothing.
    """
    if d < 1:
        raise PreconditionError("catalog_3d_minus_2 needs d >= 1")
    return _dedup(_candidates_3d_minus_2(d, exhaustive), d, 3 * d - 2)


def catalog(d: int, n: int, exhaustive: bool = False) -> list[CatalogEntry]:
    if n == 3 * d:
        return catalog_3d(d)
    if n == 3 * d - 1:
        return catalog_3d_minus_1(d)
    if n == 3 * d - 2:
        return catalog_3d_minus_2(d, exhaustive)
    raise PreconditionError(f"no catalog for n={n} in dimension {d}; need n in 3d-2..3d")


# -- verification -----------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    subject: str
    passed: bool
    witness: str = ""


@dataclass
class CatalogReport:
    d: int
    n: int
    entries: list[CatalogEntry]
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        k = len(self.entries)
        noun = "class" if k == 1 else "classes"
        if self.ok:
            return f"{k} {noun}, all checks pass"
        return f"{k} {noun}, {len(self.failures)} checks failed"


def _entry_checks(e: CatalogEntry, d: int, n: int, lemmas: bool):
    P, name = e.polytope, e.name
    yield Check("dimension", name, P.dim == d, f"dim {P.dim}")
    yield Check("vertex-count", name, P.n == n, f"{P.n} vertices")
    yield Check("simplicial", name, is_simplicial(P))
    yield Check("reflexive", name, is_reflexive(P))
    yield Check("terminal", name, is_terminal(P))
    yield Check("smooth-fano", name, is_smooth_fano(P))
    ecc = eccentricity(P)
    yield Check("eccentricity-range", name, ecc in (0, 1, 2), f"eccentricity {ecc}")
    if n == 3 * d - 2:
        allowed = admissible_eta_vectors(d, n)
        excluded = excluded_eta_vector(d)
        etas = {eta_vector(P, f) for f in special_facets(P)}
        bad = sorted(str(x) for x in etas - allowed)
        yield Check("special-eta-admissible", name, not bad, "not admissible: " + ", ".join(bad))
        yield Check("excluded-eta-absent", name, excluded not in etas, f"{excluded} occurs")
        if e.recipe.op == "bipyr" and d >= 2:
            base = e.recipe.base.build()
            ok = any(are_equivalent(base, b.polytope) for b in catalog_3d_minus_1(d - 1))
            yield Check("bipyramid-base", name, ok, f"base {e.recipe.base} not in the {3 * d - 4}-vertex catalog")
    rebuilt = e.recipe.build()
    yield Check("recipe-round-trip", name, canonical_form(rebuilt) == e.class_id)
    if lemmas:
        rep = check_structure_lemmas(P)
        failed = rep.failures
        yield Check(
            "structure-lemmas",
            name,
            not failed,
            "; ".join(f"{r.lemma_id}: {r.witness}" for r in failed),
        )


def verify_catalog(d: int, n: int, *, exhaustive: bool = False, lemmas: bool = True) -> CatalogReport:
    if n not in (3 * d - 2, 3 * d - 1, 3 * d):
        raise PreconditionError(f"need n in 3d-2..3d, got n={n} for d={d}")
    entries = catalog(d, n, exhaustive)
    report = CatalogReport(d, n, entries)
    subject = f"d={d}, n={n}"
    expected = expected_class_count(d, n)
    report.checks.append(
        Check("class-count", subject, len(entries) == expected, f"{len(entries)} classes, expected {expected}")
    )
    ids = [e.class_id for e in entries]
    report.checks.append(Check("pairwise-inequivalent", subject, len(set(ids)) == len(ids)))
    for e in entries:
        report.checks.extend(_entry_checks(e, d, n, lemmas))
    if n == 3 * d - 2:
        sym = [e.name for e in entries if is_centrally_symmetric(e.polytope)]
        want = expected_centrally_symmetric(d, n)
        report.checks.append(
            Check("centrally-symmetric-count", subject, len(sym) == want, f"symmetric: {sym}, expected {want}")
        )
    return report


# -- box enumeration oracle ---------------------------------------------------------


def _signed_permutations(d):
    for perm in itertools.permutations(range(d)):
        for signs in itertools.product((1, -1), repeat=d):
            yield perm, signs


def _orbit_representatives(points, size):
    """One index subset per orbit of the signed-permutation group."""
    d = len(points[0])
    index = {p: i for i, p in enumerate(points)}
    images = []
    for perm, signs in _signed_permutations(d):
        images.append([index[tuple(signs[j] * p[perm[j]] for j in range(d))] for p in points])
    images = np.array(images, dtype=np.int64)
    combos = np.array(list(itertools.combinations(range(len(points)), size)), dtype=np.int64)
    best = None
    for img in images:
        masks = np.bitwise_or.reduce(np.left_shift(1, img[combos]), axis=1)
        best = masks if best is None else np.minimum(best, masks)
    reps = np.unique(best)
    return [[i for i in range(len(points)) if (int(m) >> i) & 1] for m in reps]


def box_classification(d: int, n: int | None = None) -> dict[str, LatticePolytope]:
    """Classes of STR d-polytopes with ``n`` vertices in ``{-1, 0, 1}^d``.

    ``n`` defaults to ``3d - 2``.  The candidate subsets are first reduced
    modulo signed coordinate permutations, which are lattice automorphisms
    of the cube, so no class is lost.  Returns a map from class key to one
    representative.
    """
    if d < 1:
        raise PreconditionError("dimension must be positive")
    n = 3 * d - 2 if n is None else n
    points = [p for p in itertools.product((-1, 0, 1), repeat=d) if any(p)]
    if n > len(points) or n < d + 1:
        return {}
    found: dict[str, LatticePolytope] = {}
    for subset in _orbit_representatives(points, n):
        try:
            P = LatticePolytope([points[i] for i in subset])
            if not is_str(P):
                continue
        except PolytopeError:
            continue
        found.setdefault(canonical_form(P).key(), P)
    return dict(sorted(found.items()))


def box_candidate_count(d: int, n: int | None = None) -> int:
    """Number of raw subsets before orbit reduction."""
    n = 3 * d - 2 if n is None else n
    return comb(3**d - 1, n)

"""Machine check of the structural facts about facets, opposite vertices,
vertex normals and the phi-map of simplicial terminal reflexive polytopes.

Every check tests an implication on all facets / vertices / boundary points
where its hypotheses hold.  A check reports ``skip`` when its preconditions
on the polytope fail or when no instance satisfies its hypotheses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .lattice import add, dot, integer_inverse, matvec, neg, sub, transpose, unit
from .polytope import (
    LatticePolytope,
    boundary_lattice_points,
    contains_origin_interior,
    facet_determinant,
    facets,
    is_centrally_symmetric,
    is_full_dimensional,
    is_reflexive,
    is_simplicial,
    is_terminal,
    lattice_points,
)
from .invariants import (
    are_distant,
    eta_vector,
    frame,
    is_good,
    phi,
    special_facets,
    vertex_sum,
)

__all__ = ["LemmaResult", "LemmaReport", "LEMMAS", "check_structure_lemmas"]

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class LemmaResult:
    lemma_id: str
    status: str
    witness: str | None = None
    checked: int = 0
    skipped: int = 0

    def as_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "status": self.status,
            "witness": self.witness,
            "checked": self.checked,
            "skipped": self.skipped,
        }


@dataclass
class LemmaReport:
    results: list[LemmaResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    @property
    def failures(self) -> list[LemmaResult]:
        return [r for r in self.results if r.status == FAIL]

    def __getitem__(self, lemma_id: str) -> LemmaResult:
        for r in self.results:
            if r.lemma_id == lemma_id:
                return r
        raise KeyError(lemma_id)

    def as_list(self) -> list[dict]:
        return [r.as_dict() for r in self.results]


class _Tally:
    def __init__(self, lemma_id):
        self.result = LemmaResult(lemma_id, SKIP)
        self.failed = False

    def check(self, ok: bool, witness: Callable[[], str]) -> None:
        self.result.checked += 1
        if not ok and not self.failed:
            self.failed = True
            self.result.witness = witness()

    def skip_instance(self) -> None:
        self.result.skipped += 1

    def finish(self) -> LemmaResult:
        r = self.result
        if self.failed:
            r.status = FAIL
        elif r.checked:
            r.status = PASS
        elif r.witness is None:
            r.witness = "no instance satisfies the hypotheses"
        return r


class _Context:
    """Precomputed data shared by all checks."""

    def __init__(self, P: LatticePolytope):
        self.P = P
        self.d = P.dim
        self.n = P.n
        self.V = P.vertices
        self.fs = facets(P)
        self.ids = range(len(self.fs))
        self.frames = [frame(P, f) for f in self.ids]
        self.phis = [phi(P, f) for f in self.ids]
        self.points = lattice_points(P)
        self.boundary = boundary_lattice_points(P)
        self.vsum = vertex_sum(P)
        self.facet_sets = {frozenset(F.vertices): fid for fid, F in enumerate(self.fs)}
        self.unimodular = [abs(facet_determinant(P, F)) == 1 for F in self.fs]
        self.special = set(special_facets(P))
        self.terminal = is_terminal(P)

    def level(self, fid, x):
        return self.fs[fid].level(x)

    def level_set(self, fid, k):
        return {i for i, v in enumerate(self.V) if self.fs[fid].level(v) == k}

    def opp(self, fid, v):
        return self.frames[fid].opposite[v]

    def coord(self, fid, v, x):
        return dot(self.frames[fid].vertex_normals[v], x)


def _fstr(ctx, fid):
    return "facet " + str(fid) + " " + str([ctx.V[i] for i in ctx.fs[fid].vertices])


# -- checks needing only simplicial + reflexive ---------------------------------


def _neighbor_identity(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        fr = ctx.frames[fid]
        for v in fr.facet.vertices:
            g = fr.neighbor[v]
            uGv = ctx.level(g, ctx.V[v])
            for x in ctx.points:
                lhs = ctx.level(g, x)
                rhs = ctx.level(fid, x) + (uGv - 1) * ctx.coord(fid, v, x)
                t.check(lhs == rhs, lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}, x={x}: {lhs} != {rhs}")


def _vertex_normal_bound(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        fr = ctx.frames[fid]
        for v in ctx.fs[fid].vertices:
            z = ctx.V[fr.opposite[v]]
            g = fr.neighbor[v]
            for x in ctx.points:
                a, b = ctx.level(fid, x) - 1, ctx.coord(fid, v, x)
                if a != b:
                    eq_ok = True
                elif ctx.terminal:
                    # the lattice points of neigh(F, v) are opp(F, v) and the common ridge
                    eq_ok = x == z or (a == 0 and b == 0)
                else:
                    # other lattice points of neigh(F, v) also attain equality
                    eq_ok = ctx.level(g, x) == 1
                t.check(a <= b and eq_ok, lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}, x={x}")


def _level0_adjacent(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        fr = ctx.frames[fid]
        for x in ctx.boundary:
            if ctx.level(fid, x) != 0:
                continue
            ok = any(ctx.fs[g].level(x) == 1 for g in fr.neighbor.values())
            t.check(ok, lambda: f"{_fstr(ctx, fid)}, x={x} lies in no adjacent facet")


def _level0_opposite_sign(ctx: _Context, t: _Tally):
    # Stated for boundary lattice points; without terminality a non-vertex point
    # of H(F, 0) can have a negative coordinate, so only vertices are tested.
    # For terminal P the two readings coincide.
    for fid in ctx.ids:
        fr = ctx.frames[fid]
        for x in (ctx.V[i] for i in sorted(ctx.level_set(fid, 0))):
            for v in fr.facet.vertices:
                not_opp = x != ctx.V[fr.opposite[v]]
                t.check(
                    not_opp == (ctx.coord(fid, v, x) >= 0),
                    lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}, x={x}",
                )


def _level0_unique_opposite(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        fr = ctx.frames[fid]
        for x in ctx.boundary:
            if ctx.level(fid, x) != 0:
                continue
            owners = [v for v in fr.facet.vertices if ctx.V[fr.opposite[v]] == x]
            if len(owners) == 1:
                v = owners[0]
                t.check(are_distant(ctx.P, ctx.V[v], x), lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}, x={x}")


def _level0_is_opposite(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        opps = set(ctx.frames[fid].opposite.values())
        for x in ctx.level_set(fid, 0):
            t.check(x in opps, lambda: f"{_fstr(ctx, fid)}: {ctx.V[x]} opposite to no vertex")


def _good_vertices_basis(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        good = [v for v in ctx.fs[fid].vertices if is_good(ctx.P, fid, v)]
        if len(good) >= ctx.d - 1:
            t.check(ctx.unimodular[fid], lambda: f"{_fstr(ctx, fid)} has {len(good)} good vertices but det != +-1")


def _distant_sum(ctx: _Context, t: _Tally):
    bset = set(ctx.boundary)
    for x, y in itertools.combinations(ctx.boundary, 2):
        if x == neg(y):
            continue
        t.check(
            (add(x, y) in bset) == are_distant(ctx.P, x, y),
            lambda: f"x={x}, y={y}",
        )


def _eccentricity(ctx: _Context, t: _Tally):
    levels = {ctx.level(f, ctx.vsum) for f in ctx.special}
    t.check(len(levels) == 1, lambda: f"special facets put the vertex sum on levels {sorted(levels)}")


def _eta_sum(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        eta = eta_vector(ctx.P, fid)
        t.check(
            eta.total == ctx.n and eta.level_sum == ctx.level(fid, ctx.vsum),
            lambda: f"{_fstr(ctx, fid)}: eta={eta}",
        )


def _opp_duality(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        fr = ctx.frames[fid]
        for v in fr.facet.vertices:
            g, z = fr.neighbor[v], fr.opposite[v]
            t.check(ctx.frames[g].opposite[z] == v, lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}")


def _central_symmetry(ctx: _Context, t: _Tally):
    balanced = not any(ctx.vsum) and all(
        ctx.level(f, v) >= -1 for f in ctx.ids for v in ctx.V
    )
    cs = is_centrally_symmetric(ctx.P)
    t.check(cs == balanced, lambda: f"centrally symmetric={cs}, width-two criterion={balanced}")


def _no_deep_levels(ctx: _Context, t: _Tally):
    if ctx.n != 3 * ctx.d - 2 or any(ctx.vsum):
        return
    for fid in ctx.ids:
        low = min(ctx.level(fid, v) for v in ctx.V)
        t.check(low >= -2, lambda: f"{_fstr(ctx, fid)} has a vertex on level {low}")


# -- checks needing terminality as well -------------------------------------------


def _phi_good(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        for v, w in ctx.phis[fid].values.items():
            if w is not None:
                t.check(is_good(ctx.P, fid, v), lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}")


def _phi_involution(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        ph = ctx.phis[fid]
        for v, w in ph.values.items():
            if w is None or not ctx.P.has_vertex(neg(ctx.V[v])):
                continue
            t.check(ph[w] in (None, v), lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}: phi(phi(v))={ph[w]}")


def _unique_opposite_phi(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        fr = ctx.frames[fid]
        for v in fr.facet.vertices:
            z = fr.opposite[v]
            if ctx.level(fid, ctx.V[z]) != 0:
                continue
            if any(fr.opposite[w] == z for w in fr.facet.vertices if w != v):
                continue
            t.check(ctx.phis[fid][v] is not None, lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}")


def _phi_shifted(ctx, fid):
    """{phi(v) - v} over facet vertices with nonzero phi, plus vertices with zero phi."""
    ph = ctx.phis[fid]
    shifted, zero = set(), []
    for v, w in ph.values.items():
        if w is None:
            zero.append(v)
        else:
            shifted.add(sub(ctx.V[w], ctx.V[v]))
    return shifted, zero


def _eta0_full(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        V0 = {ctx.V[i] for i in ctx.level_set(fid, 0)}
        if len(V0) != ctx.d:
            continue
        shifted, zero = _phi_shifted(ctx, fid)
        t.check(
            not zero and V0 == shifted and ctx.unimodular[fid],
            lambda: f"{_fstr(ctx, fid)}: V(F,0)={sorted(V0)}, phi-shifts={sorted(shifted)}",
        )


def _eta0_minus1(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        if len(ctx.level_set(fid, 0)) != ctx.d:
            continue
        negs = {neg(ctx.V[v]) for v in ctx.fs[fid].vertices}
        Vm1 = {ctx.V[i] for i in ctx.level_set(fid, -1)}
        t.check(Vm1 <= negs, lambda: f"{_fstr(ctx, fid)}: {sorted(Vm1 - negs)} not negated facet vertices")


def _eta0_d1_smooth(ctx: _Context, t: _Tally):
    for fid in sorted(ctx.special):
        if len(ctx.level_set(fid, 0)) < ctx.d - 1:
            continue
        nonzero = sum(w is not None for w in ctx.phis[fid].values.values())
        t.check(
            ctx.unimodular[fid] and nonzero >= ctx.d - 2,
            lambda: f"{_fstr(ctx, fid)}: unimodular={ctx.unimodular[fid]}, nonzero phi={nonzero}",
        )


def _double_neighbor(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        F, ph = ctx.fs[fid], ctx.phis[fid]
        for v, w in itertools.permutations(F.vertices, 2):
            pv, pw = ph[v], ph[w]
            if pv is None or pw is None or pw == v:
                continue
            a = sub(ctx.V[pv], ctx.V[v])
            b = sub(ctx.V[pw], ctx.V[w])
            if not (ctx.P.has_vertex(a) and ctx.P.has_vertex(b)):
                t.check(False, lambda: f"{_fstr(ctx, fid)}: phi-shift is not a vertex")
                continue
            verts = (set(F.vertices) - {v, w}) | {ctx.P.index(a), ctx.P.index(b)}
            t.check(
                frozenset(verts) in ctx.facet_sets,
                lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}, w={ctx.V[w]}: {sorted(ctx.V[i] for i in verts)} is no facet",
            )


def _no_two_negative(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        fr = ctx.frames[fid]
        good = [v for v in fr.facet.vertices if is_good(ctx.P, fid, v)]
        Vm1 = ctx.level_set(fid, -1)
        for v, w in itertools.combinations(good, 2):
            if fr.opposite[v] == fr.opposite[w]:
                continue
            for x in Vm1:
                X = ctx.V[x]
                t.check(
                    not (ctx.coord(fid, v, X) == -1 and ctx.coord(fid, w, X) == -1),
                    lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}, w={ctx.V[w]}, x={X}",
                )


def _coordinate_formula(ctx: _Context, t: _Tally):
    for fid in ctx.ids:
        if not ctx.unimodular[fid]:
            t.skip_instance()
            continue
        fr = ctx.frames[fid]
        for v in fr.facet.vertices:
            g, z = fr.neighbor[v], ctx.V[fr.opposite[v]]
            lz = ctx.level(fid, z)
            for x in ctx.level_set(fid, -1):
                X = ctx.V[x]
                if X == z:
                    continue
                uGx = ctx.level(g, X)
                t.check(uGx < 1 - 2 * lz, lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}, x={X}: strict bound")
                if ctx.unimodular[g]:
                    t.check(
                        ctx.coord(fid, v, X) * (lz - 1) == uGx + 1,
                        lambda: f"{_fstr(ctx, fid)}, v={ctx.V[v]}, x={X}: coordinate formula",
                    )


def _classification(ctx: _Context, t: _Tally):
    d = ctx.d
    for fid in sorted(ctx.special):
        L0 = ctx.level_set(fid, 0)
        if len(L0) not in (d, d - 1):
            continue
        if not ctx.unimodular[fid]:
            t.skip_instance()
            continue
        F, fr, ph = ctx.fs[fid], ctx.frames[fid], ctx.phis[fid]
        T = integer_inverse(transpose([ctx.V[i] for i in F.vertices]))
        X = [matvec(T, v) for v in ctx.V]
        pos = {v: k for k, v in enumerate(F.vertices)}
        e = [unit(d, k) for k in range(d)]
        V0 = {X[i] for i in L0}
        Vm1 = {X[i] for i in ctx.level_set(fid, -1)}
        negs = {neg(u) for u in e}

        def shifts(exclude):
            out = set()
            for v in F.vertices:
                if v in exclude:
                    continue
                if ph[v] is None:
                    return None
                out.add(sub(X[ph[v]], X[v]))
            return out

        opp_set = set(fr.opposite.values())
        where = lambda msg: lambda: f"{_fstr(ctx, fid)}: {msg}"
        if len(L0) == d:
            t.check(shifts(()) == V0, where("level 0 is not the set of phi-shifts"))
            t.check(Vm1 <= negs, where("level -1 has a vertex other than -e_i"))
        elif opp_set == L0:
            pairs = [
                (v, w)
                for v, w in itertools.combinations(F.vertices, 2)
                if fr.opposite[v] == fr.opposite[w]
            ]
            if len(pairs) != 1:
                t.check(False, where(f"expected one pair sharing an opposite vertex, found {len(pairs)}"))
                continue
            v, w = pairs[0]
            i, j = pos[v], pos[w]
            x = X[fr.opposite[v]]
            rest = add(add(x, e[i]), e[j])
            shape_ok = (
                x[i] == -1 and x[j] == -1 and all(c >= 0 for c in rest) and sum(rest) == 2
                and rest[i] == 0 and rest[j] == 0
            )
            t.check(shape_ok, where(f"shared opposite vertex {x} is not -e_i-e_j+e_a+e_b"))
            sh = shifts((v, w))
            t.check(sh is not None and V0 == sh | {x}, where("level 0 does not match"))
            allowed = negs | {add(sub(neg(e[i]), e[j]), e[s]) for s in range(d)}
            t.check(Vm1 <= allowed, where(f"level -1 vertices {sorted(Vm1 - allowed)} not allowed"))
        else:
            owners = [v for v in F.vertices if fr.opposite[v] not in L0]
            if len(owners) != 1:
                t.check(False, where(f"expected one vertex with opposite off level 0, found {len(owners)}"))
                continue
            v = owners[0]
            i = pos[v]
            sh = shifts((v,))
            t.check(sh is not None and V0 == sh, where("level 0 does not match"))
            allowed = set(negs)
            for r, s, u in itertools.permutations(range(d), 3):
                if r != i:
                    allowed.add(add(add(sub(neg(add(e[i], e[i])), e[r]), e[s]), e[u]))
            t.check(Vm1 <= allowed, where(f"level -1 vertices {sorted(Vm1 - allowed)} not allowed"))


# lemma id -> (needs terminal, check)
LEMMAS: dict[str, tuple[bool, Callable]] = {
    "neighbor-level-identity": (False, _neighbor_identity),
    "vertex-normal-lower-bound": (False, _vertex_normal_bound),
    "level0-in-adjacent-facet": (False, _level0_adjacent),
    "level0-opposite-sign": (False, _level0_opposite_sign),
    "level0-unique-opposite-distant": (False, _level0_unique_opposite),
    "level0-is-opposite": (False, _level0_is_opposite),
    "good-vertices-lattice-basis": (False, _good_vertices_basis),
    "distant-sum-criterion": (False, _distant_sum),
    "eccentricity-well-defined": (False, _eccentricity),
    "eta-sum-identity": (False, _eta_sum),
    "opp-neighbor-duality": (False, _opp_duality),
    "central-symmetry-criterion": (False, _central_symmetry),
    "no-level-below-minus2-when-balanced": (False, _no_deep_levels),
    "phi-implies-good": (True, _phi_good),
    "phi-involution": (True, _phi_involution),
    "unique-opposite-implies-phi": (True, _unique_opposite_phi),
    "full-level0-phi-shifts": (True, _eta0_full),
    "full-level0-negatives-below": (True, _eta0_minus1),
    "level0-d-1-lattice-basis": (True, _eta0_d1_smooth),
    "double-neighbor-facet": (True, _double_neighbor),
    "no-two-minus-one-coordinates": (True, _no_two_negative),
    "level-minus1-coordinate-formula": (True, _coordinate_formula),
    "level0-minus1-classification": (True, _classification),
}


def check_structure_lemmas(P: LatticePolytope) -> LemmaReport:
    """Run every check on ``P``; precondition failures are per-check skips."""
    report = LemmaReport()
    blocker = None
    if not is_full_dimensional(P) or not contains_origin_interior(P):
        blocker = "origin is not an interior point"
    elif not is_simplicial(P):
        blocker = "polytope is not simplicial"
    elif not is_reflexive(P):
        blocker = "polytope is not reflexive"
    if blocker is not None:
        for lemma_id in LEMMAS:
            report.results.append(LemmaResult(lemma_id, SKIP, f"precondition: {blocker}"))
        return report
    terminal = is_terminal(P)
    ctx = _Context(P)
    for lemma_id, (needs_terminal, fn) in LEMMAS.items():
        if needs_terminal and not terminal:
            report.results.append(LemmaResult(lemma_id, SKIP, "precondition: polytope is not terminal"))
            continue
        t = _Tally(lemma_id)
        fn(ctx, t)
        report.results.append(t.finish())
    return report

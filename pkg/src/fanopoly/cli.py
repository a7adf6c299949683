"""Command line interface: ``fanopoly <command> ...``.

Exit codes: 0 success, 1 "no" answer from ``equiv``, 2 parse errors,
3 precondition errors, 4 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .catalog import box_classification, catalog, verify_catalog
from .equivalence import are_equivalent, canonical_form, decompose_direct_sum
from .errors import InconsistencyError, ParseError, PolytopeError, PreconditionError
from .invariants import (
    distant_vertex_pairs,
    eccentricity,
    eta_vector,
    good_vertices,
    phi,
    special_facets,
    vertex_sum,
)
from .lemmas import check_structure_lemmas
from .polytope import (
    contains_origin_interior,
    facets,
    is_canonical,
    is_centrally_symmetric,
    is_full_dimensional,
    is_reflexive,
    is_simplicial,
    is_smooth_fano,
    is_terminal,
    lattice_points,
)

EXIT_NO, EXIT_PARSE, EXIT_PRECONDITION, EXIT_VERIFY = 1, 2, 3, 4


def _pt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _yn(b) -> str:
    return "n/a" if b is None else ("yes" if b else "no")


def analyze_report(P) -> dict:
    """Everything ``analyze`` prints, as plain data."""
    full = is_full_dimensional(P)
    origin = full and contains_origin_interior(P)
    simplicial = full and is_simplicial(P)
    reflexive = origin and is_reflexive(P)
    terminal = origin and is_terminal(P)
    rep = {
        "dim": P.dim,
        "vertices": P.n,
        "full_dimensional": full,
        "origin_interior": origin,
        "simplicial": simplicial,
        "reflexive": reflexive,
        "terminal": terminal,
        "canonical": origin and is_canonical(P),
        "smooth_fano": full and is_smooth_fano(P),
        "centrally_symmetric": is_centrally_symmetric(P),
        "vertex_sum": list(vertex_sum(P)),
        "eccentricity": None,
        "special_facets": [],
        "distant_pairs": [],
    }
    if full:
        rep["distant_pairs"] = [[list(P[i]), list(P[j])] for i, j in distant_vertex_pairs(P)]
    if origin and simplicial:
        fs = facets(P)
        for fid in special_facets(P):
            entry = {"facet": fid, "normal": list(fs[fid].normal),
                     "vertices": [list(P[i]) for i in fs[fid].vertices]}
            if reflexive:
                entry["eta"] = str(eta_vector(P, fid))
                ph = phi(P, fid)
                entry["phi"] = [[list(P[v]), None if w is None else list(P[w])] for v, w in ph.values.items()]
                entry["good_vertices"] = [list(P[v]) for v in good_vertices(P, fid)]
            rep["special_facets"].append(entry)
        if reflexive:
            rep["eccentricity"] = eccentricity(P)
    return rep


def _render_analysis(rep: dict) -> str:
    out = [
        f"dimension: {rep['dim']}",
        f"vertices: {rep['vertices']}",
    ]
    for key in ("full_dimensional", "origin_interior", "simplicial", "reflexive", "terminal",
                "canonical", "smooth_fano", "centrally_symmetric"):
        out.append(f"{key.replace('_', ' ')}: {_yn(rep[key])}")
    out.append(f"vertex sum: {_pt(rep['vertex_sum'])}")
    ecc = rep["eccentricity"]
    out.append(f"eccentricity: {'n/a' if ecc is None else ecc}")
    out.append(f"special facets: {len(rep['special_facets'])}")
    for f in rep["special_facets"]:
        line = f"  facet {f['facet']}: normal {_pt(f['normal'])}"
        if "eta" in f:
            line += f" eta {f['eta']}"
        out.append(line)
        out.append("    vertices: " + " ".join(_pt(v) for v in f["vertices"]))
        if "phi" in f:
            out.append("    phi: " + " ".join(f"{_pt(v)}->{'0' if w is None else _pt(w)}" for v, w in f["phi"]))
            out.append("    good: " + (" ".join(_pt(v) for v in f["good_vertices"]) or "none"))
    out.append(f"distant pairs: {len(rep['distant_pairs'])}")
    out.extend(f"  {_pt(v)} {_pt(w)}" for v, w in rep["distant_pairs"])
    return "\n".join(out)


def _read(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return io.parse(text).polytope()


def cmd_analyze(args):
    rep = analyze_report(_read(args.file))
    print(json.dumps(rep, indent=2) if args.json else _render_analysis(rep))
    return 0


def cmd_facets(args):
    P = _read(args.file)
    fs = facets(P)
    print(f"facets: {len(fs)}")
    for fid, F in enumerate(fs):
        print(f"{fid}: normal {_pt(F.normal)} rhs {F.rhs} vertices {' '.join(str(i) for i in F.vertices)}")
    return 0


def cmd_points(args):
    pts = lattice_points(_read(args.file))
    print(f"lattice points: {len(pts)}")
    for x in pts:
        print(" ".join(str(c) for c in x))
    return 0


def cmd_eta(args):
    P = _read(args.file)
    fs = facets(P)
    if not 0 <= args.facet < len(fs):
        raise PreconditionError(f"facet index {args.facet} out of range 0..{len(fs) - 1}")
    print(eta_vector(P, args.facet))
    return 0


def cmd_generate(args):
    entries = catalog(args.dim, args.vertices)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
    for k, e in enumerate(entries, start=1):
        text = io.serialize_text(e.polytope, e.recipe, e.class_id.key())
        if args.out:
            path = out / f"d{args.dim}_n{args.vertices}_{k:02d}.poly"
            path.write_text(text)
            print(f"{path}  {e.name}")
        else:
            sys.stdout.write(text)
    print(f"{len(entries)} classes")
    return 0


def cmd_equiv(args):
    P, Q = _read(args.a), _read(args.b)
    same = are_equivalent(P, Q)
    if args.verbose:
        print(f"A: {canonical_form(P).key()}")
        print(f"B: {canonical_form(Q).key()}")
    print("equivalent" if same else "not equivalent")
    return 0 if same else EXIT_NO


def cmd_decompose(args):
    parts = decompose_direct_sum(_read(args.file))
    print(f"summands: {len(parts)}")
    for Q in parts:
        sys.stdout.write(io.serialize_text(Q))
    return 0


def cmd_verify(args):
    n = args.vertices if args.vertices is not None else 3 * args.dim - 2
    report = verify_catalog(args.dim, n, exhaustive=args.exhaustive)
    for c in report.failures:
        print(f"FAIL {c.name} [{c.subject}] {c.witness}")
    ok = report.ok
    if args.oracle:
        if args.dim > 3:
            raise PreconditionError("the box oracle is limited to dimension <= 3")
        found = box_classification(args.dim, n)
        expected = {e.class_id.key() for e in report.entries}
        match = set(found) == expected
        ok = ok and match
        print(f"oracle: {len(found)} classes in the cube {{-1,0,1}}^{args.dim}, "
              f"{'matches' if match else 'DIFFERS FROM'} the catalog")
    if args.report:
        from .plotting import write_report

        for path in write_report(report, args.report):
            print(f"wrote {path}")
    print(report.summary())
    return 0 if ok else EXIT_VERIFY


def cmd_lemmas(args):
    report = check_structure_lemmas(_read(args.file))
    for r in report.results:
        line = f"{r.status:4s} {r.lemma_id} checked={r.checked}"
        if r.skipped:
            line += f" skipped={r.skipped}"
        if r.witness:
            line += f"  {r.witness}"
        print(line)
    return 0 if report.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fanopoly", description="Smooth Fano and STR polytope toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", help="predicates, special facets, eta-vectors, phi-maps")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("facets", help="facet normals and right-hand sides")
    s.add_argument("file")
    s.set_defaults(func=cmd_facets)

    s = sub.add_parser("points", help="all lattice points")
    s.add_argument("file")
    s.set_defaults(func=cmd_points)

    s = sub.add_parser("eta", help="eta-vector of one facet")
    s.add_argument("file")
    s.add_argument("--facet", type=int, required=True)
    s.set_defaults(func=cmd_eta)

    s = sub.add_parser("generate", help="write a classification catalog")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--vertices", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("equiv", help="decide lattice equivalence (exit 0 iff equivalent)")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("decompose", help="split into direct summands")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("verify", help="check a catalog")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--vertices", type=int)
    s.add_argument("--oracle", action="store_true", help="compare with brute force in the unit cube (d <= 3)")
    s.add_argument("--exhaustive", action="store_true", help="generate every apex choice before deduplication")
    s.add_argument("--report", metavar="DIR", help="write CSV tables and PNG figures")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("lemmas", help="run the structural lemma checks")
    s.add_argument("file")
    s.set_defaults(func=cmd_lemmas)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, PolytopeError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InconsistencyError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())

"""Report files for ``fanopoly verify --report DIR``.

Writes two CSV tables and two PNG figures: a heat map of which admissible
eta-vectors occur on special facets of each catalog class, and the
distribution of vertex levels over all facets of each class.
"""

from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .catalog import CatalogReport  # noqa: E402
from .invariants import admissible_eta_vectors, eccentricity, eta_vector, special_facets  # noqa: E402
from .polytope import facets, is_centrally_symmetric  # noqa: E402

__all__ = ["write_report"]


def _eta_counts(P):
    return Counter(eta_vector(P, f) for f in special_facets(P))


def _write_tables(report: CatalogReport, out: Path) -> list[Path]:
    entries_path = out / "catalog.csv"
    with entries_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "recipe", "class_id", "vertices", "facets", "eccentricity",
                    "centrally_symmetric", "special_facets", "special_eta"])
        for k, e in enumerate(report.entries, start=1):
            P = e.polytope
            etas = _eta_counts(P)
            w.writerow([
                k, e.name, e.class_id.key(), P.n, len(facets(P)), eccentricity(P),
                int(is_centrally_symmetric(P)), len(special_facets(P)),
                ";".join(f"{eta}x{m}" for eta, m in sorted(etas.items(), key=lambda t: str(t[0]))),
            ])
    checks_path = out / "checks.csv"
    with checks_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["check", "subject", "passed", "witness"])
        for c in report.checks:
            w.writerow([c.name, c.subject, int(c.passed), "" if c.passed else c.witness])
    return [entries_path, checks_path]


def _eta_heatmap(report: CatalogReport, path: Path) -> None:
    d, n = report.d, report.n
    observed = [_eta_counts(e.polytope) for e in report.entries]
    if n == 3 * d - 2:
        columns = sorted(admissible_eta_vectors(d, n), key=lambda x: x.dense(), reverse=True)
    else:
        columns = sorted({x for c in observed for x in c}, key=lambda x: x.dense(), reverse=True)
    grid = np.array([[c.get(x, 0) for x in columns] for c in observed], dtype=float).reshape(
        len(observed), len(columns)
    )
    fig, ax = plt.subplots(figsize=(1.2 + 0.9 * max(len(columns), 1), 1.0 + 0.4 * max(len(observed), 1)))
    im = ax.imshow(grid, cmap="Blues", aspect="auto")
    ax.set_xticks(range(len(columns)), [str(x) for x in columns], rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(len(observed)), [e.name for e in report.entries], fontsize=7)
    for (i, j), m in np.ndenumerate(grid):
        if m:
            ax.text(j, i, str(int(m)), ha="center", va="center", fontsize=7)
    ax.set_xlabel("eta-vector")
    ax.set_title(f"special facets, d={d}, n={n}")
    fig.colorbar(im, ax=ax, fraction=0.03)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _level_histograms(report: CatalogReport, path: Path) -> None:
    k = len(report.entries)
    cols = min(k, 4) or 1
    rows = -(-k // cols) or 1
    fig, axes = plt.subplots(rows, cols, figsize=(3 * cols, 2.2 * rows), squeeze=False)
    for ax in axes.flat[k:]:
        ax.axis("off")
    for ax, e in zip(axes.flat, report.entries):
        P = e.polytope
        levels = Counter(F.level(v) for F in facets(P) for v in P.vertices)
        xs = sorted(levels)
        ax.bar(xs, [levels[x] for x in xs], color="0.4")
        ax.set_xticks(xs)
        ax.set_title(e.name, fontsize=7)
        ax.tick_params(labelsize=7)
    fig.suptitle(f"vertex levels over all facets, d={report.d}, n={report.n}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(report: CatalogReport, directory) -> list[Path]:
    """Write tables and figures into ``directory``; returns the paths."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = _write_tables(report, out)
    eta_path = out / "eta_table.png"
    _eta_heatmap(report, eta_path)
    levels_path = out / "levels.png"
    _level_histograms(report, levels_path)
    return paths + [eta_path, levels_path]

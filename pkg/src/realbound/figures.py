"""Figure rendering for the report path.

Every report-emitting experiment can render PNG companions next to its
delimited output.  The CSV/JSON files remain the reproducibility contract;
figures are a reading aid.  matplotlib is imported lazily with the Agg
backend so headless runs and --no-figures runs never touch a display.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Sequence

from .geometry import (
    CrescentDomain,
    Disc,
    Domain,
    PolygonHull,
    hull_of_domain,
    sample_boundary,
)


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def _ensure_parent(path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def render_check_figure(rows: Sequence, path: Path) -> Path:
    """Strip plot of bound ratios grouped by inequality id."""
    plt = _pyplot()
    path = _ensure_parent(path)
    ids = sorted({r.inequality_id for r in rows})
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for k, ineq in enumerate(ids):
        ratios = [r.ratio for r in rows if r.inequality_id == ineq and math.isfinite(r.ratio)]
        xs = [k + 0.08 * ((j % 9) - 4) / 4 for j in range(len(ratios))]
        ax.plot(xs, ratios, ".", markersize=4, alpha=0.6)
    ax.axhline(1.0, color="crimson", linewidth=1, linestyle="--", label="bound")
    ax.set_xticks(range(len(ids)))
    ax.set_xticklabels(ids, rotation=20, ha="right")
    ax.set_ylabel("lhs / rhs")
    ax.set_title("bound ratios over the corpus")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def render_sweep_figure(rows: Sequence, path: Path) -> Path:
    """Ratio against the pole-approach parameter (or a bar for single rows)."""
    plt = _pyplot()
    path = _ensure_parent(path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    finite = [r for r in rows if math.isfinite(r.ratio)]
    if len(finite) > 1:
        xs = [abs(r.parameter) / r.R - 1.0 for r in finite]
        ys = [r.ratio for r in finite]
        order = sorted(range(len(xs)), key=lambda i: xs[i])
        ax.semilogx([xs[i] for i in order], [ys[i] for i in order], "o-")
        ax.set_xlabel("pole distance beyond the boundary (relative)")
        ax.invert_xaxis()
    else:
        ax.bar(["empirical", "coefficient"], [finite[0].lhs / finite[0].scale, finite[0].rhs_coeff])
        ax.set_ylabel("lower bound vs closed form")
    ax.axhline(1.0, color="crimson", linewidth=1, linestyle="--")
    ax.set_ylabel("lhs / rhs")
    ax.set_title("sharpness sweep")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def render_coefficients_figure(comparison: Sequence[Mapping], path: Path) -> Path:
    """Semilog magnitudes: recurrence coefficients vs the closed-form estimate."""
    plt = _pyplot()
    path = _ensure_parent(path)
    ns = [row["n"] for row in comparison]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogy(ns, [row["recurrence"] for row in comparison], "o-", label="recurrence")
    ax.semilogy(
        ns,
        [row["closed_form_estimate"] for row in comparison],
        "s--",
        label="closed-form estimate",
    )
    ax.set_xlabel("coefficient index")
    ax.set_ylabel("|c_n|")
    ax.set_title("crescent map coefficients: recurrence vs estimate")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def render_domain_figure(domain: Domain, path: Path, marks: Mapping[str, complex] | None = None) -> Path:
    """Boundary curves of a domain and its hull, with optional marked points."""
    plt = _pyplot()
    path = _ensure_parent(path)
    fig, ax = plt.subplots(figsize=(5.5, 5.5))

    def draw(d, style: str, label: str) -> None:
        if isinstance(d, CrescentDomain):
            draw(d.outer, style, label + " outer")
            draw(d.inner, style, label + " inner")
            return
        pts = sample_boundary(d, 512) if not isinstance(d, PolygonHull) else list(d.vertices)
        pts = pts + pts[:1]
        ax.plot([p.real for p in pts], [p.imag for p in pts], style, label=label, linewidth=1.2)

    draw(domain, "-", "region")
    hull = hull_of_domain(domain)
    if isinstance(hull, (Disc, PolygonHull)):
        draw(hull, "--", "hull")
    for name, w in (marks or {}).items():
        ax.plot([w.real], [w.imag], "x", markersize=9)
        ax.annotate(name, (w.real, w.imag), textcoords="offset points", xytext=(6, 4))
    ax.set_aspect("equal")
    ax.set_title("image region")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path

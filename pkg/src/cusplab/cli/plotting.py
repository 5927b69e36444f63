"""Report figures, drawn with the Agg canvas straight to files."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

FAMILY_ORDER = ("beta1", "beta2", "quartic")
COLOURS = {"beta1": "#1f77b4", "beta2": "#d62728", "quartic": "#2ca02c"}
PNG_META = {"Software": None}


def _save(fig: Figure, path: Path) -> Path:
    FigureCanvasAgg(fig)
    fig.savefig(path, dpi=120, metadata=PNG_META)
    return path


def verdict_bars(rows: list[dict], path: Path) -> Path:
    rings = sorted({r["ring"] for r in rows})
    fig = Figure(figsize=(4.2 * len(rings), 3.4), layout="constrained")
    axes = np.atleast_1d(fig.subplots(1, len(rings), sharey=True))
    width = 0.38
    for ax, ring in zip(axes, rings):
        counts = Counter((r["family"], r["cuspidal"]) for r in rows if r["ring"] == ring)
        x = np.arange(len(FAMILY_ORDER))
        yes = [counts[f, True] for f in FAMILY_ORDER]
        no = [counts[f, False] for f in FAMILY_ORDER]
        ax.bar(x - width / 2, yes, width, label="cuspidal", color="#4c72b0")
        ax.bar(x + width / 2, no, width, label="not cuspidal", color="#dd8452")
        for xi, (a, b) in enumerate(zip(yes, no)):
            ax.text(xi - width / 2, a, str(a), ha="center", va="bottom", fontsize=8)
            ax.text(xi + width / 2, b, str(b), ha="center", va="bottom", fontsize=8)
        ax.set_xticks(x, FAMILY_ORDER)
        ax.set_title(f"o_2 = {ring}")
    axes[0].set_ylabel("representations")
    axes[0].legend(frameon=False, fontsize=8)
    return _save(fig, path)


def criterion_scatter(rows: list[dict], path: Path, tag: str = "U(2,2)") -> Path:
    """Criterion multiplicity against the summed U(2,2) Mackey multiplicity."""
    fig = Figure(figsize=(4.6, 3.8), layout="constrained")
    ax = fig.subplots()
    rng = np.random.default_rng(0)  # jitter only, fixed for reproducible files
    for fam in FAMILY_ORDER:
        sel = [r for r in rows if r["family"] == fam]
        if not sel:
            continue
        x = np.array([r["criterion_value"] for r in sel], dtype=float)
        y = np.array([sum(r["multiplicities"].get(tag, [])) for r in sel], dtype=float)
        ax.scatter(x + rng.uniform(-0.08, 0.08, len(x)), y, s=18, alpha=0.7,
                   color=COLOURS[fam], label=fam)
    ax.axvline(0.5, color="0.7", lw=0.8, ls=":")
    ax.set_xlabel("multiplicity of 1 in rho on H cap U(2,2)")
    ax.set_ylabel(f"sum over twists of <Ind rho, Ind_{tag} 1>")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, path)


def multiplicity_heatmap(rows: list[dict], path: Path, ring: str, tag: str = "U(2,2)") -> Path:
    sel = [r for r in rows if r["ring"] == ring and r["family"] in ("beta1", "beta2")]
    data = np.array([r["multiplicities"].get(tag, []) for r in sel], dtype=float)
    fig = Figure(figsize=(4.0, 0.18 * len(sel) + 1.2), layout="constrained")
    ax = fig.subplots()
    im = ax.imshow(data, aspect="auto", cmap="magma_r", interpolation="nearest")
    ax.set_yticks(range(len(sel)), [r["label"] for r in sel], fontsize=6)
    ax.set_xticks(range(data.shape[1]), [f"chi_{j}" for j in range(data.shape[1])], fontsize=7)
    ax.set_xlabel("twist")
    ax.set_title(f"{tag} multiplicities, o_2 = {ring}", fontsize=9)
    fig.colorbar(im, ax=ax, shrink=0.6)
    return _save(fig, path)


def render(rows: list[dict], outdir: str | Path) -> list[Path]:
    """All figures for the enumerated representations; nothing if none were enumerated."""
    if not rows:
        return []
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [verdict_bars(rows, out / "verdicts.png"),
             criterion_scatter(rows, out / "criterion.png")]
    for ring in sorted({r["ring"] for r in rows}):
        paths.append(multiplicity_heatmap(rows, out / f"u22_{ring}.png", ring))
    return paths

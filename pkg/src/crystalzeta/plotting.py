"""matplotlib figures written to files (Agg backend, no display)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .xray import XRayGrid, cell_markers  # noqa: E402


def xray_png(grid: XRayGrid, path, poles=(), title: str = "") -> None:
    with np.errstate(invalid="ignore", divide="ignore"):
        u = grid.samples / np.abs(grid.samples)
    S, T = np.meshgrid(grid.sigma, grid.t)
    aspect = grid.rect.height / grid.rect.width
    fig, ax = plt.subplots(figsize=(6, min(12, max(3, 6 * aspect))))
    ax.contour(S, T, u.imag, levels=[0], colors="black", linewidths=1.6)
    ax.contour(S, T, u.real, levels=[0], colors="black", linewidths=0.6)
    zeros, _ = cell_markers(grid)
    if zeros:
        ax.plot([z.real for z in zeros], [z.imag for z in zeros], "o", color="red", ms=3)
    for p in poles:
        ax.plot([complex(p).real], [complex(p).imag], "x", color="blue", ms=6)
    ax.set_xlabel("Re s")
    ax.set_ylabel("Im s")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def asymptotics_png(rows, path) -> None:
    """rows: (N, x, scaled error) triples; one log-log line per N."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for n in sorted({r[0] for r in rows}):
        pts = sorted((x, e) for m, x, e in rows if m == n)
        ax.loglog([p[0] for p in pts], [p[1] for p in pts], "o-", label=f"N = {n}")
    ax.set_xlabel("x")
    ax.set_ylabel("|oracle - truncation| * x^(N+1)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

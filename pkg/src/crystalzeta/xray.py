"""x-ray pictures: curves where f is real (thick) and purely imaginary (thin).

Both curve families come from marching squares on the sampled fields
Im f / |f| and Re f / |f|, which share their zero sets with Im f and Re f
but stay of unit size.  Zeros and poles sit where the two families cross;
they are marked from the winding of f around each grid cell.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from skimage.measure import find_contours

from .zerofind import Rectangle

MIN_RESOLUTION = 32
LONG_SIDE_PX = 1000.0


@dataclass(frozen=True)
class XRayGrid:
    rect: Rectangle
    resolution: tuple[int, int]
    samples: np.ndarray
    puncture: float = 0.0

    @property
    def sigma(self) -> np.ndarray:
        return np.linspace(self.rect.sigma_min, self.rect.sigma_max, self.resolution[0])

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.rect.t_min, self.rect.t_max, self.resolution[1])


def sample_grid(f, rect: Rectangle, resolution: tuple[int, int], chunk: int = 65536) -> XRayGrid:
    """f on an nx-by-ny grid (rows are t, columns are sigma); values near poles are NaN."""
    nx, ny = resolution
    if nx < MIN_RESOLUTION or ny < MIN_RESOLUTION:
        raise ValueError(f"resolution must be at least {MIN_RESOLUTION}x{MIN_RESOLUTION}")
    sig = np.linspace(rect.sigma_min, rect.sigma_max, nx)
    ts = np.linspace(rect.t_min, rect.t_max, ny)
    pts = (sig[None, :] + 1j * ts[:, None]).ravel()
    puncture = 0.5 * max(rect.width / (nx - 1), rect.height / (ny - 1))
    poles = [complex(p) for p in getattr(f, "poles", ())]
    near = np.zeros(pts.shape, bool)
    for p in poles:
        near |= np.abs(pts - p) < puncture
    vals = np.full(pts.shape, np.nan + 0j)
    idx = np.nonzero(~near)[0]
    for lo in range(0, idx.size, chunk):
        sl = idx[lo:lo + chunk]
        vals[sl] = f(pts[sl])
    return XRayGrid(rect, (nx, ny), vals.reshape(ny, nx), puncture)


def _normalized(v: np.ndarray) -> np.ndarray:
    mag = np.abs(v)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(mag > 0, v / mag, 0)


def contours(grid: XRayGrid) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """(real-locus curves, imaginary-locus curves) in (sigma, t) coordinates."""
    u = _normalized(grid.samples)
    sig, ts = grid.sigma, grid.t

    def to_plane(c):
        rows, cols = c[:, 0], c[:, 1]
        return np.column_stack([np.interp(cols, np.arange(sig.size), sig), np.interp(rows, np.arange(ts.size), ts)])

    # a sign change of Im f/|f| across a cell edge is a crossing of Im f = 0
    real_locus = [to_plane(c) for c in find_contours(u.imag, 0.0)]
    imag_locus = [to_plane(c) for c in find_contours(u.real, 0.0)]
    return real_locus, imag_locus


def cell_markers(grid: XRayGrid) -> tuple[list[complex], list[complex]]:
    """Cells around which arg f turns once: +1 gives a zero, -1 a pole.

    The marker sits at the root of the bilinear interpolant's linear part.
    """
    v = grid.samples
    corners = [v[:-1, :-1], v[:-1, 1:], v[1:, 1:], v[1:, :-1]]
    ang = [np.angle(c) for c in corners]
    turn = sum(np.angle(np.exp(1j * (ang[(k + 1) % 4] - ang[k]))) for k in range(4))
    wind = np.rint(turn / (2 * np.pi))
    wind[~np.isfinite(turn)] = 0
    sig, ts = grid.sigma, grid.t
    dx, dy = sig[1] - sig[0], ts[1] - ts[0]
    zeros, poles = [], []
    for (i, j) in zip(*np.nonzero(wind)):
        f00, f10, f01 = v[i, j], v[i, j + 1], v[i + 1, j]
        a, b = f10 - f00, f01 - f00
        # solve f00 + a u + b w = 0 for real u, w
        m = np.array([[a.real, b.real], [a.imag, b.imag]])
        try:
            u, w = np.linalg.solve(m, [-f00.real, -f00.imag])
        except np.linalg.LinAlgError:
            u, w = 0.5, 0.5
        u, w = min(max(u, 0.0), 1.0), min(max(w, 0.0), 1.0)
        z = complex(sig[j] + u * dx, ts[i] + w * dy)
        (zeros if wind[i, j] > 0 else poles).append(z)
    return zeros, poles


def _px(rect: Rectangle):
    scale = LONG_SIDE_PX / max(rect.width, rect.height)
    w, h = rect.width * scale, rect.height * scale

    def conv(s, t):
        return (s - rect.sigma_min) * scale, (rect.t_max - t) * scale

    return conv, w, h


def _polyline(points, conv, width: float) -> str:
    xs, ys = conv(points[:, 0], points[:, 1])
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
    return f'<polyline points="{coords}" fill="none" stroke="black" stroke-width="{width:g}"/>'


def render_svg(grid: XRayGrid, poles=(), title: str = "") -> str:
    """Deterministic SVG text for a sampled grid."""
    rect = grid.rect
    conv, w, h = _px(rect)
    real_locus, imag_locus = contours(grid)
    zeros, cell_poles = cell_markers(grid)
    inside = [complex(p) for p in poles if rect.contains(complex(p))]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" viewBox="0 0 {w:.2f} {h:.2f}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append(f'<rect x="0" y="0" width="{w:.2f}" height="{h:.2f}" fill="white" stroke="gray"/>')
    # axes
    if rect.sigma_min < 0 < rect.sigma_max:
        x0, _ = conv(0.0, 0.0)
        out.append(f'<line x1="{x0:.2f}" y1="0" x2="{x0:.2f}" y2="{h:.2f}" stroke="#bbbbbb" stroke-width="0.5"/>')
    if rect.t_min < 0 < rect.t_max:
        _, y0 = conv(0.0, 0.0)
        out.append(f'<line x1="0" y1="{y0:.2f}" x2="{w:.2f}" y2="{y0:.2f}" stroke="#bbbbbb" stroke-width="0.5"/>')
    out.append('<g id="real-locus">')
    out += [_polyline(c, conv, 2) for c in real_locus if len(c) > 1]
    out.append("</g>")
    out.append('<g id="imaginary-locus">')
    out += [_polyline(c, conv, 1) for c in imag_locus if len(c) > 1]
    out.append("</g>")
    out.append('<g id="zeros">')
    for z in zeros:
        x, y = conv(z.real, z.imag)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="red" data-re="{z.real:.6f}" data-im="{z.imag:.6f}"/>')
    out.append("</g>")
    out.append('<g id="poles">')
    for p in inside:
        x, y = conv(p.real, p.imag)
        out.append(f'<path d="M {x - 4:.2f} {y - 4:.2f} L {x + 4:.2f} {y + 4:.2f} M {x - 4:.2f} {y + 4:.2f} '
                   f'L {x + 4:.2f} {y - 4:.2f}" stroke="blue" stroke-width="1.5" data-re="{p.real:g}" data-im="{p.imag:g}"/>')
    out.append("</g>")
    if inside:
        out.append(f"<desc>cells within {grid.puncture:.3g} of a pole were skipped</desc>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def xray_svg(f, rect: Rectangle, resolution: tuple[int, int], title: str = "") -> str:
    grid = sample_grid(f, rect, resolution)
    return render_svg(grid, getattr(f, "poles", ()), title)

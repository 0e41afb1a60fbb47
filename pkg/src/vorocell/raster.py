"""Rasterised Voronoi diagrams and dominance regions, plus PPM/PGM/SVG export."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dominance import assign_rows
from .errors import DimensionMismatch, DomainError
from .norms import NormSpec
from .sites import DEFAULT_TOL, Scene, Site

# Distinct, fixed colours; index k paints cell k (cycled when K > len).
PALETTE = (
    (230, 159, 0), (86, 180, 233), (0, 158, 115), (240, 228, 66),
    (0, 114, 178), (213, 94, 0), (204, 121, 167), (153, 153, 153),
    (117, 112, 179), (102, 166, 30), (166, 118, 29), (231, 41, 138),
)
BOUNDARY_COLOR = (0, 0, 0)


def thread_count() -> int:
    """Worker cap from ``VOROCELL_THREADS`` (0 or unset: one per CPU)."""
    raw = os.environ.get("VOROCELL_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def pitch_tau(factor: float = 0.25, floor: float = 1e-9):
    """tau = factor * pitch * sqrt(2): the equality band shrinks with the pixels."""
    return lambda pitch: max(floor, factor * pitch * math.sqrt(2.0))


def fixed_tau(value: float):
    if not value > 0:
        raise DomainError("tau must be positive")
    return lambda pitch: value


@dataclass
class LabelGrid:
    """Per-pixel nearest-site sets and boundary flags over a 2-D box.

    Row 0 is the top of the image (largest y). ``nearest`` has shape
    ``(height, width, K)``.
    """

    lo: np.ndarray
    hi: np.ndarray
    xs: np.ndarray
    ys: np.ndarray
    nearest: np.ndarray
    boundary: np.ndarray
    tau: float

    @property
    def width(self) -> int:
        return self.xs.size

    @property
    def height(self) -> int:
        return self.ys.size

    @property
    def n_sites(self) -> int:
        return self.nearest.shape[2]

    @property
    def pitch(self) -> float:
        return max((self.hi[0] - self.lo[0]) / self.width, (self.hi[1] - self.lo[1]) / self.height)

    @property
    def labels(self) -> np.ndarray:
        """Smallest nearest-site index of each pixel."""
        return np.argmax(self.nearest, axis=2)

    def pixel_center(self, row: int, col: int) -> np.ndarray:
        return np.array([self.xs[col], self.ys[row]])

    def nearest_set(self, row: int, col: int) -> frozenset:
        return frozenset(int(k) for k in np.flatnonzero(self.nearest[row, col]))


def rasterize(scene: Scene, width: int, height: int, tau_policy=None,
              tol: float = DEFAULT_TOL, threads: int | None = None) -> LabelGrid:
    """Classify every pixel centre of a 2-D scene by its nearest sites."""
    if scene.dimension != 2:
        raise DimensionMismatch(f"rasterisation needs a 2-D scene, got {scene.dimension}-D")
    if width < 2 or height < 2:
        raise DomainError("width and height must be at least 2")
    if tau_policy is None:
        tau_policy = pitch_tau()
    lo, hi = scene.lo, scene.hi
    px = (hi[0] - lo[0]) / width
    py = (hi[1] - lo[1]) / height
    tau = float(tau_policy(max(px, py)))
    xs = lo[0] + (np.arange(width) + 0.5) * px
    ys = hi[1] - (np.arange(height) + 0.5) * py

    def band(rows):
        Y, X = np.meshgrid(ys[rows], xs, indexing="ij")
        Q = np.stack([X.ravel(), Y.ravel()], axis=1)
        return assign_rows(scene.distances(Q, tol), tau)

    chunks = [range(s, min(s + 16, height)) for s in range(0, height, 16)]
    workers = min(thread_count() if threads is None else max(1, threads), len(chunks))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda r: band(np.arange(r.start, r.stop)), chunks))
    else:
        parts = [band(np.arange(r.start, r.stop)) for r in chunks]
    K = len(scene.sites)
    nearest = np.concatenate([p[0] for p in parts]).reshape(height, width, K)
    boundary = np.concatenate([p[1] for p in parts]).reshape(height, width)
    return LabelGrid(lo.copy(), hi.copy(), xs, ys, nearest, boundary, tau)


def dominance_grid(P: Site, A: Site, lo, hi, n: NormSpec, width: int, height: int,
                   tau_policy=None, **kw) -> LabelGrid:
    """Raster of dom(P, A): label 0 is the strict region, boundary the |f| <= tau band."""
    return rasterize(Scene(lo, hi, [P, A], n), width, height, tau_policy, **kw)


def boundary_fraction(grid: LabelGrid) -> float:
    """Fraction of pixels flagged as boundary (near-bisector for dominance grids)."""
    return float(grid.boundary.mean())


def image_bytes(grid: LabelGrid, palette=None, boundary_color=BOUNDARY_COLOR) -> bytes:
    palette = np.array(palette or PALETTE, dtype=np.uint8)
    rgb = palette[grid.labels % len(palette)]
    rgb[grid.boundary] = np.array(boundary_color, dtype=np.uint8)
    header = f"P6\n{grid.width} {grid.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(rgb, dtype=np.uint8).tobytes()


def export_image(grid: LabelGrid, path, palette=None, boundary_color=BOUNDARY_COLOR) -> None:
    """Write a binary PPM (P6); identical grids give identical files."""
    with open(path, "wb") as fh:
        fh.write(image_bytes(grid, palette, boundary_color))


def export_pgm(grid: LabelGrid, path) -> None:
    """Write a plain PGM (P2): boundary pixels black, cells in evenly spaced greys."""
    K = grid.n_sites
    levels = np.round(255.0 * (np.arange(K) + 1) / K).astype(int)
    gray = levels[grid.labels]
    gray[grid.boundary] = 0
    lines = [f"P2\n{grid.width} {grid.height}\n255"]
    lines += [" ".join(str(int(v)) for v in row) for row in gray]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_ppm(path) -> tuple[int, int, np.ndarray]:
    """Read back a P6 file written by :func:`export_image`."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, dims, maxval, rest = data.split(b"\n", 3)
    if magic != b"P6" or maxval != b"255":
        raise ValueError("not an 8-bit P6 pixmap")
    w, h = (int(t) for t in dims.split())
    return w, h, np.frombuffer(rest, dtype=np.uint8).reshape(h, w, 3)


def _point_array(points) -> np.ndarray:
    rows = [np.asarray(getattr(p, "point", p), dtype=float) for p in points]
    if not rows:
        return np.zeros((0, 2))
    P = np.vstack(rows)
    if P.shape[1] != 2:
        raise DimensionMismatch("SVG export needs 2-D points")
    return P


def bisector_svg(points, domain=None, size: int = 512, radius: float = 1.5) -> str:
    P = _point_array(points)
    if domain is None:
        if P.shape[0]:
            lo, hi = P.min(axis=0), P.max(axis=0)
            pad = np.where(hi > lo, 0.05 * (hi - lo), 1.0)
            lo, hi = lo - pad, hi + pad
        else:
            lo, hi = np.zeros(2), np.ones(2)
    else:
        lo, hi = (np.asarray(v, dtype=float) for v in
                  ((domain.lo, domain.hi) if isinstance(domain, Scene) else domain))
    sx = size / (hi[0] - lo[0])
    sy = size / (hi[1] - lo[1])
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        '<g fill="black" stroke="none">',
    ]
    for x, y in P:
        out.append(f'<circle cx="{(x - lo[0]) * sx:.4f}" cy="{(hi[1] - y) * sy:.4f}" r="{radius:g}"/>')
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def export_bisector_svg(points, path, domain=None, size: int = 512) -> None:
    """Write one SVG circle marker per boundary point.

    ``domain`` (a :class:`Scene` or ``(lo, hi)``) fixes the coordinate window;
    without it the window is the padded bounding box of the points.
    """
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(bisector_svg(points, domain, size))

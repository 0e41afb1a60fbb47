"""Ready-made scenes for the illustrations and counterexamples.

Figures 1 and 2 ship representative coordinates: only their structure (six
Euclidean point sites; four two-point sites under l_p with p close to e)
is known, so they are qualitative reconstructions.
"""

from __future__ import annotations

import math
from importlib import resources

import numpy as np

from .norms import NormSpec
from .raster import LabelGrid, export_image, fixed_tau, rasterize
from .scenefile import load_scene
from .sites import Scene, SequenceSite, Site

P_E = 2.718281828
SQUARE = ([-5.0, -5.0], [5.0, 5.0])

FIG1_POINTS = [(0.0, 0.0), (2.0, 2.0), (-3.0, 2.5), (3.2, -2.4), (-2.6, -3.1), (-0.8, 4.0)]

FIG2_PAIRS = [
    [(-3.0, -3.0), (3.0, 3.0)],
    [(-3.0, 3.0), (3.0, -3.0)],
    [(0.0, -1.5), (-3.5, 0.5)],
    [(0.0, 1.5), (3.5, -0.5)],
]


def fig1_scene() -> Scene:
    """Six point sites in a square of the Euclidean plane."""
    return Scene(*SQUARE, [Site.points([p]) for p in FIG1_POINTS], NormSpec(2.0))


def fig2_scene() -> Scene:
    """Four sites of two points each under l_p, p = 2.718281828."""
    return Scene(*SQUARE, [Site.points(pair) for pair in FIG2_PAIRS], NormSpec(P_E))


def fig3_scene() -> Scene:
    """Cell of P = {(0,0)} against A = {(-2,0), (2,0), (0,-2)} under l_inf.

    The bisector contains open sets (the "W" above the small "house").
    """
    return Scene(*SQUARE, [Site.points([(0.0, 0.0)]),
                           Site.points([(-2.0, 0.0), (2.0, 0.0), (0.0, -2.0)])],
                 NormSpec(math.inf))


def l1_pair_scene() -> Scene:
    """P = {(-1,-1)}, A = {(1,1)} under l1 (explicit staircase bisector)."""
    return Scene(*SQUARE, [Site.points([(-1.0, -1.0)]), Site.points([(1.0, 1.0)])],
                 NormSpec(1.0))


def overlap_scene() -> Scene:
    """P = {(-10,0), (0,0)} and A = {(0,0), (10,0)} share a point (Euclidean)."""
    return Scene([-15.0, -15.0], [15.0, 15.0],
                 [Site.points([(-10.0, 0.0), (0.0, 0.0)]),
                  Site.points([(0.0, 0.0), (10.0, 0.0)])], NormSpec(2.0))


def two_site_scene(p: float = 2.0) -> Scene:
    """Point sites (0,0) and (2,0); the l_p bisector through (1,0)."""
    return Scene(*SQUARE, [Site.points([(0.0, 0.0)]), Site.points([(2.0, 0.0)])], NormSpec(p))


def two_site_e_scene() -> Scene:
    """Two two-point sites under l_p, p = 2.718281828 (curved bisector)."""
    return Scene(*SQUARE, [Site.points([(-1.0, -1.0), (-2.0, 2.0)]),
                           Site.points([(1.5, 0.5), (0.0, -3.0)])], NormSpec(P_E))


def segment_scene(p: float = 2.0) -> Scene:
    """A point site against a segment site."""
    return Scene(*SQUARE, [Site.points([(-1.5, -1.0)]),
                           Site.segments([[(1.0, -2.0), (2.0, 2.5)]])], NormSpec(p))


def single_site_scene() -> Scene:
    return Scene(*SQUARE, [Site.points([(0.0, 0.0)])], NormSpec(2.0))


def horvath_scene(half_x: int = 20, half_y: int = 5) -> Scene:
    """Lattice generated by (2,0), (0,8) under l_inf, truncated to 41 x 11 points.

    Site 0 is the origin, site 1 every other lattice point. Inside the window
    [-5,5] x [-10,10] the nearest omitted lattice point is farther away than
    any retained competitor, so truncation does not change the picture.
    """
    pts = [(2.0 * i, 8.0 * j) for j in range(-half_y, half_y + 1)
           for i in range(-half_x, half_x + 1) if (i, j) != (0, 0)]
    return Scene([-5.0, -10.0], [5.0, 10.0], [Site.points([(0.0, 0.0)]), Site.points(pts)],
                 NormSpec(math.inf))


def sequence_scene(dimension: int = 2) -> Scene:
    """The two closed-form sequence sites of l2, viewed on a finite support."""
    return Scene(-np.ones(dimension), np.ones(dimension),
                 [Site([SequenceSite("P")]), Site([SequenceSite("A")])], NormSpec(2.0))


SCENES = {
    "fig1": fig1_scene,
    "fig2": fig2_scene,
    "fig3": fig3_scene,
    "l1_pair": l1_pair_scene,
    "overlap": overlap_scene,
    "two_site": two_site_scene,
    "two_site_e": two_site_e_scene,
    "segment": segment_scene,
    "single_site": single_site_scene,
    "horvath": horvath_scene,
    "sequence": sequence_scene,
}

HEADERS = {
    "fig1": "Six Euclidean point sites.\nQualitative reconstruction: the original coordinates are not published.",
    "fig2": "Four two-point sites under l_p, p = 2.718281828.\nQualitative reconstruction: the original coordinates are not published.",
    "fig3": "l_inf cell of P={(0,0)} against A={(-2,0),(2,0),(0,-2)}: fat bisector.",
    "l1_pair": "l1 pair P={(-1,-1)}, A={(1,1)}: staircase bisector.",
    "overlap": "P={(-10,0),(0,0)}, A={(0,0),(10,0)} overlap at the origin.",
    "two_site": "Two Euclidean point sites.",
    "two_site_e": "Two two-point sites under l_p, p = 2.718281828.",
    "segment": "Point site against a segment site (Euclidean).",
    "single_site": "A lone site: no bisector at all.",
    "horvath": "l_inf lattice generated by (2,0), (0,8), truncated to 41 x 11 points.",
    "sequence": "Closed-form sequence sites of l2 on a 2-term support.",
}


def builtin_scene_path(name: str):
    return resources.files("vorocell").joinpath("scenes", f"{name}.scene")


def load_builtin(name: str) -> Scene:
    with resources.as_file(builtin_scene_path(name)) as path:
        return load_scene(path)


# name -> (scene factory, fixed tau or None for the pitch-tied default)
FIGURES = {
    "fig1": (fig1_scene, None),
    "fig2": (fig2_scene, None),
    "fig3": (fig3_scene, None),
    "fig4": (fig3_scene, 1e-6),
}


def render_figure(name: str, path, width: int = 512, height: int = 512) -> LabelGrid:
    """Rasterise one of the figure recipes and write it as a P6 image."""
    factory, tau = FIGURES[name]
    grid = rasterize(factory(), width, height, None if tau is None else fixed_tau(tau))
    export_image(grid, path)
    return grid

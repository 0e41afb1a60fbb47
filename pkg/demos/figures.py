"""
Rendering the four figures
==========================

Figures 1 and 2 are ordinary Voronoi diagrams: six Euclidean sites, then
four two-point sites under l_p with p close to e. Figure 3 is the cell of the
origin against three points under l_inf, and Figure 4 is the same scene with
a tiny fixed tolerance, so that the region where the two distances are equal
shows up as a solid area instead of a curve.

Run from anywhere; images go to ./figures_out (or the first argument).
"""

import pathlib
import sys

from vorocell import boundary_fraction, fixed_tau, rasterize
from vorocell.figures import fig1_scene, fig3_scene, render_figure

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "figures_out")
out.mkdir(exist_ok=True)

# Each recipe writes a binary PPM; boundary pixels are black.
for name in ("fig1", "fig2", "fig3", "fig4"):
    grid = render_figure(name, out / f"{name}.ppm", 512, 512)
    print(f"{name}: {grid.width}x{grid.height}, boundary fraction {boundary_fraction(grid):.5f}")

# %%
# Thin versus fat
# ---------------
# With the tolerance tied to the pixel size, a thin boundary covers about
# half as many pixels each time the resolution doubles.
for size in (128, 256, 512):
    print("fig1", size, boundary_fraction(rasterize(fig1_scene(), size, size)))

# Under l_inf the equality set has interior, so with a fixed tolerance
# its share of the window does not shrink at all.
for size in (128, 256, 512):
    print("fig3", size, boundary_fraction(rasterize(fig3_scene(), size, size, fixed_tau(1e-6))))

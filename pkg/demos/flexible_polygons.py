"""Bicycle polygons: equilateral, with all k-diagonals equal.

Regular polygons qualify.  For n even and k odd there is a whole family:
put isosceles triangles of height h on the sides of a regular n/2-gon.
The plus-shaped 12-gon on graph paper is a non-convex bicycle (12, 2)-gon.

    python3 demos/flexible_polygons.py [outdir]
"""

import numpy as np

from _common import output_dir
from bikegeom.polygon_deform import PolygonSpectrum, dimension, kernel
from bikegeom.polygons import (flexible, flexible_range, grid_example, petrunin_arcs,
                               regular_altitude, verify)
from bikegeom.render import svg

out = output_dir()
for n, k in ((6, 3), (8, 3)):
    lo, hi = flexible_range(n)
    print(f"({n}, {k}): altitudes in ({lo}, {hi:.6f}); regular at h = {regular_altitude(n):.6f}")
    shapes = []
    for h in np.linspace(lo, hi, 5)[1:-1]:
        P = flexible(n, k, h)
        rep = verify(P, k)
        print(f"  h = {h:.4f}: side spread {rep.side_spread:.1e}, diagonal spread "
              f"{rep.diag_spread:.1e}, convex {rep.convex}")
        shapes.append(P.vertices)
    diags = [(shapes[1][i], shapes[1][(i + k) % n]) for i in range(n)]
    (out / f"flexible_{n}_{k}.svg").write_text(svg(shapes, segments=diags))

arcs = petrunin_arcs(flexible(8, 3, 0.25), 3)
print("within-trapezoid chord spread", max(a.chord_spread for a in arcs))

G = grid_example()
rep = verify(G, 2)
print("grid 12-gon: spreads", rep.side_spread, rep.diag_spread, "convex", rep.convex)
(out / "grid_12gon.svg").write_text(svg([G.vertices], markers=[G.vertices]))

# first order: which regular polygons can bend as bicycle polygons?
for n, k in ((7, 3), (8, 3), (9, 3), (10, 5)):
    print(f"({n}, {k}) zero eigenvalues at r = {PolygonSpectrum(n, k).zeros()}, "
          f"dimension {dimension(n, k)}")
print("(8, 3) kernel mode t =", kernel(8, 3)[0].t)

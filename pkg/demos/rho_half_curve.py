"""A non-circular bicycle curve with rotation number 1/2.

Take the three-cusped front with radius function r = cos 3t.  A segment of
length 2L slides with its midpoint on the front and stays tangent to it;
its endpoints trace a closed curve on which every chord of the family cuts
the perimeter in half and has the same length.  For L above a threshold
(here exactly 3) the curve is convex.

    python3 demos/rho_half_curve.py [outdir]
"""

import numpy as np

from _common import output_dir
from bikegeom.curves import WaveFront, curvature, front_eval
from bikegeom.render import svg
from bikegeom.rho_half import alpha_of, construct, min_convex_L
from bikegeom.tracks import bicycle_residual, eq10_residual, theorem_checks

out = output_dir()
front = WaveFront({3: (1.0, 0.0)})
L_star = min_convex_L(front)
print("convexity threshold L* =", L_star)
print("L = 0.9 L* convex?", construct(front, 0.9 * L_star).convex)

L = 4.0
prof, c = alpha_of(front, L, 512)
res = bicycle_residual(c.curve, 0.5)
print(f"normalized half-chord {c.L:.12f}")
print(f"chord length spread {res.length_spread:.2e}, end-angle spread {res.angle_spread:.2e}")
print(f"functional equation residual {eq10_residual(prof, np.pi / 2, c.L):.2e}")
k = curvature(c.curve)
print(f"curvature range [{k.min():.4f}, {k.max():.4f}]  (a circle would be constant)")
rep = theorem_checks(c.curve, 0.5)
print("vertices:", rep.vertex_count, " largest gap:", rep.max_vertex_gap, "<= pi")

# the moving segment at a few positions, with the front it stays tangent to
G = c.curve.samples
chords = [(G[j], G[j + 256]) for j in range(0, 256, 16)]
env, cusps = front_eval(front, 1024)
(out / "rho_half.svg").write_text(
    svg([G, env.samples * c.scale], markers=[front.position(cusps) * c.scale], segments=chords))
print("wrote", out / "rho_half.svg")

# a richer front: add a fifth harmonic
front5 = WaveFront({3: (1.0, 0.0), 5: (0.0, 0.3)})
c5 = construct(front5, min_convex_L(front5) + 0.01)
print("cos 3t + 0.3 sin 5t: spread", bicycle_residual(c5.curve, 0.5).length_spread)
(out / "rho_half_5.svg").write_text(svg([c5.curve.samples]))

"""Mode locking for deformations of the circle.

The unit circle bends, to first order, through curves with constant chords
over arcs of length 2w only when n tan w = tan n w for some n >= 2.  The
smallest n with a root is 4 (w = arctan sqrt 5).  At a root the chord
spread of the deformed circle is second order in eps; elsewhere it is
first order.

    python3 demos/mode_locking.py [outdir]
"""

import numpy as np

from _common import output_dir
from bikegeom.circle_deform import (DeformSpec, chord_spread, deform_circle, mode_roots,
                                    ode19_integrate, turning_points)
from bikegeom.render import svg

out = output_dir()
for n in range(2, 9):
    print(n, ["%.10f" % r.omega for r in mode_roots(n)])

w = mode_roots(4)[0].omega
for om, label in ((w, "root"), (1.0, "w = 1")):
    s = [chord_spread(DeformSpec(4, om, e)) for e in (1e-2, 1e-3, 1e-4)]
    print(f"{label:6s} spreads {s[0]:.2e} {s[1]:.2e} {s[2]:.2e}  ratio {s[1] / s[2]:.2f}")

# exaggerated so the fourfold bending is visible
(out / "deformed_circle.svg").write_text(
    svg([deform_circle(DeformSpec(4, w, 0.0)).samples,
         deform_circle(DeformSpec(4, w, 0.02)).samples]))

# nonlinear version near rotation number 1/2: a pendulum-type equation for beta
t = ode19_integrate(2.0, 1.0, 0.3, 0.0, 2 * np.pi)
print("relative energy drift", t.drift, " turning points", turning_points(t))
print("wrote", out / "deformed_circle.svg")

"""Ambiguous track pairs.

A bicycle of length L riding a circle of radius R leaves a front track on
the concentric circle of radius sqrt(R^2 + L^2), whichever way it rides.
So from the two tracks alone you cannot tell the direction of travel.
An ellipse does not have this property.

    python3 demos/ambiguous_circles.py [outdir]
"""

import numpy as np

from _common import output_dir
from bikegeom.curves import circle, ellipse, resample_arclength
from bikegeom.render import svg
from bikegeom.tracks import ambiguity_distance, front_track, length_gap, reverse_front_track

out = output_dir()

rear = circle(3.0, 256)
fwd, back = front_track(rear, 1.0), reverse_front_track(rear, 1.0)
print("front radius     ", np.linalg.norm(fwd.samples, axis=1).mean(), "vs sqrt(10) =", np.sqrt(10))
gap, bound = length_gap(rear, 1.0)
print("length gap       ", gap, "  bound L * int|k| =", bound)
print("ambiguity (circle)", ambiguity_distance(rear, 1.0))

# a few bicycle frames, one per direction, make the picture readable
frames = [(rear.samples[j], fwd.samples[j]) for j in range(0, 256, 32)]
frames += [(rear.samples[j], back.samples[j]) for j in range(16, 256, 32)]
(out / "ambiguous_circles.svg").write_text(svg([rear.samples, fwd.samples], segments=frames))

e = resample_arclength(ellipse(2.0, 1.0, 256))
print("ambiguity (ellipse)", ambiguity_distance(e, 1.0))
(out / "ellipse_tracks.svg").write_text(
    svg([e.samples, front_track(e, 1.0).samples, reverse_front_track(e, 1.0).samples]))
print("wrote", out / "ambiguous_circles.svg", "and", out / "ellipse_tracks.svg")

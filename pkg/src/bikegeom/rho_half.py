"""Bicycle curves with rotation number 1/2 built from wave fronts.

A segment of length 2L slides with its midpoint on a front gamma and stays
tangent to it.  Its endpoints gamma(theta) +- L (cos theta, sin theta) sweep
a closed curve on which the segment always bisects the perimeter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import spectral
from .curves import ClosedCurve, CurveError, WaveFront, arclength_parameters
from .spectral import TWO_PI
from .tracks import AlphaProfile

CONVEXITY_SCAN = 8192


@dataclass(frozen=True, eq=False)
class Construction:
    """A constructed curve, normalized to perimeter 2*pi.

    ``L`` is the half-chord after normalization, ``scale`` the factor that
    was applied, and ``theta`` the front parameter at each output sample.
    """

    curve: ClosedCurve
    L: float
    scale: float
    theta: np.ndarray
    convex: bool
    junction_mismatch: float
    front: WaveFront
    L_input: float


def _raw_curvature_numerator(front: WaveFront, L: float, theta) -> np.ndarray:
    # cross(G', G'') for G = gamma + L e, with gamma' = r e
    r = front.radius(theta)
    return r ** 2 + L ** 2 - L * front.radius(theta, 1)


def raw_curve(front: WaveFront, L: float, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    e = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    return front.position(theta) + L * e


def construct(front: WaveFront, L: float, n: int = 512) -> Construction:
    """Sweep the endpoints of the tangent segment and normalize the result.

    A non-convex result is returned with ``convex=False`` so the caller can
    retry with a larger L.
    """
    if not L > 0:
        raise ValueError(f"L must be positive, got {L}")
    theta = spectral.grid(n)
    raw = ClosedCurve(raw_curve(front, L, theta))
    t, total = arclength_parameters(raw, n)
    scale = TWO_PI / total
    # the raw parameter is theta itself, so evaluate analytically there
    pts = raw_curve(front, L, t) * scale
    curve = ClosedCurve(pts, arclength=True)

    dense = np.linspace(0.0, TWO_PI, CONVEXITY_SCAN, endpoint=False)
    convex = bool(np.all(_raw_curvature_numerator(front, L, dense) > 0))

    # tangent of the "+L" half arriving at theta = pi against the "-L" half leaving 0
    end_plus = front.position(np.pi, 1) + L * np.array([-np.sin(np.pi), np.cos(np.pi)])
    start_minus = front.position(0.0, 1) - L * np.array([0.0, 1.0])
    mismatch = float(np.linalg.norm(end_plus / np.linalg.norm(end_plus)
                                    - start_minus / np.linalg.norm(start_minus)))
    return Construction(curve, L * scale, scale, t, convex, mismatch, front, L)


def min_convex_L(front: WaveFront) -> float:
    """Smallest half-chord above which the construction is convex.

    For fixed theta the curvature numerator r^2 + L^2 - L r' is a quadratic
    in L; it is negative exactly between its roots, so the threshold is the
    largest upper root over theta.
    """
    theta = np.linspace(0.0, TWO_PI, CONVEXITY_SCAN, endpoint=False)

    def upper_root(th):
        r = front.radius(th)
        rp = front.radius(th, 1)
        disc = rp ** 2 - 4.0 * r ** 2
        return np.where(disc >= 0, 0.5 * (rp + np.sqrt(np.maximum(disc, 0.0))), 0.0)

    roots = upper_root(theta)
    j = int(np.argmax(roots))
    if roots[j] <= 0.0:
        return 0.0
    h = TWO_PI / CONVEXITY_SCAN
    res = minimize_scalar(lambda th: -float(upper_root(th)), bounds=(theta[j] - h, theta[j] + h),
                          method="bounded", options={"xatol": 1e-12})
    return float(max(roots[j], -res.fun))


def min_convex_L_bisect(front: WaveFront, iterations: int = 50) -> float:
    """Bisection on the convexity predicate over [0, 10 max|r|]."""
    theta = np.linspace(0.0, TWO_PI, CONVEXITY_SCAN, endpoint=False)
    lo, hi = 0.0, 10.0 * front.max_radius()

    def convex(L):
        return bool(np.all(_raw_curvature_numerator(front, L, theta) > 0))

    if not convex(hi):
        raise CurveError("no convex construction below 10 max|r|")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if convex(mid):
            hi = mid
        else:
            lo = mid
    return hi


def alpha_of(front: WaveFront, L: float, n: int = 512) -> tuple[AlphaProfile, Construction]:
    """Chord-tangent angle of the constructed curve on its arc-length grid.

    The chord joins Gamma(theta) to Gamma(theta + pi), so alpha = pi/2 +
    arctan(r / L), a scale-invariant quantity.
    """
    c = construct(front, L, n)
    if not c.convex:
        raise CurveError(f"construction is not convex at L = {L}")
    alpha = np.pi / 2 + np.arctan2(front.radius(c.theta), L)
    return AlphaProfile(alpha), c

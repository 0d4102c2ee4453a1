"""Closed plane curves and wave fronts.

Curves are stored as N uniform samples of a 2*pi-periodic parameter and
differentiated spectrally.  Wave fronts are stored in tangent-angle form:
a signed radius function r(theta) built from odd harmonics m >= 3, so that
gamma'(theta) = r(theta) * (cos theta, sin theta) and gamma has period pi.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq
from scipy.spatial import cKDTree

from . import spectral
from .spectral import TWO_PI, TrigInterpolant

MIN_SAMPLES = 64
ARCLENGTH_RTOL = 1e-6
VERTEX_PROMINENCE = 1e-8


class CurveError(ValueError):
    pass


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def cross(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


@dataclass(frozen=True, eq=False)
class ClosedCurve:
    """Closed plane curve sampled at N uniform parameter values t_j = 2*pi*j/N.

    ``arclength`` declares that the parameter is proportional to arc length,
    i.e. consecutive samples are equally spaced along the curve.
    """

    samples: np.ndarray
    arclength: bool = False

    def __post_init__(self):
        pts = _readonly(self.samples)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise CurveError(f"samples must have shape (N, 2), got {pts.shape}")
        n = pts.shape[0]
        if n < MIN_SAMPLES or n % 2:
            raise CurveError(f"sample count must be even and >= {MIN_SAMPLES}, got {n}")
        if not np.all(np.isfinite(pts)):
            raise CurveError("samples contain non-finite values")
        chords = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
        if np.any(chords == 0.0):
            raise CurveError("consecutive samples coincide")
        object.__setattr__(self, "samples", pts)
        if self.arclength:
            # equal arcs, not equal chords: chords shrink by ~ k^2 h^2 / 24
            spread = arc_spread(self)
            if spread > ARCLENGTH_RTOL:
                raise CurveError(
                    f"arclength flag set but speed varies by {spread:.3g} (relative)")

    @property
    def N(self) -> int:
        return self.samples.shape[0]

    @property
    def params(self) -> np.ndarray:
        return spectral.grid(self.N)

    def derivative(self, order: int = 1) -> np.ndarray:
        return spectral.derivative(self.samples, order)

    @cached_property
    def interpolant(self) -> TrigInterpolant:
        return TrigInterpolant(self.samples)

    def speed(self) -> np.ndarray:
        return np.linalg.norm(self.derivative(1), axis=1)

    def length(self) -> float:
        # trapezoid rule is spectrally accurate for periodic integrands
        return float(TWO_PI * self.speed().mean())

    def unit_tangent(self) -> np.ndarray:
        d = self.derivative(1)
        return d / np.linalg.norm(d, axis=1)[:, None]

    def evaluate(self, t, order: int = 0) -> np.ndarray:
        return self.interpolant(t, order)

    def scaled(self, factor: float) -> "ClosedCurve":
        return ClosedCurve(self.samples * factor, self.arclength)

    def to_dict(self) -> dict:
        return {"samples": self.samples.tolist(), "arclength": bool(self.arclength)}

    @classmethod
    def from_dict(cls, data: dict) -> "ClosedCurve":
        if "samples" not in data:
            raise CurveError("curve JSON is missing field 'samples'")
        return cls(np.asarray(data["samples"], dtype=float), bool(data.get("arclength", False)))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ClosedCurve":
        return cls.from_dict(json.loads(text))


def arc_spread(curve: ClosedCurve) -> float:
    """Relative spread of the arc lengths between consecutive samples."""
    speed = TrigInterpolant(curve.speed())
    s = speed.integral(np.append(curve.params, TWO_PI))
    arcs = np.diff(s)
    return float((arcs.max() - arcs.min()) / arcs.mean())


def circle(radius: float = 1.0, n: int = 256, center=(0.0, 0.0)) -> ClosedCurve:
    t = spectral.grid(n)
    pts = np.column_stack([np.cos(t), np.sin(t)]) * radius + np.asarray(center, dtype=float)
    return ClosedCurve(pts, arclength=True)


def ellipse(a: float = 2.0, b: float = 1.0, n: int = 256) -> ClosedCurve:
    t = spectral.grid(n)
    return ClosedCurve(np.column_stack([a * np.cos(t), b * np.sin(t)]))


def curvature(curve: ClosedCurve) -> np.ndarray:
    """Signed curvature from spectral first and second derivatives."""
    d1 = curve.derivative(1)
    d2 = curve.derivative(2)
    return cross(d1, d2) / np.linalg.norm(d1, axis=1) ** 3


def total_turning(curve: ClosedCurve) -> float:
    """Integral of curvature against arc length; 2*pi times the winding number."""
    return float(TWO_PI * np.mean(curvature(curve) * curve.speed()))


def is_convex(curve: ClosedCurve, tol: float = 0.0) -> bool:
    k = curvature(curve)
    return bool(np.all(k > tol) or np.all(k < -tol))


def arclength_parameters(curve: ClosedCurve, n_out: int) -> tuple[np.ndarray, float]:
    """Parameters t_j splitting the curve into ``n_out`` arcs of equal length.

    Returns the parameters and the total length.  The first guess comes from
    monotone cubic interpolation of the cumulative length; Newton steps on
    the spectral arc-length function then polish it to round-off.
    """
    speed = TrigInterpolant(curve.speed())
    total = TWO_PI * speed.mean()
    target = total * np.arange(n_out) / n_out

    t_grid = np.append(curve.params, TWO_PI)
    s_grid = np.append(speed.integral(curve.params), total)
    t = PchipInterpolator(s_grid, t_grid)(target)
    for _ in range(50):
        step = (speed.integral(t) - target) / speed(t)
        t = t - step
        if np.max(np.abs(step)) < 1e-15:
            break
    t[0] = 0.0
    return t, float(total)


def resample_arclength(curve: ClosedCurve, n_out: int | None = None,
                       rescale: bool = False) -> ClosedCurve:
    """Resample at equal arc-length steps, starting from sample 0.

    With ``rescale`` the curve is scaled about the origin so that its
    perimeter is exactly 2*pi.  Accuracy is spectral for smooth closed
    curves; samples of a curve with corners or finite smoothness converge
    only algebraically.
    """
    n_out = curve.N if n_out is None else n_out
    t, total = arclength_parameters(curve, n_out)
    pts = curve.evaluate(t)
    if rescale:
        pts = pts * (TWO_PI / total)
    return ClosedCurve(pts, arclength=True)


def normalize_perimeter(curve: ClosedCurve, n_out: int | None = None) -> tuple[ClosedCurve, float]:
    """Arc-length resample with perimeter 2*pi; also return the scale factor."""
    n_out = curve.N if n_out is None else n_out
    t, total = arclength_parameters(curve, n_out)
    factor = TWO_PI / total
    return ClosedCurve(curve.evaluate(t) * factor, arclength=True), factor


class VertexSet(NamedTuple):
    params: np.ndarray
    circular: bool

    def __len__(self):  # type: ignore[override]
        return len(self.params)


def vertices(curve: ClosedCurve) -> VertexSet:
    """Locations of local extrema of curvature on an arc-length curve."""
    if not curve.arclength:
        raise CurveError("vertices() needs an arc-length parametrized curve")
    k = curvature(curve)
    scale = abs(k.mean())
    if k.max() - k.min() < VERTEX_PROMINENCE * scale:
        return VertexSet(np.empty(0), True)

    kint = TrigInterpolant(k)
    dk = spectral.derivative(k)
    t = curve.params
    n = curve.N
    roots = []
    for j in range(n):
        a, b = dk[j], dk[(j + 1) % n]
        if a == 0.0:
            roots.append(t[j])
        elif a * b < 0.0:
            lo, hi = t[j], t[j] + TWO_PI / n
            roots.append(brentq(lambda s: float(kint(s, 1)), lo, hi, xtol=1e-14) % TWO_PI)
    roots = np.sort(np.asarray(roots))

    # drop adjacent extremum pairs whose curvature difference is noise
    changed = True
    while changed and len(roots) > 2:
        changed = False
        vals = kint(roots)
        diffs = np.abs(np.diff(np.append(vals, vals[0])))
        j = int(np.argmin(diffs))
        if diffs[j] < VERTEX_PROMINENCE * scale:
            roots = np.delete(roots, [j, (j + 1) % len(roots)])
            changed = True
    return VertexSet(roots, False)


@dataclass(frozen=True, eq=False)
class WaveFront:
    """Closed front with odd cusp count, total rotation pi and no inflections.

    The front is given by its signed radius of curvature
    ``r(theta) = sum_m c_m cos(m theta) + s_m sin(m theta)`` over odd m >= 3,
    so r(theta + pi) = -r(theta).
    """

    harmonics: dict = field(default_factory=dict)
    basepoint: tuple = (0.0, 0.0)

    def __post_init__(self):
        clean = {}
        for m, cs in self.harmonics.items():
            m = int(m)
            if m < 3 or m % 2 == 0:
                raise CurveError(f"harmonic {m}: only odd m >= 3 are allowed")
            c, s = (float(v) for v in cs)
            clean[m] = (c, s)
        if not any(c or s for c, s in clean.values()):
            raise CurveError("wave front needs at least one nonzero harmonic")
        object.__setattr__(self, "harmonics", dict(sorted(clean.items())))
        object.__setattr__(self, "basepoint", tuple(float(v) for v in self.basepoint))
        if self.sign_changes() % 2 == 0:
            raise CurveError("radius function must change sign an odd number of times on [0, pi)")

    def radius(self, theta, order: int = 0) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        out = np.zeros_like(theta)
        for m, (c, s) in self.harmonics.items():
            # d^p/dtheta^p of cos, sin via phase shift by p*pi/2
            ph = order * np.pi / 2
            out = out + m ** order * (c * np.cos(m * theta + ph) + s * np.sin(m * theta + ph))
        return out

    def max_radius(self) -> float:
        th = np.linspace(0.0, np.pi, 8192, endpoint=False)
        return float(np.max(np.abs(self.radius(th))))

    def _scan(self, m: int | None = None):
        m = m or max(4096, 64 * max(self.harmonics))
        th = np.linspace(0.0, np.pi, m + 1)
        return th, self.radius(th)

    def sign_changes(self) -> int:
        _, r = self._scan()
        pos = r >= 0.0
        return int(np.count_nonzero(pos[1:] != pos[:-1]))

    def cusps(self) -> np.ndarray:
        """Zeros of r on [0, pi), i.e. the cusp parameters of the front."""
        th, r = self._scan()
        out = []
        for j in range(len(th) - 1):
            if r[j] == 0.0:
                # a zero the scan lands on is a cusp only if r changes sign there
                prev = r[j - 1] if j > 0 else -r[-2]
                if prev * r[j + 1] < 0.0:
                    out.append(th[j])
            elif r[j] * r[j + 1] < 0.0:
                out.append(brentq(lambda x: float(self.radius(x)), th[j], th[j + 1], xtol=1e-15))
        return np.asarray([x for x in out if x < np.pi])

    def position(self, theta, order: int = 0) -> np.ndarray:
        """Point gamma(theta) = basepoint + int_0^theta r(tau) (cos tau, sin tau) dtau.

        The integrand only contains even harmonics m +- 1 >= 2, so the
        antiderivative is exact and pi-periodic.
        """
        theta = np.asarray(theta, dtype=float)
        if order >= 1:
            e = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
            en = np.stack([-np.sin(theta), np.cos(theta)], axis=-1)
            r = self.radius(theta)[..., None]
            if order == 1:
                return r * e
            if order == 2:
                return self.radius(theta, 1)[..., None] * e + r * en
            raise ValueError("order must be 0, 1 or 2")
        x = np.zeros_like(theta)
        y = np.zeros_like(theta)
        for m, (c, s) in self.harmonics.items():
            # product-to-sum: r cos and r sin split into harmonics m+1 and m-1
            for p, sign in ((m + 1, 1.0), (m - 1, -1.0)):
                sp, cp = np.sin(p * theta) / p, (1.0 - np.cos(p * theta)) / p
                x += 0.5 * (c * sp + s * cp)
                y += 0.5 * sign * (c * cp - s * sp)
        return np.stack([x + self.basepoint[0], y + self.basepoint[1]], axis=-1)

    def closure_error(self) -> float:
        return float(np.linalg.norm(self.position(np.pi) - self.position(0.0)))

    def scaled(self, factor: float) -> "WaveFront":
        h = {m: (c * factor, s * factor) for m, (c, s) in self.harmonics.items()}
        return WaveFront(h, tuple(np.asarray(self.basepoint) * factor))

    def to_dict(self) -> dict:
        return {"harmonics": {str(m): [c, s] for m, (c, s) in self.harmonics.items()},
                "basepoint": list(self.basepoint)}

    @classmethod
    def from_dict(cls, data: dict) -> "WaveFront":
        if "harmonics" not in data:
            raise CurveError("wave front JSON is missing field 'harmonics'")
        return cls(dict(data["harmonics"]), tuple(data.get("basepoint", (0.0, 0.0))))


def front_eval(front: WaveFront, n: int = 512) -> tuple[ClosedCurve, np.ndarray]:
    """Sample the front at n values of theta in [0, pi) and locate its cusps.

    The returned curve's parameter t corresponds to theta = t / 2.
    """
    theta = np.pi * np.arange(n) / n
    return ClosedCurve(front.position(theta)), front.cusps()


def hausdorff(a: ClosedCurve, b: ClosedCurve, upsample: int = 4) -> float:
    """Symmetric Hausdorff distance between the point sets of two curves.

    Each curve is densely resampled; every sample is then projected onto the
    other curve's trigonometric interpolant, so the result does not depend
    on how the two sample grids line up.
    """
    return max(_directed_hausdorff(a, b, upsample), _directed_hausdorff(b, a, upsample))


def _directed_hausdorff(a: ClosedCurve, b: ClosedCurve, upsample: int,
                        starts: int = 4) -> float:
    pts = spectral.upsample(a.samples, upsample * a.N)
    mb = upsample * b.N
    dense_b = spectral.upsample(b.samples, mb)
    # several starts: near a cusp the closest sample may sit on the wrong branch
    d0, idx = cKDTree(dense_b).query(pts, k=starts)
    target = np.repeat(pts, starts, axis=0)
    t = TWO_PI * idx.reshape(-1) / mb
    h = TWO_PI / mb
    interp = b.interpolant
    active = np.arange(len(t))
    for _ in range(60):
        p, p1 = interp.evaluate_many(t[active], (0, 1))
        diff = p - target[active]
        # Gauss-Newton: stays well defined where the curves touch
        g = np.sum(diff * p1, axis=1)
        jtj = np.sum(p1 * p1, axis=1)
        step = np.clip(g / np.maximum(jtj, 1e-300), -h, h)
        t[active] -= step
        active = active[np.abs(step) > 1e-15]
        if active.size == 0:
            break
    d = np.linalg.norm(interp(t) - target, axis=1).reshape(-1, starts)
    return float(np.max(np.minimum(d.min(axis=1), d0[:, 0])))

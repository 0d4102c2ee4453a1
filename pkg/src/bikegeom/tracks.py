"""Rear and front bicycle tracks, chord profiles and bicycle-curve checks."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import spectral
from .curves import (ClosedCurve, CurveError, WaveFront, cross, curvature,
                     hausdorff, vertices)
from .spectral import TWO_PI

VERIFY_TOL = 1e-8
FILE_TOL = 1e-6


class NonConvexError(CurveError):
    pass


@dataclass(frozen=True)
class BicycleConfig:
    """Rotation number rho in (0, 1/2] and half-chord L."""

    rho: float
    L: float

    def __post_init__(self):
        if not 0.0 < self.rho <= 0.5:
            raise ValueError(f"rho must lie in (0, 1/2], got {self.rho}")
        if not self.L > 0.0:
            raise ValueError(f"L must be positive, got {self.L}")

    @property
    def omega(self) -> float:
        return np.pi * self.rho

    def chord_bound_ok(self, tol: float = 0.0) -> bool:
        return self.L <= np.sin(self.omega) + tol


@dataclass(frozen=True, eq=False)
class AlphaProfile:
    """Chord-tangent angle alpha(x) sampled on the uniform grid of [0, 2*pi)."""

    alpha: np.ndarray

    def __post_init__(self):
        a = np.array(self.alpha, dtype=float)
        a.setflags(write=False)
        object.__setattr__(self, "alpha", a)

    @property
    def beta(self) -> np.ndarray:
        return self.alpha - np.pi / 2

    @property
    def N(self) -> int:
        return len(self.alpha)

    def shifted(self, delta: float) -> np.ndarray:
        return spectral.shift(self.alpha, delta)


def _track(gamma, L: float, sign: float, n: int | None) -> ClosedCurve:
    if isinstance(gamma, WaveFront):
        # the bicycle frame keeps direction (cos, sin) through the cusps, so
        # the front wheel needs two passes over the pi-periodic front to close
        n = n or 512
        theta = spectral.grid(n)
        e = np.column_stack([np.cos(theta), np.sin(theta)])
        return ClosedCurve(gamma.position(theta) + sign * L * e)
    return ClosedCurve(gamma.samples + sign * L * gamma.unit_tangent())


def front_track(gamma, L: float, n: int | None = None) -> ClosedCurve:
    """Front wheel track gamma + L * T for a rear track gamma.

    ``gamma`` is a ClosedCurve (any regular parametrization) or a WaveFront.
    The output shares gamma's parameter grid and is not arc-length.
    """
    return _track(gamma, L, 1.0, n)


def reverse_front_track(gamma, L: float, n: int | None = None) -> ClosedCurve:
    """Front track for riding gamma backwards: gamma - L * T."""
    return _track(gamma, L, -1.0, n)


def track_speed(gamma: ClosedCurve, L: float, sign: float = 1.0) -> np.ndarray:
    """|dGamma/dt| with t the arc length of gamma."""
    G = _track(gamma, L, sign, None)
    return G.speed() / gamma.speed()


def front_curvature_pointwise(k, k_t, L: float):
    """Curvature of the front track from the rear curvature k and dk/dt."""
    k = np.asarray(k, dtype=float)
    k_t = np.asarray(k_t, dtype=float)
    return (k + L * k_t + L ** 2 * k ** 3) / (1.0 + L ** 2 * k ** 2) ** 1.5


def is_ambiguous_pair(gamma, L: float, tol: float = FILE_TOL) -> bool:
    """True when riding gamma either way leaves the same front track."""
    return ambiguity_distance(gamma, L) <= tol


def ambiguity_distance(gamma, L: float) -> float:
    return hausdorff(front_track(gamma, L), reverse_front_track(gamma, L))


def _require_normalized(Gamma: ClosedCurve, tol: float = 1e-8) -> None:
    if not Gamma.arclength:
        raise CurveError("curve must be arc-length parametrized")
    if abs(Gamma.length() - TWO_PI) > tol * TWO_PI:
        raise CurveError(f"perimeter must be 2*pi, got {Gamma.length():.12g}")


def _ccw(Gamma: ClosedCurve) -> ClosedCurve:
    if np.mean(curvature(Gamma)) >= 0:
        return Gamma
    pts = np.roll(Gamma.samples[::-1], 1, axis=0)
    return ClosedCurve(pts, Gamma.arclength)


def chord_profile(Gamma: ClosedCurve, omega: float) -> np.ndarray:
    """Chord lengths |Gamma(x + 2 omega) - Gamma(x)| on the sample grid."""
    _require_normalized(Gamma)
    ahead = spectral.shift(Gamma.samples, 2.0 * omega)
    return np.linalg.norm(ahead - Gamma.samples, axis=1)


def chord_angles(Gamma: ClosedCurve, omega: float) -> tuple[np.ndarray, np.ndarray]:
    """Angles the chord to x + 2 omega makes with the tangent at each end.

    Returns (alpha_start, alpha_end); both lie in (0, pi) for a
    counter-clockwise convex curve.
    """
    _require_normalized(Gamma)
    T = Gamma.unit_tangent()
    d = spectral.shift(Gamma.samples, 2.0 * omega) - Gamma.samples
    T_end = spectral.shift(T, 2.0 * omega)
    start = np.arctan2(cross(T, d), np.sum(T * d, axis=1))
    end = np.arctan2(cross(d, T_end), np.sum(d * T_end, axis=1))
    return start, end


def alpha_profile(Gamma: ClosedCurve, omega: float) -> AlphaProfile:
    return AlphaProfile(chord_angles(_ccw(Gamma), omega)[0])


@dataclass(frozen=True)
class BicycleResidual:
    length_spread: float
    angle_spread: float
    mean_chord: float

    @property
    def half_chord(self) -> float:
        return 0.5 * self.mean_chord

    def passes(self, tol: float = VERIFY_TOL) -> bool:
        return self.length_spread < tol


def bicycle_residual(Gamma: ClosedCurve, rho: float) -> BicycleResidual:
    """Spread of chord lengths and end angles for arcs of length 2*pi*rho."""
    _require_normalized(Gamma)
    k = curvature(Gamma)
    if not (np.all(k > 0) or np.all(k < 0)):
        raise NonConvexError(
            f"curve is not convex: curvature ranges over [{k.min():.3g}, {k.max():.3g}]")
    Gamma = _ccw(Gamma)
    omega = np.pi * rho
    c = chord_profile(Gamma, omega)
    a0, a1 = chord_angles(Gamma, omega)
    return BicycleResidual(float(np.ptp(c)), float(np.max(np.abs(a0 - a1))), float(c.mean()))


def eq10_residual(alpha, omega: float, L: float) -> float:
    """Max defect of sin a(x+w) - sin a(x-w) = L (a'(x+w) + a'(x-w))."""
    a = alpha.alpha if isinstance(alpha, AlphaProfile) else np.asarray(alpha, dtype=float)
    da = spectral.derivative(a)
    plus, minus = spectral.shift(a, omega), spectral.shift(a, -omega)
    dplus, dminus = spectral.shift(da, omega), spectral.shift(da, -omega)
    res = np.sin(plus) - np.sin(minus) - L * (dplus + dminus)
    return float(np.max(np.abs(res)))


def chord_envelope(Gamma: ClosedCurve, omega: float) -> ClosedCurve:
    """Envelope of the lines through Gamma(x) and Gamma(x + 2 omega)."""
    P = Gamma.samples
    d = spectral.shift(P, 2.0 * omega) - P
    dP = Gamma.derivative(1)
    dd = spectral.derivative(d)
    s = -cross(dP, d) / cross(dd, d)
    return ClosedCurve(P + s[:, None] * d)


@dataclass
class TheoremReport:
    window_has_vertex: bool
    min_six_vertices: bool
    circular: bool
    vertex_count: int
    max_vertex_gap: float
    chord_bound: bool
    half_chord: float
    sin_omega: float
    length_gap: bool | None = None
    length_gap_value: float | None = None
    length_gap_bound: float | None = None

    @property
    def all_pass(self) -> bool:
        checks = [self.window_has_vertex, self.min_six_vertices, self.chord_bound]
        if self.length_gap is not None:
            checks.append(self.length_gap)
        return all(checks)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["all_pass"] = self.all_pass
        return d


def length_gap(gamma: ClosedCurve, L: float) -> tuple[float, float]:
    """(length Gamma - length gamma, L * integral |k| dt) for a rear track."""
    G = front_track(gamma, L)
    k = curvature(gamma)
    bound = L * TWO_PI * float(np.mean(np.abs(k) * gamma.speed()))
    return G.length() - gamma.length(), bound


def theorem_checks(Gamma: ClosedCurve, rho: float, rear: ClosedCurve | None = None,
                   L: float | None = None, tol: float = VERIFY_TOL) -> TheoremReport:
    """Vertex, chord-bound and length-gap checks on a bicycle curve."""
    omega = np.pi * rho
    vs = vertices(Gamma)
    if vs.circular:
        window, six, gap = True, True, 0.0
    else:
        x = np.sort(vs.params) * Gamma.length() / TWO_PI
        gaps = np.diff(np.append(x, x[0] + Gamma.length()))
        gap = float(gaps.max())
        window = gap <= 2.0 * omega
        six = len(vs) >= 6
    half = 0.5 * float(chord_profile(Gamma, omega).mean())
    report = TheoremReport(
        window_has_vertex=bool(window), min_six_vertices=bool(six), circular=vs.circular,
        vertex_count=len(vs), max_vertex_gap=gap,
        chord_bound=bool(half <= np.sin(omega) + tol), half_chord=half,
        sin_omega=float(np.sin(omega)))
    if rear is not None and L is not None:
        value, bound = length_gap(rear, L)
        report.length_gap = bool(0.0 < value < bound)
        report.length_gap_value = value
        report.length_gap_bound = bound
    return report

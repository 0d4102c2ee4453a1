"""First-order deformations of the circle and of rotation-number-1/2 curves.

Mode locking: the unit circle bends as a bicycle curve with half-arc omega
only if n tan(omega) = tan(n omega) for some n >= 2.  Roots are found on the
pole-free form n sin(w) cos(nw) - cos(w) sin(nw).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import spectral
from .curves import ClosedCurve

SCAN_POINTS = 10_000
POLE_TOL = 1e-9


def eq17_factor(n: int, omega):
    """n cos(n w) sin(w) - cos(w) sin(n w); vanishes exactly at mode roots."""
    omega = np.asarray(omega, dtype=float)
    return n * np.cos(n * omega) * np.sin(omega) - np.cos(omega) * np.sin(n * omega)


def tangent_residual(n: int, omega: float) -> float:
    return float(n * np.tan(omega) - np.tan(n * omega))


@dataclass(frozen=True)
class ModeRoot:
    n: int
    omega: float

    @property
    def rho(self) -> float:
        return self.omega / np.pi

    @property
    def mirror(self) -> float:
        return np.pi - self.omega

    @property
    def residual(self) -> float:
        return abs(tangent_residual(self.n, self.omega))


def _is_pole(n: int, omega: float) -> bool:
    return abs(np.cos(omega)) < POLE_TOL or abs(np.cos(n * omega)) < POLE_TOL


def _polish(n: int, w: float) -> float:
    # one Newton step on the tangent form, kept only if it helps
    d = n / np.cos(w) ** 2 - n / np.cos(n * w) ** 2
    if d == 0 or not np.isfinite(d):
        return w
    w2 = w - tangent_residual(n, w) / d
    return w2 if abs(tangent_residual(n, w2)) < abs(tangent_residual(n, w)) else w


def mode_roots(n: int, scan: int = SCAN_POINTS) -> list[ModeRoot]:
    """All roots of n tan(w) = tan(n w) in (0, pi), poles excluded, sorted."""
    if n < 2:
        raise ValueError("n must be >= 2 (n = 1 deformations do not close up)")
    grid = np.linspace(0.0, np.pi, scan + 1)[1:-1]
    vals = eq17_factor(n, grid)
    roots = []
    for j in range(len(grid) - 1):
        a, b = vals[j], vals[j + 1]
        if a == 0.0:
            w = grid[j]
        elif a * b < 0.0:
            w = brentq(lambda x: float(eq17_factor(n, x)), grid[j], grid[j + 1],
                       xtol=1e-15, rtol=4 * np.finfo(float).eps)
        else:
            continue
        if _is_pole(n, w):
            continue
        roots.append(ModeRoot(n, _polish(n, w)))
    return roots


def sin_ratio_derivative(n: int, x):
    """d/dx of sin(n x) / sin(x)."""
    x = np.asarray(x, dtype=float)
    return eq17_factor(n, x) / np.sin(x) ** 2


@dataclass(frozen=True, eq=False)
class DeformSpec:
    """Deformation Gamma = (cos x, sin x) + eps * v(x) of the unit circle.

    ``f`` is the generating function, sampled on the uniform grid; it
    defaults to sin(n x).  It must be free of constants and first harmonics.
    """

    n: int
    omega: float
    epsilon: float
    samples: int = 512
    f: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")
        if self.f is None:
            x = spectral.grid(self.samples)
            f = np.sin(self.n * x)
        else:
            f = np.asarray(self.f, dtype=float)
            if len(f) != self.samples:
                raise ValueError("f must be sampled on the same grid")
        F = np.fft.rfft(f) / len(f)
        if np.max(np.abs(F[:2])) > 1e-12 * max(1.0, np.max(np.abs(F))):
            raise ValueError("f must have zero mean and no first harmonics")
        f = np.array(f)
        f.setflags(write=False)
        object.__setattr__(self, "f", f)

    @property
    def x(self) -> np.ndarray:
        return spectral.grid(self.samples)

    @property
    def df(self) -> np.ndarray:
        return spectral.derivative(self.f)

    @property
    def g(self) -> np.ndarray:
        """f + f'' -- the normal speed of v'."""
        return self.f + spectral.derivative(self.f, 2)

    @property
    def fourier(self) -> np.ndarray:
        """Complex coefficients a_m of f = sum a_m exp(i m x), m >= 0."""
        return np.fft.rfft(self.f) / self.samples

    def field(self) -> np.ndarray:
        """v(x) with translation constants set to zero."""
        x, f, df = self.x, self.f, self.df
        return np.column_stack([f * np.sin(x) + df * np.cos(x),
                                -f * np.cos(x) + df * np.sin(x)])


def deform_circle(spec: DeformSpec) -> ClosedCurve:
    x = spec.x
    base = np.column_stack([np.cos(x), np.sin(x)])
    return ClosedCurve(base + spec.epsilon * spec.field(), arclength=spec.epsilon == 0)


def chord_spread(spec: DeformSpec) -> float:
    """Spread of |Gamma(x + w) - Gamma(x - w)| in the deformation parameter x.

    x is arc length to first order, which is the setting of the mode-locking
    condition: at a root the O(eps) part of the spread cancels.
    """
    G = deform_circle(spec).samples
    c = np.linalg.norm(spectral.shift(G, spec.omega) - spectral.shift(G, -spec.omega), axis=1)
    return float(np.ptp(c))


def eq16_residual(f, omega: float) -> float:
    """Max defect of (f'(x+w) + f'(x-w)) sin w = (f(x+w) - f(x-w)) cos w."""
    f = np.asarray(f, dtype=float)
    df = spectral.derivative(f)
    lhs = (spectral.shift(df, omega) + spectral.shift(df, -omega)) * np.sin(omega)
    rhs = (spectral.shift(f, omega) - spectral.shift(f, -omega)) * np.cos(omega)
    return float(np.max(np.abs(lhs - rhs)))


# --- deformations of rotation-number-1/2 curves --------------------------------

def energy(beta, dbeta, C: float, L: float):
    return 0.5 * L ** 2 * np.asarray(dbeta) ** 2 + C * np.cos(beta) - 0.5 * np.cos(beta) ** 2


@dataclass(frozen=True, eq=False)
class Trajectory:
    x: np.ndarray
    beta: np.ndarray
    dbeta: np.ndarray
    f: np.ndarray
    E: np.ndarray
    C: float
    L: float
    h: float
    drift_tol: float

    @property
    def drift(self) -> float:
        """Largest relative energy error along the trajectory."""
        scale = abs(self.E[0]) if self.E[0] != 0 else 1.0
        return float(np.max(np.abs(self.E - self.E[0])) / scale)

    @property
    def step_ok(self) -> bool:
        length = max(self.x[-1] - self.x[0], 1.0)
        return self.drift <= self.drift_tol * length


def ode19_integrate(C: float, L: float, beta0: float, dbeta0: float, x_end: float,
                    h: float = 1e-3, drift_tol: float = 1e-8) -> Trajectory:
    """Classical RK4 for L^2 beta'' = (C - cos beta) sin beta.

    The state update uses compensated summation so that round-off stays
    below the truncation error even at small steps.  ``f = (C - cos beta)/L``
    is reported alongside.
    """
    if L <= 0 or h <= 0:
        raise ValueError("L and h must be positive")
    steps = int(round(x_end / h))
    if steps < 1:
        raise ValueError("x_end must cover at least one step")
    h = x_end / steps
    inv_L2 = 1.0 / L ** 2

    def rhs(b, db):
        return db, (C - np.cos(b)) * np.sin(b) * inv_L2

    out = np.empty((steps + 1, 2))
    b, db = float(beta0), float(dbeta0)
    cb = cdb = 0.0
    out[0] = b, db
    for i in range(steps):
        k1b, k1d = rhs(b, db)
        k2b, k2d = rhs(b + 0.5 * h * k1b, db + 0.5 * h * k1d)
        k3b, k3d = rhs(b + 0.5 * h * k2b, db + 0.5 * h * k2d)
        k4b, k4d = rhs(b + h * k3b, db + h * k3d)
        inc_b = h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b) - cb
        inc_d = h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d) - cdb
        nb, nd = b + inc_b, db + inc_d
        cb, cdb = (nb - b) - inc_b, (nd - db) - inc_d
        b, db = nb, nd
        out[i + 1] = b, db
    x = np.linspace(0.0, x_end, steps + 1)
    beta, dbeta = out[:, 0], out[:, 1]
    return Trajectory(x, beta, dbeta, (C - np.cos(beta)) / L, energy(beta, dbeta, C, L),
                      C, L, h, drift_tol)


@dataclass(frozen=True)
class ShootingResult:
    success: bool
    dbeta0: float | None
    message: str


def shoot_periodic_odd(C: float, L: float, slopes=None, h: float = 2e-3) -> ShootingResult:
    """Look for beta'(0) giving an odd 2*pi-periodic solution with beta(0) = 0.

    By reversibility such a solution exists iff beta(pi) = 0 for a nonzero
    initial slope.  The first sign change of beta(pi) over ``slopes`` is
    refined; failure is reported, not hidden.
    """
    slopes = np.linspace(0.05, 3.0, 60) if slopes is None else np.asarray(slopes, dtype=float)

    def end_value(s):
        return float(ode19_integrate(C, L, 0.0, s, np.pi, h).beta[-1])

    vals = [end_value(s) for s in slopes]
    for j in range(len(slopes) - 1):
        if vals[j] * vals[j + 1] < 0:
            s = brentq(end_value, slopes[j], slopes[j + 1], xtol=1e-12)
            return ShootingResult(True, float(s), "odd 2*pi-periodic orbit found")
    return ShootingResult(False, None,
                          f"no sign change of beta(pi) for slopes in [{slopes[0]}, {slopes[-1]}]")


def _derivative(y, h: float, periodic: bool) -> np.ndarray:
    if periodic:
        return spectral.derivative(y)
    # fourth-order central differences; two points lost at each end
    d = np.full_like(y, np.nan)
    d[2:-2] = (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / (12 * h)
    return d


def eq23_check(beta, f, L: float, h: float | None = None,
               periodic: bool | None = None) -> tuple[float, float]:
    """Max defects of beta' sin beta = L f' and f sin beta = L beta''.

    Periodic samples over [0, 2*pi) are differentiated spectrally.  Open
    trajectories (pass the step ``h``) use fourth-order differences and the
    residual is taken over interior points.
    """
    beta = np.asarray(beta, dtype=float)
    f = np.asarray(f, dtype=float)
    if periodic is None:
        periodic = h is None
    if h is None:
        h = 2 * np.pi / len(beta)
    db = _derivative(beta, h, periodic)
    ddb = _derivative(db, h, periodic) if periodic else _second_derivative(beta, h)
    dfn = _derivative(f, h, periodic)
    r1 = db * np.sin(beta) - L * dfn
    r2 = f * np.sin(beta) - L * ddb
    return float(np.nanmax(np.abs(r1))), float(np.nanmax(np.abs(r2)))


def _second_derivative(y, h: float) -> np.ndarray:
    d = np.full_like(y, np.nan)
    d[2:-2] = (-y[:-4] + 16 * y[1:-3] - 30 * y[2:-2] + 16 * y[3:-1] - y[4:]) / (12 * h * h)
    return d


def turning_points(traj: Trajectory) -> np.ndarray:
    """beta at sign changes of beta', wrapped to (-pi, pi]."""
    db = traj.dbeta
    idx = np.nonzero(np.sign(db[1:]) != np.sign(db[:-1]))[0]
    vals = []
    for j in idx:
        b = traj.beta[j]
        acc = (traj.C - np.cos(b)) * np.sin(b) / traj.L ** 2
        if acc != 0.0:
            # local parabola through the stationary point
            b = b - db[j] ** 2 / (2.0 * acc)
        vals.append(np.angle(np.exp(1j * b)))
    return np.asarray(vals)


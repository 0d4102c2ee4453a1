"""Bicycle (n, k)-gons: equilateral polygons with all k-diagonals equal."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import least_squares

DEFAULT_TOL = 1e-9
CONCYCLIC_TOL = 1e-8


class PolygonError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Polygon:
    """Cyclically ordered vertices V_0 .. V_{n-1}."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise PolygonError(f"vertices must have shape (n, 2), got {v.shape}")
        if len(v) < 3:
            raise PolygonError("a polygon needs at least 3 vertices")
        if np.any(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1) == 0.0):
            raise PolygonError("consecutive vertices coincide")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i % self.n]

    def sides(self) -> np.ndarray:
        return self.diagonals(1)

    def diagonals(self, k: int) -> np.ndarray:
        """Lengths |V_i V_{i+k}| for i = 0 .. n-1."""
        v = self.vertices
        return np.linalg.norm(np.roll(v, -k, axis=0) - v, axis=1)

    def to_dict(self) -> dict:
        return {"vertices": self.vertices.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "Polygon":
        if "vertices" not in data:
            raise PolygonError("polygon JSON is missing field 'vertices'")
        return cls(np.asarray(data["vertices"], dtype=float))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _cross(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def turns(P: Polygon) -> np.ndarray:
    """Signed exterior angles at each vertex."""
    e = np.roll(P.vertices, -1, axis=0) - P.vertices
    e_prev = np.roll(e, 1, axis=0)
    return np.arctan2(_cross(e_prev, e), np.sum(e_prev * e, axis=1))


def is_convex(P: Polygon) -> bool:
    """Strictly convex and simple: all turns share a sign and total 2*pi."""
    t = turns(P)
    same = np.all(t > 0) or np.all(t < 0)
    return bool(same and abs(abs(t.sum()) - 2 * np.pi) < 1e-9)


def regular(n: int, circumradius: float = 1.0) -> Polygon:
    if n < 3:
        raise PolygonError("n must be >= 3")
    a = 2 * np.pi * np.arange(n) / n
    return Polygon(circumradius * np.column_stack([np.cos(a), np.sin(a)]))


@dataclass
class VerifyReport:
    n: int
    k: int
    side_spread: float
    diag_spread: float
    convex: bool
    quad_classes: list = field(default_factory=list)
    tol: float = DEFAULT_TOL

    @property
    def is_bicycle(self) -> bool:
        return self.side_spread < self.tol and self.diag_spread < self.tol

    @property
    def constraint_count(self) -> int:
        """Independent equal-diagonal relations: n - 1, or n/2 - 1 when k = n/2."""
        return self.n // 2 - 1 if 2 * self.k == self.n else self.n - 1

    @property
    def moduli_dimension(self) -> int:
        """Dimension of unit-sided n-gons up to isometry."""
        return self.n - 3

    def to_dict(self) -> dict:
        d = asdict(self)
        d["is_bicycle"] = self.is_bicycle
        d["constraint_count"] = self.constraint_count
        d["moduli_dimension"] = self.moduli_dimension
        return d


def classify_quad(P: Polygon, i: int, k: int, tol: float = DEFAULT_TOL) -> str:
    """Type of the quadrilateral V_i V_{i+1} V_{i+k} V_{i+k+1}."""
    a, b, c, d = P[i], P[i + 1], P[i + k], P[i + k + 1]
    scale = max(np.linalg.norm(b - a), 1e-300)
    if np.linalg.norm((b - a) - (d - c)) < tol * scale:
        return "parallelogram"
    base1, base2 = d - a, c - b
    parallel = abs(_cross(base1, base2)) < tol * np.linalg.norm(base1) * np.linalg.norm(base2)
    diagonals = abs(np.linalg.norm(c - a) - np.linalg.norm(d - b)) < tol * scale
    legs = abs(np.linalg.norm(b - a) - np.linalg.norm(d - c)) < tol * scale
    if parallel and diagonals and legs:
        return "trapezoid"
    return "neither"


def verify(P: Polygon, k: int, tol: float = DEFAULT_TOL) -> VerifyReport:
    if not 2 <= k <= P.n / 2:
        raise PolygonError(f"k must satisfy 2 <= k <= n/2, got k={k}, n={P.n}")
    sides, diags = P.sides(), P.diagonals(k)
    return VerifyReport(
        n=P.n, k=k,
        side_spread=float(np.ptp(sides)), diag_spread=float(np.ptp(diags)),
        convex=is_convex(P),
        quad_classes=[classify_quad(P, i, k, tol) for i in range(P.n)],
        tol=tol)


def _flexible_vertices(m: int, h: float, radius: float) -> np.ndarray:
    base_angle = 2 * np.pi * np.arange(m) / m
    apex_angle = base_angle + np.pi / m
    apex_r = radius * np.cos(np.pi / m) + h
    B = radius * np.column_stack([np.cos(base_angle), np.sin(base_angle)])
    A = apex_r * np.column_stack([np.cos(apex_angle), np.sin(apex_angle)])
    out = np.empty((2 * m, 2))
    out[0::2] = B
    out[1::2] = A
    return out


def regular_altitude(n: int, radius: float = 1.0) -> float:
    """Altitude that puts the apexes on the circumcircle (regular n-gon)."""
    return radius * (1.0 - np.cos(2 * np.pi / n))


def flexible_range(n: int, radius: float = 1.0, iterations: int = 80) -> tuple[float, float]:
    """Open interval of altitudes giving a convex simple polygon, found by bisection."""
    m = n // 2

    def convex(h):
        return is_convex(Polygon(_flexible_vertices(m, h, radius)))

    lo, hi = regular_altitude(n, radius), 10.0 * radius
    if convex(hi):
        raise PolygonError("convexity bracket failed")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if convex(mid):
            lo = mid
        else:
            hi = mid
    return 0.0, lo


def flexible(n: int, k: int, h: float, radius: float = 1.0,
             check_parity: bool = True) -> Polygon:
    """Regular n/2-gon with congruent outward isosceles triangles of altitude h.

    For odd k the k-diagonals are all congruent under the dihedral symmetry
    of the n/2-gon.  ``check_parity=False`` builds the polygon for even k too
    (it is then not a bicycle polygon).
    """
    if n % 2 or n < 6:
        raise PolygonError(f"n must be even and >= 6, got {n}")
    if check_parity and k % 2 == 0:
        raise PolygonError(f"k must be odd, got {k}")
    if not 2 <= k <= n // 2:
        raise PolygonError(f"k must satisfy 2 <= k <= n/2, got {k}")
    lo, hi = flexible_range(n, radius)
    if not lo < h < hi:
        raise PolygonError(f"altitude {h} outside the convex range ({lo:.12g}, {hi:.12g})")
    return Polygon(_flexible_vertices(n // 2, h, radius))


def grid_example() -> Polygon:
    """Plus-shaped 12-gon on graph paper: unit sides, right angles, 2-diagonals sqrt(2)."""
    return Polygon(np.array([
        (1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (2, 2),
        (2, 3), (1, 3), (1, 2), (0, 2), (0, 1), (1, 1)], dtype=float))


def circumcircle(a, b, c) -> tuple[np.ndarray, float]:
    d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    if d == 0:
        raise PolygonError("collinear points have no circumcircle")
    sa, sb, sc = a @ a, b @ b, c @ c
    ux = (sa * (b[1] - c[1]) + sb * (c[1] - a[1]) + sc * (a[1] - b[1])) / d
    uy = (sa * (c[0] - b[0]) + sb * (a[0] - c[0]) + sc * (b[0] - a[0])) / d
    center = np.array([ux, uy])
    return center, float(np.linalg.norm(a - center))


@dataclass
class ArcRecord:
    """Circle through trapezoid i and the two arcs replacing its legs.

    Angles are measured at ``center``; each arc runs counter-clockwise from
    its start angle over ``sweep`` radians.
    """

    i: int
    center: tuple
    radius: float
    arc_lower: tuple
    arc_upper: tuple
    sweep: float
    concyclic_residual: float
    chord_spread: float

    def to_dict(self) -> dict:
        return asdict(self)


def _angle(p, center):
    return float(np.arctan2(p[1] - center[1], p[0] - center[0]))


def petrunin_arcs(P: Polygon, k: int, positions: int = 100) -> list[ArcRecord]:
    """Per-trapezoid circles of the piecewise-circular curve from a bicycle polygon.

    Within trapezoid i a chord of length |V_i V_{i+k}| turns about the
    circle's center, sweeping from V_i V_{i+k} to V_{i+1} V_{i+k+1}; its
    length is sampled at ``positions`` stages.
    """
    out = []
    for i in range(P.n):
        a, b, c, d = P[i], P[i + 1], P[i + k], P[i + k + 1]
        center, radius = circumcircle(a, b, c)
        residual = abs(np.linalg.norm(d - center) - radius)
        if residual > CONCYCLIC_TOL * max(radius, 1.0):
            raise PolygonError(
                f"quadrilateral {i} is not concyclic (residual {residual:.3g}); "
                "not a convex bicycle polygon")
        ta, tb, tc, td = (_angle(p, center) for p in (a, b, c, d))
        sweep = (tb - ta) % (2 * np.pi)
        sweep_upper = (td - tc) % (2 * np.pi)
        s = np.linspace(0.0, 1.0, positions)
        p1 = center + radius * np.column_stack([np.cos(ta + s * sweep), np.sin(ta + s * sweep)])
        p2 = center + radius * np.column_stack([np.cos(tc + s * sweep_upper),
                                                np.sin(tc + s * sweep_upper)])
        chords = np.linalg.norm(p2 - p1, axis=1)
        out.append(ArcRecord(i, tuple(center.tolist()), radius, (ta, tb), (tc, td), sweep,
                             float(residual), float(np.ptp(chords))))
    return out


# --- congruence -----------------------------------------------------------------

def shape_distance(P: Polygon, Q: Polygon, scale: bool = False) -> float:
    """Smallest max-vertex deviation over rigid motions and relabelings.

    Both polygons are centered; every cyclic relabeling of Q, in both
    orientations, is aligned to P by the optimal orthogonal map.  With
    ``scale`` both are first normalized to unit mean side.
    """
    if P.n != Q.n:
        return float("inf")
    p = P.vertices - P.vertices.mean(axis=0)
    q0 = Q.vertices - Q.vertices.mean(axis=0)
    if scale:
        p = p / P.sides().mean()
        q0 = q0 / Q.sides().mean()
    best = np.inf
    for q_base in (q0, q0[::-1]):
        for s in range(P.n):
            q = np.roll(q_base, s, axis=0)
            u, _, vt = np.linalg.svd(q.T @ p)
            aligned = q @ (u @ vt)
            best = min(best, float(np.max(np.linalg.norm(aligned - p, axis=1))))
    return best


def congruent(P: Polygon, Q: Polygon, tol: float = 1e-6) -> bool:
    return shape_distance(P, Q) < tol


# --- rigidity searches ----------------------------------------------------------

@dataclass
class SearchResult:
    seed: int
    polygon: Polygon
    residual: float
    convex: bool
    regular_distance: float

    @property
    def is_regular(self) -> bool:
        return self.regular_distance < 1e-6


def _residuals(x, n, k, margin, weight):
    v = x.reshape(n, 2)
    sides = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    diags = np.linalg.norm(np.roll(v, -k, axis=0) - v, axis=1)
    e = np.roll(v, -1, axis=0) - v
    cr = _cross(np.roll(e, 1, axis=0), e)
    barrier = weight * np.maximum(0.0, margin - cr)
    return np.concatenate([sides - 1.0, diags - diags.mean(), barrier])


def random_convex(n: int, rng: np.random.Generator) -> Polygon:
    """Random polygon inscribed in an ellipse (so convex), scaled to unit mean side."""
    a = np.sort(rng.uniform(0, 2 * np.pi, n))
    pts = np.column_stack([np.cos(a), rng.uniform(0.5, 1.5) * np.sin(a)])
    P = Polygon(pts)
    return Polygon(pts / P.sides().mean())


def rigidity_search(n: int, k: int, seeds: int = 100, seed: int = 0) -> list[SearchResult]:
    """Penalized least squares for convex bicycle (n, k)-gons from random starts.

    Residuals are unit sides, equal k-diagonals and a hinge that keeps every
    turn positive.  This produces numerical evidence only.
    """
    ref = regular(n, 0.5 / np.sin(np.pi / n))
    out = []
    for s in range(seeds):
        rng = np.random.default_rng(seed + s)
        P0 = random_convex(n, rng)
        margin = 0.05 * np.sin(2 * np.pi / n)
        sol = least_squares(_residuals, P0.vertices.ravel(), args=(n, k, margin, 10.0),
                            xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
        P = Polygon(sol.x.reshape(n, 2))
        res = float(np.max(np.abs(sol.fun)))
        out.append(SearchResult(seed + s, P, res, is_convex(P), shape_distance(P, ref)))
    return out

"""Infinitesimal deformations of the regular n-gon as a bicycle (n, k)-gon.

Vertex i of the regular polygon moves by U_i, with U_{i+1} - U_i = t_i W_i
normal to side i.  Equal k-diagonals to first order is a circulant system
in t whose eigenvalues are theta_r = sum_j a_j xi^(j r).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polygons import Polygon, PolygonError

ZERO_TOL = 1e-9


def _check(n: int, k: int) -> None:
    if not 2 <= k <= n / 2:
        raise PolygonError(f"k must satisfy 2 <= k <= n/2, got k={k}, n={n}")


def coefficients(n: int, k: int) -> np.ndarray:
    phi = np.pi / n
    a = np.zeros(n)
    j = np.arange(k)
    a[:k] = np.sin((2 * j + 1 - k) * phi)
    return a


def theta_direct(n: int, k: int, r: int) -> complex:
    _check(n, k)
    j = np.arange(n)
    return complex(np.sum(coefficients(n, k) * np.exp(2j * np.pi * j * r / n)))


def _sin_ratio(k: int, m: int, n: int) -> float:
    """sin(k x) / sin(x) at x = m pi / n, with its limit k (-1)^((k-1) m/n) where sin x = 0."""
    if m % n == 0:
        return float(k * (-1) ** ((k - 1) * (m // n)))
    x = m * np.pi / n
    return np.sin(k * x) / np.sin(x)


def theta_closed(n: int, k: int, r: int) -> complex:
    """Closed form: half the difference of two sine ratios times a unit phase."""
    _check(n, k)
    phi = np.pi / n
    diff = _sin_ratio(k, r + 1, n) - _sin_ratio(k, r - 1, n)
    return 0.5 * diff * np.exp(1j * ((k - 1) * r * phi - np.pi / 2))


def sine_product_form(n: int, k: int, r: int) -> float:
    """Pole-free zero test for theta_r.

    sin(k(r+1)phi) sin((r-1)phi) - sin(k(r-1)phi) sin((r+1)phi) for
    2 <= r <= n-2, and sin(2k phi) - k sin(2 phi) for r = 1.  The first form
    is symmetric under k <-> r.
    """
    phi = np.pi / n
    if r == 1:
        return float(np.sin(2 * k * phi) - k * np.sin(2 * phi))
    return float(np.sin(k * (r + 1) * phi) * np.sin((r - 1) * phi)
                 - np.sin(k * (r - 1) * phi) * np.sin((r + 1) * phi))


@dataclass(frozen=True, eq=False)
class PolygonSpectrum:
    n: int
    k: int

    def __post_init__(self):
        _check(self.n, self.k)

    @property
    def phi(self) -> float:
        return np.pi / self.n

    @property
    def xi(self) -> complex:
        return complex(np.exp(2j * self.phi))

    @property
    def a(self) -> np.ndarray:
        return coefficients(self.n, self.k)

    @property
    def theta(self) -> np.ndarray:
        return np.array([theta_direct(self.n, self.k, r) for r in range(self.n)])

    @property
    def theta_from_closed_form(self) -> np.ndarray:
        return np.array([theta_closed(self.n, self.k, r) for r in range(self.n)])

    def zeros(self) -> list[int]:
        """r in [1, n-2] with |theta_r| below the zero threshold."""
        th = self.theta
        return [r for r in range(1, self.n - 1) if abs(th[r]) < ZERO_TOL]

    def A(self) -> np.ndarray:
        """Circulant constraint matrix: (A t)_i = sum_j a_j t_{i+j}."""
        n, a = self.n, self.a
        i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        return a[(j - i) % n]

    def B(self) -> np.ndarray:
        p, q = np.meshgrid(np.arange(self.n), np.arange(self.n), indexing="ij")
        return self.xi ** ((p + 1) * q)

    def D(self) -> np.ndarray:
        th = self.theta
        return np.diag(th[self.n - 1 - np.arange(self.n)])

    def factorization_residual(self) -> float:
        """max |A - B^-1 D B| with B^-1 = B^H / n."""
        B = self.B()
        return float(np.max(np.abs(self.A() - B.conj().T @ self.D() @ B / self.n)))

    def rows(self) -> list[tuple]:
        """(n, k, r, Re, Im, abs, is_zero) per r."""
        return [(self.n, self.k, r, t.real, t.imag, abs(t), abs(t) < ZERO_TOL)
                for r, t in enumerate(self.theta)]


def dimension(n: int, k: int, cross_check: bool = True) -> int:
    """Number of independent first-order deformations of the regular n-gon."""
    zeros = PolygonSpectrum(n, k).zeros()
    if cross_check:
        other = [r for r in range(1, n - 1) if abs(sine_product_form(n, k, r)) < ZERO_TOL]
        if other != zeros:
            raise ArithmeticError(f"zero sets disagree for ({n}, {k}): {zeros} vs {other}")
    return len(zeros)


def side_normals(n: int) -> np.ndarray:
    phi = np.pi / n
    a = (2 * np.arange(n) + 1) * phi
    return np.column_stack([np.cos(a), np.sin(a)])


def base_polygon(n: int) -> np.ndarray:
    a = 2 * np.pi * np.arange(n) / n
    return np.column_stack([np.cos(a), np.sin(a)])


@dataclass(frozen=True, eq=False)
class DeformationField:
    n: int
    k: int
    r: int
    t: np.ndarray
    U: np.ndarray
    W: np.ndarray

    def closure(self) -> float:
        return float(np.max(np.abs(self.t @ self.W)))

    def rotation_sum(self) -> float:
        return float(abs(self.t.sum()))

    def constraint_residual(self) -> float:
        return float(np.max(np.abs(PolygonSpectrum(self.n, self.k).A() @ self.t)))

    def diagonal_rate(self) -> np.ndarray:
        """(V_{i+k} - V_i) . (U_{i+k} - U_i), the first-order diagonal change (times |d|)."""
        V = base_polygon(self.n)
        dV = np.roll(V, -self.k, axis=0) - V
        dU = np.roll(self.U, -self.k, axis=0) - self.U
        return np.sum(dV * dU, axis=1)


def _field(n: int, k: int, r: int, t: np.ndarray) -> DeformationField:
    t = t / np.max(np.abs(t))
    W = side_normals(n)
    U = np.vstack([np.zeros(2), np.cumsum(t[:-1, None] * W[:-1], axis=0)])
    return DeformationField(n, k, r, t, U, W)


def kernel(n: int, k: int) -> list[DeformationField]:
    """Real basis of first-order deformations, rotations and translations removed.

    Each zero theta_r contributes the Fourier mode t_q = xi^(r q); for r and
    n - r the real and imaginary parts span the pair, and r = n/2 gives the
    single real mode (-1)^q.
    """
    spec = PolygonSpectrum(n, k)
    zeros = set(spec.zeros())
    if not zeros:
        raise PolygonError(f"({n}, {k}) has no first-order deformations")
    q = np.arange(n)
    out = []
    for r in sorted(zeros):
        if r > n - r:
            continue
        arg = 2 * np.pi * r * q / n
        if 2 * r == n:
            out.append(_field(n, k, r, np.cos(arg)))
        else:
            out.append(_field(n, k, r, np.cos(arg)))
            out.append(_field(n, k, r, np.sin(arg)))
    return out


def deform(n: int, k: int, field: DeformationField, epsilon: float) -> Polygon:
    """Vertices V_i + eps U_i of the deformed regular polygon (circumradius 1)."""
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if field.n != n or field.k != k:
        raise PolygonError("field was computed for different (n, k)")
    return Polygon(base_polygon(n) + epsilon * field.U)


def length_defects(n: int, k: int, field: DeformationField, epsilon: float) -> tuple[float, float]:
    """Largest change of a side and of a k-diagonal relative to the regular n-gon.

    Both vanish to first order for a kernel field, so they scale as eps^2 even
    for modes (such as r = n/2) whose spreads vanish identically.
    """
    P = deform(n, k, field, epsilon)
    side0 = 2 * np.sin(np.pi / n)
    diag0 = 2 * np.sin(k * np.pi / n)
    return (float(np.max(np.abs(P.sides() - side0))),
            float(np.max(np.abs(P.diagonals(k) - diag0))))

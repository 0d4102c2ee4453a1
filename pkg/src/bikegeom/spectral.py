"""Fourier tools for real, uniformly sampled, 2*pi-periodic data.

Samples ``f[j]`` are taken at ``t_j = 2*pi*j/N``.  All routines treat the
data as a trigonometric polynomial of degree N/2; the Nyquist mode is kept
for interpolation (so evaluation at the grid reproduces the samples) and
dropped for differentiation and integration.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def grid(n: int) -> np.ndarray:
    return TWO_PI * np.arange(n) / n


def wavenumbers(n: int) -> np.ndarray:
    k = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0  # Nyquist dropped for derivatives
    return k


def derivative(f, order: int = 1, axis: int = 0) -> np.ndarray:
    """Spectral derivative of periodic samples along ``axis``."""
    f = np.asarray(f, dtype=float)
    n = f.shape[axis]
    ik = (1j * wavenumbers(n)) ** order
    shape = [1] * f.ndim
    shape[axis] = n
    F = np.fft.fft(f, axis=axis)
    return np.fft.ifft(F * ik.reshape(shape), axis=axis).real


def shift(f, delta: float, axis: int = 0) -> np.ndarray:
    """Return samples of ``f(t + delta)`` by band-limited interpolation."""
    f = np.asarray(f, dtype=float)
    n = f.shape[axis]
    F = np.fft.rfft(f, axis=axis)
    k = np.arange(F.shape[axis])
    phase = np.exp(1j * k * delta)
    if n % 2 == 0:
        # the Nyquist term is cos(n t / 2); its shift keeps only the cosine part
        phase[-1] = np.cos(k[-1] * delta)
    shape = [1] * f.ndim
    shape[axis] = F.shape[axis]
    return np.fft.irfft(F * phase.reshape(shape), n=n, axis=axis)


def upsample(f, m: int, axis: int = 0) -> np.ndarray:
    """Band-limited resampling of periodic samples onto ``m`` points."""
    f = np.asarray(f, dtype=float)
    n = f.shape[axis]
    if m == n:
        return f.copy()
    F = np.fft.rfft(f, axis=axis)
    if m > n and n % 2 == 0:
        # split the Nyquist term evenly between +n/2 and -n/2
        idx = [slice(None)] * f.ndim
        idx[axis] = -1
        F[tuple(idx)] *= 0.5
    return np.fft.irfft(F, n=m, axis=axis) * (m / n)


class TrigInterpolant:
    """Trigonometric interpolant of periodic samples, evaluable anywhere.

    ``values`` may be 1-D (N,) or 2-D (N, d); evaluation returns matching
    trailing dimensions.
    """

    def __init__(self, values):
        values = np.asarray(values, dtype=float)
        self.n = values.shape[0]
        F = np.fft.rfft(values, axis=0) / self.n
        k = np.arange(F.shape[0], dtype=float)
        weight = np.full(F.shape[0], 2.0)
        weight[0] = 1.0
        if self.n % 2 == 0:
            weight[-1] = 1.0
        self._coef = F * weight.reshape((-1,) + (1,) * (values.ndim - 1))
        self._k = k
        self._nyquist = self.n % 2 == 0

    def mean(self):
        return self._coef[0].real

    def __call__(self, t, order: int = 0) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        flat = t.reshape(-1)
        E = np.exp(1j * np.outer(flat, self._k))
        c = self._coef * ((1j * self._k) ** order).reshape(
            (-1,) + (1,) * (self._coef.ndim - 1))
        if self._nyquist and order:
            c[-1] = 0.0
        out = (E @ c).real
        return out.reshape(t.shape + self._coef.shape[1:])

    def evaluate_many(self, t, orders=(0, 1, 2)) -> list:
        """Values and derivatives at ``t`` from one exponential table."""
        t = np.asarray(t, dtype=float).reshape(-1)
        E = np.exp(1j * np.outer(t, self._k))
        out = []
        for order in orders:
            c = self._coef * ((1j * self._k) ** order).reshape(
                (-1,) + (1,) * (self._coef.ndim - 1))
            if self._nyquist and order:
                c[-1] = 0.0
            out.append((E @ c).real)
        return out

    def integral(self, t) -> np.ndarray:
        """Antiderivative vanishing at t = 0 (mean term grows linearly)."""
        t = np.asarray(t, dtype=float)
        flat = t.reshape(-1)
        k = self._k[1:]
        c = self._coef[1:].copy()
        if self._nyquist:
            c[-1] = 0.0
        kk = k.reshape((-1,) + (1,) * (c.ndim - 1))
        E = (np.exp(1j * np.outer(flat, k)) - 1.0)
        out = (E @ (c / (1j * kk))).real
        lin = np.multiply.outer(flat, self._coef[0].real)
        return (out + lin).reshape(t.shape + self._coef.shape[1:])

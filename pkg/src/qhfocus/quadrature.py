"""High-accuracy quadrature helpers.

Two deliberately independent schemes are provided for every task:

* full-period integrals: uniform trapezoidal sums with node doubling
  (spectrally accurate for smooth periodic integrands) vs. adaptive
  Gauss-Kronrod (scipy.integrate.quad);
* cumulative integrals: a Fourier antiderivative built from one FFT of the
  integrand vs. an error-controlled ODE solve of F' = g.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad, solve_ivp

from .errors import QuadratureError, StiffnessError

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    nodes_used: int


def trapezoid_periodic(
    f: Callable[[np.ndarray], np.ndarray],
    tol: float = 1e-12,
    n0: int = 32,
    max_nodes: int = 1 << 20,
) -> QuadResult:
    """Integral of f over one full period [0, 2*pi] by trapezoid doubling."""
    n = n0
    prev = None
    while n <= max_nodes:
        xs = np.linspace(0.0, TWO_PI, n, endpoint=False)
        val = float(np.mean(f(xs)) * TWO_PI)
        if prev is not None:
            err = abs(val - prev)
            if err <= tol * max(1.0, abs(val)):
                return QuadResult(val, err, n)
        prev = val
        n *= 2
    raise QuadratureError(
        f"trapezoid did not reach tol={tol!r} within {max_nodes} nodes"
    )


def gauss_panels(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-12,
    n_panels0: int = 8,
    nodes_per_panel: int = 20,
    max_panels: int = 4096,
) -> QuadResult:
    """Composite Gauss-Legendre with panel doubling; scheme independent of quad."""
    xg, wg = np.polynomial.legendre.leggauss(nodes_per_panel)
    n = n_panels0
    prev = None
    while n <= max_panels:
        edges = np.linspace(a, b, n + 1)
        half = np.diff(edges) / 2.0
        mid = (edges[:-1] + edges[1:]) / 2.0
        xs = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        ws = (half[:, None] * wg[None, :]).ravel()
        val = float(np.dot(ws, f(xs)))
        if prev is not None:
            err = abs(val - prev)
            if err <= tol * max(1.0, abs(val)):
                return QuadResult(val, err, n * nodes_per_panel)
        prev = val
        n *= 2
    raise QuadratureError(
        f"Gauss panels did not reach tol={tol!r} within {max_panels} panels"
    )


def quad_periodic(
    f: Callable,
    a: float = 0.0,
    b: float = TWO_PI,
    tol: float = 1e-12,
) -> QuadResult:
    """Adaptive integral of a smooth integrand over [a, b].

    The full-period case goes through the spectrally convergent trapezoid
    rule; partial ranges use adaptive Gauss-Kronrod.
    """
    if a == 0.0 and abs(b - TWO_PI) < 1e-15:
        return trapezoid_periodic(np.vectorize(f) if not _vectorized(f) else f, tol)
    val, err, info = quad(
        f, a, b, epsabs=tol, epsrel=tol, limit=500, full_output=True
    )[:3]
    if err > 10 * tol * max(1.0, abs(val)):
        raise QuadratureError(
            f"adaptive quadrature error {err!r} above tolerance {tol!r}"
        )
    return QuadResult(float(val), float(err), int(info["neval"]))


def _vectorized(f) -> bool:
    try:
        out = f(np.array([0.1, 0.2]))
    except Exception:
        return False
    return np.shape(out) == (2,)


class FourierAntiderivative:
    """F(theta) = int_0^theta g, for smooth 2*pi-periodic g, via one FFT.

    The mean of g contributes a linear ramp; the oscillatory part is
    antidifferentiated exactly in Fourier space, so the evaluation is
    spectrally accurate at arbitrary theta.
    """

    def __init__(self, g: Callable[[np.ndarray], np.ndarray], n: int = 1024):
        xs = np.linspace(0.0, TWO_PI, n, endpoint=False)
        coeffs = np.fft.rfft(np.asarray(g(xs), dtype=float)) / n
        self.mean = float(coeffs[0].real)
        self._c = coeffs[1:]
        self._k = np.arange(1, len(coeffs))
        self.n = n

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        phase = np.exp(1j * np.outer(np.atleast_1d(theta), self._k))
        # int_0^t e^{ik s} ds = (e^{ikt} - 1)/(ik); rfft needs the 2*Re fold
        osc = 2.0 * np.real((phase - 1.0) @ (self._c / (1j * self._k)))
        out = self.mean * np.atleast_1d(theta) + osc
        return out if np.ndim(theta) else float(out[0])


class OdeAntiderivative:
    """F(theta) = int_0^theta g by an error-controlled ODE solve with dense output."""

    def __init__(
        self,
        g: Callable[[float], float],
        theta_max: float = TWO_PI,
        tol: float = 1e-13,
    ):
        sol = solve_ivp(
            lambda t, y: [g(t)],
            (0.0, theta_max),
            [0.0],
            method="DOP853",
            rtol=max(tol, 1e-13),
            atol=tol,
            dense_output=True,
        )
        if not sol.success:
            raise StiffnessError(f"antiderivative solve failed: {sol.message}")
        self._sol = sol.sol
        self.theta_max = theta_max

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = self._sol(theta.ravel())[0]
        return out.reshape(theta.shape) if theta.ndim else float(out[0])


def cross_checked(
    f: Callable[[np.ndarray], np.ndarray],
    tol: float = 1e-12,
    agreement: float = 1e-10,
) -> QuadResult:
    """Full-period integral by two independent schemes; raises on disagreement."""
    t = trapezoid_periodic(f, tol)
    g = gauss_panels(f, 0.0, TWO_PI, tol)
    diff = abs(t.value - g.value) / max(1.0, abs(t.value))
    if diff > agreement:
        raise QuadratureError(
            f"independent schemes disagree: {t.value!r} vs {g.value!r}"
        )
    return QuadResult(t.value, max(t.error_estimate, diff), t.nodes_used + g.nodes_used)

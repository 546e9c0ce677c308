"""Norms of linear polynomials of the Volterra operator V.

For mu = alpha + i*beta the norm is ``sqrt(alpha**2 + 1/rho**2)`` where rho > 0
satisfies ``cot(phi) = alpha*rho`` with ``phi = rho/(1 - beta**2 rho**2)`` in
(0, pi). We solve in phi: for fixed phi, rho is the positive root of
``beta**2 phi rho**2 + rho - phi = 0``, so the constraint
``1 - beta**2 rho**2 > 0`` holds automatically and the search interval is
fixed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .rootfind import RootTask, bisect

__all__ = [
    "LinearNormSolution",
    "V_NORM",
    "rho_of_phi",
    "norm_linear",
    "norm_affine",
    "norm_imag_axis",
    "minimizer",
    "lumer_slope",
]

log = logging.getLogger(__name__)

V_NORM = 2 / math.pi  # ||V||

EDGE = 1e-13
N_SCAN = 1024


@dataclass(frozen=True)
class LinearNormSolution:
    norm: float
    rho: float
    phi: float


def _as_complex(mu) -> complex:
    z = complex(mu)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"coefficient must be finite, got {mu!r}")
    return z


def rho_of_phi(phi, beta):
    """Positive root rho of ``beta**2 phi rho**2 + rho - phi = 0``.

    Written as ``2 phi / (1 + sqrt(1 + 4 beta**2 phi**2))`` to avoid the
    cancellation in the textbook quadratic formula (and with hypot, so huge
    beta does not overflow); reduces to phi at beta=0.
    """
    return 2 * phi / (1 + np.hypot(1.0, 2 * beta * phi))


def _residual(phi, alpha, beta):
    return np.cos(phi) / np.sin(phi) - alpha * rho_of_phi(phi, beta)


def norm_linear(mu) -> LinearNormSolution:
    """``||V + mu I||`` for complex `mu`."""
    z = _as_complex(mu)
    alpha, beta = z.real, z.imag

    grid = np.concatenate(
        [np.logspace(-300, math.log10(EDGE), 288, endpoint=False), np.linspace(EDGE, math.pi - EDGE, N_SCAN + 1)]
    )
    vals = _residual(grid, alpha, beta)
    flips = np.flatnonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))
    f = lambda phi: float(_residual(phi, alpha, beta))
    if flips.size == 0:
        # alpha << 0 with the root closer to pi than floats resolve; the
        # norm is dominated by |alpha| and the inset endpoint is as good
        phi = float(grid[-1])
    else:
        if flips.size > 1:
            log.warning("norm_linear(%r): %d sign changes on the phi grid", z, flips.size)
        k = flips[0]
        phi = bisect(RootTask(f, float(grid[k]), float(grid[k + 1]), tol=min(1e-13, float(grid[k])))).root
        phi = _newton_polish(f, phi, float(grid[k]), float(grid[k + 1]))

    rho = float(rho_of_phi(phi, beta))
    return LinearNormSolution(math.hypot(alpha, 1 / rho), rho, phi)


def _newton_polish(f, x, lo, hi, max_iter=8):
    """A few Newton steps inside [lo, hi]; keeps the bisection answer if a
    step would leave the bracket."""
    for _ in range(max_iter):
        h = max(1e-7, 1e-7 * abs(x))
        h = min(h, 0.5 * (x - lo), 0.5 * (hi - x))
        if h <= 0:
            break
        d = (f(x + h) - f(x - h)) / (2 * h)
        if d == 0 or not math.isfinite(d):
            break
        step = f(x) / d
        if not lo <= x - step <= hi:
            break
        x -= step
        if abs(step) < 1e-13:
            break
    return x


def norm_affine(nu) -> float:
    """``||I + nu V||``, via ``|nu| * ||V + (1/nu) I||``."""
    z = _as_complex(nu)
    if z == 0:
        return 1.0
    return abs(z) * norm_linear(1 / z).norm


def norm_imag_axis(beta: float) -> float:
    """Closed form ``||V + i beta I|| = 1/pi + sqrt(beta**2 + 1/pi**2)``."""
    if not math.isfinite(beta):
        raise DomainError("beta must be finite")
    return 1 / math.pi + math.hypot(beta, 1 / math.pi)


def minimizer() -> tuple[float, float, float]:
    """Global minimizer of ``mu -> ||V + mu I||``.

    Returns ``(mu0, min_norm, rho0)`` where rho0 solves ``rho + tan(rho) = 0``
    on (pi/2, pi) and ``mu0 = -1/rho0**2``.
    """
    task = RootTask(lambda r: r + math.tan(r), math.pi / 2 + EDGE, math.pi - EDGE, tol=1e-13)
    rho0 = bisect(task).root
    mu0 = -1 / rho0**2
    return mu0, math.sqrt(mu0 * mu0 - mu0), rho0


def lumer_slope(theta: float) -> float:
    """``sin(theta) / (2 theta)`` on [-pi, pi], with value 1/2 at 0."""
    if not -math.pi <= theta <= math.pi:
        raise DomainError(f"theta={theta!r} outside [-pi, pi]")
    if abs(theta) < 1e-8:
        return 0.5
    return math.sin(theta) / (2 * theta)


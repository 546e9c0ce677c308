"""The numerical range W(V) and Crouzeix ratios of real quadratics.

W(V) is the compact convex set bounded by the segment [-i/2pi, i/2pi] and the
curves ``t -> (1 - cos t)/t^2 +- i (t - sin t)/t^2`` for t in [0, 2pi]. Its
support function is ``sin(theta)/(2 theta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .linear import lumer_slope
from .quadratic import MonicAtZeroQuad, RealQuadPoly, norm_quadratic

__all__ = [
    "Branch",
    "RootKind",
    "CrouzeixReport",
    "boundary_point",
    "boundary_curve",
    "support_function",
    "coefficients",
    "golden_section_max",
    "max_abs_on_W",
    "crouzeix_ratio",
    "roots_to_coeffs",
]

TWO_PI = 2 * math.pi
SEGMENT_TOP = 1 / TWO_PI
SERIES_CUTOFF = 1e-4
N_CURVE = 4096
N_SEGMENT = 1024
INV_PHI = (math.sqrt(5) - 1) / 2


class Branch(str, Enum):
    UPPER = "Upper"
    LOWER = "Lower"
    SEGMENT = "Segment"


class RootKind(str, Enum):
    REAL_PAIR = "RealPair"
    CONJUGATE_PAIR = "ConjugatePair"


@dataclass(frozen=True)
class CrouzeixReport:
    poly: RealQuadPoly
    norm: float
    max_on_W: float
    ratio: float
    argmax_z: complex
    status: str = "RootFound"


def boundary_curve(t):
    """Upper boundary curve at parameter(s) `t` in [0, 2pi], as complex."""
    t = np.asarray(t, dtype=float)
    small = t < SERIES_CUTOFF
    ts = np.where(small, 1.0, t)  # keeps the closed forms away from 0/0
    t2 = t * t
    x = np.where(small, 0.5 - t2 / 24 + t2 * t2 / 720, 2 * np.sin(ts / 2) ** 2 / ts**2)
    y = np.where(small, t / 6 - t * t2 / 120 + t * t2 * t2 / 5040, (ts - np.sin(ts)) / ts**2)
    return x + 1j * y


def boundary_point(t: float, branch=Branch.UPPER) -> complex:
    """Point of the boundary of W(V).

    For the segment branch, t in [0, 2pi] runs linearly from -i/2pi to i/2pi.
    """
    branch = Branch(branch)
    if not 0 <= t <= TWO_PI:
        raise DomainError(f"t={t!r} outside [0, 2pi]")
    if branch is Branch.SEGMENT:
        return complex(0.0, (t / TWO_PI - 0.5) / math.pi)
    z = complex(boundary_curve(t))
    return z if branch is Branch.UPPER else z.conjugate()


def support_function(theta: float) -> float:
    """``max Re(e^{i theta} z)`` over W(V)."""
    return lumer_slope(theta)


def coefficients(p) -> tuple[complex, complex, complex]:
    """``(c0, c1, c2)`` with ``p(z) = c2 z^2 + c1 z + c0``.

    Accepts a RealQuadPoly, a MonicAtZeroQuad, a plain number mu (meaning
    ``z + mu``), or a 3-tuple of coefficients.
    """
    if isinstance(p, RealQuadPoly):
        return complex(p.tau), complex(p.sigma), 1.0 + 0j
    if isinstance(p, MonicAtZeroQuad):
        return 1.0 + 0j, complex(p.xi), complex(p.eta)
    if isinstance(p, (int, float, complex, np.number)):
        return complex(p), 1.0 + 0j, 0j
    c0, c1, c2 = p
    return complex(c0), complex(c1), complex(c2)


def _abs_poly(coeffs, z):
    c0, c1, c2 = coeffs
    return np.abs((c2 * z + c1) * z + c0)


def golden_section_max(f, a: float, b: float, tol: float = 1e-12):
    """Golden-section search for a maximum of `f` on [a, b].

    Returns ``(x, f(x))``, assuming f is unimodal on the bracket.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _refine(path, grid, values, coeffs, tol):
    """Golden-section polish of the best sample of |p| along `path`."""
    k = int(np.argmax(values))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    g = lambda s: float(_abs_poly(coeffs, path(s)))
    s, val = golden_section_max(g, float(lo), float(hi), tol)
    if val < values[k]:
        s, val = float(grid[k]), float(values[k])
    return val, complex(path(s))


def max_abs_on_W(p, tol: float = 1e-12) -> tuple[float, complex]:
    """Maximum of ``|p(z)|`` over W(V) and a point where it is attained.

    By the maximum principle only the boundary is searched. For real
    coefficients ``|p(conj z)| = |p(z)|``, so the upper curve and the upper
    half of the segment suffice; otherwise both halves are sampled.
    """
    coeffs = coefficients(p)
    real = all(c.imag == 0 for c in coeffs)

    candidates = []
    t = np.linspace(0.0, TWO_PI, N_CURVE)
    signs = (1,) if real else (1, -1)
    for sgn in signs:
        path = (lambda s, sgn=sgn: boundary_curve(s) if sgn > 0 else np.conj(boundary_curve(s)))
        candidates.append(_refine(path, t, _abs_poly(coeffs, path(t)), coeffs, tol))

    y = np.linspace(0.0 if real else -SEGMENT_TOP, SEGMENT_TOP, N_SEGMENT)
    seg = lambda s: 1j * np.asarray(s)
    candidates.append(_refine(seg, y, _abs_poly(coeffs, seg(y)), coeffs, tol))

    best, z = max(candidates, key=lambda c: c[0])
    return float(best), z


def crouzeix_ratio(p, tol: float = 1e-12) -> CrouzeixReport:
    """``||p(V)|| / max_W |p|`` for ``p(z) = z^2 + sigma z + tau``."""
    p = RealQuadPoly(float(p[0]), float(p[1]))
    res = norm_quadratic(p, tol=tol)
    top, z = max_abs_on_W(p)
    return CrouzeixReport(p, res.norm, top, res.norm / top, z, res.status.value)


def roots_to_coeffs(kind, u: float, v: float) -> RealQuadPoly:
    """Monic quadratic with roots ``u, v`` (RealPair) or ``u +- i v``
    (ConjugatePair)."""
    kind = RootKind(kind)
    if kind is RootKind.REAL_PAIR:
        return RealQuadPoly(-(u + v), u * v)
    return RealQuadPoly(-2 * u, u * u + v * v)

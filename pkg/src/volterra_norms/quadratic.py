"""Norms of real-quadratic polynomials ``p(V) = V**2 + sigma V + tau I``.

``||p(V)||**2 = tau**2 + delta`` where delta is the largest positive root of
a 2x2 determinant built from

    omega1, omega2 > 0 with  delta w1^4 + c w1^2 - 1 = 0,  delta w2^4 - c w2^2 - 1 = 0,
    c = sigma**2 - 2 tau,

and the four combinations

    Omega0 = cosh w1 - cos w2           Omega1 = w1 sinh w1 + w2 sin w2
    Omega2 = w1^2 cosh w1 + w2^2 cos w2 Omega3 = w1^3 sinh w1 - w2^3 sin w2.

When no positive root exists the norm is ``|tau|``.

Overflow: w1 grows without bound as delta -> 0, so cosh w1 overflows. The
determinant is a sum of products of two Omega-linear forms, hence
multiplying every Omega by exp(-w1) multiplies it by exp(-2 w1) and leaves
the roots alone (`char_fn`).

Cancellation: the exp(2 w1) coefficient of the determinant, i.e. the part
coming from the exp(w1)/2 halves of cosh and sinh alone, vanishes
identically on the curve ``delta w1^4 + c w1^2 = 1``. The scaled determinant
is therefore an O(1) cancellation hiding an O(exp(-w1)) signal, and for
w1 above ~35 its sign is rounding noise. `reduced_char_fn` drops that
vanishing coefficient analytically and is what the solver searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError
from .linear import norm_affine
from .rootfind import RootTask, bisect, scan_roots

__all__ = [
    "RealQuadPoly",
    "MonicAtZeroQuad",
    "OmegaSystem",
    "Status",
    "NormResult",
    "omegas",
    "omega_caps",
    "omega_system",
    "char_fn",
    "reduced_char_fn",
    "search_interval",
    "norm_quadratic",
    "norm_v_squared",
    "norm_monic_quadratic",
    "monic_norm_result",
    "flat_region_contains",
]

DEFAULT_STARTS = 256
MAX_STARTS = 1024
DELTA_MIN_FRACTION = 1e-10


class RealQuadPoly(NamedTuple):
    """``V**2 + sigma V + tau I``."""

    sigma: float
    tau: float


class MonicAtZeroQuad(NamedTuple):
    """``I + xi V + eta V**2``."""

    xi: float
    eta: float


class Status(str, Enum):
    ROOT_FOUND = "RootFound"
    NO_ROOT = "NoRoot"
    CLOSED_FORM = "ClosedForm"


@dataclass(frozen=True)
class NormResult:
    norm: float
    status: Status
    delta_star: Optional[float] = None
    roots_found: list = field(default_factory=list)


@dataclass(frozen=True)
class OmegaSystem:
    delta: float
    omega1: float
    omega2: float
    cap0: float
    cap1: float
    cap2: float
    cap3: float
    scaled: bool


def _check_poly(p) -> RealQuadPoly:
    p = RealQuadPoly(float(p[0]), float(p[1]))
    if not (math.isfinite(p.sigma) and math.isfinite(p.tau)):
        raise DomainError(f"coefficients must be finite, got {p!r}")
    return p


def omegas(p, delta):
    """Positive solutions ``(omega1, omega2)`` of the two quartics.

    Uses the cancellation-free forms of the quadratic formula in
    ``t = omega**2`` (the two squares multiply to ``1/delta``). Accepts array
    `delta`.
    """
    sigma, tau = p
    delta = np.asarray(delta, dtype=float)
    if np.any(delta <= 0):
        raise DomainError("delta must be positive")
    c = sigma * sigma - 2 * tau
    root = np.sqrt(c * c + 4 * delta)
    big = (abs(c) + root) / (2 * delta)
    small = 2 / (abs(c) + root)
    w1sq, w2sq = (small, big) if c >= 0 else (big, small)
    w1, w2 = np.sqrt(w1sq), np.sqrt(w2sq)
    if w1.ndim == 0:
        return float(w1), float(w2)
    return w1, w2


def omega_caps(omega1, omega2, scaled=True):
    """``(Omega0, Omega1, Omega2, Omega3)``; times exp(-omega1) when `scaled`."""
    w1 = np.asarray(omega1, dtype=float)
    w2 = np.asarray(omega2, dtype=float)
    if scaled:
        e = np.exp(-w1)
        ch = 0.5 * (1 + e * e)
        sh = -0.5 * np.expm1(-2 * w1)
        co = e * np.cos(w2)
        si = e * np.sin(w2)
    else:
        ch, sh, co, si = np.cosh(w1), np.sinh(w1), np.cos(w2), np.sin(w2)
    caps = (
        ch - co,
        w1 * sh + w2 * si,
        w1**2 * ch + w2**2 * co,
        w1**3 * sh - w2**3 * si,
    )
    if w1.ndim == 0 and w2.ndim == 0:
        return tuple(float(x) for x in caps)
    return caps


def omega_system(p, delta: float, scaled: bool = True) -> OmegaSystem:
    p = _check_poly(p)
    w1, w2 = omegas(p, delta)
    return OmegaSystem(float(delta), w1, w2, *omega_caps(w1, w2, scaled), scaled=scaled)


def _rows(p, delta, caps):
    """Entries of the 2x2 matrix acting on (A, B), each linear in the caps."""
    s, t = p
    d = delta
    o0, o1, o2, o3 = caps
    a11 = t * o0 + s * t * o1 - d * o2
    a12 = s * t * o0 + (s * s * t - 2 * t * t - d) * o1 + t * d * o3
    a21 = -s * o0 + (t - s * s) * o1 - d * o3
    a22 = (t - s * s) * o0 - s * (s * s - 2 * t) * o1 - d * o2 - s * d * o3
    return a11, a12, a21, a22


def char_fn(p, delta, scaled=True):
    """Determinant whose positive roots are the admissible deltas.

    With `scaled` (the default) the caps carry exp(-omega1), so the value is
    exp(-2 omega1) times the literal determinant and stays finite for all
    delta > 0. Accepts array `delta`.
    """
    p = _check_poly(p)
    w1, w2 = omegas(p, delta)
    a11, a12, a21, a22 = _rows(p, np.asarray(delta, dtype=float), omega_caps(w1, w2, scaled))
    out = a11 * a22 - a12 * a21
    return float(out) if np.ndim(out) == 0 else out


def reduced_char_fn(p, delta):
    """``exp(-omega1)`` times the literal determinant, without cancellation.

    Splitting every Omega as ``exp(w1) * P + Q`` with
    ``P = (1, w1, w1^2, w1^3)/2``, the determinant is
    ``exp(2 w1) det(P) + exp(w1) B(P, Q) + det(Q)`` for the symmetric
    bilinear form B polarising det. ``det(P)`` is identically zero, which
    leaves ``B(P, Q) + exp(-w1) det(Q)``.
    """
    p = _check_poly(p)
    d = np.asarray(delta, dtype=float)
    w1, w2 = omegas(p, d)
    w1 = np.asarray(w1)
    w2 = np.asarray(w2)
    e = np.exp(-w1)
    c2, s2 = np.cos(w2), np.sin(w2)
    lead = (0.5, 0.5 * w1, 0.5 * w1**2, 0.5 * w1**3)
    rest = (
        0.5 * e - c2,
        -0.5 * w1 * e + w2 * s2,
        0.5 * w1**2 * e + w2**2 * c2,
        -0.5 * w1**3 * e - w2**3 * s2,
    )
    p11, p12, p21, p22 = _rows(p, d, lead)
    q11, q12, q21, q22 = _rows(p, d, rest)
    cross = p11 * q22 + q11 * p22 - p12 * q21 - q12 * p21
    out = cross + e * (q11 * q22 - q12 * q21)
    return float(out) if np.ndim(out) == 0 else out


def search_interval(p) -> tuple[float, float]:
    """``(delta_min, delta_max)``; every admissible delta is below delta_max
    because ``||p(V)|| < 1 + |sigma| + |tau|``."""
    sigma, tau = _check_poly(p)
    hi = (1 + abs(sigma) + abs(tau)) ** 2 - tau * tau
    return DELTA_MIN_FRACTION * hi, hi


def norm_quadratic(p, tol: float = 1e-12, n_starts: int = DEFAULT_STARTS) -> NormResult:
    """``||V**2 + sigma V + tau I||``.

    The multistart is run with `n_starts` and twice that; if the largest
    roots disagree by more than ``1e-6 * delta_max`` the start count keeps
    doubling up to 1024 and the finest answer is used. Roots below
    ``delta_min = 1e-10 * delta_max`` are not searched for.
    """
    p = _check_poly(p)
    lo, hi = search_interval(p)
    f = lambda d: reduced_char_fn(p, d)

    def largest(n):
        roots = scan_roots(f, lo, hi, n, tol, guard=(0.5 * lo, hi + 0.1 * (hi - lo)))
        return roots, (roots[-1].root if roots else None)

    roots, best = largest(n_starts)
    n = n_starts
    while n < MAX_STARTS:
        n *= 2
        roots_next, best_next = largest(n)
        agree = (best is None and best_next is None) or (
            best is not None and best_next is not None and abs(best - best_next) <= 1e-6 * hi
        )
        roots, best = roots_next, best_next
        if agree:
            break

    tau2 = p.tau * p.tau
    found = [r.root for r in roots]
    if best is None:
        return NormResult(abs(p.tau), Status.NO_ROOT, None, found)
    return NormResult(math.sqrt(tau2 + best), Status.ROOT_FOUND, best, found)


def norm_v_squared() -> tuple[float, float]:
    """``||V**2|| = gamma0**-2`` with gamma0 the smallest positive root of
    ``cosh(g) cos(g) = -1``; returns ``(norm, gamma0)``."""
    task = RootTask(lambda g: math.cosh(g) * math.cos(g) + 1, math.pi / 2, math.pi, tol=1e-14)
    gamma0 = bisect(task).root
    return gamma0**-2, gamma0


def monic_norm_result(q, tol: float = 1e-12) -> NormResult:
    """`norm_monic_quadratic` with the status of the underlying solve.

    Roots are reported for the rescaled polynomial
    ``V**2 + (xi/eta) V + (1/eta) I``. For eta = 0 the linear formula is used
    and the status is ClosedForm.
    """
    xi, eta = float(q[0]), float(q[1])
    if not (math.isfinite(xi) and math.isfinite(eta)):
        raise DomainError(f"coefficients must be finite, got {q!r}")
    if eta == 0:
        return NormResult(norm_affine(xi), Status.CLOSED_FORM)
    inner = norm_quadratic(RealQuadPoly(xi / eta, 1 / eta), tol=tol)
    return NormResult(abs(eta) * inner.norm, inner.status, inner.delta_star, inner.roots_found)


def norm_monic_quadratic(q, tol: float = 1e-12) -> float:
    """``||I + xi V + eta V**2||``.

    For eta != 0 this is ``|eta| * ||V**2 + (xi/eta) V + (1/eta) I||``.
    """
    return monic_norm_result(q, tol).norm


def flat_region_conditions(q) -> tuple[float, float, float]:
    xi, eta = float(q[0]), float(q[1])
    return (
        xi,
        4 * eta * eta / math.pi**2 - 2 * eta + xi * xi,
        (4 * xi / math.pi**2 - 1) * eta * eta + (xi * xi - 2 * xi) * eta + xi**3,
    )


def flat_region_contains(q) -> bool:
    """True where the sufficient conditions for ``||I + xi V + eta V**2|| = 1`` hold."""
    first, second, third = flat_region_conditions(q)
    return first <= 0 and second <= 0 and third >= 0

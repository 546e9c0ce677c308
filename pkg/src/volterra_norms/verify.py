"""Self-check suites behind ``vnl verify``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import oracle
from .linear import minimizer, norm_linear
from .numrange import RootKind, crouzeix_ratio, roots_to_coeffs
from .quadratic import (
    MonicAtZeroQuad,
    RealQuadPoly,
    flat_region_contains,
    norm_monic_quadratic,
    norm_quadratic,
    norm_v_squared,
)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    expected: float
    tol: float

    @property
    def error(self):
        return abs(self.value - self.expected)

    @property
    def passed(self):
        return self.error <= self.tol


def golden_checks():
    mu0, min_norm, _ = minimizer()
    v2, _ = norm_v_squared()
    crz = crouzeix_ratio(RealQuadPoly(0.685, -0.167))
    crz_roots = crouzeix_ratio(roots_to_coeffs(RootKind.REAL_PAIR, 0.191, -0.876))
    return [
        Check("||V|| = 2/pi", norm_linear(0).norm, 2 / math.pi, 1e-8),
        Check("mu0", mu0, -0.2429626850, 1e-9),
        Check("min ||V + mu I||", min_norm, 0.5495393994, 1e-9),
        Check("||V + (mu0+5) I||", norm_linear(mu0 + 5).norm, 5.265379338, 1e-8),
        Check("||V + (mu0-5) I||", norm_linear(mu0 - 5).norm, 5.253007667, 1e-8),
        Check("||V^2||", v2, 0.2844, 5e-5),
        Check("||V^2|| via char. equation", norm_quadratic(RealQuadPoly(0, 0)).norm, v2, 1e-8),
        Check("||I - V + V^2||", norm_monic_quadratic(MonicAtZeroQuad(-1, 1)), 1.0, 1e-6),
        Check("||I - 0.05V + 0.05V^2||", norm_monic_quadratic(MonicAtZeroQuad(-0.05, 0.05)), 1.0, 1e-6),
        Check("||I - V/8 + V^2/8||", norm_monic_quadratic(MonicAtZeroQuad(-0.125, 0.125)), 1.0, 1e-6),
        Check("||V^2 + 0.685V - 0.167I||", crz.norm, 0.6501, 1e-3),
        Check("max_W |z^2 + 0.685z - 0.167|", crz.max_on_W, 0.4255, 1e-3),
        Check("Crouzeix ratio at (0.685, -0.167)", crz.ratio, 1.5278, 2e-3),
        Check("Crouzeix ratio at roots (0.191, -0.876)", crz_roots.ratio, 1.5258, 2e-3),
    ]


def oracle_checks(n: int = 4000, count: int = 100, seed: int = 0):
    """Analytic norms against the discretization on random coefficient boxes."""
    tol = 5e-3 if n >= 4000 else 1e-2
    rng = random.Random(seed)
    checks = []
    for _ in range(count):
        s, t = rng.uniform(-2, 2), rng.uniform(-2, 2)
        checks.append(Check(f"quadratic ({s:.4f}, {t:.4f})", norm_quadratic(RealQuadPoly(s, t)).norm,
                            oracle.oracle_norm(t, s, 1.0, n=n), tol))
    for _ in range(count):
        mu = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        checks.append(Check(f"linear {mu:.4f}", norm_linear(mu).norm,
                            oracle.oracle_norm(mu, 1.0, 0.0, n=n), tol))
    return checks


def sample_flat_region(count: int, seed: int = 0):
    """Rejection sampling of the flat-norm region inside [-3, 0] x [0, 4]."""
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        q = MonicAtZeroQuad(rng.uniform(-3, 0), rng.uniform(0, 4))
        if flat_region_contains(q):
            pts.append(q)
    return pts


def flat_checks(count: int = 200, seed: int = 0):
    return [
        Check(f"flat ({q.xi:.4f}, {q.eta:.4f})", norm_monic_quadratic(q), 1.0, 1e-6)
        for q in sample_flat_region(count, seed)
    ]


SUITES = {"golden": golden_checks, "oracle": oracle_checks, "flat": flat_checks}

"""Brute-force check on the analytic solvers: a midpoint-rule discretization
of V, polynomials of it, and the largest singular value from ``A^H A``.

The matrix ``M`` has ``1/n`` strictly below the diagonal and ``1/(2n)`` on it.
Products with ``M`` and ``M^H`` are running sums, so `oracle_norm` and
`oracle_support` never form an n x n array; `poly_of_matrix` still returns
the dense matrix for small-n inspection.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoConvergence

__all__ = [
    "DiscreteVolterra",
    "PolyOperator",
    "discretize_volterra",
    "poly_of_matrix",
    "operator_norm_2",
    "oracle_norm",
    "oracle_support",
    "start_vector",
]

DEFAULT_SEED = 42
RTOL = 1e-12
MAX_ITER = 10_000
KRYLOV_DIM = 48


@dataclass(frozen=True)
class DiscreteVolterra:
    n: int

    @property
    def nodes(self):
        return (np.arange(1, self.n + 1) - 0.5) / self.n

    def dense(self):
        n = self.n
        m = np.tril(np.full((n, n), 1.0 / n), -1)
        m[np.diag_indices(n)] = 0.5 / n
        return m

    def matvec(self, v):
        # (Mv)_j = (sum_{k<j} v_k + v_j / 2) / n
        return (np.cumsum(v) - 0.5 * v) / self.n

    def rmatvec(self, v):
        # M is real, so M^H = M^T: (M^T v)_k = (sum_{j>k} v_j + v_k / 2) / n
        return (np.cumsum(v[::-1])[::-1] - 0.5 * v) / self.n


@dataclass(frozen=True)
class PolyOperator:
    """``c2 M^2 + c1 M + c0 I`` applied without forming the matrix."""

    m: DiscreteVolterra
    c0: complex
    c1: complex
    c2: complex

    @property
    def shape(self):
        return (self.m.n, self.m.n)

    def matvec(self, v):
        mv = self.m.matvec(v)
        return self.c0 * v + self.c1 * mv + self.c2 * self.m.matvec(mv)

    def rmatvec(self, v):
        mv = self.m.rmatvec(v)
        return (
            np.conj(self.c0) * v
            + np.conj(self.c1) * mv
            + np.conj(self.c2) * self.m.rmatvec(mv)
        )


def discretize_volterra(n: int) -> DiscreteVolterra:
    """Midpoint-rule matrix of V on the nodes ``(j - 1/2)/n``."""
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    return DiscreteVolterra(int(n))


def poly_of_matrix(m: DiscreteVolterra, c0, c1, c2) -> np.ndarray:
    """Dense ``c2 M^2 + c1 M + c0 I``."""
    dense = m.dense()
    out = complex(c2) * (dense @ dense) + complex(c1) * dense
    out[np.diag_indices(m.n)] += complex(c0)
    return out


def _seed():
    return int(os.environ.get("VNL_SEED", DEFAULT_SEED))


def start_vector(n: int, seed: int | None = None) -> np.ndarray:
    """All-ones direction nudged by a seeded pseudo-random perturbation."""
    rng = np.random.default_rng(_seed() if seed is None else seed)
    v = np.ones(n) + 0.1 * rng.standard_normal(n)
    return (v / np.linalg.norm(v)).astype(complex)


def _apply(a, v, adjoint=False):
    if isinstance(a, np.ndarray):
        return a.conj().T @ v if adjoint else a @ v
    return a.rmatvec(v) if adjoint else a.matvec(v)


def _top_eigenvalue(apply, n, rtol, max_iter, seed, krylov_dim=KRYLOV_DIM):
    """Largest eigenvalue of a Hermitian map by explicitly restarted Lanczos.

    Each matvec extends the Krylov basis (fully reorthogonalised) and the
    largest Ritz value is compared with the previous one; converged when they
    differ by at most ``rtol`` relatively. After `krylov_dim` steps the
    iteration restarts from the current top Ritz vector. `max_iter` caps the
    total number of matvecs.
    """
    v = start_vector(n, seed)
    prev = None
    used = 0
    while True:
        basis = np.empty((krylov_dim + 1, n), dtype=complex)
        basis[0] = v
        proj = np.zeros((krylov_dim, krylov_dim), dtype=complex)
        for j in range(krylov_dim):
            w = apply(basis[j])
            used += 1
            proj[: j + 1, j] = basis[: j + 1].conj() @ w
            proj[j, : j + 1] = proj[: j + 1, j].conj()
            evals, evecs = np.linalg.eigh(proj[: j + 1, : j + 1])
            top = float(evals[-1])
            if prev is not None and abs(top - prev) <= rtol * abs(top):
                return top, used
            prev = top
            # two passes of Gram-Schmidt keep the basis orthonormal
            for _ in range(2):
                w = w - basis[: j + 1].T @ (basis[: j + 1].conj() @ w)
            beta = np.linalg.norm(w)
            if beta <= 1e-14 * max(abs(top), 1e-300):
                return top, used  # invariant subspace: Ritz value is exact
            if used >= max_iter:
                raise NoConvergence(f"Lanczos hit {max_iter} matvecs", last=top)
            basis[j + 1] = w / beta
        coeffs = evecs[:, -1]
        v = coeffs @ basis[:krylov_dim]
        v /= np.linalg.norm(v)


def operator_norm_2(a, rtol: float = RTOL, max_iter: int = MAX_ITER, seed: int | None = None) -> float:
    """Largest singular value of `a` (a dense array or anything with
    ``matvec``/``rmatvec``), from the top eigenvalue of ``a^H a``."""
    n = a.shape[1]
    rq, _ = _top_eigenvalue(lambda v: _apply(a, _apply(a, v), adjoint=True), n, rtol, max_iter, seed)
    return math.sqrt(max(rq, 0.0))


def oracle_norm(c0, c1, c2, n: int = 4000, **kwargs) -> float:
    """``||c2 V^2 + c1 V + c0 I||`` approximated on the n-point grid."""
    op = PolyOperator(discretize_volterra(n), complex(c0), complex(c1), complex(c2))
    return operator_norm_2(op, **kwargs)


def oracle_support(theta: float, n: int = 4000, rtol: float = RTOL, max_iter: int = MAX_ITER,
                   seed: int | None = None) -> float:
    """``sup Re(e^{i theta} z)`` over the numerical range of ``M``.

    This is the top eigenvalue of the Hermitian part of ``e^{i theta} M``,
    found by the same Krylov iteration after shifting by ``||M||_1 >= ||H||``.
    """
    if not -math.pi <= theta <= math.pi:
        raise DomainError(f"theta={theta!r} outside [-pi, pi]")
    m = discretize_volterra(n)
    rot = complex(math.cos(theta), math.sin(theta))
    shift = (n - 0.5) / n  # largest column sum of M

    def apply(v):
        h = 0.5 * (rot * m.matvec(v) + rot.conjugate() * m.rmatvec(v))
        return h + shift * v

    rq, _ = _top_eigenvalue(apply, n, rtol, max_iter, seed)
    return rq - shift

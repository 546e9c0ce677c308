"""Scalar root finding: bisection, Newton with a numerical derivative, and a
multistart scan that reports the largest root in an interval.

`bisect` and `newton_refine` work on plain scalar callables.
`largest_root_scan` evaluates ``f`` on whole arrays of abscissae at once;
pass ``vectorized=False`` for callables that only accept scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import Diverged, DomainError, NonFinite, NoSignChange

__all__ = [
    "RootTask",
    "RootResult",
    "bisect",
    "newton_refine",
    "largest_root_scan",
    "scan_roots",
    "fd_step",
]

RESIDUAL_RTOL = 1e-9


@dataclass(frozen=True)
class RootTask:
    f: Callable[[float], float]
    lo: float
    hi: float
    tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise DomainError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int


def fd_step(x):
    """Central-difference step: max(1e-7, 1e-7*|x|)."""
    return np.maximum(1e-7, 1e-7 * np.abs(x))


def _finite_or_raise(value, where):
    if not math.isfinite(value):
        raise NonFinite(f"f({where!r}) = {value!r}")
    return value


def bisect(task: RootTask) -> RootResult:
    """Bracketed bisection.

    Halves ``[lo, hi]`` until its width drops below ``task.tol`` (or
    ``max_iter`` halvings have been done) and returns the midpoint.

    Raises
    ------
    NoSignChange
        If ``f(lo)`` and ``f(hi)`` have the same strict sign.
    NonFinite
        If ``f`` is not finite at an endpoint or at any midpoint.
    """
    f = task.f
    lo, hi = float(task.lo), float(task.hi)
    flo = _finite_or_raise(float(f(lo)), lo)
    fhi = _finite_or_raise(float(f(hi)), hi)
    if flo * fhi > 0:
        raise NoSignChange(f"f({lo!r})={flo!r} and f({hi!r})={fhi!r} have the same sign")
    if flo == 0:
        return RootResult(lo, 0.0, 0)
    if fhi == 0:
        return RootResult(hi, 0.0, 0)

    it = 0
    while hi - lo >= task.tol and it < task.max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # interval is down to adjacent floats
            break
        fmid = _finite_or_raise(float(f(mid)), mid)
        it += 1
        if fmid == 0:
            return RootResult(mid, 0.0, it)
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    root = 0.5 * (lo + hi)
    return RootResult(root, abs(float(f(root))), it)


def newton_refine(
    f: Callable[[float], float],
    x0: float,
    tol: float = 1e-12,
    max_iter: int = 100,
    guard: Optional[tuple[float, float]] = None,
    residual_tol: float = RESIDUAL_RTOL,
) -> RootResult:
    """Newton's method with a central finite-difference derivative.

    Converged when a step is shorter than `tol` and ``|f|`` at the new iterate
    is at most `residual_tol`. When `guard` is given, the difference step is
    shrunk so both stencil points stay inside it, and an iterate leaving it
    raises `Diverged`.

    Multiple roots converge only linearly; for ``x**3`` started at 10 the
    iteration stops a few 1e-9 away from 0, where the difference step
    dominates the derivative estimate.
    """
    if not math.isfinite(x0):
        raise DomainError("x0 must be finite")
    g_lo, g_hi = guard if guard is not None else (-math.inf, math.inf)
    x = float(x0)
    for it in range(1, max_iter + 1):
        h = float(fd_step(x))
        h = min(h, 0.5 * (x - g_lo), 0.5 * (g_hi - x))
        if not h > 0:
            raise Diverged(f"iterate {x!r} sits on the guard boundary", last=x)
        fx = float(f(x))
        if not math.isfinite(fx):
            raise Diverged(f"f({x!r}) is not finite", last=x)
        if fx == 0.0:
            return RootResult(x, 0.0, it)
        dfx = (float(f(x + h)) - float(f(x - h))) / (2 * h)
        if dfx == 0.0 or not math.isfinite(dfx):
            raise Diverged(f"derivative vanished or blew up at {x!r}", last=x)
        step = fx / dfx
        x_new = x - step
        if not (g_lo <= x_new <= g_hi):
            raise Diverged(f"iterate {x_new!r} left the guard interval", last=x_new)
        x = x_new
        if abs(step) < tol:
            fx = float(f(x))
            if abs(fx) <= residual_tol:
                return RootResult(x, abs(fx), it)
    raise Diverged(f"no convergence after {max_iter} iterations", last=x)


def _as_array_fn(f, vectorized):
    if vectorized:
        return lambda x: np.asarray(f(x), dtype=float)
    vf = np.vectorize(f, otypes=[float])
    return lambda x: vf(x)


def _newton_many(F, x, tol, max_iter, g_lo, g_hi, residual_tol):
    """Run Newton from every entry of ``x`` at once; returns (x, converged)."""
    x = np.array(x, dtype=float)
    active = np.ones(x.shape, dtype=bool)
    converged = np.zeros(x.shape, dtype=bool)
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        xa = x[idx]
        h = np.minimum(fd_step(xa), np.minimum(0.5 * (xa - g_lo), 0.5 * (g_hi - xa)))
        ok = h > 0
        h = np.where(ok, h, 1.0)
        k = idx.size
        vals = F(np.concatenate([xa, xa + h, xa - h]))
        fx, fp, fm = vals[:k], vals[k : 2 * k], vals[2 * k :]
        dfx = (fp - fm) / (2 * h)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(fx == 0.0, 0.0, fx / dfx)
        x_new = xa - step
        ok &= np.isfinite(x_new) & (x_new >= g_lo) & (x_new <= g_hi)
        x[idx] = np.where(ok, x_new, xa)
        done = ok & (np.abs(step) < tol)
        active[idx[~ok]] = False
        if np.any(done):
            didx = idx[done]
            fres = np.abs(F(x[didx]))
            converged[didx] = fres <= residual_tol
            active[didx] = False
    return x, converged


def _bisect_many(F, a, b, fa, tol, max_iter):
    """Vectorized bisection over many brackets ``[a_i, b_i]`` simultaneously."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    fa = np.array(fa, dtype=float)
    for _ in range(max_iter):
        live = (b - a) >= tol
        if not np.any(live):
            break
        mid = 0.5 * (a + b)
        fm = F(mid)
        left = np.signbit(fm) == np.signbit(fa)
        exact = fm == 0
        a = np.where(live & left & ~exact, mid, a)
        fa = np.where(live & left & ~exact, fm, fa)
        b = np.where(live & ~left & ~exact, mid, b)
        a = np.where(live & exact, mid, a)
        b = np.where(live & exact, mid, b)
    return 0.5 * (a + b)


def scan_roots(
    f,
    lo: float,
    hi: float,
    n_starts: int = 256,
    tol: float = 1e-12,
    *,
    guard: Optional[tuple[float, float]] = None,
    vectorized: bool = True,
    max_iter: int = 60,
) -> list[RootResult]:
    """All distinct roots of `f` in ``[lo, hi]`` that the multistart finds.

    Newton is launched from `n_starts` equispaced interior points, and every
    sign change on the same grid (endpoints included) is bisected. Candidates
    with ``|f| <= 1e-9 * (1 + scale)``, where scale is the largest ``|f|`` seen
    on the grid, are kept. Candidates closer than ``10*tol`` are merged into
    one root (the one with the smallest residual); its ``iterations`` field
    counts the merged candidates. Results are sorted ascending.

    The default guard interval is ``[lo - 0.1*w, hi + 0.1*w]`` with
    ``w = hi - lo``.
    """
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if n_starts < 2:
        raise DomainError("n_starts must be at least 2")
    F = _as_array_fn(f, vectorized)
    width = hi - lo
    g_lo, g_hi = guard if guard is not None else (lo - 0.1 * width, hi + 0.1 * width)

    grid = np.linspace(lo, hi, n_starts + 2)
    with np.errstate(all="ignore"):
        fg = F(grid)
    finite = np.isfinite(fg)
    scale = float(np.max(np.abs(fg[finite]))) if np.any(finite) else 0.0
    residual_tol = RESIDUAL_RTOL * (1.0 + scale)

    candidates = [grid[finite & (fg == 0)]]

    with np.errstate(all="ignore"):
        xs, conv = _newton_many(F, grid[1:-1], tol, max_iter, g_lo, g_hi, residual_tol)
    candidates.append(xs[conv & (xs >= lo) & (xs <= hi)])

    sa, sb = fg[:-1], fg[1:]
    brackets = finite[:-1] & finite[1:] & (sa * sb < 0)
    if np.any(brackets):
        a, b = grid[:-1][brackets], grid[1:][brackets]
        n_halvings = int(math.ceil(math.log2(max(width / (n_starts + 1), tol) / tol))) + 2
        with np.errstate(all="ignore"):
            roots = _bisect_many(F, a, b, sa[brackets], tol, n_halvings)
            res = np.abs(F(roots))
        candidates.append(roots[res <= residual_tol])

    found = np.sort(np.concatenate(candidates))
    if found.size == 0:
        return []
    with np.errstate(all="ignore"):
        residuals = np.abs(F(found))
    # split into clusters wherever the gap reaches 10*tol
    breaks = np.flatnonzero(np.diff(found) >= 10 * tol) + 1
    out = []
    for members, res in zip(np.split(found, breaks), np.split(residuals, breaks)):
        k = int(np.argmin(res))
        out.append(RootResult(float(members[k]), float(res[k]), int(members.size)))
    return out


def largest_root_scan(
    f,
    lo: float,
    hi: float,
    n_starts: int = 256,
    tol: float = 1e-12,
    **kwargs,
) -> Optional[RootResult]:
    """Largest root found by `scan_roots`, or None when there is none.

    An empty result is a legitimate answer, not an error.
    """
    roots = scan_roots(f, lo, hi, n_starts, tol, **kwargs)
    return roots[-1] if roots else None

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from volterra_norms.errors import Diverged, DomainError, NonFinite, NoSignChange
from volterra_norms.rootfind import (
    RootTask,
    bisect,
    fd_step,
    largest_root_scan,
    newton_refine,
    scan_roots,
)


def test_bisect_sqrt2():
    r = bisect(RootTask(lambda x: x * x - 2, 1.0, 2.0))
    assert abs(r.root - math.sqrt(2)) < 1e-12


def test_bisect_cos():
    r = bisect(RootTask(math.cos, 1.0, 2.0))
    assert abs(r.root - math.pi / 2) < 1e-12


def test_bisect_rho_plus_tan():
    r = bisect(RootTask(lambda x: x + math.tan(x), math.pi / 2 + 1e-9, math.pi - 1e-9))
    assert abs(r.root - 2.028757838) < 1e-9
    assert abs(r.root + math.tan(r.root)) < 1e-9


def test_bisect_no_sign_change():
    with pytest.raises(NoSignChange):
        bisect(RootTask(lambda x: x * x + 1, -1.0, 1.0))


def test_bisect_non_finite():
    with pytest.raises(NonFinite):
        bisect(RootTask(lambda x: math.nan if 0.4 < x < 0.6 else x - 0.7, 0.0, 1.0))


def test_bisect_deterministic():
    task = RootTask(lambda x: math.exp(x) - 3, 0.0, 2.0)
    assert bisect(task) == bisect(task)


@pytest.mark.parametrize("lo,hi,tol,it", [(1, 1, 1e-12, 5), (0, 1, 0, 5), (0, 1, 1e-12, 0)])
def test_root_task_validation(lo, hi, tol, it):
    with pytest.raises(DomainError):
        RootTask(math.sin, lo, hi, tol, it)


def test_fd_step():
    assert fd_step(0.0) == 1e-7
    assert fd_step(-1e3) == pytest.approx(1e-4)


def test_newton_sqrt2():
    r = newton_refine(lambda x: x * x - 2, 1.5)
    assert abs(r.root - 1.414213562373) < 1e-12


def test_newton_cosh_cos():
    f = lambda x: math.cosh(x) * math.cos(x) + 1
    ref = bisect(RootTask(f, 1.5, 2.5)).root
    r = newton_refine(f, 1.8)
    assert abs(r.root - ref) < 1e-11
    assert abs(r.root - 1.875104068712) < 1e-11


def test_newton_triple_root_is_slow_but_gets_there():
    # linear convergence; the difference step floor stops it near 2e-9
    r = newton_refine(lambda x: x**3, 10.0, max_iter=5000)
    assert abs(r.root) < 1e-8
    with pytest.raises(Diverged):
        newton_refine(lambda x: x**3, 10.0, max_iter=50)


def test_newton_guard():
    with pytest.raises(Diverged):
        newton_refine(lambda x: math.atan(x), 3.0, guard=(-5, 5))


def test_scan_sin():
    r = largest_root_scan(np.sin, 0.1, 7.0, n_starts=64)
    assert abs(r.root - 2 * math.pi) < 1e-10


def test_scan_cubic():
    r = largest_root_scan(lambda x: (x - 1) * (x - 2) * (x - 3), 0.0, 2.5, n_starts=64)
    assert abs(r.root - 2) < 1e-10


def test_scan_none():
    assert largest_root_scan(lambda x: x * x + 1, 0.0, 10.0) is None


def test_scan_scalar_callable():
    r = largest_root_scan(math.sin, 0.1, 7.0, n_starts=64, vectorized=False)
    assert abs(r.root - 2 * math.pi) < 1e-10


def test_scan_dedup():
    roots = scan_roots(np.cos, 0.0, 10.0, n_starts=200)
    expected = [math.pi / 2 + k * math.pi for k in range(3)]
    assert [round(r.root, 9) for r in roots] == [round(x, 9) for x in expected]


def test_scan_bad_args():
    with pytest.raises(DomainError):
        scan_roots(np.sin, 1.0, 0.0)
    with pytest.raises(DomainError):
        scan_roots(np.sin, 0.0, 1.0, n_starts=1)


roots_strategy = st.lists(st.floats(0.05, 9.95), min_size=1, max_size=4, unique=True).filter(
    lambda rs: min(abs(a - b) for a in rs for b in rs if a != b) > 0.05 if len(rs) > 1 else True
)


@given(roots_strategy)
@settings(max_examples=40, deadline=None)
def test_scan_residual_and_monotone_coverage(rs):
    f = lambda x: np.prod([x - r for r in rs], axis=0)
    lo, hi = 0.0, 10.0
    scale = max(abs(f(lo)), abs(f(hi)))
    coarse = largest_root_scan(f, lo, hi, n_starts=32)
    fine = largest_root_scan(f, lo, hi, n_starts=64)
    for r in (coarse, fine):
        assert r is not None
        assert r.residual <= 1e-9 * (1 + scale) + 1e-12
    assert fine.root >= coarse.root - 1e-9
    assert abs(fine.root - max(rs)) < 1e-7

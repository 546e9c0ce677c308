import json
import math

import pytest

from volterra_norms.errors import DomainError
from volterra_norms.scans import (
    KINDS,
    ScanConfig,
    best_cell,
    evaluate,
    gnuplot_script,
    nr_boundary_records,
    refine_best,
    render,
    render_boundary,
    run_grid,
    spot_check,
)


def cfg(kind_box=(-1.0, 1.0, -1.0, 1.0), n=4, fmt="csv"):
    return ScanConfig(*kind_box, n, n, "-", fmt)


@pytest.mark.parametrize("args", [(1, 0, 0, 1, 3, 3), (0, 1, 1, 1, 3, 3), (0, 1, 0, 1, 1, 3)])
def test_config_validation(args):
    with pytest.raises(DomainError):
        ScanConfig(*args)
    with pytest.raises(DomainError):
        ScanConfig(0, 1, 0, 1, 3, 3, "-", "xml")


@pytest.mark.parametrize("kind", KINDS)
def test_every_kind_renders(kind):
    c = cfg()
    rows = run_grid(kind, c)
    text = render(kind, c, rows).splitlines()
    header = text[0].split(",")
    assert header[:3] == ["x", "y", "value"]
    assert len(text) == 1 + 16
    assert all(math.isfinite(float(line.split(",")[2])) for line in text[1:])


def test_ordering_y_outer():
    c = ScanConfig(0.0, 1.0, 2.0, 3.0, 3, 2)
    lines = render("linear-mu", c, run_grid("linear-mu", c)).splitlines()[1:]
    coords = [tuple(map(float, line.split(",")[:2])) for line in lines]
    assert coords == [(x, y) for y in (2.0, 3.0) for x in (0.0, 0.5, 1.0)]


def test_status_column():
    c = cfg()
    assert render("quad-sigma-tau", c, run_grid("quad-sigma-tau", c)).startswith("x,y,value,status\n")
    assert render("linear-mu", c, run_grid("linear-mu", c)).startswith("x,y,value\n")


def test_ndjson_and_digits():
    c = cfg(fmt="ndjson")
    rows = run_grid("quad-sigma-tau", c)
    recs = [json.loads(line) for line in render("quad-sigma-tau", c, rows).splitlines()]
    assert set(recs[0]) == {"x", "y", "value", "status"}
    assert recs[5]["value"] == rows[1][1][0]
    csv = render("quad-sigma-tau", cfg(), rows).splitlines()
    assert float(csv[6].split(",")[2]) == rows[1][1][0]


def test_parallel_matches_serial():
    c = cfg(n=5)
    assert run_grid("crouzeix-roots", c, jobs=2) == run_grid("crouzeix-roots", c, jobs=1)


def test_best_and_refine():
    c = ScanConfig(-1.0, 0.5, -0.5, 0.5, 6, 5)
    rows = run_grid("linear-mu", c)
    i, j, v = best_cell([[(-a, s) for a, s in row] for row in rows])
    assert abs(c.xs[j] + 0.243) <= 2 * 0.3 and abs(c.ys[i]) <= 0.25
    x, y, r = refine_best("crouzeix-sigma-tau", c, run_grid("crouzeix-sigma-tau", c))
    assert r >= best_cell(run_grid("crouzeix-sigma-tau", c))[2]


def test_unknown_kind():
    with pytest.raises(DomainError):
        evaluate("cubic", 0, 0)


def test_boundary_records():
    recs = nr_boundary_records(1024)
    upper = [r for r in recs if r[1] == "Upper"]
    lower = [r for r in recs if r[1] == "Lower"]
    assert len(upper) == len(lower) == 1024
    assert upper[0][2:] == (0.5, 0.0)
    assert upper[-1][2] == pytest.approx(0, abs=1e-15)
    assert upper[-1][3] == pytest.approx(1 / (2 * math.pi), abs=1e-15)
    assert all(u[2] == l[2] and u[3] == -l[3] for u, l in zip(upper, lower))
    assert render_boundary(recs).startswith("t,branch,re,im\n")
    with pytest.raises(DomainError):
        nr_boundary_records(8)


def test_gnuplot_script():
    script = gnuplot_script("linear-mu", "lin.csv", cfg())
    assert "'lin.csv'" in script and "set contour" in script


def test_spot_check():
    c = cfg()
    checks = spot_check("monic-xi-eta", c, run_grid("monic-xi-eta", c), n=1000, count=5)
    assert len(checks) == 5 and all(ok for *_, ok in checks)
    assert spot_check("flat-region", c, run_grid("flat-region", c), n=500) == []
    checks = spot_check("crouzeix-conj", c, run_grid("crouzeix-conj", c), n=1000, count=3)
    assert all(ok for *_, ok in checks)


def test_monic_flat_cells_are_one():
    c = ScanConfig(-3.0, 3.0, -1.0, 4.0, 13, 11)
    flat = run_grid("flat-region", c)
    monic = run_grid("monic-xi-eta", c)
    inside = [(m[0]) for frow, mrow in zip(flat, monic) for f, m in zip(frow, mrow) if f[0] == 1.0]
    assert inside
    assert all(abs(v - 1) <= 1e-6 for v in inside)

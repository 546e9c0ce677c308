"""Grid scans that turn the norm and ratio maps into data files."""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import oracle
from .errors import DomainError
from .linear import norm_affine, norm_linear
from .numrange import (
    Branch,
    RootKind,
    TWO_PI,
    boundary_point,
    crouzeix_ratio,
    roots_to_coeffs,
)
from .quadratic import (
    MonicAtZeroQuad,
    RealQuadPoly,
    flat_region_contains,
    monic_norm_result,
    norm_quadratic,
)

KINDS = (
    "linear-mu",
    "affine-nu",
    "quad-sigma-tau",
    "monic-xi-eta",
    "crouzeix-sigma-tau",
    "crouzeix-roots",
    "crouzeix-conj",
    "flat-region",
)

WITH_STATUS = {
    "quad-sigma-tau",
    "monic-xi-eta",
    "crouzeix-sigma-tau",
    "crouzeix-roots",
    "crouzeix-conj",
}

CROUZEIX_KINDS = {"crouzeix-sigma-tau", "crouzeix-roots", "crouzeix-conj"}

# default box per kind, picked for readable contour plots;
# not taken from any stated axis range
DEFAULT_BOXES = {
    "linear-mu": (-3.0, 3.0, -3.0, 3.0),
    "affine-nu": (-3.0, 3.0, -3.0, 3.0),
    "quad-sigma-tau": (-2.0, 2.0, -2.0, 2.0),
    "monic-xi-eta": (-3.0, 3.0, -1.0, 4.0),
    "crouzeix-sigma-tau": (-2.0, 2.0, -2.0, 2.0),
    "crouzeix-roots": (-2.0, 2.0, -2.0, 2.0),
    "crouzeix-conj": (-1.0, 1.0, 0.0, 1.0),
    "flat-region": (-3.0, 0.5, -0.5, 5.0),
}


@dataclass(frozen=True)
class ScanConfig:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    output_path: str = "-"
    format: str = "csv"

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise DomainError("scan box needs x_min < x_max and y_min < y_max")
        if self.nx < 2 or self.ny < 2:
            raise DomainError("nx and ny must be at least 2")
        if self.format not in ("csv", "ndjson"):
            raise DomainError(f"unknown format {self.format!r}")

    @property
    def xs(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ys(self):
        return np.linspace(self.y_min, self.y_max, self.ny)


def crouzeix_poly(kind: str, x: float, y: float) -> RealQuadPoly:
    if kind == "crouzeix-sigma-tau":
        return RealQuadPoly(x, y)
    if kind == "crouzeix-roots":
        return roots_to_coeffs(RootKind.REAL_PAIR, x, y)
    return roots_to_coeffs(RootKind.CONJUGATE_PAIR, x, y)


def evaluate(kind: str, x: float, y: float, tol: float = 1e-12):
    """``(value, status)`` of one grid cell; status is None for kinds without one."""
    if kind == "linear-mu":
        return norm_linear(complex(x, y)).norm, None
    if kind == "affine-nu":
        return norm_affine(complex(x, y)), None
    if kind == "quad-sigma-tau":
        res = norm_quadratic(RealQuadPoly(x, y), tol=tol)
        return res.norm, res.status.value
    if kind == "monic-xi-eta":
        res = monic_norm_result(MonicAtZeroQuad(x, y), tol=tol)
        return res.norm, res.status.value
    if kind in CROUZEIX_KINDS:
        rep = crouzeix_ratio(crouzeix_poly(kind, x, y), tol=tol)
        return rep.ratio, rep.status
    if kind == "flat-region":
        return (1.0 if flat_region_contains(MonicAtZeroQuad(x, y)) else 0.0), None
    raise DomainError(f"unknown scan kind {kind!r}")


def _row(args):
    kind, y, xs, tol = args
    return [evaluate(kind, float(x), float(y), tol) for x in xs]


def run_grid(kind: str, cfg: ScanConfig, jobs: int = 1, tol: float = 1e-12):
    """Values on the grid, as an ``ny x nx`` list of ``(value, status)`` rows.

    Rows (fixed y) are farmed out to `jobs` worker processes; results are
    reassembled in grid order.
    """
    if kind not in KINDS:
        raise DomainError(f"unknown scan kind {kind!r}")
    xs = [float(x) for x in cfg.xs]
    tasks = [(kind, float(y), xs, tol) for y in cfg.ys]
    if jobs <= 1:
        return [_row(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_row, tasks))


def best_cell(rows):
    """``(i, j, value)`` of the largest value, scanning y-major."""
    best = (0, 0, -math.inf)
    for i, row in enumerate(rows):
        for j, (v, _) in enumerate(row):
            if v > best[2]:
                best = (i, j, v)
    return best


def refine_best(kind: str, cfg: ScanConfig, rows, tol: float = 1e-12):
    """One level of 10x finer sampling around the best cell.

    Returns ``(x, y, value)`` of the best point on the local subgrid, which
    spans one coarse cell either side of the best cell.
    """
    i, j, v = best_cell(rows)
    xs, ys = cfg.xs, cfg.ys
    dx = (cfg.x_max - cfg.x_min) / (cfg.nx - 1)
    dy = (cfg.y_max - cfg.y_min) / (cfg.ny - 1)
    best = (float(xs[j]), float(ys[i]), v)
    for y in np.linspace(ys[i] - dy, ys[i] + dy, 21):
        for x in np.linspace(xs[j] - dx, xs[j] + dx, 21):
            x = min(max(x, cfg.x_min), cfg.x_max)
            y = min(max(y, cfg.y_min), cfg.y_max)
            val, _ = evaluate(kind, float(x), float(y), tol)
            if val > best[2]:
                best = (float(x), float(y), val)
    return best


def fmt(x: float) -> str:
    return "%.17g" % x


def render(kind: str, cfg: ScanConfig, rows) -> str:
    """Serialize a finished grid; y outer, x inner."""
    status = kind in WITH_STATUS
    out = []
    if cfg.format == "csv":
        out.append("x,y,value,status" if status else "x,y,value")
    for y, row in zip(cfg.ys, rows):
        for x, (v, st) in zip(cfg.xs, row):
            if cfg.format == "csv":
                fields = [fmt(x), fmt(y), fmt(v)] + ([st] if status else [])
                out.append(",".join(fields))
            else:
                rec = {"x": float(x), "y": float(y), "value": float(v)}
                if status:
                    rec["status"] = st
                out.append(json.dumps(rec))
    return "\n".join(out) + "\n"


def nr_boundary_records(samples: int):
    """Boundary of W(V): `samples` points on each curved branch, then the
    two ends of the vertical segment."""
    if samples < 16:
        raise DomainError("need at least 16 samples")
    ts = np.linspace(0.0, TWO_PI, samples)
    recs = []
    for branch in (Branch.UPPER, Branch.LOWER):
        for t in ts:
            z = boundary_point(float(t), branch)
            recs.append((float(t), branch.value, z.real, z.imag))
    for t in (0.0, TWO_PI):
        z = boundary_point(t, Branch.SEGMENT)
        recs.append((t, Branch.SEGMENT.value, z.real, z.imag))
    return recs


def render_boundary(recs, format: str = "csv") -> str:
    out = []
    if format == "csv":
        out.append("t,branch,re,im")
        out += [f"{fmt(t)},{b},{fmt(re)},{fmt(im)}" for t, b, re, im in recs]
    else:
        out += [json.dumps({"t": t, "branch": b, "re": re, "im": im}) for t, b, re, im in recs]
    return "\n".join(out) + "\n"


def gnuplot_script(kind: str, data_path: str, cfg: ScanConfig) -> str:
    """A plot script for a CSV scan (contour lines over a colour map)."""
    labels = {
        "linear-mu": ("Re mu", "Im mu", "||V + mu I||"),
        "affine-nu": ("Re nu", "Im nu", "||I + nu V||"),
        "quad-sigma-tau": ("sigma", "tau", "||V^2 + sigma V + tau I||"),
        "monic-xi-eta": ("xi", "eta", "||I + xi V + eta V^2||"),
        "crouzeix-sigma-tau": ("sigma", "tau", "ratio"),
        "crouzeix-roots": ("x1", "x2", "ratio"),
        "crouzeix-conj": ("a", "b", "ratio"),
        "flat-region": ("xi", "eta", "inside"),
    }
    xl, yl, title = labels[kind]
    return "\n".join(
        [
            "set datafile separator ','",
            f"set title '{title}'",
            f"set xlabel '{xl}'",
            f"set ylabel '{yl}'",
            f"set xrange [{cfg.x_min}:{cfg.x_max}]",
            f"set yrange [{cfg.y_min}:{cfg.y_max}]",
            f"set dgrid3d {cfg.ny},{cfg.nx}",
            "set view map",
            "set contour base",
            "set cntrparam levels 20",
            "unset surface",
            "set pm3d at b",
            f"splot '{data_path}' every ::1 using 1:2:3 with lines notitle",
            "",
        ]
    )


def oracle_coefficients(kind: str, x: float, y: float):
    """``(c0, c1, c2)`` of the operator whose norm a cell reports, or None
    when the cell value is not a plain operator norm."""
    if kind == "linear-mu":
        return complex(x, y), 1.0, 0.0
    if kind == "affine-nu":
        return 1.0, complex(x, y), 0.0
    if kind == "quad-sigma-tau":
        return y, x, 1.0
    if kind == "monic-xi-eta":
        return 1.0, x, y
    return None


def spot_check(kind: str, cfg: ScanConfig, rows, n: int = 4000, count: int = 25,
               tol: float = 5e-3, seed: int = 0):
    """Compare up to `count` random cells with the discretization oracle.

    For Crouzeix kinds the norm behind the ratio is checked. Returns a list of
    ``(x, y, analytic, oracle, ok)``.
    """
    cells = [(i, j) for i in range(cfg.ny) for j in range(cfg.nx)]
    picks = random.Random(seed).sample(cells, min(count, len(cells)))
    out = []
    for i, j in sorted(picks):
        x, y = float(cfg.xs[j]), float(cfg.ys[i])
        if kind in CROUZEIX_KINDS:
            p = crouzeix_poly(kind, x, y)
            analytic = norm_quadratic(p).norm
            coeffs = (p.tau, p.sigma, 1.0)
        else:
            coeffs = oracle_coefficients(kind, x, y)
            if coeffs is None:
                continue
            analytic = rows[i][j][0]
        check = oracle.oracle_norm(*coeffs, n=n)
        out.append((x, y, analytic, check, abs(analytic - check) <= tol))
    return out

"""Command-line front end (``vnl``)."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import oracle, scans, verify
from .errors import DomainError, VolterraError
from .linear import norm_affine, norm_linear
from .numrange import RootKind, crouzeix_ratio, roots_to_coeffs
from .quadratic import (
    MonicAtZeroQuad,
    RealQuadPoly,
    flat_region_contains,
    monic_norm_result,
    norm_quadratic,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class IOFailure(Exception):
    pass


def finite(text):
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def _common(p):
    p.add_argument("--out", default="-", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "ndjson"), default="csv")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--tol", type=finite, default=1e-12, help="root-solver tolerance")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vnl",
        description="Operator norms of polynomials of the Volterra operator.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("linear-norm", "||V + mu I||"), ("affine-norm", "||I + nu V||")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--re", type=finite, required=True)
        p.add_argument("--im", type=finite, default=0.0)
        p.add_argument("--verify", type=int, metavar="N", help="also run the oracle at size N")
        _common(p)

    p = sub.add_parser("quadratic-norm", help="||V^2 + sigma V + tau I||")
    p.add_argument("--sigma", type=finite, required=True)
    p.add_argument("--tau", type=finite, required=True)
    p.add_argument("--verify", type=int, metavar="N")
    _common(p)

    p = sub.add_parser("monic-norm", help="||I + xi V + eta V^2||")
    p.add_argument("--xi", type=finite, required=True)
    p.add_argument("--eta", type=finite, required=True)
    p.add_argument("--verify", type=int, metavar="N")
    _common(p)

    p = sub.add_parser("crouzeix", help="||p(V)|| / max_W |p| for p(z) = z^2 + sigma z + tau")
    p.add_argument("--sigma", type=finite)
    p.add_argument("--tau", type=finite)
    p.add_argument("--roots", type=finite, nargs=2, metavar=("X1", "X2"))
    p.add_argument("--conj", type=finite, nargs=2, metavar=("A", "B"))
    _common(p)

    p = sub.add_parser("scan", help="evaluate a map on a grid and write it out")
    p.add_argument("kind", choices=scans.KINDS)
    p.add_argument("--x-min", type=finite)
    p.add_argument("--x-max", type=finite)
    p.add_argument("--y-min", type=finite)
    p.add_argument("--y-max", type=finite)
    p.add_argument("--nx", type=int, default=200)
    p.add_argument("--ny", type=int, default=200)
    p.add_argument("--gnuplot", action="store_true", help="also write OUT.gp")
    p.add_argument("--verify", type=int, metavar="N", nargs="?", const=4000,
                   help="spot-check up to 25 cells against the oracle at size N")
    p.add_argument("--no-refine", action="store_true",
                   help="skip the finer local search around the best Crouzeix cell")
    _common(p)

    p = sub.add_parser("nr-boundary", help="sample the boundary of W(V)")
    p.add_argument("--samples", type=int, default=1024)
    _common(p)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("--suite", choices=sorted(verify.SUITES), required=True)
    p.add_argument("--n", type=int, default=4000, help="oracle grid size")
    _common(p)
    return parser


def _check_writable(path):
    if path == "-":
        return
    parent = os.path.dirname(os.path.abspath(path)) or "."
    if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
        raise IOFailure(f"cannot write to {path}")
    if os.path.isdir(path) or (os.path.exists(path) and not os.access(path, os.W_OK)):
        raise IOFailure(f"cannot write to {path}")


def _emit(text, path):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOFailure(str(exc)) from exc


def _emit_json(report, path):
    _emit(json.dumps(report, indent=2) + "\n", path)


def _with_oracle(report, coeffs, n):
    value = oracle.oracle_norm(*coeffs, n=n)
    report["oracle_n"] = n
    report["oracle_norm"] = value
    report["abs_diff"] = abs(report["norm"] - value)
    return report


def cmd_linear_norm(args):
    mu = complex(args.re, args.im)
    sol = norm_linear(mu)
    report = {"mu": {"re": mu.real, "im": mu.imag}, "norm": sol.norm, "rho": sol.rho,
              "phi": sol.phi, "status": "RootFound"}
    if args.verify:
        _with_oracle(report, (mu, 1.0, 0.0), args.verify)
    _emit_json(report, args.out)
    return EXIT_OK


def cmd_affine_norm(args):
    nu = complex(args.re, args.im)
    report = {"nu": {"re": nu.real, "im": nu.imag}, "norm": norm_affine(nu)}
    if nu != 0:
        sol = norm_linear(1 / nu)
        report.update(rho=sol.rho, phi=sol.phi, status="RootFound")
    else:
        report["status"] = "ClosedForm"
    if args.verify:
        _with_oracle(report, (1.0, nu, 0.0), args.verify)
    _emit_json(report, args.out)
    return EXIT_OK


def _norm_report(res):
    return {"norm": res.norm, "status": res.status.value, "delta_star": res.delta_star,
            "roots_found": res.roots_found}


def cmd_quadratic_norm(args):
    p = RealQuadPoly(args.sigma, args.tau)
    report = {"sigma": p.sigma, "tau": p.tau, **_norm_report(norm_quadratic(p, tol=args.tol))}
    if args.verify:
        _with_oracle(report, (p.tau, p.sigma, 1.0), args.verify)
    _emit_json(report, args.out)
    return EXIT_OK


def cmd_monic_norm(args):
    q = MonicAtZeroQuad(args.xi, args.eta)
    report = {"xi": q.xi, "eta": q.eta, **_norm_report(monic_norm_result(q, tol=args.tol)),
              "flat_region": flat_region_contains(q)}
    if args.verify:
        _with_oracle(report, (1.0, q.xi, q.eta), args.verify)
    _emit_json(report, args.out)
    return EXIT_OK


def cmd_crouzeix(args, parser):
    groups = {
        "sigma-tau": args.sigma is not None or args.tau is not None,
        "roots": args.roots is not None,
        "conj": args.conj is not None,
    }
    chosen = [g for g, present in groups.items() if present]
    if len(chosen) != 1:
        parser.error("give exactly one of --sigma/--tau, --roots, --conj")
    if chosen == ["sigma-tau"]:
        if args.sigma is None or args.tau is None:
            parser.error("--sigma and --tau go together")
        p, inputs = RealQuadPoly(args.sigma, args.tau), {"sigma": args.sigma, "tau": args.tau}
    elif chosen == ["roots"]:
        p = roots_to_coeffs(RootKind.REAL_PAIR, *args.roots)
        inputs = {"x1": args.roots[0], "x2": args.roots[1]}
    else:
        p = roots_to_coeffs(RootKind.CONJUGATE_PAIR, *args.conj)
        inputs = {"a": args.conj[0], "b": args.conj[1]}
    rep = crouzeix_ratio(p, tol=args.tol)
    report = {
        "parametrization": chosen[0],
        "inputs": inputs,
        "sigma": p.sigma,
        "tau": p.tau,
        "norm": rep.norm,
        "max_on_W": rep.max_on_W,
        "ratio": rep.ratio,
        "argmax": {"re": rep.argmax_z.real, "im": rep.argmax_z.imag},
        "status": rep.status,
    }
    _emit_json(report, args.out)
    return EXIT_OK


def cmd_scan(args):
    box = list(scans.DEFAULT_BOXES[args.kind])
    for k, name in enumerate(("x_min", "x_max", "y_min", "y_max")):
        if getattr(args, name) is not None:
            box[k] = getattr(args, name)
    cfg = scans.ScanConfig(*box, args.nx, args.ny, args.out, args.format)
    if args.gnuplot and (args.out == "-" or args.format != "csv"):
        raise DomainError("--gnuplot needs --out PATH and csv format")
    _check_writable(args.out)
    rows = scans.run_grid(args.kind, cfg, jobs=args.jobs, tol=args.tol)
    text = scans.render(args.kind, cfg, rows)

    status = EXIT_OK
    notes = []
    if args.kind in scans.CROUZEIX_KINDS:
        i, j, v = scans.best_cell(rows)
        notes.append(f"best cell: x={cfg.xs[j]:.6g} y={cfg.ys[i]:.6g} ratio={v:.6g}")
        if not args.no_refine:
            x, y, r = scans.refine_best(args.kind, cfg, rows, tol=args.tol)
            notes.append(f"refined:   x={x:.6g} y={y:.6g} ratio={r:.6g}")
    if args.verify:
        checks = scans.spot_check(args.kind, cfg, rows, n=args.verify)
        for x, y, a, o, ok in checks:
            notes.append(f"verify x={x:.6g} y={y:.6g} analytic={a:.10g} oracle={o:.10g} "
                         f"{'ok' if ok else 'FAIL'}")
        if not all(c[-1] for c in checks):
            status = EXIT_VERIFY

    _emit(text, args.out)
    if args.gnuplot:
        _emit(scans.gnuplot_script(args.kind, os.path.basename(args.out), cfg), args.out + ".gp")
    for line in notes:
        print(line, file=sys.stderr)
    return status


def cmd_nr_boundary(args):
    recs = scans.nr_boundary_records(args.samples)
    _check_writable(args.out)
    _emit(scans.render_boundary(recs, args.format), args.out)
    return EXIT_OK


def cmd_verify(args):
    suite = verify.SUITES[args.suite]
    checks = suite(n=args.n) if args.suite == "oracle" else suite()
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: got {c.value:.12g}, "
             f"expected {c.expected:.12g} (|err| {c.error:.3g} <= {c.tol:g})" for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "linear-norm": cmd_linear_norm,
        "affine-norm": cmd_affine_norm,
        "quadratic-norm": cmd_quadratic_norm,
        "monic-norm": cmd_monic_norm,
        "scan": cmd_scan,
        "nr-boundary": cmd_nr_boundary,
        "verify": cmd_verify,
    }
    try:
        if args.command == "crouzeix":
            return cmd_crouzeix(args, parser)
        return handlers[args.command](args)
    except IOFailure as exc:
        print(f"vnl: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"vnl: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VolterraError as exc:
        print(f"vnl: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 2 usage/validation error, 3 precondition violation
(e.g. the enumeration cap), 4 I/O error.  All numeric output uses 9
significant digits so golden files are stable across platforms; files are
written to a temp sibling and renamed, so failed runs leave nothing behind.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import bounds, ensemble, gf2, graph, localcode, tanner
from .errors import PreconditionError, ValidationError

EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4


def fmt(x: float) -> str:
    """Locale-independent, 9 significant digits."""
    return f"{x:.9g}"


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=target.name)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        write_atomic(path, text)


# ---------------------------------------------------------------------------
# bounds

_TABLE_RATES = [round(0.1 * i, 1) for i in range(1, 10)]


def cmd_bounds_table(args: argparse.Namespace) -> int:
    lines = ["R\tzyablov\tbb\tria"]
    for rate in _TABLE_RATES:
        z = bounds.zyablov(rate).delta
        bb = bounds.bound_bb(rate).delta
        ria = bounds.bound_ria(rate).delta
        lines.append(f"{fmt(rate)}\t{fmt(z)}\t{fmt(bb)}\t{fmt(ria)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _curve_point(bound: str, rate: float, args: argparse.Namespace) -> bounds.BoundPoint:
    if bound == "gv":
        return bounds.BoundPoint(rate, bounds.gv_delta(rate))
    if bound == "zyablov":
        return bounds.zyablov(rate)
    if bound == "mult":
        return bounds.BoundPoint(rate, bounds.mult_bound(rate))
    if bound == "bb":
        return bounds.bound_bb(rate)
    if bound == "ria":
        return bounds.bound_ria(rate)
    if bound == "ensemble":
        return bounds.ensemble_distance(rate)
    if bound == "serial":
        if args.r0 is None:
            raise ValidationError("--bound serial requires --r0")
        return bounds.BoundPoint(rate, bounds.serial_distance(rate, args.r0), None, args.r0)
    if bound == "bz":
        point = bounds.bz_delta_at_rate(rate, args.m)
        return bounds.BoundPoint(rate, point.delta, None, point.r0_star)
    raise ValidationError(f"unknown bound {bound!r}")


def _rate_grid(r_min: float, r_max: float, step: float) -> list[float]:
    if not 0.0 < r_min < r_max < 1.0:
        raise ValidationError("need 0 < r-min < r-max < 1")
    if step <= 0.0:
        raise ValidationError("step must be positive")
    out = []
    k = 0
    while True:
        r = r_min + k * step
        if r > r_max + 1e-12:
            break
        out.append(min(r, r_max))
        k += 1
    return out


def cmd_bounds_curve(args: argparse.Namespace) -> int:
    rates = _rate_grid(args.r_min, args.r_max, args.step)
    points = [_curve_point(args.bound, r, args) for r in rates]
    if args.format == "csv":
        lines = ["rate,delta,beta_star,r0_star"]
        for p in points:
            beta = fmt(p.beta_star) if p.beta_star is not None else ""
            r0 = fmt(p.r0_star) if p.r0_star is not None else ""
            lines.append(f"{fmt(p.rate)},{fmt(p.delta)},{beta},{r0}")
        _emit(args.out, "\n".join(lines) + "\n")
    else:
        records = [
            {
                "rate": float(fmt(p.rate)),
                "delta": float(fmt(p.delta)),
                "beta_star": None if p.beta_star is None else float(fmt(p.beta_star)),
                "r0_star": None if p.r0_star is None else float(fmt(p.r0_star)),
            }
            for p in points
        ]
        _emit(args.out, json.dumps({"bound": args.bound, "points": records}, sort_keys=True) + "\n")
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    lines = ["omega,exponent"]
    grid = [i / (args.points + 1) for i in range(1, args.points + 1)]
    if args.variant == "ensemble":
        if args.rate is None:
            raise ValidationError("--variant ensemble requires --rate")
        r0 = (1.0 + args.rate) / 2.0
        for omega in grid:
            point = bounds.spectrum_exponent(r0, omega)
            lines.append(f"{fmt(omega)},{fmt(point.exponent)}")
    else:
        if args.code is None:
            raise ValidationError("--variant local requires --code")
        code = localcode.catalog_get(args.code)
        delta = args.delta_sym if args.delta_sym is not None else code.symbols
        coeffs = gf2.weight_distribution(list(code.generator), code.nbits)
        w_max = max(w for w, c in enumerate(coeffs) if c) / delta
        for omega in grid:
            if not 0.0 < omega < w_max:
                continue
            point = bounds.chernov_exponent(coeffs, delta, omega)
            lines.append(f"{fmt(omega)},{fmt(point.exponent)}")
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# graph

def cmd_graph_gen(args: argparse.Namespace) -> int:
    if args.delta1 is not None or args.delta2 is not None:
        if args.delta1 is None or args.delta2 is None:
            raise ValidationError("--delta1 and --delta2 must be given together")
        g: graph.BipartiteGraph | graph.ModifiedGraph = graph.split_modified(
            args.n, args.delta1, args.delta2, args.seed, args.simple
        )
    else:
        if args.delta is None:
            raise ValidationError("need --delta (or --delta1/--delta2)")
        g = graph.random_regular(args.n, args.delta, args.seed, args.simple)
    text = json.dumps(g.to_json_dict(), sort_keys=True) + "\n"
    _emit(args.out, text)
    return 0


def cmd_graph_spectral(args: argparse.Namespace) -> int:
    g = graph.load_graph(args.infile)
    if isinstance(g, graph.ModifiedGraph):
        g = g.subgraph1()
    data = graph.second_eigenvalue(g, args.tol)
    out = {
        "lambda2": float(fmt(data.lambda2)),
        "ramanujan": bool(data.is_ramanujan(g.delta)),
    }
    sys.stdout.write(json.dumps(out, sort_keys=True) + "\n")
    return 0


# ---------------------------------------------------------------------------
# code

def _load_spec(path: str) -> tanner.ExpanderCode:
    return tanner.code_from_json_dict(json.loads(Path(path).read_text()))


def cmd_code_build(args: argparse.Namespace) -> int:
    code = _load_spec(args.spec)
    report = code.to_json_dict()
    report["derived"] = {
        "n_bits": code.n_bits,
        "dimension": code.dimension,
        "rate": float(fmt(code.rate)),
        "rate_floor": float(fmt(code.rate_floor())),
    }
    _emit(args.out, json.dumps(report, sort_keys=True) + "\n")
    return 0


def cmd_code_distance(args: argparse.Namespace) -> int:
    code = _load_spec(args.spec)
    d = tanner.min_distance_bruteforce(code)
    out = {"n_bits": code.n_bits, "dimension": code.dimension, "distance": d}
    sys.stdout.write(json.dumps(out, sort_keys=True) + "\n")
    return 0


def cmd_code_check(args: argparse.Namespace) -> int:
    code = _load_spec(args.spec)
    word = gf2.BitVector.from01(args.word)
    local = tanner.is_codeword(code, word)
    parity = code.parity.annihilates(word)
    if local != parity:
        raise AssertionError("local membership disagrees with the parity matrix")
    sys.stdout.write(json.dumps({"codeword": local}, sort_keys=True) + "\n")
    return 0


def cmd_code_export_parity(args: argparse.Namespace) -> int:
    code = _load_spec(args.spec)
    _emit(args.out, code.parity.to_text())
    return 0


# ---------------------------------------------------------------------------
# ensemble

def cmd_ensemble_run(args: argparse.Namespace) -> int:
    r0 = Fraction(args.r0) if args.r0 is not None else None
    cfg = ensemble.EnsembleConfig(
        variant=args.variant,
        n=args.n,
        delta=args.delta,
        trials=args.trials,
        seed=args.seed,
        r0=r0,
        code_name=args.code,
    )
    report = ensemble.empirical_spectrum(cfg)
    _emit(args.out, report.to_json())
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="bound tables and curves")
    bsub = p_bounds.add_subparsers(dest="subcommand", required=True)
    p_table = bsub.add_parser("table", help="Zyablov / improved-bound table, TSV to stdout")
    p_table.set_defaults(func=cmd_bounds_table)
    p_curve = bsub.add_parser("curve", help="sample one bound over a rate grid")
    p_curve.add_argument("--bound", required=True,
                         choices=["gv", "zyablov", "mult", "bb", "ria", "ensemble", "serial", "bz"])
    p_curve.add_argument("--m", type=int, default=1, help="multilevel order for --bound bz")
    p_curve.add_argument("--r0", type=float, help="inner rate for --bound serial")
    p_curve.add_argument("--r-min", type=float, required=True)
    p_curve.add_argument("--r-max", type=float, required=True)
    p_curve.add_argument("--step", type=float, required=True)
    p_curve.add_argument("--out")
    p_curve.add_argument("--format", choices=["csv", "json"], default="csv")
    p_curve.set_defaults(func=cmd_bounds_curve)

    p_spec = sub.add_parser("spectrum", help="weight-spectrum exponent curve")
    p_spec.add_argument("--variant", required=True, choices=["ensemble", "local"])
    p_spec.add_argument("--rate", type=float, help="overall rate (ensemble variant)")
    p_spec.add_argument("--code", help="catalog name (local variant)")
    p_spec.add_argument("--delta-sym", type=int, dest="delta_sym",
                        help="symbols per vertex (defaults to the code length)")
    p_spec.add_argument("--points", type=int, default=200)
    p_spec.add_argument("--out")
    p_spec.set_defaults(func=cmd_spectrum)

    p_graph = sub.add_parser("graph", help="graph generation and spectra")
    gsub = p_graph.add_subparsers(dest="subcommand", required=True)
    p_gen = gsub.add_parser("gen", help="random regular bipartite graph JSON")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--delta", type=int)
    p_gen.add_argument("--delta1", type=int)
    p_gen.add_argument("--delta2", type=int)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--simple", action="store_true")
    p_gen.add_argument("--out")
    p_gen.set_defaults(func=cmd_graph_gen)
    p_sp = gsub.add_parser("spectral", help="second eigenvalue of a graph file")
    p_sp.add_argument("--in", dest="infile", required=True)
    p_sp.add_argument("--tol", type=float, default=1e-9)
    p_sp.set_defaults(func=cmd_graph_spectral)

    p_code = sub.add_parser("code", help="build and inspect expander codes")
    csub = p_code.add_subparsers(dest="subcommand", required=True)
    p_build = csub.add_parser("build", help="build from a spec file, report parameters")
    p_build.add_argument("--spec", required=True)
    p_build.add_argument("--out")
    p_build.set_defaults(func=cmd_code_build)
    p_dist = csub.add_parser("distance", help="exact minimum distance (dimension cap)")
    p_dist.add_argument("--spec", required=True)
    p_dist.set_defaults(func=cmd_code_distance)
    p_check = csub.add_parser("check", help="membership check of a 0/1 word")
    p_check.add_argument("--spec", required=True)
    p_check.add_argument("--word", required=True)
    p_check.set_defaults(func=cmd_code_check)
    p_exp = csub.add_parser("export-parity", help="write the parity matrix text format")
    p_exp.add_argument("--spec", required=True)
    p_exp.add_argument("--out")
    p_exp.set_defaults(func=cmd_code_export_parity)

    p_ens = sub.add_parser("ensemble", help="Monte-Carlo ensemble experiments")
    esub = p_ens.add_subparsers(dest="subcommand", required=True)
    p_run = esub.add_parser("run", help="empirical spectrum / distance report JSON")
    p_run.add_argument("--variant", required=True, choices=["random-local", "fixed-local"])
    p_run.add_argument("--n", type=int, required=True)
    p_run.add_argument("--delta", type=int, required=True)
    p_run.add_argument("--r0", help="local rate as a fraction, e.g. 4/7")
    p_run.add_argument("--code", help="catalog name for fixed-local")
    p_run.add_argument("--trials", type=int, default=100)
    p_run.add_argument("--seed", type=int, required=True)
    p_run.add_argument("--out")
    p_run.set_defaults(func=cmd_ensemble_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

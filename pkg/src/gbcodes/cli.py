"""Command-line interface.

Thin wrappers over the library: construction, family analysis, distance
bounds, girth, additive conversion, Monte Carlo sweeps, and threshold
extraction.  Every output file gets a sibling ``<file>.manifest.json``
recording the exact parameters; rerunning the same command reproduces
the output byte for byte (manifests carry the only timestamps).

Exit codes: 0 success, 2 invalid input, 3 computation limit exceeded,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

import numpy as np

from . import __version__
from .additive import AdditiveCyclicCode, duality_check, to_gb
from .code import GBCode, build_gb, export_alist, regularity
from .decode import BPConfig, parse_decoder_spec
from .distance import (
    ExtractionPattern,
    classical_cyclic_distance,
    effective_distance,
    gb_distance_bounds,
    min_distance_bruteforce,
    refine_case_a,
)
from .errors import GBCodeError, LimitExceededError
from .families import (
    cnot_permutation,
    logical_action,
    logical_reps_odd,
    make_even,
    make_odd,
)
from .graph import girth, girth4_predicate, girth6_predicate, tanner, to_dot
from .poly import CyclicPoly
from .sim import estimate_threshold, read_csv, sweep, write_csv

__all__ = ["main"]


class _Once(argparse.Action):
    """Reject a flag given more than once (silent overwrite hides typos)."""

    def __call__(self, parser, namespace, values, option_string=None):
        seen = getattr(namespace, "_seen_flags", set())
        if self.dest in seen:
            parser.error(f"duplicate option {option_string}")
        seen.add(self.dest)
        namespace._seen_flags = seen
        setattr(namespace, self.dest, values)


def _write_manifest(out_path: str, args: argparse.Namespace,
                    subcommand: str) -> None:
    params = {k: v for k, v in vars(args).items()
              if not k.startswith("_") and k != "func" and v is not None}
    manifest = {
        "tool": "gbcodes",
        "version": __version__,
        "subcommand": subcommand,
        "params": params,
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def load_code(spec: str) -> GBCode:
    """A code from a family shorthand (odd-d5 / even-d6) or a JSON
    descriptor file {n, a, b[, family][, d]}."""
    if spec.startswith("odd-d") or spec.startswith("even-d"):
        kind, _, dstr = spec.partition("-d")
        d = int(dstr)
        return make_odd(d) if kind == "odd" else make_even(d)
    with open(spec) as fh:
        return GBCode.from_descriptor(json.load(fh))


# ---------------------------------------------------------------------------
# subcommands

def _cmd_construct(args) -> int:
    a = CyclicPoly.parse(args.n, args.a)
    b = CyclicPoly.parse(args.n, args.b)
    code = build_gb(a, b)
    cols, rows = regularity(code)
    print(f"[[{code.num_qubits},{code.num_logicals}]]")
    print(f"column weights: {sorted(cols)}  row weights: {sorted(rows)}")
    if args.alist:
        mat = code.hx if args.matrix == "hx" else code.hz
        with open(args.alist, "w") as fh:
            fh.write(export_alist(mat))
        _write_manifest(args.alist, args, "construct")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(code.to_json() + "\n")
        _write_manifest(args.json, args, "construct")
    return 0


def _cmd_families(args) -> int:
    d = args.d
    if args.kind == "cnot":
        perm = cnot_permutation(d)
        if args.verify:
            logicals = logical_reps_odd(d)
            action = logical_action(logicals.code, perm, logicals)
            k = action.shape[0] // 2
            expect = np.zeros((2 * k, 2 * k), dtype=np.uint8)
            expect[:k, :k] = [[1, 1], [0, 1]]
            expect[k:, k:] = [[1, 0], [1, 1]]
            verified = bool((action == expect).all())
            print(json.dumps({"d": d, "permutation": perm.to_list(),
                              "cnot_verified": verified}))
            return 0 if verified else 4
        print(json.dumps({"d": d, "permutation": perm.to_list()}))
        return 0

    code = make_odd(d) if args.kind == "odd" else make_even(d)
    if args.verify_distance:
        dist = min_distance_bruteforce(code, code.distance + 1)
        if dist is None or dist != code.distance:
            print(f"distance verification failed: got {dist}, "
                  f"expected {code.distance}", file=sys.stderr)
            return 4
        print(f"[[{code.num_qubits},{code.num_logicals},{dist}]]")
    else:
        print(f"[[{code.num_qubits},{code.num_logicals},{code.distance}]]")
    cols, rows = regularity(code)
    print(f"n={code.n} a={code.a} b={code.b} "
          f"regular=({sorted(cols)},{sorted(rows)})")
    if args.logicals:
        logicals = logical_reps_odd(d)
        names = ("XI", "IX", "XX", "ZI", "IZ", "ZZ")
        vecs = logicals.x_ops + logicals.z_ops
        for name, vec in zip(names, vecs):
            left, right = code.unpack(vec)
            print(f"{name}: ({left}, {right})")
    if args.cnot and args.kind == "odd":
        print(f"cnot permutation: {cnot_permutation(d).to_list()}")
    return 0


def _cmd_distance(args) -> int:
    code = load_code(args.code)
    report: dict = {"n": code.n, "a": code.a.to_string(),
                    "b": code.b.to_string(), "k": code.k}
    exact = min_distance_bruteforce(code, args.wmax)
    if exact is not None:
        report["distance_exact"] = exact
    if args.bounds:
        f = CyclicPoly.parse(code.n, args.f)
        p = CyclicPoly.parse(code.n, args.p)
        bounds = gb_distance_bounds(f, p,
                                    decomposition_budget=args.budget)
        report["lower"] = bounds.lower
        report["upper"] = bounds.upper
        report["witnesses"] = bounds.witness_bitstrings()
        if args.refine:
            report["lower"] = refine_case_a(f, p, bounds)
    print(json.dumps(report, sort_keys=True))
    if exact is None:
        print(f"no logical of weight <= {args.wmax} found", file=sys.stderr)
        return 3
    return 0


def _cmd_effective_distance(args) -> int:
    code = load_code(args.code)
    pattern = ExtractionPattern.from_name(args.pattern)
    value = effective_distance(code, pattern, args.wmax)
    if value is None:
        print(f"effective distance exceeds {args.wmax}", file=sys.stderr)
        return 3
    print(json.dumps({"code": code.code_id, "pattern": pattern.name,
                      "effective": value}))
    return 0


def _cmd_girth(args) -> int:
    code = load_code(args.code)
    g = girth(tanner(code.hx))
    print("acyclic" if g is None else str(g))
    report = {"code": code.code_id, "girth": g}
    if args.predicates:
        report["girth4"] = girth4_predicate(code.a, code.b)
        report["girth6"] = girth6_predicate(code.a, code.b)
        print(json.dumps(report, sort_keys=True))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(tanner(code.hx)))
        _write_manifest(args.dot, args, "girth")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, sort_keys=True)
            fh.write("\n")
        _write_manifest(args.json, args, "girth")
    return 0


def _cmd_convert_additive(args) -> int:
    c = AdditiveCyclicCode.parse(args.n, args.gen)
    code = to_gb(c)
    print(f"[[{code.num_qubits},{code.num_logicals}]]")
    print(f"a={code.a} b={code.b} dim_F2={c.dimension}")
    if args.check_duality:
        ok = duality_check(c)
        print(f"duality: {'ok' if ok else 'FAILED'}")
        return 0 if ok else 4
    return 0


def _cmd_simulate(args) -> int:
    codes = [load_code(spec) for spec in args.codes]
    parse_decoder_spec(args.decoder)  # validate early
    grid = np.geomspace(args.pmin, args.pmax, args.points)
    threads = args.threads or os.cpu_count() or 1
    cfg = BPConfig(max_iterations=args.bp_iters)
    results = sweep(codes, args.decoder, grid, args.trials, args.seed,
                    threads=threads, bp_config=cfg)
    write_csv(results, args.out)
    _write_manifest(args.out, args, "simulate")
    print(f"wrote {len(results)} points to {args.out}")
    if args.plot:
        from .plotting import plot_sweep

        plot_sweep(results, args.plot,
                   title=f"{args.decoder}, {args.trials} trials/point")
        _write_manifest(args.plot, args, "simulate")
        print(f"wrote figure to {args.plot}")
    return 0


def _cmd_threshold(args) -> int:
    results = read_csv(args.results)
    est = estimate_threshold(results, bootstrap=args.bootstrap,
                             seed=args.seed)
    payload = {
        "threshold": est.value,
        "ci_lo": est.ci_lo,
        "ci_hi": est.ci_hi,
        "crossings": list(est.crossings),
        "pairs": [list(p) for p in est.pairs],
    }
    with open(args.out, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _write_manifest(args.out, args, "threshold")
    print(f"threshold ~= {est.value:.4f}  "
          f"(95% CI [{est.ci_lo:.4f}, {est.ci_hi:.4f}])")
    if args.plot:
        from .plotting import plot_threshold

        plot_threshold(results, est, args.plot)
        _write_manifest(args.plot, args, "threshold")
        print(f"wrote figure to {args.plot}")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbcodes",
        description="Generalized bicycle code construction, analysis, "
                    "and decoding simulation.")
    parser.add_argument("--version", action="version",
                        version=f"gbcodes {__version__}")
    parser.add_argument("--json-errors", action="store_true",
                        help="emit errors to stderr as JSON")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("construct", help="build a GB code from (n, a, b)")
    p.add_argument("--n", type=int, required=True, action=_Once)
    p.add_argument("--a", required=True, action=_Once)
    p.add_argument("--b", required=True, action=_Once)
    p.add_argument("--alist", action=_Once, help="write check matrix (alist)")
    p.add_argument("--matrix", choices=("hx", "hz"), default="hx")
    p.add_argument("--json", action=_Once, help="write code descriptor JSON")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("families", help="the two (2,4)-regular families")
    p.add_argument("kind", choices=("odd", "even", "cnot"))
    p.add_argument("--d", type=int, required=True, action=_Once)
    p.add_argument("--verify-distance", action="store_true")
    p.add_argument("--logicals", action="store_true")
    p.add_argument("--cnot", action="store_true")
    p.add_argument("--verify", action="store_true",
                   help="with kind=cnot: check the logical action is CNOT")
    p.set_defaults(func=_cmd_families)

    p = sub.add_parser("distance", help="distance oracle and bounds")
    p.add_argument("--code", required=True, action=_Once,
                   help="descriptor file or family tag like odd-d5")
    p.add_argument("--wmax", type=int, required=True, action=_Once)
    p.add_argument("--bounds", action="store_true")
    p.add_argument("--f", action=_Once)
    p.add_argument("--p", action=_Once)
    p.add_argument("--budget", type=int, default=3)
    p.add_argument("--refine", action="store_true")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("effective-distance",
                       help="fault distance under an extraction pattern")
    p.add_argument("--code", required=True, action=_Once)
    p.add_argument("--pattern", choices=("rl", "lr", "bad"), required=True)
    p.add_argument("--wmax", type=int, required=True, action=_Once)
    p.set_defaults(func=_cmd_effective_distance)

    p = sub.add_parser("girth", help="Tanner graph girth")
    p.add_argument("--code", required=True, action=_Once)
    p.add_argument("--predicates", action="store_true")
    p.add_argument("--dot", action=_Once, help="write DOT file")
    p.add_argument("--json", action=_Once, help="write girth report JSON")
    p.set_defaults(func=_cmd_girth)

    p = sub.add_parser("convert-additive",
                       help="additive cyclic code over F4 to GB code")
    p.add_argument("--n", type=int, required=True, action=_Once)
    p.add_argument("--gen", required=True, action=_Once,
                   help='generator like "w + x + x^3 + w*x^4"')
    p.add_argument("--check-duality", action="store_true")
    p.set_defaults(func=_cmd_convert_additive)

    p = sub.add_parser("simulate", help="Monte Carlo sweep to CSV")
    p.add_argument("--codes", nargs="+", required=True)
    p.add_argument("--decoder", required=True, action=_Once,
                   help='"bp-osd:ORDER" or "mwpm"')
    p.add_argument("--pmin", type=float, required=True, action=_Once)
    p.add_argument("--pmax", type=float, required=True, action=_Once)
    p.add_argument("--points", type=int, required=True, action=_Once)
    p.add_argument("--trials", type=int, required=True, action=_Once)
    p.add_argument("--seed", type=int, required=True, action=_Once)
    p.add_argument("--out", required=True, action=_Once)
    p.add_argument("--threads", type=int, default=None,
                   help="default: available parallelism")
    p.add_argument("--bp-iters", type=int, default=40)
    p.add_argument("--plot", action=_Once, help="render figure beside CSV")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("threshold", help="crossing estimate from sweep CSV")
    p.add_argument("--results", required=True, action=_Once)
    p.add_argument("--out", required=True, action=_Once)
    p.add_argument("--bootstrap", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", action=_Once, help="render figure beside JSON")
    p.set_defaults(func=_cmd_threshold)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LimitExceededError as exc:
        _report_error(args, exc, 3)
        return 3
    except (GBCodeError, ValueError, OSError, json.JSONDecodeError) as exc:
        _report_error(args, exc, 2)
        return 2
    except Exception as exc:  # invariant violation / unexpected state
        _report_error(args, exc, 4)
        return 4


def _report_error(args, exc: Exception, code: int) -> None:
    if getattr(args, "json_errors", False):
        print(json.dumps({"error": type(exc).__name__, "message": str(exc),
                          "exit_code": code}), file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())

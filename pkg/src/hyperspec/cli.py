"""Command-line interface: ``hyperspec {gen,spectral,oracle,hoffman,sweep}``.

Exit codes: 0 success, 1 a bound check came back ``violated``, 2 usage or
validation error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__, kernels
from .analysis import (
    VIOLATED,
    hoffman_check,
    ratio_sweep,
    theorem_applicable,
)
from .core import WeightedHypergraph
from .errors import HypergraphError
from .generators import (
    RANDOM_GENERATOR_ID,
    BlowupSpec,
    complete_rgraph,
    counterexample_4graph,
    kpartite_blowup,
    random_kpartite,
)
from .hgio import (
    certificate_to_dict,
    read_certificate,
    read_hypergraph,
    write_certificate,
    write_hypergraph,
)
from .oracle import grid_extrema
from .solver import SolverConfig, exact_graph_eigen, solve_max, solve_min


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_pair(text):
    try:
        lo, hi = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}")
    return lo, hi


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--quiet", action="store_true", help="suppress text output")

    solver_flags = _Parser(add_help=False)
    solver_flags.add_argument("--input", required=True, help="hypergraph file (text or JSON)")
    solver_flags.add_argument("--p", type=float, default=None, help="norm exponent (default r)")
    solver_flags.add_argument("--kind", choices=("max", "min", "both"), default="both")
    solver_flags.add_argument("--restarts", type=int, default=SolverConfig.restarts)
    solver_flags.add_argument("--max-iters", type=int, default=SolverConfig.max_iters)
    solver_flags.add_argument("--grad-tol", type=float, default=SolverConfig.grad_tol)
    solver_flags.add_argument("--workers", type=int, default=1)

    parser = _Parser(prog="hyperspec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hyperspec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="write a generated hypergraph")
    gsub = gen.add_subparsers(dest="family", required=True, parser_class=_Parser)
    for name, args in (("complete", ("k", "r")), ("blowup", ("k", "r", "t")),
                       ("counterexample", ("n",)), ("random", ("k", "r"))):
        g = gsub.add_parser(name, parents=[common])
        for a in args:
            g.add_argument(a, type=int)
        if name == "random":
            g.add_argument("--sizes", type=_int_list, required=True,
                           help="comma-separated part sizes")
            g.add_argument("--density", type=float, default=1.0)
            g.add_argument("--weights", type=_float_pair, default=(1.0, 1.0),
                           help="weight range 'lo,hi'")
        g.add_argument("-o", "--output", required=True)
        g.add_argument("--format", choices=("text", "json"), default=None)
        if name != "counterexample":
            g.add_argument("--cert-out", help="write the partition certificate here")

    sp = sub.add_parser("spectral", parents=[common, solver_flags],
                        help="estimate the max/min of the form on the unit sphere")
    sp.add_argument("--exact", action="store_true",
                    help="for r=2, p=2 also report exact adjacency eigenvalues")

    orc = sub.add_parser("oracle", parents=[common, solver_flags],
                         help="brute-force grid bounds for n <= 6")
    orc.add_argument("--resolution", type=int, default=24)

    hf = sub.add_parser("hoffman", parents=[common, solver_flags],
                        help="check the spectral ratio bound for a k-partite hypergraph")
    hf.add_argument("--cert", required=True, help="partition certificate JSON")
    hf.add_argument("--tol", type=float, default=None)

    sw = sub.add_parser("sweep", parents=[common], help="spectral ratio across a family")
    sw.add_argument("--family", choices=("counterexample",), default="counterexample")
    sw.add_argument("--n-list", type=_int_list, default=[2, 4, 8])
    sw.add_argument("--p", type=float, default=4.0)
    sw.add_argument("--restarts", type=int, default=SolverConfig.restarts)
    sw.add_argument("--max-iters", type=int, default=SolverConfig.max_iters)
    sw.add_argument("--grad-tol", type=float, default=SolverConfig.grad_tol)
    sw.add_argument("--workers", type=int, default=1)
    return parser


def _config(args, p=None):
    return SolverConfig(p=p, restarts=args.restarts, max_iters=args.max_iters,
                        grad_tol=args.grad_tol, seed=args.seed, workers=args.workers)


def _table(headers, rows):
    cells = [[str(h) for h in headers]] + [[_fmt(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells)


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


class _Out:
    def __init__(self, args):
        self.args = args

    def text(self, msg=""):
        if not (self.args.json or self.args.quiet):
            print(msg)

    def doc(self, data):
        if self.args.json:
            print(json.dumps(data, indent=1))


def _header(args, cfg=None, **extra):
    doc = {"command": args.command, "argv": args.argv, "seed": args.seed,
           "backend": kernels.BACKEND, "version": __version__}
    if cfg is not None:
        doc["config"] = cfg.to_dict()
    doc.update(extra)
    return doc


def cmd_gen(args, out):
    extra = None
    cert = None
    if args.family == "complete":
        h, cert = complete_rgraph(args.k, args.r)
    elif args.family == "blowup":
        h, cert = kpartite_blowup(BlowupSpec(args.k, args.r, args.t))
    elif args.family == "counterexample":
        h = counterexample_4graph(args.n)
    else:
        h, cert = random_kpartite(args.k, args.r, args.sizes, args.density,
                                  args.weights, seed=args.seed)
        extra = {"generator": {"id": RANDOM_GENERATOR_ID, "seed": args.seed,
                               "sizes": args.sizes, "density": args.density,
                               "weights": list(args.weights)}}
    write_hypergraph(h, args.output, fmt=args.format, extra=extra)
    cert_out = getattr(args, "cert_out", None)
    if cert_out and cert is not None:
        write_certificate(cert, cert_out)
    out.text(f"wrote {args.family} hypergraph n={h.n} r={h.r} m={h.m} to {args.output}")
    out.doc(_header(args, family=args.family, output=args.output, n=h.n, r=h.r, m=h.m,
                    certificate=certificate_to_dict(cert) if cert else None,
                    generator=(extra or {}).get("generator")))
    return 0


def _describe(h: WeightedHypergraph, path):
    return {"input": str(path), "n": h.n, "r": h.r, "m": h.m}


def cmd_spectral(args, out):
    h = read_hypergraph(args.input)
    cfg = _config(args, args.p)
    p = cfg.resolve_p(h)
    cfg = cfg.replace(p=p)
    estimates = {}
    if args.kind in ("max", "both"):
        estimates["max"] = solve_max(h, cfg)
    if args.kind in ("min", "both"):
        estimates["min"] = solve_min(h, cfg)
    applicable = theorem_applicable(h.r, p)
    out.text(f"n={h.n} r={h.r} m={h.m} p={p:g} theorem_applicable={applicable}")
    for kind, est in estimates.items():
        out.text(f"{kind:4s} {est.value:.12g}  (restarts {est.restarts_converged}/"
                 f"{est.restarts_run} converged, best #{est.best_restart_index})")
    doc = _header(args, cfg, **_describe(h, args.input), p=p, theorem_applicable=applicable,
                  estimates={k: dict(e.to_dict(), theorem_applicable=applicable)
                             for k, e in estimates.items()})
    if args.exact:
        if h.r != 2 or p != 2:
            raise UsageError("--exact needs r=2 and p=2")
        hi, lo = exact_graph_eigen(h)
        out.text(f"exact eigenvalues: max {hi.value:.12g} min {lo.value:.12g}")
        doc["exact"] = {"max": hi.to_dict(), "min": lo.to_dict()}
    out.doc(doc)
    return 0


def cmd_oracle(args, out):
    h = read_hypergraph(args.input)
    p = float(h.r if args.p is None else args.p)
    g = grid_extrema(h, p, args.resolution)
    out.text(f"n={h.n} r={h.r} m={h.m} p={p:g} resolution={args.resolution} "
             f"grid points={g.grid_points}")
    if args.kind in ("max", "both"):
        out.text(f"max >= {g.max_lb:.12g}")
    if args.kind in ("min", "both"):
        out.text(f"min <= {g.min_ub:.12g}")
    out.doc(_header(args, _config(args, p), **_describe(h, args.input), p=p,
                    resolution=args.resolution, oracle=g.to_dict()))
    return 0


def cmd_hoffman(args, out):
    h = read_hypergraph(args.input)
    cert = read_certificate(args.cert)
    cfg = _config(args, args.p)
    rep = hoffman_check(h, cert, args.p, cfg, args.tol)
    out.text(_table(["quantity", "value"], [
        ["p", rep.p], ["k", rep.k], ["r", rep.r],
        ["lambda_max(G)", rep.lam_max], ["lambda_min(G)", rep.lam_min],
        ["lambda_max(K_k^r)", rep.kkr_max], ["lambda_min(K_k^r)", rep.kkr_min],
        ["lhs", rep.lhs], ["rhs", rep.rhs], ["slack", rep.slack], ["tol", rep.tol],
        ["verdict", rep.verdict or "invalid"]]))
    out.doc(_header(args, cfg.replace(p=rep.p), **_describe(h, args.input),
                    cert=args.cert, report=rep.to_dict()))
    return 1 if rep.verdict == VIOLATED else 0


def cmd_sweep(args, out):
    cfg = _config(args, args.p)
    rows = ratio_sweep(args.n_list, args.p, cfg)
    out.text(f"family=counterexample p={args.p:g}")
    out.text(_table(
        ["n", "lambda_max", "lambda_max_solver", "lambda_min", "construction",
         "lower_bound", "ratio", "growth"],
        [[r.n, r.lam_max, r.lam_max_solver, r.lam_min, r.construction, r.lower_bound,
          r.ratio, r.growth] for r in rows]))
    out.doc(_header(args, cfg, family=args.family, n_list=args.n_list, p=args.p,
                    rows=[r.to_dict() for r in rows]))
    return 0


COMMANDS = {"gen": cmd_gen, "spectral": cmd_spectral, "oracle": cmd_oracle,
            "hoffman": cmd_hoffman, "sweep": cmd_sweep}


def run(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        args.argv = argv
        return COMMANDS[args.command](args, _Out(args))
    except UsageError as exc:
        print(f"hyperspec: error: {exc}", file=sys.stderr)
        return 2
    except (HypergraphError, OSError) as exc:
        print(f"hyperspec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())

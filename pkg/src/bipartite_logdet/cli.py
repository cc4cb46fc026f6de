"""Command-line entry point.

Subcommands: build, det, verify, sweep, bench. Machine-readable output
(key=value pairs or CSV) goes to stdout; human-oriented text to stderr.

Exit codes:
    0  success
    1  bad flags, invalid parameters, or method not applicable
    2  file could not be read, parsed or written
    3  matrix not positive definite
    4  a verification trial or benchmark agreement check failed
"""

import argparse
import statistics
import sys
import time

import numpy as np

from . import io as mmio
from .assembly import (build_dual_precision, build_primal_precision, build_star_dual,
                       build_star_primal)
from .closedform import (logdet_homogeneous_primal, logdet_star_primal, star_log_scale,
                         sweep_limit_curve)
from .densela import spd_logdet
from .duality import logdet_primal_via_dual, verify_ratio
from .errors import (IoFailure, MethodNotApplicable, NotPositiveDefinite, ParseError,
                     UnsupportedFormat, ValidationError)
from .gabp import gabp_star_logdet
from .params import (DENSE_LIMIT, HomogeneousParams, ModelParams, StarParams, as_homogeneous,
                     broadcast_model, broadcast_star, model_to_star, sample_random,
                     sample_random_star, star_to_model, validate)

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NOT_PD, EXIT_CHECK_FAILED = 0, 1, 2, 3, 4
AGREEMENT_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        vals = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return vals


def _add_model_flags(p):
    g = p.add_argument_group("model")
    g.add_argument("--model", choices=["bipartite", "star"], default="bipartite",
                   help="K_{m,n} (default) or the star K_{1,n}")
    g.add_argument("--config", help="key = value file; flags override its values")
    g.add_argument("--m", type=int, help="U-side size (bipartite only)")
    g.add_argument("--n", type=int, help="W-side size, or number of star leaves")
    g.add_argument("--s2", type=float, help="edge precision, broadcast to every edge")
    g.add_argument("--sigma2", type=float,
                   help="U-side precision (bipartite) or leaf precision (star)")
    g.add_argument("--tau2", type=float,
                   help="W-side precision (bipartite) or hub precision (star)")
    g.add_argument("--edge-prec-file", help="Matrix Market m x n general matrix of edge precisions")
    g.add_argument("--seed", type=int, help="sample precisions at random with this seed")
    g.add_argument("--range-lo", type=float, help="lower end of the sampling range (default 0.1)")
    g.add_argument("--range-hi", type=float, help="upper end of the sampling range (default 10)")


def _model_settings(args):
    cfg = mmio.read_config(args.config) if args.config else {}
    for key in ("m", "n", "s2", "sigma2", "tau2", "seed", "range_lo", "range_hi",
                "edge_prec_file"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _resolve_model(args):
    """Return (params, seed) where params is ModelParams or StarParams."""
    cfg = _model_settings(args)
    seed = cfg.get("seed")
    rng_range = (cfg.get("range_lo", 0.1), cfg.get("range_hi", 10.0))
    scalars = [cfg.get(k) for k in ("s2", "sigma2", "tau2")]
    edge = None
    if cfg.get("edge_prec_file"):
        edge = mmio.read_matrix_market_dense(cfg["edge_prec_file"])

    if args.model == "star":
        if cfg.get("m") not in (None, 1):
            raise UsageError("a star has m = 1")
        if edge is not None:
            if edge.shape[0] != 1:
                raise UsageError(f"star edge file must be 1 x n, got {edge.shape}")
            edge = edge[0]
        n = cfg.get("n", None if edge is None else len(edge))
        if n is None:
            raise UsageError("--n is required")
        if all(v is None for v in scalars) and edge is None and seed is not None:
            return sample_random_star(n, seed, rng_range), seed
        s2, sigma2, tau2 = scalars
        if sigma2 is None or tau2 is None or (s2 is None and edge is None):
            raise UsageError("star needs --s2 (or --edge-prec-file), --sigma2 and --tau2, or --seed")
        if edge is not None:
            if len(edge) != n:
                raise UsageError(f"edge file has {len(edge)} leaves, expected {n}")
            sp = StarParams(n, edge, [sigma2] * n, tau2)
            validate(sp)
            return sp, None
        return broadcast_star(n, s2, sigma2, tau2), None

    m, n = cfg.get("m"), cfg.get("n")
    if edge is not None:
        m = edge.shape[0] if m is None else m
        n = edge.shape[1] if n is None else n
        if edge.shape != (m, n):
            raise UsageError(f"edge file is {edge.shape[0]} x {edge.shape[1]}, expected {m} x {n}")
    if m is None or n is None:
        raise UsageError("--m and --n are required")
    if all(v is None for v in scalars) and edge is None and seed is not None:
        return sample_random(m, n, seed, rng_range), seed
    s2, sigma2, tau2 = scalars
    if sigma2 is None or tau2 is None or (s2 is None and edge is None):
        raise UsageError("need --s2 (or --edge-prec-file), --sigma2 and --tau2, or --seed")
    if edge is not None:
        p = ModelParams(m, n, edge, [sigma2] * m, [tau2] * n)
        validate(p)
        return p, None
    return broadcast_model(m, n, s2, sigma2, tau2), None


def _as_star(params):
    if isinstance(params, StarParams):
        return params
    if params.m == 1:
        return model_to_star(params)
    return None


def _model_kind(params):
    if isinstance(params, StarParams):
        return mmio.ModelKind.STAR
    if as_homogeneous(params) is not None:
        return mmio.ModelKind.HOMOGENEOUS
    return mmio.ModelKind.BIPARTITE


def cmd_build(args):
    params, _ = _resolve_model(args)
    if isinstance(params, StarParams):
        mat = build_star_primal(params) if args.which == "primal" else build_star_dual(params)
    else:
        mat = build_primal_precision(params) if args.which == "primal" else build_dual_precision(params)
    out = args.out or f"{args.which}.mtx"
    mmio.write_matrix_market(mat, out)
    stored = int(np.count_nonzero(np.tril(mat.data)))
    print(f"dim={mat.dim} nnz={stored} path={out}")
    return EXIT_OK


def _det(params, method):
    """Return (native LogDetResult, primal log-determinant)."""
    star = _as_star(params)
    if method == "dense":
        mat = build_star_primal(star) if isinstance(params, StarParams) else build_primal_precision(params)
        res = spd_logdet(mat)
        return res, res.logdet
    if method == "dual":
        res = logdet_primal_via_dual(star_to_model(params) if isinstance(params, StarParams) else params)
        return res, res.logdet
    if method == "closed":
        if star is not None:
            res = logdet_star_primal(star)
            return res, res.logdet
        h = as_homogeneous(params)
        if h is None:
            raise MethodNotApplicable("closed form needs a homogeneous K_{n,n} or a star")
        res = logdet_homogeneous_primal(h)
        return res, res.logdet
    if method == "gabp":
        if star is None:
            raise MethodNotApplicable("belief propagation needs a star (m = 1)")
        res = gabp_star_logdet(star)
        return res, res.logdet + star_log_scale(star)
    raise MethodNotApplicable(f"unknown method {method!r}")


def cmd_det(args):
    params, seed = _resolve_model(args)
    t0 = time.perf_counter_ns()
    res, primal = _det(params, args.method)
    wall = time.perf_counter_ns() - t0
    print(f"logdet={mmio.fmt(res.logdet)} method={res.method} wall_ns={wall} "
          f"primal_logdet={mmio.fmt(primal)}")
    if args.csv:
        m = 1 if isinstance(params, StarParams) else params.m
        mmio.append_result_csv(mmio.ResultRow(_model_kind(params), m, params.n, res.method,
                                              res.logdet, wall, seed), args.csv)
    return EXIT_OK


def cmd_verify(args):
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.tol < 0:
        raise UsageError("--tol must be >= 0")
    if args.m is None or args.n is None:
        raise UsageError("--m and --n are required")
    fixed = None
    if args.s2 is not None or args.sigma2 is not None or args.tau2 is not None:
        if None in (args.s2, args.sigma2, args.tau2):
            raise UsageError("fixed models need all of --s2, --sigma2, --tau2")
        fixed = broadcast_model(args.m, args.n, args.s2, args.sigma2, args.tau2)
    rows, passed = [], 0
    for k in range(args.trials):
        seed = None if fixed is not None else args.seed + k
        p = fixed if fixed is not None else sample_random(args.m, args.n, seed,
                                                          (args.range_lo, args.range_hi))
        report = verify_ratio(p, args.tol)
        passed += report.passed
        rows.append(mmio.verify_csv_row(args.m, args.n, seed, report))
    summary = f"passed={passed} trials={args.trials}"
    if args.out:
        mmio.write_verify_csv(rows, args.out)
        print(summary)
    else:
        print(",".join(mmio.VERIFY_HEADER))
        for r in rows:
            print(",".join(str(x) for x in r))
        print(summary, file=sys.stderr)
    return EXIT_OK if passed == args.trials else EXIT_CHECK_FAILED


def cmd_sweep(args):
    if (args.n_list is None) == (args.n_max is None):
        raise UsageError("give exactly one of --n-list, --n-max")
    n_values = args.n_list if args.n_list is not None else list(range(1, args.n_max + 1))
    if not n_values:
        raise UsageError("no n values")
    h0 = HomogeneousParams(n_values[0], args.s2, args.sigma2)
    validate(h0)
    try:
        rows = sweep_limit_curve(h0, n_values)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                mmio.write_sweep_csv(rows, fh)
        except OSError as exc:
            raise IoFailure(args.out, str(exc)) from exc
        print(f"rows={len(rows)} path={args.out}")
    else:
        mmio.write_sweep_csv(rows, sys.stdout)
    return EXIT_OK


def _median_ns(fn, repeats):
    times, value = [], None
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        value = fn()
        times.append(time.perf_counter_ns() - t0)
    return int(statistics.median(times)), value


def bench_one(n, repeats, s2=2.0, sigma2=1.0):
    """Median wall time of the dense and duality-reduced primal log-determinant for K_{n,n}.

    Both timings start from the parameters, so matrix assembly is included.
    """
    p = broadcast_model(n, n, s2, sigma2, sigma2)
    # warm-up keeps first-call import/allocation cost out of the medians
    spd_logdet(build_primal_precision(p))
    logdet_primal_via_dual(p)
    t_dense, dense = _median_ns(lambda: spd_logdet(build_primal_precision(p)), repeats)
    t_dual, dual = _median_ns(lambda: logdet_primal_via_dual(p), repeats)
    return {
        "n": n, "t_dense_ns": t_dense, "t_dual_ns": t_dual,
        "speedup": t_dense / max(t_dual, 1),
        "dense": dense, "dual": dual,
        "agree": abs(dense.logdet - dual.logdet) <= AGREEMENT_TOL * (1.0 + abs(dense.logdet)),
    }


def cmd_bench(args):
    if not args.n_list:
        raise UsageError("--n-list is empty")
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    for n in args.n_list:
        if n < 1 or n * n > DENSE_LIMIT:
            raise UsageError(f"n={n}: need 1 <= n and n^2 <= {DENSE_LIMIT}")
    ok = True
    print(f"{'n':>6} {'t_dense_ms':>12} {'t_dual_ms':>12} {'speedup':>10}", file=sys.stderr)
    for n in args.n_list:
        r = bench_one(n, args.repeats, args.s2, args.sigma2)
        ok &= r["agree"]
        print(f"n={n} t_dense_ns={r['t_dense_ns']} t_dual_ns={r['t_dual_ns']} "
              f"speedup={r['speedup']:.6g} logdet_dense={mmio.fmt(r['dense'].logdet)} "
              f"logdet_dual={mmio.fmt(r['dual'].logdet)} agree={str(r['agree']).lower()}")
        print(f"{n:>6} {r['t_dense_ns'] / 1e6:>12.4f} {r['t_dual_ns'] / 1e6:>12.4f} "
              f"{r['speedup']:>10.1f}", file=sys.stderr)
        if args.csv:
            for key, res in (("t_dense_ns", r["dense"]), ("t_dual_ns", r["dual"])):
                mmio.append_result_csv(mmio.ResultRow(mmio.ModelKind.HOMOGENEOUS, n, n, res.method,
                                                      res.logdet, r[key]), args.csv)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser():
    parser = _Parser(prog="bipartite-logdet",
                     description="Log-determinants of dual Gaussian models on complete bipartite graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="write a precision matrix as Matrix Market")
    _add_model_flags(p)
    p.add_argument("--which", choices=["primal", "dual"], default="primal")
    p.add_argument("--out", help="output path (default: <which>.mtx)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("det", help="compute a log-determinant")
    _add_model_flags(p)
    p.add_argument("--method", choices=["dense", "dual", "closed", "gabp"], default="dense")
    p.add_argument("--csv", help="append a result row to this CSV file")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("verify", help="check the determinant ratio on seeded random models")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="seed of trial 0; trial k uses seed + k")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--range-lo", type=float, default=0.1)
    p.add_argument("--range-hi", type=float, default=10.0)
    p.add_argument("--s2", type=float, help="use a fixed broadcast model instead of random ones")
    p.add_argument("--sigma2", type=float)
    p.add_argument("--tau2", type=float)
    p.add_argument("--out", help="write the per-trial CSV here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="closed-form log-determinant density over n")
    p.add_argument("--s2", type=float, default=2.0)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--n-list", type=_int_list)
    p.add_argument("--n-max", type=int)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="time dense vs duality-reduced log-determinants")
    p.add_argument("--n-list", type=_int_list, required=True)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--s2", type=float, default=2.0)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--csv", help="append result rows to this CSV file")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except (IoFailure, ParseError, UnsupportedFormat) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NotPositiveDefinite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PD
    except (UsageError, ValidationError, MethodNotApplicable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

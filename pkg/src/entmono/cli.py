"""Command-line front end.

Exit codes: 0 success, 1 property violation, 2 usage or input error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import equi, oracle, report, sampling
from .comparability import Relation, classify, concurrence_gap, epsilon_profile
from .errors import EntmonoError, InfeasibleTarget, NoOverlap, PropertyViolation
from .schmidt import NORM_TOL, make_schmidt, measures

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class OutputError(Exception):
    pass


def parse_vector(text: str) -> list[float]:
    """Comma-separated decimals, e.g. ``0.46,0.306,0.234``."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(float(tok))
        except ValueError:
            raise UsageError(f"cannot parse coefficient {tok!r} in {text!r}") from None
    return out


def _vector(text, args):
    try:
        return make_schmidt(parse_vector(text), normalize=args.normalize, tol=args.tol)
    except EntmonoError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc} (input {text!r})") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from None


def _vec_str(v):
    return "(" + ", ".join(report.fmt9(c) for c in v.coeffs) + ")"


def cmd_measures(args):
    rows = [(v, measures(v)) for v in (_vector(t, args) for t in args.vectors)]
    cols = ("rank", "E", "C", "C2", "N", "purity")
    print("  ".join(f"{c:<12}" for c in ("vector",) + cols).rstrip())
    for v, m in rows:
        vals = (str(m.effective_rank), report.fmt9(m.entropy), report.fmt9(m.concurrence),
                report.fmt9(m.concurrence_squared), report.fmt9(m.negativity),
                report.fmt9(m.purity))
        print("  ".join(f"{c:<12}" for c in (",".join(report.fmt(x) for x in v.coeffs),) + vals))
    if args.out:
        _write(args.out, report.measures_csv(rows))
    return EXIT_OK


def cmd_compare(args):
    a, b = _vector(args.a, args), _vector(args.b, args)
    ma, mb = measures(a), measures(b)
    res = classify(a, b, args.compare_tol)
    print(f"a = {_vec_str(a)}")
    print(f"b = {_vec_str(b)}")
    print(f"classification: {res.tag}")
    if res.witness:
        ka, kb = res.witness
        print(f"witness: prefix {ka} has S_a > S_b, prefix {kb} has S_a < S_b")
    print(f"dE  = E(a) - E(b)   = {report.fmt9(ma.entropy - mb.entropy)}")
    print(f"dC  = C(a) - C(b)   = {report.fmt9(ma.concurrence - mb.concurrence)}")
    print(f"dC2 = C2(a) - C2(b) = {report.fmt9(ma.concurrence_squared - mb.concurrence_squared)}")
    print(f"dN  = N(a) - N(b)   = {report.fmt9(ma.negativity - mb.negativity)}")
    if res.tag is not Relation.INCOMPARABLE:
        src, dst, label = (b, a, "b -> a") if res.tag is Relation.B_CONVERTS_TO_A else (a, b, "a -> b")
        prof = epsilon_profile(src, dst, args.compare_tol)
        gap = concurrence_gap(src, dst, args.compare_tol)
        direct = measures(src).concurrence_squared - measures(dst).concurrence_squared
        print(f"direction: {label}")
        print("epsilon: " + ", ".join(report.fmt9(e) for e in prof.eps))
        print(f"gap (closed form) = {report.fmt9(gap)}")
        print(f"gap (direct)      = {report.fmt9(direct)}")
        print(f"gap residual      = {abs(gap - direct):.3e}")
    return EXIT_OK


def cmd_search(args):
    try:
        cfg = sampling.SearchConfig(rank=args.rank, samples=args.samples, seed=args.seed,
                                    measure=args.measure, strict_margin=args.margin,
                                    perturb=args.perturb)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    hits = sampling.find_nonmonotonic_pairs(cfg, workers=args.workers)
    _write(args.out, report.search_csv(hits))
    summary = (f"hits={len(hits)} samples={cfg.samples} rank={cfg.rank} measure={cfg.measure} "
               f"seed={cfg.seed} margin={cfg.strict_margin:g} "
               f"perturb={cfg.perturb if cfg.perturb is not None else 'none'} "
               f"generator={sampling.GENERATOR}")
    print(summary, file=sys.stdout if args.out not in (None, "-") else sys.stderr)
    return EXIT_OK


def cmd_curve(args):
    targets = parse_vector(args.entropy)
    curves = {}
    for t in targets:
        try:
            curves[t] = equi.trace_curve(equi.CurveSpec(t, args.points))
        except (InfeasibleTarget, ValueError) as exc:
            raise UsageError(f"entropy {t!r}: {exc}") from None
    _write(args.out, report.curve_csv(curves))
    if args.svg:
        _write(args.svg, report.curve_svg(curves))
    return EXIT_OK


def cmd_crossing(args):
    try:
        q = equi.crossing_demo(args.low, args.high, points=args.points)
    except (NoOverlap, InfeasibleTarget, ValueError) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from None
    rows = []
    for name in "ABCD":
        v = getattr(q, name)
        m = measures(v)
        rows.append((v, m))
        print(f"{name}: {_vec_str(v)}  E={report.fmt9(m.entropy)}  C={report.fmt9(m.concurrence)}  "
              f"C2={report.fmt9(m.concurrence_squared)}  N={report.fmt9(m.negativity)}")
    print(f"(A, C): {classify(q.A, q.C).tag}  C(A) > C(C) while E(A) < E(C)")
    print(f"(B, D): {classify(q.B, q.D).tag}  C(D) > C(B) while E(D) > E(B)")
    if args.out:
        _write(args.out, report.measures_csv(rows))
    return EXIT_OK


def _oracle_spot_checks(rank, count, seed):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(0xC0DE,))))
    worst = 0.0
    for _ in range(count):
        k = int(rng.integers(1, min(rank, 4) + 1))
        v = sampling.sample_simplex(k, rng)
        dims = (int(rng.integers(k, 5)), int(rng.integers(k, 5)))
        s = oracle.embed_state(v, dims, rng)
        rho_a = oracle.reduce_A(s)
        m = measures(v)
        worst = max(worst,
                    abs(oracle.entropy_via_eigen(rho_a) - m.entropy),
                    abs(oracle.purity_via_trace(rho_a) - m.purity),
                    abs(oracle.concurrence_via_minors(s) - m.concurrence),
                    abs(oracle.negativity_via_pt(s) - m.negativity))
    return worst


def cmd_verify(args):
    ok = True
    try:
        rep = sampling.verify_monotone_on_comparable(args.rank, args.trials, args.seed)
    except PropertyViolation as exc:
        print(f"FAIL monotone-on-comparable: {exc}")
        if exc.pair is not None:
            print(f"  offending pair: a={_vec_str(exc.pair[0])} b={_vec_str(exc.pair[1])}")
        return EXIT_VIOLATION
    print(f"PASS monotone-on-comparable: rank={rep.rank} trials={rep.trials} "
          f"converts={rep.converts} equivalent={rep.equivalent} strict={rep.strict_checked} "
          f"violations=0")
    print(f"PASS concurrence-gap identity: max residual {rep.max_gap_residual:.3e} (bound 1e-10)")
    worst = _oracle_spot_checks(args.rank, args.oracle_checks, args.seed)
    if worst <= 1e-10:
        print(f"PASS oracle equivalence: {args.oracle_checks} states, max deviation {worst:.3e}")
    else:
        print(f"FAIL oracle equivalence: max deviation {worst:.3e} exceeds 1e-10")
        ok = False
    return EXIT_OK if ok else EXIT_VIOLATION


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _seed(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="entmono", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def vector_opts(sp):
        sp.add_argument("--normalize", action="store_true", help="rescale inputs to sum 1")
        sp.add_argument("--tol", type=float, default=NORM_TOL, help="normalisation tolerance")

    sp = sub.add_parser("measures", help="entanglement measures of Schmidt vectors")
    sp.add_argument("vectors", nargs="+", metavar="VECTOR")
    vector_opts(sp)
    sp.add_argument("--out", help="also write a CSV file")
    sp.set_defaults(func=cmd_measures)

    sp = sub.add_parser("compare", help="LOCC comparability of two states")
    sp.add_argument("a")
    sp.add_argument("b")
    vector_opts(sp)
    sp.add_argument("--compare-tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("search", help="random search for non-monotonic pairs")
    sp.add_argument("--rank", type=int, default=3)
    sp.add_argument("--samples", type=_positive_int, default=100_000)
    sp.add_argument("--seed", type=_seed, default=sampling.DEFAULT_SEED)
    sp.add_argument("--measure", choices=sampling.MEASURES, default="concurrence")
    sp.add_argument("--margin", type=float, default=sampling.DEFAULT_MARGIN)
    sp.add_argument("--perturb", type=float, default=None, metavar="DELTA")
    sp.add_argument("--workers", type=_positive_int, default=1)
    sp.add_argument("--out", help="CSV path (default stdout)")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("curve", help="trace rank-3 equi-entangled curves")
    sp.add_argument("--entropy", required=True, help="comma-separated entropies in e-bits")
    sp.add_argument("--points", type=_positive_int, default=200)
    sp.add_argument("--out", help="CSV path (default stdout)")
    sp.add_argument("--svg", help="optional SVG plot path")
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("crossing", help="A/B/C/D crossing quadruple between two curves")
    sp.add_argument("--low", type=float, default=1.545)
    sp.add_argument("--high", type=float, default=1.550)
    sp.add_argument("--points", type=_positive_int, default=400)
    sp.add_argument("--out", help="CSV of the four states")
    sp.set_defaults(func=cmd_crossing)

    sp = sub.add_parser("verify", help="property checks on comparable pairs")
    sp.add_argument("--rank", type=int, default=4)
    sp.add_argument("--trials", type=_positive_int, default=10_000)
    sp.add_argument("--seed", type=_seed, default=sampling.DEFAULT_SEED)
    sp.add_argument("--oracle-checks", type=_positive_int, default=50)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "curve" and args.points < 2:
        print("error: --points must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    if args.command in ("search", "verify") and args.rank < 2:
        print("error: --rank must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PropertyViolation as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success/pass, 1 verification failed, 2 usage or input error,
3 infeasible construction.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import bounds, gf2, kernels
from .code import CodeReport, LinearCode
from .constructions import BuiltCode, build, product_parameters
from .errors import (
    CapExceeded,
    EnumerationInfeasible,
    InfeasibleConstruction,
    LrcError,
    MatrixFormatError,
    PatternSpaceTooLarge,
    SpecParseError,
)
from .recovery import check_parallel, spot_check_certificates, verify_sequential, verify_sequential_sampled

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt_fraction(q: Fraction, places: int = 4) -> str:
    """Exact decimal rendering of a rational, rounded half-to-even."""
    r = round(Fraction(q), places)
    sign = "-" if r < 0 else ""
    r = abs(r)
    whole = int(r)
    frac = int((r - whole) * 10**places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def load_input(text: str) -> tuple[LinearCode, BuiltCode | None]:
    """A pchk-v1 path, or a construction spec string."""
    if os.path.exists(text):
        return LinearCode(gf2.read_pchk(text)), None
    built = build(text)
    return built.code, built


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands --------------------------------------------------------------


def cmd_construct(args) -> int:
    built = build(args.spec)
    text = gf2.format_pchk(built.H)
    c = built.claimed
    report = CodeReport.for_code(built.code, d=built.expected.d, claimed=(c.r, c.t, c.mode), spec=str(built.spec))
    if args.out:
        _emit(text, args.out)
        print(report.to_json())
    else:
        sys.stdout.write(text)
        print(report.to_json(), file=sys.stderr)
    return EXIT_OK


def cmd_inspect(args) -> int:
    C, built = load_input(args.input)
    d = gf2.min_distance(C, cap=args.distance_cap, workers=args.workers) if args.distance else None
    claimed = (built.claimed.r, built.claimed.t, built.claimed.mode) if built else None
    report = CodeReport.for_code(C, d=d, claimed=claimed, spec=str(built.spec) if built else args.input)
    print(report.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    C, built = load_input(args.input)
    r, t, mode = args.r, args.t, args.mode
    if built is not None:
        r = built.claimed.r if r is None else r
        t = built.claimed.t if t is None else t
        mode = mode or ("par" if built.claimed.mode == "parallel" else "seq")
    if r is None or t is None:
        raise UsageError("--r and --t are required for matrix-file input")
    mode = mode or "seq"
    spec = str(built.spec) if built else args.input
    if mode == "par":
        report = check_parallel(C, r, t, spec=spec)
    elif args.samples:
        report = verify_sequential_sampled(C, r, t, args.samples, args.seed, spec=spec)
    else:
        report = verify_sequential(C, r, t, pattern_cap=args.pattern_cap, workers=args.workers, spec=spec)
    if mode == "seq" and args.spot_check and report.passed and t > 0:
        spot_check_certificates(C, r, t, args.spot_check, seed=args.seed)
    print(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_bounds(args) -> int:
    if args.rate and args.t is None:
        raise UsageError("--rate needs --t")
    if args.parallel and args.t is None:
        raise UsageError("--parallel needs --t")
    rep = bounds.bounds_report(args.r, k=args.k, t=args.t)
    data = rep.to_dict()
    if args.rate:
        cap = bounds.availability_rate_cap(args.r, args.t)
        data = {"r": args.r, "t": args.t, "rate_cap_availability": rep.rate_cap_availability,
                "rate_cap_availability_4dp": fmt_fraction(cap, 4)}
    elif args.parallel:
        data = {"r": args.r, "t": args.t, "n_min_parallel": rep.n_min_parallel,
                "m_min_parallel": rep.m_min_parallel, "parallel_exact": rep.parallel_exact}
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        for key, val in data.items():
            if val is not None:
                print(f"{key}: {val}")
    return EXIT_OK


def table1_rows():
    ts = (4, 5, 6, 7)
    caps = [fmt_fraction(bounds.availability_rate_cap(2, t)) for t in ts]
    rates = []
    for t in ts:
        code = build(f"r2chain:t={t},k=16").code
        rates.append(fmt_fraction(code.rate))
    return ["series", *ts], [["availability_bound", *caps], ["r2chain_rate", *rates]]


def compare_csv(kind: str, args) -> str:
    if kind == "table1":
        header, rows = table1_rows()
        return _csv(header, rows)
    if kind == "t3bounds":
        rows, _ = bounds.compare_t3_bounds(args.r_max, Fraction(args.k_exp))
        return _csv(["r", "k", "song", "new", "delta"], [[x.r, x.k, x.song, x.new, x.delta] for x in rows])
    if kind == "pg_rate":
        rows = []
        for s in range(2, args.s_max + 1):
            C = build(f"pg:s={s}").code
            Q = 1 << s
            rows.append([s, C.n, C.k, fmt_fraction(C.rate, 6),
                         fmt_fraction(bounds.availability_rate_cap(Q, Q + 1), 6)])
        return _csv(["s", "n", "k", "rate", "availability_bound"], rows)
    if kind == "sts_rate":
        rows = []
        for s in range(3, args.s_max + 1):
            C = build(f"sts:s={s}").code
            r = (1 << (s - 1)) - 2
            rows.append([s, C.n, C.k, fmt_fraction(C.rate, 6),
                         fmt_fraction(bounds.availability_rate_cap(r, 3), 6)])
        return _csv(["s", "n", "k", "rate", "availability_bound"], rows)
    if kind == "fig2_gap":
        rows = []
        for beta in range(1, args.beta_max + 1):
            n = beta**3 + 3 * beta
            lb = bounds.new_t3_bound(beta**3, beta**2).n
            rows.append([beta, n, lb, n - lb])
        return _csv(["beta", "n", "bound", "gap"], rows)
    if kind == "product_suboptimality":
        chain = build("r2chain:t=7,k=16")
        simplex = build("simplex:m=3")
        n1, k1, q1 = product_parameters(chain, simplex, simplex, simplex)
        n2, k2, q2 = product_parameters(*([(3, 2)] * 9))
        return _csv(["code", "n", "k", "rate"], [["r2chain_t7_x_simplex3^3", n1, k1, fmt_fraction(q1, 9)],
                                                 ["spc3^9", n2, k2, fmt_fraction(q2, 9)]])
    raise UsageError(f"unknown comparison {kind!r}")


def cmd_compare(args) -> int:
    _emit(compare_csv(args.kind, args), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lrcodes", description=__doc__.splitlines()[0])
    p.add_argument("--backend", choices=["auto", "compiled", "python"], default="auto",
                   help="kernel implementation (default: compiled if built)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and write its parity-check matrix")
    c.add_argument("spec")
    c.add_argument("-o", "--out", help="pchk-v1 output path (default: matrix to stdout, report to stderr)")
    c.set_defaults(func=cmd_construct)

    i = sub.add_parser("inspect", help="report n, k, rate (and optionally d) of a code")
    i.add_argument("input", help="spec string or pchk-v1 path")
    i.add_argument("--distance", action="store_true", help="compute the minimum distance")
    i.add_argument("--distance-cap", type=int, default=gf2.MIN_DISTANCE_CAP)
    i.add_argument("--workers", type=int, default=None)
    i.set_defaults(func=cmd_inspect)

    v = sub.add_parser("verify", help="check (r,t) sequential or parallel recovery")
    v.add_argument("input", help="spec string or pchk-v1 path")
    v.add_argument("--r", type=int)
    v.add_argument("--t", type=int)
    v.add_argument("--mode", choices=["seq", "par"])
    v.add_argument("--samples", type=int, default=0, help="sampled mode: number of random patterns")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=None, help="default: available parallelism")
    v.add_argument("--pattern-cap", type=int, default=10**8)
    v.add_argument("--spot-check", type=int, default=0, help="replay this many random certificates")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="evaluate block-length and rate bounds")
    b.add_argument("--k", type=int)
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--t", type=int)
    b.add_argument("--rate", action="store_true", help="only the availability rate bound")
    b.add_argument("--parallel", action="store_true", help="only the parallel minimum length")
    b.add_argument("--format", choices=["text", "json"], default="text")
    b.set_defaults(func=cmd_bounds)

    m = sub.add_parser("compare", help="CSV tables: table1, t3bounds, pg_rate, sts_rate, fig2_gap, product_suboptimality")
    m.add_argument("kind", choices=["table1", "t3bounds", "pg_rate", "sts_rate", "fig2_gap", "product_suboptimality"])
    m.add_argument("--r-max", type=int, default=50)
    m.add_argument("--k-exp", default="9/5", help="k runs from r to floor(r^k_exp) - 1")
    m.add_argument("--beta-max", type=int, default=50)
    m.add_argument("--s-max", type=int, default=4)
    m.add_argument("--out")
    m.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    prev = kernels.active
    try:
        if args.backend != "auto":
            kernels.use(args.backend)
        return args.func(args)
    except InfeasibleConstruction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, SpecParseError, MatrixFormatError, PatternSpaceTooLarge,
            EnumerationInfeasible, CapExceeded, LrcError, ValueError, ImportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        kernels.active = prev


if __name__ == "__main__":
    sys.exit(main())

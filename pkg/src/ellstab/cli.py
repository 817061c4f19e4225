"""Command-line front end.

Every subcommand writes machine-readable rows to stdout and diagnostics to
stderr; identical arguments (and seed, where sampling is involved) produce
identical bytes.
"""

import argparse
import json
import sys
from fractions import Fraction
from math import isqrt

from . import class_numbers, galois_image, ingest, sieve_stats, stability, store
from .curves import CurveModel, enumerate_curves
from .errors import EllstabError
from .galois_image import FieldSpec
from .matgroup import count_trace_det, delta_density, sl2_order
from .primes import primes_up_to
from .traces import batch_trace_census, trace_table


def _fmt_frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def cmd_enumerate(args) -> int:
    if args.format == "json":
        for c in enumerate_curves(args.X):
            print(json.dumps({"A": c.A, "B": c.B}))
    else:
        print("A,B")
        for c in enumerate_curves(args.X):
            print(f"{c.A},{c.B}")
    return 0


def cmd_trace(args) -> int:
    cache = store.TraceCache(height_bound=args.X, prime_bound=args.prime_bound)
    for c in enumerate_curves(args.X):
        for rec in trace_table(c, args.prime_bound, args.ell):
            cache.put(c.A, c.B, rec.p, rec.a_p)
    if args.cache:
        store.save(cache, args.cache)
        print(f"saved {len(cache.entries)} records", file=sys.stderr)
    print("A,B,p,a_p")
    for (A, B, p), a in sorted(cache.entries.items()):
        print(f"{A},{B},{p},{a}")
    return 0


def cmd_census(args) -> int:
    print("p,a,census,deuring,match")
    ok = True
    for p in primes_up_to(args.prime_bound):
        if p < 5:
            continue
        for a, got, expected, match in class_numbers.census_vs_deuring(p):
            ok &= match
            print(f"{p},{a},{got},{expected},{int(match)}")
    return 0 if ok else 1


def cmd_hurwitz(args) -> int:
    print("p,d,t,S,main,normalized_error")
    for p, d, t, s, main, err in class_numbers.partial_sum_sweep(
        args.ell, args.prime_bound
    ):
        print(f"{p},{d},{t},{_fmt_frac(s)},{_fmt_frac(main)},{err:.6f}")
    return 0


def cmd_delta(args) -> int:
    ell = args.ell
    print("ell,t,d,delta,count,sl2_order,match")
    ok = True
    for d in range(1, ell):
        for t in range(ell):
            delta = delta_density(t, d, ell)
            count = count_trace_det(t, d, ell)
            match = delta == Fraction(count, sl2_order(ell))
            ok &= match
            print(f"{ell},{t},{d},{_fmt_frac(delta)},{count},{sl2_order(ell)},{int(match)}")
    return 0 if ok else 1


def cmd_image(args) -> int:
    if args.X is not None:
        res = galois_image.surjectivity_sweep(args.X, args.ell, args.prime_bound)
        print(
            json.dumps(
                {
                    "X": res.X,
                    "ell": res.ell,
                    "prime_bound": res.bound,
                    "total": res.total,
                    "proven": res.proven,
                    "fraction": round(res.fraction, 6),
                }
            )
        )
        return 0
    c = CurveModel(args.A, args.B)
    v = galois_image.classify_image(c, args.ell, args.prime_bound)
    print(
        json.dumps(
            {
                "A": c.A,
                "B": c.B,
                "ell": args.ell,
                "status": v.status,
                "witnesses": v.witnesses,
            },
            sort_keys=True,
        )
    )
    return 0


def cmd_stability(args) -> int:
    K = FieldSpec(args.degree, args.closure_degree)
    ranks = ingest.load_rank_csv(args.ranks).ranks if args.ranks else {}
    curves = list(enumerate_curves(args.X))
    rank1_ds = 0
    members = 0
    satisfied = 0
    for c in curves:
        rep = stability.check_ds(c, K, args.ell, args.prime_bound)
        if rep.t_kl == galois_image.MEMBER:
            members += 1
        if rep.ds_verdict == stability.SATISFIED:
            satisfied += 1
            if ranks.get((c.A, c.B)) == 1:
                rank1_ds += 1
        print(
            json.dumps(
                {
                    "A": c.A,
                    "B": c.B,
                    "ell": args.ell,
                    "t_kl": rep.t_kl,
                    "conditions": list(rep.conditions),
                    "ds_verdict": rep.ds_verdict,
                },
                sort_keys=True,
            )
        )
    print(
        f"X,ell,members,ds_satisfied,rank1_ds,total\n"
        f"{args.X},{args.ell},{members},{satisfied},{rank1_ds},{len(curves)}",
        file=sys.stderr,
    )
    if args.ranks:
        print(
            "note: rank-1 density is conditional on finiteness of Sha(E/Q)",
            file=sys.stderr,
        )
    return 0


def cmd_sieve(args) -> int:
    print("X,ell,t1,t2,d,delta,pi,V,V_over_X")
    for X in args.X_list:
        st = sieve_stats.variance_stat(
            X, args.t1, args.t2, args.d, args.ell, args.samples, args.seed
        )
        print(
            f"{X},{args.ell},{args.t1},{args.t2},{args.d},"
            f"{_fmt_frac(st.delta)},{st.pi},{_fmt_frac(st.V)},{_fmt_frac(st.v_over_x)}"
        )
    return 0


def cmd_decay(args) -> int:
    a = CurveModel(args.A, args.B)
    print("X,matched_ratio")
    for X, ratio in sieve_stats.t_A_density_curve(
        a, args.X_list, args.ell, args.prime_bound
    ):
        print(f"{X},{_fmt_frac(ratio)}")
    return 0


def cmd_countcheck(args) -> int:
    print("X,count,main_term,relative_error")
    for X, count, main, err in sieve_stats.curve_count_check(args.X_list):
        print(f"{X},{count},{main:.3f},{err:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ellstab")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("enumerate", cmd_enumerate, help="enumerate curves by height")
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = add("trace", cmd_trace, help="compute trace tables into a cache")
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--prime-bound", type=int, required=True)
    p.add_argument("--cache")

    p = add("census", cmd_census, help="Deuring census verification sweep")
    p.add_argument("--prime-bound", type=int, required=True)

    p = add("hurwitz", cmd_hurwitz, help="Hurwitz partial-sum sweep")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--prime-bound", type=int, required=True)

    p = add("delta", cmd_delta, help="trace-det density table with oracle check")
    p.add_argument("--ell", type=int, required=True)

    p = add("image", cmd_image, help="mod-ell image classification")
    p.add_argument("--A", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--X", type=int)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--prime-bound", type=int, required=True)

    p = add("stability", cmd_stability, help="DS reports and S_{K,ell} census")
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--prime-bound", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--closure-degree", type=int)
    p.add_argument("--ranks")

    p = add("sieve", cmd_sieve, help="pair-count variance statistic")
    p.add_argument("--X-list", type=_parse_int_list, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--t1", type=int, required=True)
    p.add_argument("--t2", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = add("decay", cmd_decay, help="trace-twin proxy density decay")
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--X-list", type=_parse_int_list, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--prime-bound", type=int, required=True)

    p = add("countcheck", cmd_countcheck, help="curve count vs C1*X^5")
    p.add_argument("--X-list", type=_parse_int_list, required=True)

    parser.add_argument("--threads", type=int, default=1, help="reserved; output order is fixed regardless")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except EllstabError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"ValueError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``focusprop {propagate,fuzz,pareto,check}``."""
from __future__ import annotations

import argparse
import csv
import logging
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import oracle
from .instancefile import InstanceFile, ParseError, load, serialize
from .model import Cover, Infeasible, IntInterval, Variant, cover_violation
from .scenarios import random_instance
from .solver import RentalsInstance, focus_network, pareto_rentals, propagate_fixpoint
from .springy import min_cards, springy_filter
from .weighted import bc_filter_w, build_dp_w
from .weighted_springy import bc_filter_wh, build_dp_wh

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("focusprop")


def filter_for(variant: Variant, fixed_yc_guard: bool = False):
    if variant is Variant.WEIGHTED:
        return bc_filter_w
    if variant is Variant.WEIGHTED_SPRINGY:
        return bc_filter_wh
    return lambda inst: springy_filter(inst, fixed_yc_guard=fixed_yc_guard)


def _fmt(iv: IntInterval) -> str:
    return f"[{iv.lo},{iv.hi}]"


def _dump_table(f: InstanceFile) -> str:
    inst = f.instance
    p = inst.params
    if not p.variant.weighted:
        return min_cards(inst.xs, p).dump()
    build = build_dp_w if p.variant is Variant.WEIGHTED else build_dp_wh
    try:
        return build(inst.xs, p, inst.zc.hi).dump(inst.xs)
    except Infeasible as exc:
        return f"(no table: {exc})"


# --- propagate -------------------------------------------------------------

def cmd_propagate(args) -> int:
    f = load(args.instance)
    inst = f.instance
    if args.dump_table:
        print(_dump_table(f))
        print()
    model = focus_network(inst, f.ambits, fixed_yc_guard=args.fixed_yc_guard)
    try:
        propagate_fixpoint(model.net)
    except Infeasible as exc:
        print(f"status: infeasible ({exc})")
        return EXIT_FAIL
    out = model.instance(inst.params)
    for i, x in enumerate(out.xs):
        print(f"x{i}: {_fmt(x)}")
    print(f"yc: {_fmt(out.yc)}")
    if out.zc is not None:
        print(f"zc: {_fmt(out.zc)}")
    print("status: feasible")
    if args.oracle:
        if f.ambits:
            print("oracle: skipped (among constraints present)")
        else:
            try:
                ref = oracle.bc_closure(inst, args.oracle_cap)
                print("oracle: " + ("agrees" if ref == out else f"differs, expects {ref.domains()}"))
            except Infeasible:
                print("oracle: differs, expects infeasible")
            except ValueError as exc:
                print(f"oracle: skipped ({exc})")
    return EXIT_OK


# --- fuzz ------------------------------------------------------------------

def _outcome(fn, inst):
    try:
        return fn(inst).domains()
    except Infeasible:
        return "infeasible"


def _check(job):
    inst, cap, guard = job
    got = _outcome(filter_for(inst.params.variant, guard), inst)
    want = _outcome(lambda i: oracle.bc_closure(i, cap), inst)
    return got, want


def _describe(outcome) -> str:
    if outcome == "infeasible":
        return outcome
    xs, yc, zc = outcome
    s = " ".join(_fmt(x) for x in xs) + f" | yc {_fmt(yc)}"
    return s + (f" | zc {_fmt(zc)}" if zc is not None else "")


def cmd_fuzz(args) -> int:
    variants = [Variant(v) for v in args.variant] if args.variant else list(Variant)
    rng = random.Random(args.seed)
    jobs = []
    for t in range(args.trials):
        variant = variants[t % len(variants)]
        k = rng.randint(0, args.k_max)
        jobs.append((random_instance(rng, variant, args.n_max, k), args.oracle_cap, args.fixed_yc_guard))
    start = time.perf_counter()
    if args.workers > 1 and jobs:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(_check, jobs, chunksize=max(1, len(jobs) // (8 * args.workers))))
    else:
        results = [_check(j) for j in jobs]
    counts = {v: [0, 0] for v in variants}
    first = None
    for t, ((inst, _, _), (got, want)) in enumerate(zip(jobs, results)):
        c = counts[inst.params.variant]
        c[0] += 1
        if got != want:
            c[1] += 1
            if first is None:
                first = (t, inst, got, want)
    if args.trials:
        for v, (n, bad) in counts.items():
            print(f"{v.value}: {n} trials, {bad} mismatches")
        print(f"elapsed: {time.perf_counter() - start:.1f}s")
    if first is None:
        return EXIT_OK
    t, inst, got, want = first
    print(f"\n# first mismatch: seed {args.seed}, trial {t}")
    print(f"# propagator: {_describe(got)}")
    print(f"# oracle:     {_describe(want)}")
    print(serialize(InstanceFile(inst)), end="")
    return EXIT_FAIL


# --- pareto ----------------------------------------------------------------

def cmd_pareto(args) -> int:
    f = load(args.instance)
    inst = f.instance
    hs = args.h_list if args.h_list is not None else [inst.params.h]
    for h in hs:
        if not 0 <= h <= inst.params.length - 2:
            raise ParseError(f"h={h} outside [0, len-2] for len={inst.params.length}")
    series: dict[int, list[tuple[int, int]]] = {}
    for h in hs:
        rentals = RentalsInstance(inst.n, inst.params.length, h, f.ambits, inst.k, inst.xs)
        try:
            series[h] = pareto_rentals(rentals)
        except Infeasible:
            print(f"h={h}: unsatisfiable", file=sys.stderr)
            series[h] = []
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\r\n" if args.out else "\n")
        writer.writerow(["yc", "zc", "h"])
        for h in hs:
            for y, z in series[h]:
                writer.writerow([y, z, h])
    finally:
        if args.out:
            out.close()
    if args.svg:
        from .report import plot_frontiers

        plot_frontiers(series, args.svg)
    return EXIT_OK if any(series.values()) else EXIT_FAIL


# --- check -----------------------------------------------------------------

def _parse_assignment(text: str, n: int) -> list[int]:
    try:
        values = [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError("--assign expects integers") from None
    if len(values) != n:
        raise ParseError(f"--assign needs {n} values, got {len(values)}")
    return values


def _parse_cover(text: str) -> Cover:
    seqs = []
    for part in text.replace(",", " ").split():
        try:
            i, j = (int(v) for v in part.split("-"))
        except ValueError:
            raise ParseError(f"bad sequence '{part}', expected i-j") from None
        seqs.append((i, j))
    try:
        return Cover(tuple(seqs))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def cmd_check(args) -> int:
    f = load(args.instance)
    inst = f.instance
    assignment = _parse_assignment(args.assign, inst.n)
    cover = _parse_cover(args.cover)
    try:
        problem = cover_violation(inst, assignment, cover)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if problem is None:
        print("valid")
        return EXIT_OK
    print(f"invalid: {problem}")
    return EXIT_FAIL


# --- wiring ----------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="focusprop", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("propagate", help="filter an instance and print the pruned bounds")
    p.add_argument("instance")
    p.add_argument("--dump-table", action="store_true", help="print the prefix or cost table first")
    p.add_argument("--fixed-yc-guard", action="store_true", help="springy: prune X only once yc is fixed")
    p.add_argument("--oracle", action="store_true", help="compare with the exhaustive closure")
    p.add_argument("--oracle-cap", type=int, default=oracle.DEFAULT_CLOSURE_CAP)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("fuzz", help="compare propagators with the exhaustive closure")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--variant", action="append", choices=[v.value for v in Variant],
                   help="repeatable; default is every variant")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--oracle-cap", type=int, default=oracle.DEFAULT_CLOSURE_CAP)
    p.add_argument("--fixed-yc-guard", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("pareto", help="(yc, zc) frontier of a rentals instance")
    p.add_argument("instance")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--h-list", type=_int_list, help="comma-separated h values, default the file's h")
    p.add_argument("--svg", help="figure path; format from the suffix")
    p.set_defaults(func=cmd_pareto)

    p = sub.add_parser("check", help="validate a cover for a full assignment")
    p.add_argument("instance")
    p.add_argument("--assign", required=True, help="values, e.g. 1,0,1")
    p.add_argument("--cover", required=True, help="sequences, e.g. 0-2,4-4")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "fuzz":
        if args.n_max > args.oracle_cap:
            parser.error(f"--n-max {args.n_max} exceeds --oracle-cap {args.oracle_cap}")
        if args.trials < 0 or args.n_max < 1 or args.workers < 1:
            parser.error("--trials must be >= 0, --n-max and --workers >= 1")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

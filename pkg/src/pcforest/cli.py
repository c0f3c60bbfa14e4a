"""Command-line front end.

Subcommands: ``solve``, ``verify``, ``oracle``, ``gen`` and ``bench``.
Exit status 2 means the input could not be parsed, 3 that the chosen
algorithm's preconditions do not hold, and 1 that a verified property failed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .graph import (
    ColoredMultigraph,
    InstanceError,
    components,
    format_solution,
    parse_instance,
    parse_solution,
    serialize_instance,
    verify_pc_forest,
)
from .instances import (
    gen_complete,
    gen_digraph,
    gen_random,
    gen_simple_graph,
    gen_tsp12_doubling,
    reduce_digraph_to_maxpt2,
    reduce_lf_to_pcf2,
    reduce_pcf2_to_pcf3_complete,
)
from .maxpt import guarantee_holds, partition_from_vertices, solve_maxpt
from .oracle import CapExceeded, brute_maxpf, brute_maxpt
from .solvers import (
    PreconditionError,
    SolveReport,
    meets_ratio,
    ratio_guarantee,
    solve_complete_2color,
    solve_general,
    solve_union_matchings,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3
ALGORITHMS = ("auto", "complete2", "general", "simplek", "maxpt")
GEN_FAMILIES = ("random", "complete", "lf2pcf", "pcf3complete", "lp2maxpt", "tsp12")
BENCH_FAMILIES = ("random", "simple", "complete", "lf2pcf", "pcf3complete", "lp2maxpt", "tsp12")


def pick_algorithm(g: ColoredMultigraph) -> str:
    """The exact algorithm when it applies, else the best-guarantee approximation."""
    if g.is_complete() and g.k <= 2:
        return "complete2"
    if g.is_simple() and len(g.colors_used()) <= 3:
        return "simplek"
    return "general"


def run_algorithm(
    g: ColoredMultigraph,
    alg: str,
    eps: Fraction = Fraction(2),
    partition: Sequence[int] | None = None,
    force_approx: bool = False,
) -> SolveReport:
    if alg == "auto":
        alg = pick_algorithm(g)
    if alg == "complete2":
        return solve_complete_2color(g)
    if alg == "general":
        return solve_general(g)
    if alg == "simplek":
        return solve_union_matchings(g)
    if alg == "maxpt":
        oracle = partition_from_vertices(partition) if partition is not None else None
        return solve_maxpt(g, eps, oracle=oracle, force_approx=force_approx or partition is not None)
    raise ValueError(f"unknown algorithm {alg!r}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_instance(path: str) -> ColoredMultigraph:
    try:
        return parse_instance(_read(path))
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from None


def _read_partition(path: str) -> list[int]:
    out = []
    for lineno, line in enumerate(_read(path).splitlines(), start=1):
        for tok in line.split("#", 1)[0].split():
            try:
                out.append(int(tok))
            except ValueError:
                raise InstanceError(f"partition file: non-integer vertex {tok!r}", lineno) from None
    return out


def _eps(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("eps must be positive")
    return value


# -- solve / verify / oracle --------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    g = _load_instance(args.input)
    partition = _read_partition(args.partition) if args.partition else None
    report = run_algorithm(g, args.alg, args.eps, partition, args.force_approx)
    if args.json:
        record = {
            "algorithm": report.algorithm,
            "size": report.size,
            "forest": list(report.forest),
            "upper_bounds": dict(report.upper_bounds),
            "iterations": report.iterations,
        }
        if report.branch:
            record["branch"] = report.branch
        print(json.dumps(record, sort_keys=True))
    else:
        comments = [f"alg {report.algorithm}"]
        comments += [f"upper-bound {name} {value}" for name, value in report.upper_bounds]
        if report.algorithm == "general":
            comments.append(f"iterations {report.iterations}")
        if report.branch:
            comments.append(f"branch {report.branch}")
        sys.stdout.write(format_solution(report.forest, comments))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_instance(args.input)
    try:
        ids = parse_solution(_read(args.solution))
    except OSError as exc:
        raise InstanceError(f"cannot read {args.solution}: {exc.strerror}") from None
    try:
        verdict = verify_pc_forest(g, ids)
    except KeyError as exc:
        raise InstanceError(str(exc.args[0])) from None
    if verdict.valid and args.tree and len(components(g, ids)) > 1:
        print("not-connected")
        return EXIT_FAIL
    print(verdict)
    return EXIT_OK if verdict.valid else EXIT_FAIL


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_instance(args.input)
    try:
        result = brute_maxpt(g, args.cap) if args.tree else brute_maxpf(g, args.cap)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    comments = [f"opt {result.optimum}", f"explored {result.explored}"]
    sys.stdout.write(format_solution(result.witness, comments))
    return EXIT_OK


# -- gen ----------------------------------------------------------------------


def _default_m(n: int, args: argparse.Namespace) -> int:
    return args.m if args.m is not None else n


def cmd_gen(args: argparse.Namespace) -> int:
    n, seed = args.n, args.seed
    try:
        if args.family == "random":
            g = gen_random(n, _default_m(n, args), args.k, args.simple, seed)
            _write(args.out, serialize_instance(g))
            return EXIT_OK
        if args.family == "complete":
            g = gen_complete(n, args.k, seed, args.max_parallel)
            _write(args.out, serialize_instance(g))
            return EXIT_OK
        if args.family == "lf2pcf":
            red = reduce_lf_to_pcf2(gen_simple_graph(n, _default_m(n, args), seed))
        elif args.family == "tsp12":
            red = gen_tsp12_doubling(gen_simple_graph(n, _default_m(n, args), seed))
        elif args.family == "pcf3complete":
            red = reduce_pcf2_to_pcf3_complete(gen_random(n, _default_m(n, args), 2, True, seed))
        else:
            red = reduce_digraph_to_maxpt2(gen_digraph(n, _default_m(n, args), seed))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    _write(args.out, serialize_instance(red.target))
    sidecar = args.sidecar or (args.out + ".map" if args.out and args.out != "-" else None)
    if sidecar:
        _write(sidecar, red.sidecar())
    return EXIT_OK


# -- bench ----------------------------------------------------------------------


@dataclass(frozen=True)
class BenchRecord:
    family: str
    trial: int
    seed: int
    n: int
    m: int
    k: int
    algorithm: str
    size: int
    optimum: int | None
    ratio: str | None  # size/optimum as an exact fraction
    status: str  # "ok", "FAIL", "uncertified" or "unchecked"
    wall: float | None = None


def _bench_instance(family: str, rng: random.Random, nmax: int, mmax: int, k: int) -> ColoredMultigraph:
    if family in ("random", "simple"):
        simple = family == "simple"
        n = rng.randint(2, max(2, nmax))
        pairs = n * (n - 1) // 2
        m = rng.randint(0, min(mmax, pairs if simple else k * pairs))
        return gen_random(n, m, k, simple, rng.randrange(2**31))
    if family == "complete":
        return gen_complete(rng.randint(1, max(1, nmax)), k, rng.randrange(2**31))
    if family in ("lf2pcf", "tsp12"):
        n = rng.randint(1, max(1, nmax // 3 if family == "lf2pcf" else nmax))
        m = rng.randint(0, min(mmax // 2, n * (n - 1) // 2))
        h = gen_simple_graph(n, m, rng.randrange(2**31))
        return (reduce_lf_to_pcf2 if family == "lf2pcf" else gen_tsp12_doubling)(h).target
    if family == "pcf3complete":
        n = rng.randint(1, max(1, nmax // 2))
        m = rng.randint(0, n * (n - 1) // 2)
        return reduce_pcf2_to_pcf3_complete(gen_random(n, m, 2, True, rng.randrange(2**31))).target
    if family == "lp2maxpt":
        n = rng.randint(1, max(1, nmax // 2))
        m = rng.randint(0, min(mmax - n, n * (n - 1)) if mmax > n else 0)
        return reduce_digraph_to_maxpt2(gen_digraph(n, m, rng.randrange(2**31))).target
    raise ValueError(f"unknown bench family {family!r}")


def _trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def run_trial(
    family: str, trial: int, seed: int, nmax: int, mmax: int, k: int, alg: str,
    check: bool, cap: int, eps: Fraction, timing: bool,
) -> BenchRecord:
    tseed = _trial_seed(seed, trial)
    g = _bench_instance(family, random.Random(tseed), nmax, mmax, k)
    used = pick_algorithm(g) if alg == "auto" else alg
    start = time.perf_counter()
    report = run_algorithm(g, used, eps)
    wall = time.perf_counter() - start if timing else None
    optimum, ratio, status = None, None, "unchecked"
    if check:
        try:
            optimum = (brute_maxpt(g) if used == "maxpt" else brute_maxpf(g, cap)).optimum
        except CapExceeded:
            status = "uncertified"
        else:
            ratio = str(Fraction(report.size, optimum)) if optimum else None
            if used == "maxpt":
                good = guarantee_holds(report.size, optimum, g.n, eps)
            else:
                good = meets_ratio(report.size, optimum, ratio_guarantee(used, g))
            status = "ok" if good and report.size <= optimum else "FAIL"
    return BenchRecord(family, trial, tseed, g.n, g.m, g.k, used, report.size, optimum, ratio, status, wall)


def _run_trial_packed(packed: tuple) -> BenchRecord:
    return run_trial(*packed)


def bench(
    family: str, trials: int, nmax: int, seed: int, alg: str = "auto", k: int = 4, mmax: int = 20,
    check: bool = False, cap: int = 24, eps: Fraction = Fraction(2), timing: bool = False,
    workers: int = 1,
) -> list[BenchRecord]:
    """Run ``trials`` seeded trials; records come back in trial order."""
    jobs = [(family, t, seed, nmax, mmax, k, alg, check, cap, eps, timing) for t in range(trials)]
    if workers <= 1 or trials <= 1:
        return [_run_trial_packed(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_trial_packed, jobs))


def _workers() -> int:
    raw = os.environ.get("PCF_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_bench(args: argparse.Namespace) -> int:
    records = bench(
        args.family, args.trials, args.nmax, args.seed, args.alg, args.k, args.mmax,
        args.check_ratio, args.cap, args.eps, args.timing, _workers(),
    )
    if args.json:
        for r in records:
            row = asdict(r)
            if not args.timing:
                del row["wall"]
            print(json.dumps(row, sort_keys=True))
    else:
        cols = ["trial", "seed", "n", "m", "k", "alg", "size", "opt", "ratio", "status"]
        if args.timing:
            cols.append("wall")
        print("\t".join(cols))
        for r in records:
            row = [r.trial, r.seed, r.n, r.m, r.k, r.algorithm, r.size,
                   "-" if r.optimum is None else r.optimum, r.ratio or "-", r.status]
            if args.timing:
                row.append(f"{r.wall:.6f}")
            print("\t".join(map(str, row)))
        failed = sum(r.status == "FAIL" for r in records)
        print(f"# trials {len(records)} failures {failed}")
    return EXIT_FAIL if any(r.status == "FAIL" for r in records) else EXIT_OK


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcforest", description="Properly colored forests and trees.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("--input", "-i", default="-", help="instance file (default: stdin)")
    s.add_argument("--alg", choices=ALGORITHMS, default="auto")
    s.add_argument("--eps", type=_eps, default=Fraction(2), help="maxpt accuracy parameter (rational)")
    s.add_argument("--partition", help="maxpt: file listing the vertices of V1")
    s.add_argument("--force-approx", action="store_true", help="maxpt: skip the exhaustive small-n branch")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file against an instance")
    v.add_argument("--input", "-i", required=True)
    v.add_argument("--solution", "-s", required=True)
    v.add_argument("--tree", action="store_true", help="also require the forest to be connected")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    o.add_argument("--input", "-i", default="-")
    o.add_argument("--tree", action="store_true", help="maximum properly colored tree instead of forest")
    o.add_argument("--cap", type=int, default=24, help="refuse instances with more edges than this")
    o.set_defaults(func=cmd_oracle)

    gp = sub.add_parser("gen", help="generate a seeded instance")
    gp.add_argument("--family", choices=GEN_FAMILIES, default="random")
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--n", type=int, required=True, help="vertices (of the source graph for reductions)")
    gp.add_argument("--m", type=int, help="edges or arcs (default: n)")
    gp.add_argument("--k", type=int, default=2, help="colors (random and complete families)")
    gp.add_argument("--simple", action="store_true", help="random family: no parallel edges at all")
    gp.add_argument("--max-parallel", type=int, help="complete family: most colors per vertex pair")
    gp.add_argument("--out", "-o", help="instance file (default: stdout)")
    gp.add_argument("--sidecar", help="back-map file for reduction families (default: OUT.map)")
    gp.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="seeded ratio benchmark")
    b.add_argument("--family", choices=BENCH_FAMILIES, default="random")
    b.add_argument("--alg", choices=ALGORITHMS, default="auto")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--nmax", type=int, default=9)
    b.add_argument("--mmax", type=int, default=20)
    b.add_argument("--k", type=int, default=4)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--eps", type=_eps, default=Fraction(2))
    b.add_argument("--cap", type=int, default=24, help="oracle edge cap for --check-ratio")
    b.add_argument("--check-ratio", action="store_true", help="certify each trial against the oracle")
    b.add_argument("--timing", action="store_true", help="record wall time (output no longer byte-stable)")
    b.add_argument("--json", action="store_true", help="JSON lines instead of a table")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        # partition or solution contents that do not fit the instance
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

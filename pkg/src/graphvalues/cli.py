"""Command-line front end.

Subcommands: mean, ratio, energy, mincycle, treedec, gen, bench, selftest.
Per-node results print as TSV ``label<TAB>p/q`` (energies as plain integers
or ``inf``); ``--json`` switches every command to a single JSON object with
``"schema": 1``. ``--stats`` writes instrumentation to stderr.

Exit codes: 0 success (and "yes" for --decide), 1 bad input or arguments,
2 internal invariant or cross-validation failure, 3 "no" for --decide.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .energy import decide_initial_credit, energy_values
from .energy_tw import TwStats, energy_values_tw
from .generate import generate
from .graph import (
    INF,
    InvariantError,
    ParseError,
    component_has_cycle,
    induced_subgraph,
    load_graph,
    propagate_component_values,
    tarjan_scc,
    to_dimacs,
)
from .mincycle import min_cycle
from .oracles import (
    OracleTooBigError,
    energy_fixpoint,
    enumerate_cycles,
    karp_mean,
    min_mean_by_enumeration,
    min_ratio_by_enumeration,
)
from .ratio import (
    SearchStats,
    approx_mean,
    decide_mean_geq,
    decide_ratio_geq,
    mean_values_all_nodes,
    ratio_values_all_nodes,
)
from .treedec import build_decomposition, decomposition_to_text, validate

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_NO = 0, 1, 2, 3
_STAT_PHASES = ("zero-test", "exponential", "binary", "rational-refine", "decide", "sweep", "bisect")


def _frac_text(v) -> str:
    if v is INF:
        return "inf"
    f = Fraction(v)
    return f"{f.numerator}/{f.denominator}"


def _int_text(v) -> str:
    return "inf" if v is INF else str(v)


def _emit_json(payload: dict) -> None:
    print(json.dumps({"schema": 1, **payload}, indent=2))


def _emit_values(args, problem: str, g, values, fmt) -> None:
    if args.json:
        _emit_json(
            {
                "problem": problem,
                "algo": args.algo,
                "file": args.file,
                "values": {g.labels[u]: fmt(values[u]) for u in range(g.n)},
            }
        )
    else:
        for u in range(g.n):
            print(f"{g.labels[u]}\t{fmt(values[u])}")


def _search_stat_line(stats: SearchStats) -> str:
    parts = [f"decisions={stats.decisions}"]
    parts += [f"{p}={stats.count(p)}" for p in _STAT_PHASES if stats.count(p)]
    return " ".join(parts)


def _validate_or_die(g, heuristic: str) -> None:
    t = build_decomposition(g, heuristic)
    v = validate(t, g)
    if v is not None:
        raise InvariantError(f"decomposition check failed [{v.condition}]: {v.detail}")


def _per_scc_values(g, solver):
    scc = tarjan_scc(g)
    per = []
    for ci, comp in enumerate(scc.components):
        if not component_has_cycle(g, scc, ci):
            per.append(INF)
            continue
        sub, _ = induced_subgraph(g, comp)
        per.append(solver(sub))
    return propagate_component_values(g, scc, per)


def _decomposition_stat_line(g, heuristic: str) -> str:
    t = build_decomposition(g, heuristic)
    return f"n={g.n} m={g.m} width={t.width} height={t.height} bags={len(t.bags)}"


# -- subcommands ------------------------------------------------------------------


def _cmd_cycle_value(args, problem: str) -> int:
    g = load_graph(args.file)
    if args.validate:
        _validate_or_die(g, args.heuristic)
    ratio = problem == "ratio"
    if args.decide is not None:
        nu = Fraction(args.decide)
        stats = SearchStats()
        decide = decide_ratio_geq if ratio else decide_mean_geq
        ans = decide(g, None, nu, stats)
        if args.stats:
            print(_search_stat_line(stats), file=sys.stderr)
        if args.json:
            _emit_json({"problem": problem, "decide": _frac_text(nu), "answer": ans})
        else:
            print("yes" if ans else "no")
        return EXIT_OK if ans else EXIT_NO
    if not ratio and args.approx is not None:
        eps = Fraction(args.approx)
        value, stats = approx_mean(g, None, eps)
        if args.stats:
            print(_search_stat_line(stats), file=sys.stderr)
        if args.json:
            _emit_json({"problem": problem, "eps": _frac_text(eps), "value": _frac_text(value)})
        else:
            print(f"*\t{_frac_text(value)}")
        return EXIT_OK
    stats = SearchStats()
    if args.algo == "tw":
        builder = lambda sub: build_decomposition(sub, args.heuristic)
        values = (
            ratio_values_all_nodes(g, builder, stats)
            if ratio
            else mean_values_all_nodes(g, builder, stats)
        )
    elif args.algo == "karp":
        values = _per_scc_values(g, karp_mean)
    else:  # oracle
        pick = min_ratio_by_enumeration if ratio else min_mean_by_enumeration
        values = _per_scc_values(g, lambda sub: pick(enumerate_cycles(sub)))
    if args.stats:
        line = _decomposition_stat_line(g, args.heuristic)
        if args.algo == "tw":
            line += " " + _search_stat_line(stats)
        print(line, file=sys.stderr)
    _emit_values(args, problem, g, values, _frac_text)
    return EXIT_OK


def _cmd_energy(args) -> int:
    g = load_graph(args.file)
    if args.validate:
        _validate_or_die(g, args.heuristic)
    if args.decide is not None:
        label, credit_text = args.decide
        u = g.label_id(label)
        credit = int(credit_text)
        ans = decide_initial_credit(g, u, credit)
        if args.json:
            _emit_json({"problem": "energy", "node": label, "credit": credit, "answer": ans})
        else:
            print("yes" if ans else "no")
        return EXIT_OK if ans else EXIT_NO
    tw_stats = TwStats()
    if args.algo == "tw":
        t = build_decomposition(g, args.heuristic)
        values = energy_values_tw(g, t, tw_stats)
    elif args.algo == "general":
        values = energy_values(g)
    else:  # oracle
        values = energy_fixpoint(g)
    if args.stats:
        line = _decomposition_stat_line(g, args.heuristic)
        if args.algo == "tw":
            line += (
                f" kills={tw_stats.kills} update_bags={tw_stats.update_bags}"
                f" hot_discarded={tw_stats.hot_discarded}"
            )
        print(line, file=sys.stderr)
    _emit_values(args, "energy", g, values, _int_text)
    return EXIT_OK


def _cmd_mincycle(args) -> int:
    g = load_graph(args.file)
    if args.validate:
        _validate_or_die(g, args.heuristic)
    t = build_decomposition(g, args.heuristic)
    r = min_cycle(g, t)
    if args.stats:
        print(
            f"n={g.n} m={g.m} width={t.width} height={r.height} peak_maps={r.peak_maps}",
            file=sys.stderr,
        )
    if args.json:
        _emit_json(
            {
                "problem": "mincycle",
                "value": _int_text(r.value),
                "exact": r.exact,
                "height": r.height,
                "peak_maps": r.peak_maps,
            }
        )
    else:
        print(f"{_int_text(r.value)}\t{'exact' if r.exact else 'lower-bound'}")
    return EXIT_OK


def _cmd_treedec(args) -> int:
    g = load_graph(args.file)
    t = build_decomposition(g, args.heuristic)
    if args.validate:
        v = validate(t, g)
        if v is not None:
            raise InvariantError(f"decomposition check failed [{v.condition}]: {v.detail}")
    if args.stats:
        print(f"n={g.n} m={g.m} width={t.width} height={t.height} bags={len(t.bags)}", file=sys.stderr)
    if args.json:
        _emit_json(
            {
                "problem": "treedec",
                "width": t.width,
                "height": t.height,
                "bags": [sorted(b) for b in t.bags],
                "parent": [-1 if p is None else p for p in t.parent],
            }
        )
    else:
        sys.stdout.write(decomposition_to_text(t))
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.kind == "ktree" and not 1 <= args.k <= 5:
        raise ValueError("ktree generator supports k between 1 and 5")
    g = generate(
        args.kind,
        args.n,
        args.k,
        args.seed,
        **({} if args.kind == "cfg-like" else {"wtp": (1, args.wtp_max)}),
        wt=(args.wt_min, args.wt_max),
    )
    text = to_dimacs(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bench_values(problem: str, algo: str, g, t):
    """One timed run; returns (values, note)."""
    if problem == "mean":
        if algo == "tw":
            stats = SearchStats()
            return mean_values_all_nodes(g, None, stats), f"decisions={stats.decisions}"
        if algo == "karp":
            return _per_scc_values(g, karp_mean), "-"
        if algo == "oracle":
            return _per_scc_values(g, lambda s: min_mean_by_enumeration(enumerate_cycles(s))), "-"
    else:
        if algo == "tw":
            stats = TwStats()
            return energy_values_tw(g, t, stats), f"kills={stats.kills}"
        if algo == "general":
            return energy_values(g), "-"
        if algo == "oracle":
            return energy_fixpoint(g), "-"
    raise ValueError(f"algorithm {algo!r} does not apply to problem {problem!r}")


def _cmd_bench(args) -> int:
    paths = sorted(p for p in Path(args.dir).iterdir() if p.is_file())
    if not paths:
        raise ValueError(f"no instance files in {args.dir!r}")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    if len(algos) < 1:
        raise ValueError("need at least one algorithm")
    rows = []
    for path in paths:
        g = load_graph(str(path))
        t = build_decomposition(g)
        results = {}
        for algo in algos:
            for rep in range(args.reps):
                t0 = time.perf_counter()
                values, note = _bench_values(args.problem, algo, g, t)
                dt = time.perf_counter() - t0
                rows.append(
                    (path.name, g.n, g.m, t.width, t.height, algo, rep, f"{dt:.6f}", note)
                )
            results[algo] = values
        first = algos[0]
        for algo in algos[1:]:
            if results[algo] != results[first]:
                bad = next(
                    u for u in range(g.n) if results[algo][u] != results[first][u]
                )
                print(
                    f"cross-validation mismatch on {path.name}: node {g.labels[bad]} "
                    f"{first}={results[first][bad]} {algo}={results[algo][bad]}",
                    file=sys.stderr,
                )
                return EXIT_INTERNAL
    header = ("file", "n", "m", "width", "height", "algo", "rep", "seconds", "notes")
    if args.json:
        _emit_json(
            {
                "problem": args.problem,
                "rows": [dict(zip(header, r)) for r in rows],
            }
        )
    else:
        print("\t".join(header))
        for r in rows:
            print("\t".join(str(x) for x in r))
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .generate import gen_ktree, gen_sparse_random
    from .ratio import mean_value, ratio_value

    checked = 0
    for i in range(args.count):
        g = gen_ktree(4 + i % 6, 1 + i % 3, seed=args.seed + i, wt=(-8, 8), wtp=(1, 4))
        cycles = enumerate_cycles(g)
        want_mean = min_mean_by_enumeration(cycles)
        want_ratio = min_ratio_by_enumeration(cycles)
        got_mean, _ = mean_value(g)
        got_ratio, _ = ratio_value(g)
        if (got_mean, got_ratio) != (want_mean, want_ratio):
            print(
                f"selftest mismatch (cycle values) seed={args.seed + i}: "
                f"mean {got_mean} vs {want_mean}, ratio {got_ratio} vs {want_ratio}",
                file=sys.stderr,
            )
            return EXIT_INTERNAL
        checked += 1
    for i in range(args.count):
        g = gen_sparse_random(5 + i % 6, 2, seed=args.seed + 1000 + i, wt=(-6, 6))
        a = energy_values(g)
        b = energy_values_tw(g)
        c = energy_fixpoint(g)
        if not (a == b == c):
            print(f"selftest mismatch (energy) seed={args.seed + 1000 + i}: {a} {b} {c}", file=sys.stderr)
            return EXIT_INTERNAL
        checked += 1
    print(f"selftest passed ({checked} instances)")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _add_common(p, algos=None, approx=False, decide_nargs=None):
    p.add_argument("file", help="graph file (dimacs-like, edge list, or dot)")
    if algos:
        p.add_argument("--algo", choices=algos, default=algos[0])
    if approx:
        p.add_argument("--approx", metavar="EPS", help="approximate to relative error EPS in (0,1)")
    if decide_nargs == 1:
        p.add_argument("--decide", metavar="NU", help="decide value >= NU; exit 0 yes / 3 no")
    elif decide_nargs == 2:
        p.add_argument(
            "--decide",
            nargs=2,
            metavar=("NODE", "CREDIT"),
            help="decide whether NODE survives with initial credit CREDIT; exit 0 yes / 3 no",
        )
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.add_argument("--stats", action="store_true", help="instrumentation on stderr")
    p.add_argument("--validate", action="store_true", help="check the decomposition first")
    p.add_argument("--heuristic", choices=("min-degree", "min-fill"), default="min-degree")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="graphvalues",
        description="Minimum cycle mean / cycle ratio / initial credit of weighted digraphs.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mean", help="minimum cycle mean per start node")
    _add_common(p, algos=("tw", "karp", "oracle"), approx=True, decide_nargs=1)
    p.set_defaults(func=lambda a: _cmd_cycle_value(a, "mean"))

    p = sub.add_parser("ratio", help="minimum cycle ratio wt/wt' per start node")
    _add_common(p, algos=("tw", "oracle"), decide_nargs=1)
    p.set_defaults(func=lambda a: _cmd_cycle_value(a, "ratio"))

    p = sub.add_parser("energy", help="minimum initial credit per node")
    _add_common(p, algos=("tw", "general", "oracle"), decide_nargs=2)
    p.set_defaults(func=_cmd_energy)

    p = sub.add_parser("mincycle", help="minimum cycle weight (exact when >= 0)")
    _add_common(p)
    p.set_defaults(func=_cmd_mincycle)

    p = sub.add_parser("treedec", help="build and print a tree decomposition")
    _add_common(p)
    p.set_defaults(func=_cmd_treedec)

    p = sub.add_parser("gen", help="generate a seeded test instance (dimacs-like)")
    p.add_argument("kind", choices=("ktree", "sparse-random", "cfg-like"))
    p.add_argument("n", type=int)
    p.add_argument("k", type=int, nargs="?", default=2, help="ktree width / sparse avg degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--wt-min", type=int, default=-10)
    p.add_argument("--wt-max", type=int, default=10)
    p.add_argument("--wtp-max", type=int, default=1)
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="time algorithms over a corpus, cross-validating results")
    p.add_argument("dir", help="directory of graph files")
    p.add_argument("--problem", choices=("mean", "energy"), default="mean")
    p.add_argument("--algos", default="tw,karp", help="comma-separated algorithm list")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("selftest", help="differential checks on small seeded instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=25)
    p.set_defaults(func=_cmd_selftest)

    return ap


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:  # argparse exits 0 for --help, 2 for usage errors
        return EXIT_OK if not e.code else EXIT_INPUT
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OracleTooBigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, OSError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())

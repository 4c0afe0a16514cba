"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input format error, 3 oracle-cap error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .graph_core import FormatError
from .harness import (
    ALGOS,
    Budget,
    CorpusSpec,
    canonical_algo,
    estimate_success_rate,
    gen_corpus,
    load_corpus,
    load_instance,
    rows_to_csv,
    run_bench,
    run_fvs_algo,
    write_corpus,
)
from .loop_cutset import Dag, rlc
from .oracle import OracleCapError, brute_force_min_loop_cutset
from .rng import RandomStream

EXIT_USAGE, EXIT_FORMAT, EXIT_ORACLE = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _json_weight(w: float):
    return "inf" if math.isinf(w) else w


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for key in sorted(payload):
            print(f"{key}: {payload[key]}")


def cmd_fvs(args) -> int:
    g = load_instance(args.input)
    if isinstance(g, Dag):
        raise UsageError("fvs expects a UGRAPH file; use 'cutset' for BNDAG input")
    algo = canonical_algo(args.algo)
    res = run_fvs_algo(algo, g, Budget(args.c, args.max, args.k), RandomStream(args.seed))
    if res is None:
        payload = {"algo": algo, "status": "fail" if algo != "rwguess1" else "k too small",
                   "seed": args.seed}
    else:
        payload = {"algo": algo, "status": "ok", "fvs": sorted(res.members),
                   "weight": _json_weight(res.total_weight), "size": res.size,
                   "trials": res.trace.trials_run, "k_reached": res.trace.k_reached,
                   "saturated": res.trace.saturated, "seed": args.seed}
    _emit(payload, args.json)
    return 0


def cmd_cutset(args) -> int:
    d = load_instance(args.input)
    if not isinstance(d, Dag):
        raise UsageError("cutset expects a BNDAG file")
    res = rlc(d, args.c, args.max, RandomStream(args.seed))
    if args.json:
        print(res.to_json())
    else:
        print(f"cutset: {sorted(res.members)}")
        print(f"log2_weight: {res.log2_weight}")
        print(f"trials: {res.trials}")
        print(f"seed: {res.seed}")
    return 0


def cmd_oracle(args) -> int:
    inst = load_instance(args.input)
    if isinstance(inst, Dag):
        members, w = brute_force_min_loop_cutset(inst)
        payload = {"cutset": sorted(members), "log2_weight": w}
    else:
        res = run_fvs_algo("oracle", inst, Budget(), RandomStream(0))
        payload = {"fvs": sorted(res.members), "weight": _json_weight(res.total_weight),
                   "size": res.size}
    _emit(payload, args.json)
    return 0


def cmd_gen(args) -> int:
    spec = CorpusSpec(args.n, args.m, args.dlo, args.dhi, args.count, args.seed)
    paths = write_corpus(gen_corpus(args.kind, spec), Path(args.out))
    print(f"wrote {len(paths)} instances to {args.out}")
    return 0


def cmd_bench(args) -> int:
    corpus = load_corpus(Path(args.corpus))
    algos = [canonical_algo(a) for a in args.algos.split(",") if a]
    if not algos:
        raise UsageError("--algos is empty")
    rows, summary = run_bench(corpus, algos, Budget(args.c, args.max, args.k), args.seed,
                              timing=args.timing)
    text = rows_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    if args.summary:
        Path(args.summary).write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    elif args.csv:
        print(json.dumps(summary, sort_keys=True))
    return 0


def cmd_rate(args) -> int:
    inst = load_instance(args.input)
    est = estimate_success_rate(inst, args.algo, Budget(args.c, args.max, args.k),
                                args.trials, RandomStream(args.seed))
    est["seed"] = args.seed
    print(json.dumps(est, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="loopcutset", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def budget_opts(sp, with_k=True):
        sp.add_argument("--c", type=float, default=1.0)
        sp.add_argument("--max", type=int, default=300)
        if with_k:
            sp.add_argument("--k", type=int, default=None)

    sp = sub.add_parser("fvs", help="feedback vertex set of a UGRAPH file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--algo", required=True, choices=ALGOS)
    budget_opts(sp)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_fvs)

    sp = sub.add_parser("cutset", help="loop cutset of a BNDAG file")
    sp.add_argument("--input", required=True)
    budget_opts(sp, with_k=False)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_cutset)

    sp = sub.add_parser("oracle", help="exact minimum by brute force (small inputs)")
    sp.add_argument("--input", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="generate a random corpus")
    sp.add_argument("kind", choices=("graph", "dag"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--dlo", type=int, default=2)
    sp.add_argument("--dhi", type=int, default=2)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="run algorithms over a corpus directory")
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--algos", required=True)
    budget_opts(sp)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--csv")
    sp.add_argument("--summary", help="write the summary JSON here")
    sp.add_argument("--timing", action="store_true",
                    help="record wall-clock elapsed_ms (output is then not reproducible)")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("rate", help="estimate the optimum hit rate of an algorithm")
    sp.add_argument("--input", required=True)
    sp.add_argument("--algo", required=True, choices=ALGOS)
    budget_opts(sp)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=cmd_rate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OracleCapError as exc:
        print(f"oracle error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

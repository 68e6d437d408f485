"""Command-line interface.

Subcommands: generate, decompose, play, solve, verify, experiment, sweep.
Graphs cross the process boundary in the `p/e` text format; results are
versioned JSON documents (CSV export for per-trial rows).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .decompose import (
    extract_bipartite_core,
    extract_chromatic_core,
    highly_connected_partition,
    robust_partition,
)
from .engine import GameSpec, WinPredicate, element_token
from .errors import DomainError, ResourceLimitError
from .generators import FAMILIES, generate
from .graphs import format_graph, frac_ceil, parse_graph
from .harness import (
    DECOMPOSE_VERSION,
    ExperimentConfig,
    atomic_write,
    build_strategy,
    play_to_transcript,
    rows_to_csv,
    run_experiment,
    sweep_bias,
)
from .solver import solve, verify_maker_strategy


def _read_graph(path: str):
    with open(path) as f:
        return parse_graph(f.read())


def _emit(text: str, out: str | None):
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _parse_params(pairs):
    params = {}
    for pair in pairs or ():
        key, sep, value = pair.partition("=")
        if not sep:
            raise DomainError(f"expected key=value, got {pair!r}")
        if value.startswith("{"):
            params[key] = json.loads(value)
        elif key == "sizes":
            if "x" in value:
                m, r = value.split("x")
                params[key] = [int(m)] * int(r)
            else:
                params[key] = [int(s) for s in value.split("-")]
        else:
            try:
                params[key] = int(value)
            except ValueError:
                try:
                    params[key] = float(value)
                except ValueError:
                    params[key] = value
    return params


def _parse_bias(text: str) -> tuple[int, int]:
    a, _, b = text.partition(":")
    return int(a), int(b)


def _cmd_generate(args):
    g = generate(args.family, _parse_params(args.param), args.seed)
    _emit(format_graph(g), args.out)


def _cmd_decompose(args):
    g = _read_graph(args.graph)
    delta = Fraction(args.delta)
    doc = {
        "version": DECOMPOSE_VERSION,
        "mode": args.mode,
        "delta": str(delta),
        "seed": args.seed,
        "force": args.force,
        "host": {"fingerprint": g.fingerprint(), "n": g.n, "m": g.m},
    }
    if args.mode == "bfkm":
        k = frac_ceil(delta * g.n)
        part = highly_connected_partition(g, k)
        doc["k"] = k
        doc["parts"] = [sorted(p) for p in part.parts]
        doc["certified_connectivity"] = part.certified_connectivity
        doc["guarantees"] = [
            {
                "size": gu.size,
                "size_floor": str(gu.size_floor),
                "size_ok": gu.size_ok,
                "certified_connectivity": gu.certified_connectivity,
            }
            for gu in part.guarantees
        ]
    elif args.mode == "core":
        core = extract_bipartite_core(g, delta, force=args.force)
        doc["a"] = sorted(core.a)
        doc["b"] = sorted(core.b)
        doc["witness_edge"] = list(core.witness_edge)
        doc["certified_connectivity"] = core.certified_connectivity
        doc["h_min_degree"] = core.h_min_degree
    elif args.mode == "robust":
        rp = robust_partition(g, delta, seed=args.seed)
        doc["parts"] = [sorted(p) for p in rp.parts]
        doc["moved"] = sorted(rp.moved)
        doc["split_count"] = rp.split_count
        doc["part_stats"] = [
            {
                "size": s.size,
                "min_internal_degree": s.min_internal_degree,
                "low_degree_count": s.low_degree_count,
                "sparsest_balanced_cut": s.sparsest_balanced_cut,
            }
            for s in rp.part_stats
        ]
    elif args.mode == "key2":
        core = extract_chromatic_core(g, delta, args.b, force=args.force, seed=args.seed)
        doc["a"] = sorted(core.a)
        doc["b"] = sorted(core.b)
        doc["chi_floor"] = core.chi_floor
        doc["h_min_degree"] = core.h_min_degree
    else:
        raise DomainError(f"unknown decompose mode {args.mode!r}")
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)


def _objective(args) -> WinPredicate:
    return WinPredicate.from_token(args.objective)


def _cmd_play(args):
    g = _read_graph(args.graph)
    a, b = _parse_bias(args.bias)
    spec = GameSpec(
        host=g,
        board_kind=args.board,
        objective=_objective(args),
        maker_bias=a,
        breaker_bias=b,
        first=args.first,
    )
    result, text = play_to_transcript(spec, args.maker, args.breaker, seed=args.seed)
    _emit(text, args.out)
    if args.out:
        sys.stdout.write(f"winner={result.winner} rounds={result.rounds}\n")


def _cmd_solve(args):
    g = _read_graph(args.graph)
    a, b = _parse_bias(args.bias)
    spec = GameSpec(
        host=g,
        board_kind=args.board,
        objective=_objective(args),
        maker_bias=a,
        breaker_bias=b,
        first=args.first,
    )
    verdict = solve(spec, board_cap=args.cap)
    doc = {
        "winner": verdict.winner,
        "nodes_expanded": verdict.nodes_expanded,
        "principal_line": [
            [player, [element_token(spec, el) for el in elements]]
            for player, elements in verdict.principal_line
        ],
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)


def _cmd_verify(args):
    g = _read_graph(args.graph)
    a, b = _parse_bias(args.bias)
    spec = GameSpec(
        host=g,
        board_kind=args.board,
        objective=_objective(args),
        maker_bias=a,
        breaker_bias=b,
        first=args.first,
    )
    maker = build_strategy(args.maker, g)
    res = verify_maker_strategy(spec, maker, node_budget=args.budget)
    doc = {
        "always_wins": res.always_wins,
        "nodes_expanded": res.nodes_expanded,
        "counter": None
        if res.counter is None
        else [
            [player, [element_token(spec, el) for el in elements]]
            for player, elements in res.counter
        ],
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)


def _load_config(path: str) -> ExperimentConfig:
    with open(path) as f:
        return ExperimentConfig.from_dict(json.load(f))


def _cmd_experiment(args):
    config = _load_config(args.config)
    doc = run_experiment(config)
    if args.format == "csv":
        _emit(rows_to_csv(doc), args.out)
    else:
        _emit(doc.canonical_json(include_timestamp=True), args.out)


def _cmd_sweep(args):
    config = _load_config(args.config)
    lo, _, hi = args.b_range.partition(":")
    values = range(int(lo), int(hi) + 1) if hi else [int(lo)]
    docs, summary = sweep_bias(config, values, out_dir=args.out_dir)
    text = json.dumps({"summary": summary}, indent=2, sort_keys=True) + "\n"
    _emit(text, args.out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="makerbreaker")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="write a graph file")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("decompose", parents=[common], help="run a decomposition")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("bfkm", "core", "robust", "key2"), required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_decompose)

    game_common = argparse.ArgumentParser(add_help=False, parents=[common])
    game_common.add_argument("--board", choices=("edges", "vertices"), default="edges")
    game_common.add_argument("--objective", default="odd-cycle")
    game_common.add_argument("--bias", default="1:1")
    game_common.add_argument("--first", choices=("maker", "breaker"), default="maker")

    p = sub.add_parser("play", parents=[game_common], help="play one game")
    p.add_argument("graph")
    p.add_argument("--maker", required=True)
    p.add_argument("--breaker", required=True)
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("solve", parents=[game_common], help="optimal-play winner")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=18)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", parents=[game_common], help="exhaust breaker replies")
    p.add_argument("graph")
    p.add_argument("--maker", required=True)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("experiment", parents=[common], help="run a config file")
    p.add_argument("config")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("sweep", parents=[common], help="sweep breaker bias")
    p.add_argument("config")
    p.add_argument("--b-range", required=True, metavar="LO:HI")
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (DomainError, ResourceLimitError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

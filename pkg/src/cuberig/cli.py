"""Command line for solving, scrambling, lowering, and serving.

Output is line-oriented ``key value`` text so shell pipelines can cut what
they need; everything diagnostic goes to stderr.  Exit status is 0 on
success, 2 on any pipeline error (bad state string, unsolvable position,
broken table cache, missing file).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .compiler import CostModel, compile_moves
from .cube import (
    CubeError,
    SOLVED_CUBIES,
    apply_sequence,
    cubies_to_facelets,
    facelets_to_cubies,
    format_moves,
    parse_facelets,
    parse_moves,
    random_state,
)
from .search import InvalidState, NoSolutionWithinBound, solve
from .sim import CoverFault, encode_serial, format_trace, initial_rig, run_program
from .tables import TableCacheError, cache_stats, default_cache_path, get_tables

log = logging.getLogger("cuberig")

# What a healthy table set looks like; verify mode checks these.
_EXPECTED_STATS = {
    "p1_twist_slice_max": 9,
    "p1_flip_slice_max": 9,
    "p2_corner_slice_max": 14,
    "p2_edge_slice_max": 12,
    "p1_twist_slice_zeros": 1,
    "p1_flip_slice_zeros": 1,
    "p2_corner_slice_zeros": 1,
    "p2_edge_slice_zeros": 1,
}


def _cache_path(args) -> Path | None:
    cache = getattr(args, "table_cache", None)
    return Path(cache) if cache else None


def _cost_model(args) -> CostModel:
    path = getattr(args, "cost_model", None)
    return CostModel.from_file(path) if path else CostModel()


def _resolve_state(args):
    if args.random:
        return random_state(args.seed)
    if args.file:
        text = Path(args.file).read_text().strip()
        return facelets_to_cubies(parse_facelets(text))
    if args.state:
        return facelets_to_cubies(parse_facelets(args.state))
    raise SystemExit("give a facelet string, --file, or --random")


def _cmd_solve(args) -> int:
    c = _resolve_state(args)
    solution = solve(
        c,
        max_length=args.max_length,
        improve=args.improve,
        tables=get_tables(_cache_path(args)),
    )
    print(format_moves(solution))
    return 0


def _cmd_scramble(args) -> int:
    state = random_state(args.seed)
    solution = solve(state, max_length=args.length, tables=get_tables(_cache_path(args)))
    generating = tuple(m.inverse() for m in reversed(solution))
    print(f"state {cubies_to_facelets(state)}")
    print(f"moves {format_moves(generating)}")
    if args.mode == "real":
        prog = compile_moves(generating, _cost_model(args))
        print(f"program {' '.join(p.name for p in prog.primitives)}")
        print(f"serial {encode_serial(prog).hex()}")
        print(f"total_ms {prog.total_ms:g}")
    return 0


def _cmd_compile(args) -> int:
    seq = parse_moves(args.moves)
    prog = compile_moves(seq, _cost_model(args), simplify=not args.no_simplify)
    print(f"program {' '.join(p.name for p in prog.primitives)}")
    print(f"serial {encode_serial(prog).hex()}")
    print(f"total_ms {prog.total_ms:g}")
    return 0


def _cmd_simulate(args) -> int:
    seq = parse_moves(args.moves)
    cost = _cost_model(args)
    start = (
        facelets_to_cubies(parse_facelets(args.state)) if args.state else SOLVED_CUBIES
    )
    prog = compile_moves(seq, cost, simplify=not args.no_simplify)
    end, trace = run_program(initial_rig(start), prog, cost, strict=args.strict)
    if trace:
        print(format_trace(trace))
    print(f"total_ms {end.elapsed_ms:g}")
    print(f"state {cubies_to_facelets(end.cube)}")
    return 0


def _cmd_tables(args) -> int:
    path = _cache_path(args) or default_cache_path()
    if args.action == "build":
        t = get_tables(path)
        for key, value in cache_stats(t).items():
            print(f"{key} {value}")
        print(f"cache {path}")
        return 0
    # verify: the cache must exist, parse, and look like the real tables.
    from .tables import load_tables

    t = load_tables(path)
    stats = cache_stats(t)
    bad = {k: v for k, v in stats.items() if _EXPECTED_STATS[k] != v}
    for key, value in stats.items():
        print(f"{key} {value}")
    if bad:
        print(f"error: table stats off for {sorted(bad)}", file=sys.stderr)
        return 2
    print("ok")
    return 0


def _cmd_bench(args) -> int:
    tables = get_tables(_cache_path(args))
    cost = _cost_model(args)
    lengths: dict[int, int] = {}
    total_compiled = 0.0
    for i in range(args.n):
        state = random_state(args.seed + i)
        solution = solve(state, tables=tables)
        if apply_sequence(state, solution) != SOLVED_CUBIES:
            print(f"error: unsound solution for seed {args.seed + i}", file=sys.stderr)
            return 2
        lengths[len(solution)] = lengths.get(len(solution), 0) + 1
        total_compiled += compile_moves(solution, cost).total_ms
    for n in sorted(lengths):
        print(f"length {n} {lengths[n]}")
    mean_len = sum(k * v for k, v in lengths.items()) / args.n
    print(f"mean_length {mean_len:.2f}")
    print(f"mean_compiled_ms {total_compiled / args.n:.1f}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    tables = get_tables(_cache_path(args))
    app = create_app(tables=tables, cost=_cost_model(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _add_table_cache(sp) -> None:
    sp.add_argument(
        "--table-cache",
        metavar="PATH",
        help="table cache file (default: $RIG_TABLE_CACHE or ~/.cache/cuberig)",
    )


def _add_cost_model(sp) -> None:
    sp.add_argument(
        "--cost-model",
        metavar="PATH",
        help="key-value timing file; missing keys use the measured defaults",
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cuberig",
        description="two-phase cube solving and rig program generation",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve a facelet string")
    sp.add_argument("state", nargs="?", help="54-character facelet string")
    sp.add_argument("--file", help="read the facelet string from a file")
    sp.add_argument("--random", action="store_true", help="solve a seeded random state")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-length", type=int, default=24)
    sp.add_argument("--improve", action="store_true", help="keep searching for shorter")
    _add_table_cache(sp)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("scramble", help="seeded random state plus moves reaching it")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=("virtual", "real"), default="virtual")
    sp.add_argument("--length", type=int, default=24, help="cap on generating moves")
    _add_table_cache(sp)
    _add_cost_model(sp)
    sp.set_defaults(func=_cmd_scramble)

    sp = sub.add_parser("compile", help="lower a move sequence to rig primitives")
    sp.add_argument("moves", help="move sequence, e.g. \"R U2 B'\"")
    sp.add_argument(
        "--no-simplify",
        action="store_true",
        help="lower literally, keeping redundant moves",
    )
    _add_cost_model(sp)
    sp.set_defaults(func=_cmd_compile)

    sp = sub.add_parser("simulate", help="run a sequence on the simulated rig")
    sp.add_argument("moves")
    sp.add_argument("--state", help="starting facelets (default: solved)")
    sp.add_argument("--strict", action="store_true", help="fault on raised-cover turns")
    sp.add_argument("--no-simplify", action="store_true")
    _add_cost_model(sp)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("tables", help="build or verify the table cache")
    sp.add_argument("action", choices=("build", "verify"))
    _add_table_cache(sp)
    sp.set_defaults(func=_cmd_tables)

    sp = sub.add_parser("bench", help="timing and length stats over seeded solves")
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0, help="first seed of the run")
    _add_table_cache(sp)
    _add_cost_model(sp)
    sp.set_defaults(func=_cmd_bench)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    _add_table_cache(sp)
    _add_cost_model(sp)
    sp.set_defaults(func=_cmd_serve)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (
        CubeError,
        InvalidState,
        NoSolutionWithinBound,
        CoverFault,
        TableCacheError,
        OSError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

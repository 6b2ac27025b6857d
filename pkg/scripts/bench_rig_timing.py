#!/usr/bin/env python3
"""Timing study: how long does the rig take to solve a random scramble?

Draws seeded random states, solves each, lowers the solution to motor
primitives, and runs it through the simulator to get the wall time the
physical rig would need.  Reports the solution-length histogram and the
distribution of execution times, optionally restricted to a window of
solution lengths so runs are comparable across solver settings.

The defaults (1000 states, lengths 18..24) reproduce the published study;
expect a mean around 128-146 seconds of simulated rig time per solve.
"""

from __future__ import annotations

import argparse
import logging
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cuberig.compiler import CostModel, compile_moves
from cuberig.cube import SOLVED_CUBIES, apply_sequence, random_state
from cuberig.search import solve
from cuberig.sim import initial_rig, run_program
from cuberig.tables import get_tables

log = logging.getLogger("bench_rig_timing")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", type=int, default=1000, help="number of scrambles")
    parser.add_argument("--seed", type=int, default=30000, help="first seed")
    parser.add_argument(
        "--lengths",
        default="18:24",
        metavar="LO:HI",
        help="keep only solutions in this length window ('all' to disable)",
    )
    parser.add_argument(
        "--cost-model", metavar="PATH", help="key-value timing overrides"
    )
    parser.add_argument("--table-cache", metavar="PATH")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    if args.lengths == "all":
        lo, hi = 0, 24
    else:
        lo, hi = (int(part) for part in args.lengths.split(":"))
    cost = CostModel.from_file(args.cost_model) if args.cost_model else CostModel()
    tables = get_tables(Path(args.table_cache) if args.table_cache else None)

    times_ms: list[float] = []
    lengths: dict[int, int] = {}
    seed = args.seed
    t0 = time.perf_counter()
    while len(times_ms) < args.n:
        state = random_state(seed)
        seed += 1
        solution = solve(state, tables=tables)
        assert apply_sequence(state, solution) == SOLVED_CUBIES
        if not lo <= len(solution) <= hi:
            continue
        program = compile_moves(solution, cost)
        end, _ = run_program(initial_rig(state), program, cost)
        assert end.cube == SOLVED_CUBIES
        times_ms.append(end.elapsed_ms)
        lengths[len(solution)] = lengths.get(len(solution), 0) + 1
    log.info(
        "%d runs from %d seeds in %.1fs", args.n, seed - args.seed, time.perf_counter() - t0
    )

    for n in sorted(lengths):
        print(f"length {n} {lengths[n]}")
    times_ms.sort()
    print(f"runs {len(times_ms)}")
    print(f"mean_ms {statistics.fmean(times_ms):.1f}")
    print(f"stdev_ms {statistics.stdev(times_ms):.1f}")
    print(f"min_ms {times_ms[0]:g}")
    print(f"p50_ms {times_ms[len(times_ms) // 2]:g}")
    print(f"p90_ms {times_ms[int(len(times_ms) * 0.9)]:g}")
    print(f"max_ms {times_ms[-1]:g}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

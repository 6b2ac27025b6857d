"""Two-phase solver.

The outer loop deepens the phase-1 budget d from zero while keeping the
best total bound b (infinity at first).  Each level collects every
canonical phase-1 sequence of length exactly d that lands in the
half-turn subgroup, together with its phase-2 coordinates and heuristic.
The collected entry points then share one deepening loop: a phase-2
budget rises from the smallest heuristic in the pool, and every entry
whose bound fits gets a bounded search at that budget.  The first hit at
budget t is a d + t solution, and no entry can beat it at this level, so
entries with optimistic heuristics never drag the level into a deep
lone-wolf search while cheaper finishes wait unseen.  Every success
tightens b; the loop ends when d reaches b (or the move cap, or the
caller's budget).  Without ``improve`` the first hit returns
immediately.

Both phases run as frontier expansions rather than per-node recursion:
a level is a set of parallel coordinate arrays, children of all frontier
rows are gathered from the move tables in one shot, and the pruning
tables mask out every child whose admissible bound no longer fits the
remaining budget.  Parent and move arrays per level let a hit walk back
to its move sequence.  A node here means one expanded frontier row, and
budgets are checked between levels, so runs with the same node budget
are bit-for-bit repeatable.

Move ordering is canonical everywhere: faces U, R, F, D, L, B with
clockwise, half, counterclockwise turns per face; a face never follows
itself; of two adjacent turns on one axis, the lower-indexed face must
come first.  Phase-1 sequences may not end with a phase-2 move (such a
candidate is the extension of a shorter one already tried), and phase 2
continues under the same adjacency rule across the seam.
"""

from __future__ import annotations

import time
from typing import Callable

import numpy as np

from .coords import (
    N_SLICE,
    encode_corner_perm,
    encode_d_edges,
    encode_flip,
    encode_slice_sorted,
    encode_twist,
    encode_u_edges,
    rank_perm,
)
from .cube import ALL_MOVES, CubieState, MoveSequence, Verdict, validate
from .tables import N_MOVES, P2_MOVES, SolverTables, get_tables

__all__ = ["solve", "InvalidState", "NoSolutionWithinBound", "MAX_SOLUTION_LENGTH"]

MAX_SOLUTION_LENGTH = 24

_P2_SET = frozenset(P2_MOVES)

# Face of each move column, and the successor masks: after a move of face
# f, the same face is barred and of the two faces on one axis the lower
# index must come first (so U before D, R before L, F before B).  Row 6
# is the unconstrained start.
_FACE18 = np.arange(N_MOVES) // 3
_ALLOW1 = np.ones((7, N_MOVES), dtype=bool)
for _p in range(6):
    _ALLOW1[_p] = (_FACE18 != _p) & (_FACE18 != _p - 3)
_NONP2 = np.array([m not in _P2_SET for m in range(N_MOVES)])
_P2_COLS = np.array(P2_MOVES)
_P2_FACE = _FACE18[_P2_COLS]
_ALLOW2 = np.ascontiguousarray(_ALLOW1[:, _P2_COLS])
_FACE18_I8 = _FACE18.astype(np.int8)
_P2_FACE_I8 = _P2_FACE.astype(np.int8)

# Frontier slices processed per gather, to keep temporaries bounded.
_CHUNK = 1 << 17


class InvalidState(Exception):
    """The state cannot be solved (or is not even a permutation)."""

    def __init__(self, verdict: Verdict | None, message: str | None = None):
        self.verdict = verdict
        super().__init__(message or f"state violates {verdict.value}")


class NoSolutionWithinBound(Exception):
    def __init__(self, max_length: int):
        self.max_length = max_length
        super().__init__(f"no solution within {max_length} moves")


def _walk_back(parents: list, moves: list, row: int) -> list[int]:
    """Recover the move column sequence leading to ``row`` of the last level."""
    out = []
    for par, mv in zip(reversed(parents), reversed(moves)):
        out.append(int(mv[row]))
        row = int(par[row])
    out.reverse()
    return out


def _run_search(
    c: CubieState,
    t: SolverTables,
    max_length: int,
    improve: bool,
    node_budget: int | None,
    time_budget: float | None,
    on_improve,
    stats: dict | None,
) -> list[int] | None:
    twist0 = encode_twist(c)
    flip0 = encode_flip(c)
    srt0 = encode_slice_sorted(c)
    slice0 = srt0 // 24
    ue0 = encode_u_edges(c)
    de0 = encode_d_edges(c)
    cp0 = encode_corner_perm(c)

    tm = t.twist_move_np
    fm = t.flip_move_np
    sm = t.slice_move_np
    pts = t.p1_twist_slice_np
    pfs = t.p1_flip_slice_np
    cm18 = t.corner_perm_move_np
    uem = t.u_edges_move_np
    dem = t.d_edges_move_np
    srtm = t.slice_sorted_move_np
    cm10 = t.corner_perm_move_p2_np
    em10 = t.ud_edge_perm_move_np
    spm10 = t.slice_perm_move_np
    pcs = t.p2_corner_slice_np
    pes = t.p2_edge_slice_np
    u_dec = t.u_edges_decode
    d_dec = t.d_edges_decode

    deadline = time.monotonic() + time_budget if time_budget is not None else None

    best: list[int] | None = None
    bound = max_length + 1
    nodes = 0

    def over_budget() -> bool:
        # Budgets only bite once some solution exists: the caller is
        # always handed at least one answer.
        if best is None:
            return False
        if node_budget is not None and nodes > node_budget:
            return True
        return deadline is not None and time.monotonic() > deadline

    def expand_level_1(tw, fl, sl, prevf, cp, ue, de, srt, rem, last):
        """Children of a phase-1 frontier whose pruning bound fits rem."""
        parts = []
        for s in range(0, tw.size, _CHUNK):
            e = s + _CHUNK
            ntw = tm[tw[s:e]]
            nfl = fm[fl[s:e]]
            nsl = sm[sl[s:e]]
            ok = _ALLOW1[prevf[s:e]]
            ok &= pts[ntw * N_SLICE + nsl] <= rem
            ok &= pfs[nfl * N_SLICE + nsl] <= rem
            if last:
                ok &= _NONP2
            rows, cols = np.nonzero(ok)
            parts.append(
                (
                    ntw[rows, cols],
                    nfl[rows, cols],
                    nsl[rows, cols],
                    cm18[cp[s:e][rows], cols],
                    uem[ue[s:e][rows], cols],
                    dem[de[s:e][rows], cols],
                    srtm[srt[s:e][rows], cols],
                    (rows + s).astype(np.int32),
                    cols.astype(np.int8),
                )
            )
        return [np.concatenate(field) for field in zip(*parts)]

    def collect_exits(d):
        """Subgroup arrivals after exactly d canonical moves.

        Returns the phase-2 coordinate arrays plus the per-level parent
        and move stacks needed to rebuild any arrival's move sequence,
        or None when the level was emptied by pruning or the budget.
        """
        nonlocal nodes
        if d == 0:
            in_subgroup = twist0 == 0 and flip0 == 0 and slice0 == 0
            if not in_subgroup:
                return None
            cp = np.array([cp0], dtype=np.int32)
            ue = np.array([ue0], dtype=np.int32)
            de = np.array([de0], dtype=np.int32)
            srt = np.array([srt0], dtype=np.int32)
            prevf = np.array([6], dtype=np.int8)
            return cp, ue, de, srt, prevf, [], []
        tw = np.array([twist0], dtype=np.int32)
        fl = np.array([flip0], dtype=np.int32)
        sl = np.array([slice0], dtype=np.int32)
        cp = np.array([cp0], dtype=np.int32)
        ue = np.array([ue0], dtype=np.int32)
        de = np.array([de0], dtype=np.int32)
        srt = np.array([srt0], dtype=np.int32)
        prevf = np.array([6], dtype=np.int8)
        parents: list = []
        movecols: list = []
        for level in range(d):
            nodes += tw.size
            if over_budget():
                return None
            rem = d - level - 1
            tw, fl, sl, cp, ue, de, srt, par, mv = expand_level_1(
                tw, fl, sl, prevf, cp, ue, de, srt, rem, last=rem == 0
            )
            if tw.size == 0:
                return None
            parents.append(par)
            movecols.append(mv)
            prevf = _FACE18_I8[mv]
        return cp, ue, de, srt, prevf, parents, movecols

    def seam_entries(cp, ue, de, srt, prevf, cap):
        """Phase-2 coordinates and bounds of subgroup arrivals within cap.

        The slice coordinate of an arrival is pure order (the combination
        part is home), so ``srt`` doubles as the slice permutation.  The
        corner-side bound filters arrivals before the edge merge, which
        is the only scalar step left.
        """
        hc = pcs[cp * 24 + srt]
        keep = np.nonzero(hc <= cap)[0]
        if keep.size == 0:
            return None
        ep = np.empty(keep.size, dtype=np.int32)
        for i, j in enumerate(keep):
            slots_u, order_u = u_dec[ue[j]]
            slots_d, order_d = d_dec[de[j]]
            ep8 = [0] * 8
            for k in range(4):
                ep8[slots_u[k]] = order_u[k]
                ep8[slots_d[k]] = 4 + order_d[k]
            ep[i] = rank_perm(ep8)
        sp = srt[keep]
        h = np.maximum(hc[keep], pes[ep * 24 + sp])
        ok = np.nonzero(h <= cap)[0]
        if ok.size == 0:
            return None
        kept = keep[ok]
        return cp[kept], ep[ok], sp[ok], prevf[kept], h[ok], kept

    def search_pool(xcp, xep, xsp, xprev, xh, t2):
        """One phase-2 round: every entry with bound <= t2 deepens to t2.

        Returns (entry index, move column sequence) for the first hit in
        expansion order, or None.  Hits surface only on the last level:
        a child passes the final mask only with both pruning entries at
        zero, which happens at the goal alone.
        """
        nonlocal nodes
        active = np.nonzero(xh <= t2)[0]
        if active.size == 0:
            return None
        if t2 == 0:
            # A zero bound is the goal itself.
            return int(active[0]), []
        cp = xcp[active]
        ep = xep[active]
        sp = xsp[active]
        prevf = xprev[active]
        parents: list = []
        movecols: list = []
        for level in range(t2):
            nodes += cp.size
            if over_budget():
                return None
            rem = t2 - level - 1
            parts = []
            for s in range(0, cp.size, _CHUNK):
                e = s + _CHUNK
                ncp = cm10[cp[s:e]]
                nep = em10[ep[s:e]]
                nsp = spm10[sp[s:e]]
                ok = _ALLOW2[prevf[s:e]]
                ok &= pcs[ncp * 24 + nsp] <= rem
                ok &= pes[nep * 24 + nsp] <= rem
                rows, cols = np.nonzero(ok)
                if rem == 0 and rows.size:
                    # Goal arrivals; the first one wins.
                    row = int(rows[0]) + s
                    moves = _walk_back(parents, movecols, row)
                    moves.append(int(cols[0]))
                    entry = row
                    for par in reversed(parents):
                        entry = int(par[entry])
                    return int(active[entry]), moves
                parts.append(
                    (
                        ncp[rows, cols],
                        nep[rows, cols],
                        nsp[rows, cols],
                        (rows + s).astype(np.int32),
                        cols.astype(np.int8),
                    )
                )
            if rem == 0:
                return None
            cp, ep, sp, par, mv = [np.concatenate(f) for f in zip(*parts)]
            if cp.size == 0:
                return None
            parents.append(par)
            movecols.append(mv)
            prevf = _P2_FACE_I8[mv]
        return None

    h0 = max(pts[twist0 * N_SLICE + slice0], pfs[flip0 * N_SLICE + slice0])
    d = int(h0)
    stop = False
    while d < bound and d <= max_length and not stop:
        arrivals = collect_exits(d)
        if arrivals is None:
            if over_budget():
                break
            d += 1
            continue
        cp, ue, de, srt, prevf, parents1, movecols1 = arrivals
        cap = min(bound - d - 1, max_length - d)
        entries = seam_entries(cp, ue, de, srt, prevf, cap)
        if entries is None:
            d += 1
            continue
        xcp, xep, xsp, xprev, xh, xrows = entries
        t2 = int(xh.min())
        while not stop:
            cap = min(bound - d - 1, max_length - d)
            if t2 > cap:
                break
            hit = search_pool(xcp, xep, xsp, xprev, xh, t2)
            if hit is not None:
                entry, p2cols = hit
                row = int(xrows[entry])
                p1 = _walk_back(parents1, movecols1, row)
                best = p1 + [int(P2_MOVES[k]) for k in p2cols]
                bound = d + t2
                if on_improve is not None:
                    on_improve(tuple(ALL_MOVES[m] for m in best))
                if not improve or over_budget():
                    stop = True
            elif over_budget():
                stop = True
            t2 += 1
        d += 1
    if stats is not None:
        stats["nodes"] = nodes
    return best


def solve(
    c: CubieState,
    max_length: int = MAX_SOLUTION_LENGTH,
    improve: bool = False,
    *,
    node_budget: int | None = None,
    time_budget: float | None = None,
    tables: SolverTables | None = None,
    on_improve: Callable[[MoveSequence], None] | None = None,
    stats: dict | None = None,
) -> MoveSequence:
    """Find a move sequence taking ``c`` to solved.

    Without ``improve``, returns the first solution of length at most
    ``max_length``.  With it, keeps tightening the bound until the
    deepening loop closes or the budget runs out, then returns the best
    solution seen; each interim result is passed to ``on_improve`` and is
    strictly shorter than the previous one.  Budgets only ever cut the
    search short after at least one solution is in hand, so the result is
    always a genuine solution.

    Identical inputs, flags, and node budget give identical output; a
    wall-clock budget (``time_budget``, seconds) trades that determinism
    for latency control.
    """
    if not c.is_bijective():
        raise InvalidState(None, "corner/edge permutations are not bijective")
    verdict = validate(c)
    if verdict is not Verdict.VALID:
        raise InvalidState(verdict)
    if tables is None:
        tables = get_tables()
    best = _run_search(
        c, tables, max_length, improve, node_budget, time_budget, on_improve, stats
    )
    if best is None:
        raise NoSolutionWithinBound(max_length)
    return tuple(ALL_MOVES[m] for m in best)

"""Coordinate encodings for the two-phase search.

Phase 1 works in (twist, flip, slice): corner orientations as a base-3
number over the first seven corners, edge orientations as a base-2
number over the first eleven edges, and the combination (ignoring
order) of the four middle-slice edges FR, FL, BL, BR over the twelve
edge slots.  (0, 0, 0) holds exactly when the state lies in the
half-turn subgroup reached by phase 1.

Phase 2 works in (corner_perm, ud_edge_perm, slice_perm): lexicographic
ranks of the corner permutation, of the U/D-edge permutation over slots
UR..DB, and of the slice-edge permutation over slots FR..BR.  These are
only defined inside the subgroup; encode_phase2 refuses anything else.

The solver also tracks three 11880-way coordinates (position and order
of a chosen group of four edges): the slice pack directly, plus the U
and D edge groups, which merge into ud_edge_perm once phase 1 lands.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb
from typing import NamedTuple

from .cube import CubieState

N_TWIST = 2187
N_FLIP = 2048
N_SLICE = 495
N_SLICE_SORTED = 11880
N_PERM8 = 40320
N_PERM4 = 24


class NotInSubgroup(Exception):
    """State is outside the phase-2 subgroup (orientation or slice off)."""


class Phase1Coord(NamedTuple):
    twist: int
    flip: int
    slice: int


class Phase2Coord(NamedTuple):
    corner_perm: int
    ud_edge_perm: int
    slice_perm: int


# --- orientations -----------------------------------------------------------


def encode_twist(c: CubieState) -> int:
    t = 0
    for i in range(7):
        t = 3 * t + c.corner_orient[i]
    return t


def decode_twist(t: int) -> tuple[int, ...]:
    co = [0] * 8
    for i in range(6, -1, -1):
        co[i] = t % 3
        t //= 3
    co[7] = (-sum(co)) % 3
    return tuple(co)


def encode_flip(c: CubieState) -> int:
    f = 0
    for i in range(11):
        f = 2 * f + c.edge_orient[i]
    return f


def decode_flip(f: int) -> tuple[int, ...]:
    eo = [0] * 12
    for i in range(10, -1, -1):
        eo[i] = f % 2
        f //= 2
    eo[11] = sum(eo) % 2
    return tuple(eo)


# --- tracked groups of four edges --------------------------------------------

# Rank of a 4-subset of the 12 slots such that {8,9,10,11} (the home of
# the slice edges) ranks 0.  Scanning slots high to low, a subset pays
# comb(11-j, seen+1) for each member at slot j.
_SUBSETS = sorted(
    combinations(range(12), 4),
    key=lambda s: sum(comb(11 - j, k + 1) for k, j in enumerate(sorted(s, reverse=True))),
)


def _subset_rank(slots_desc) -> int:
    a = 0
    for k, j in enumerate(slots_desc):
        a += comb(11 - j, k + 1)
    return a


_PERM4 = tuple(permutations(range(4)))
_PERM4_RANK = {p: i for i, p in enumerate(_PERM4)}


def encode_tracked4(edge_perm, lo: int) -> int:
    """Position-and-order coordinate of the four edges lo..lo+3: 24 times
    the subset rank of their slots plus the rank of their order."""
    slots_desc = []
    order_desc = []
    for j in range(11, -1, -1):
        e = edge_perm[j]
        if lo <= e <= lo + 3:
            slots_desc.append(j)
            order_desc.append(e - lo)
    a = _subset_rank(slots_desc)
    b = _PERM4_RANK[tuple(reversed(order_desc))]
    return 24 * a + b


def decode_tracked4(coord: int, lo: int) -> tuple[int, ...]:
    """A representative edge permutation with the tracked four placed per
    ``coord`` and the remaining edges filled in ascending order."""
    a, b = divmod(coord, 24)
    slots = _SUBSETS[a]
    order = _PERM4[b]
    ep = [-1] * 12
    for k, slot in enumerate(slots):
        ep[slot] = lo + order[k]
    rest = [e for e in range(12) if not lo <= e <= lo + 3]
    it = iter(rest)
    for j in range(12):
        if ep[j] < 0:
            ep[j] = next(it)
    return tuple(ep)


def encode_slice_sorted(c: CubieState) -> int:
    return encode_tracked4(c.edge_perm, 8)


def encode_slice(c: CubieState) -> int:
    """Combination-only slice coordinate: 0 iff FR,FL,BL,BR are home."""
    return encode_slice_sorted(c) // 24


def encode_u_edges(c: CubieState) -> int:
    return encode_tracked4(c.edge_perm, 0)


def encode_d_edges(c: CubieState) -> int:
    return encode_tracked4(c.edge_perm, 4)


# --- permutation ranks --------------------------------------------------------


def rank_perm(perm) -> int:
    """Lexicographic rank; identity ranks 0."""
    n = len(perm)
    r = 0
    fact = 1
    for i in range(2, n):
        fact *= i
    # fact == (n-1)! entering the loop, (n-1-i)! at step i.
    for i in range(n - 1):
        smaller = 0
        for j in range(i + 1, n):
            if perm[j] < perm[i]:
                smaller += 1
        r += smaller * fact
        fact //= n - 1 - i
    return r


def unrank_perm(r: int, n: int) -> tuple[int, ...]:
    items = list(range(n))
    fact = 1
    for i in range(2, n):
        fact *= i
    out = []
    for i in range(n - 1, 0, -1):
        idx, r = divmod(r, fact)
        out.append(items.pop(idx))
        fact //= i
    out.append(items[0])
    return tuple(out)


def encode_corner_perm(c: CubieState) -> int:
    return rank_perm(c.corner_perm)


def decode_corner_perm(r: int) -> tuple[int, ...]:
    return unrank_perm(r, 8)


def encode_phase1(c: CubieState) -> Phase1Coord:
    return Phase1Coord(encode_twist(c), encode_flip(c), encode_slice(c))


def encode_phase2(c: CubieState) -> Phase2Coord:
    """Phase-2 coordinates; raises NotInSubgroup outside the subgroup."""
    if any(c.corner_orient) or any(c.edge_orient):
        raise NotInSubgroup("orientations are not all zero")
    if any(e < 8 for e in c.edge_perm[8:]):
        raise NotInSubgroup("slice edges are not in the middle slice")
    ud = c.edge_perm[:8]
    sl = tuple(e - 8 for e in c.edge_perm[8:])
    return Phase2Coord(
        rank_perm(c.corner_perm), rank_perm(ud), _PERM4_RANK[sl]
    )


def decode_slice_perm(r: int) -> tuple[int, ...]:
    return _PERM4[r]

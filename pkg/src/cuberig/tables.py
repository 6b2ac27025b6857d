"""Move tables, pruning tables, and their on-disk cache.

Each table exists in two shapes: a flat Python list indexed by
``coord * stride + move`` for scalar code, and a 2-D numpy array (rows =
coordinate, columns = move) that the search gathers whole frontiers
against.  Tables are built once (a few seconds, numpy does the heavy
lifting) and persisted to a cache file for later runs.

Cache file layout: magic ``RCS1``, a little-endian u16 format version,
then one length-prefixed (u32 byte count, little-endian) raw array per
table in the order of _TABLE_SPECS.  The loader re-validates every
length; in particular the four pruning tables must hold exactly
2187*495, 2048*495, 40320*24 and 40320*24 one-byte entries.

The environment variable ``RIG_TABLE_CACHE`` overrides the default
cache location.

Pruning tables pair two coordinates and hold the exact breadth-first
distance of that pair to its goal under the legal move set, which makes
them admissible lower bounds for the true remaining move count.  Entry
0 occurs exactly at the goal pair.
"""

from __future__ import annotations

import logging
import os
import struct
import tempfile
import threading
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

import numpy as np

from .coords import (
    N_FLIP,
    N_PERM4,
    N_PERM8,
    N_SLICE,
    N_SLICE_SORTED,
    N_TWIST,
    decode_flip,
    decode_tracked4,
    decode_twist,
)
from .cube import ALL_MOVES, Face, Move, Turn, apply_move, SOLVED_CUBIES
from .cube import CubieState

log = logging.getLogger(__name__)

CACHE_MAGIC = b"RCS1"
CACHE_VERSION = 1

N_MOVES = 18
#: Indices (into ALL_MOVES) of the ten phase-2 moves, in canonical order:
#: U, U2, U', R2, F2, D, D2, D', L2, B2.
P2_MOVES = (0, 1, 2, 4, 7, 9, 10, 11, 13, 16)
N_P2_MOVES = 10

_TABLE_SPECS = (
    ("twist_move", N_TWIST * N_MOVES, "<u2"),
    ("flip_move", N_FLIP * N_MOVES, "<u2"),
    ("slice_move", N_SLICE * N_MOVES, "<u2"),
    ("slice_sorted_move", N_SLICE_SORTED * N_MOVES, "<u2"),
    ("u_edges_move", N_SLICE_SORTED * N_MOVES, "<u2"),
    ("d_edges_move", N_SLICE_SORTED * N_MOVES, "<u2"),
    ("corner_perm_move", N_PERM8 * N_MOVES, "<u2"),
    ("ud_edge_perm_move", N_PERM8 * N_P2_MOVES, "<u2"),
    ("slice_perm_move", N_PERM4 * N_P2_MOVES, "u1"),
    ("p1_twist_slice", N_TWIST * N_SLICE, "u1"),
    ("p1_flip_slice", N_FLIP * N_SLICE, "u1"),
    ("p2_corner_slice", N_PERM8 * N_PERM4, "u1"),
    ("p2_edge_slice", N_PERM8 * N_PERM4, "u1"),
)


class TableCacheError(Exception):
    """The cache file is missing, truncated, or from another format."""


@dataclass
class SolverTables:
    twist_move: list
    flip_move: list
    slice_move: list
    slice_sorted_move: list
    u_edges_move: list
    d_edges_move: list
    corner_perm_move: list
    ud_edge_perm_move: list
    slice_perm_move: list
    p1_twist_slice: list
    p1_flip_slice: list
    p2_corner_slice: list
    p2_edge_slice: list
    # Derived at load time, not persisted: decoded slot/order pairs of the
    # U-edge and D-edge group coordinates, used to assemble the phase-2
    # ud_edge_perm when phase 1 lands in the subgroup.
    u_edges_decode: list | None = None
    d_edges_decode: list | None = None
    # Also derived: the same tables as 2-D numpy arrays (rows = coordinate,
    # columns = move), which the search expands whole frontiers against.
    # Pruning tables stay flat.  corner_perm_move_p2_np is the ten
    # phase-2 columns of corner_perm_move_np, in phase-2 move order.
    twist_move_np: np.ndarray | None = None
    flip_move_np: np.ndarray | None = None
    slice_move_np: np.ndarray | None = None
    slice_sorted_move_np: np.ndarray | None = None
    u_edges_move_np: np.ndarray | None = None
    d_edges_move_np: np.ndarray | None = None
    corner_perm_move_np: np.ndarray | None = None
    corner_perm_move_p2_np: np.ndarray | None = None
    ud_edge_perm_move_np: np.ndarray | None = None
    slice_perm_move_np: np.ndarray | None = None
    p1_twist_slice_np: np.ndarray | None = None
    p1_flip_slice_np: np.ndarray | None = None
    p2_corner_slice_np: np.ndarray | None = None
    p2_edge_slice_np: np.ndarray | None = None


# ---------------------------------------------------------------------------
# Building


def _move_cubie_actions():
    """(corner slot map, corner twist add, edge slot map, edge flip add)
    for each of the 18 moves, taken straight from the cube model."""
    actions = []
    for m in ALL_MOVES:
        c = apply_move(SOLVED_CUBIES, m)
        actions.append((c.corner_perm, c.corner_orient, c.edge_perm, c.edge_orient))
    return actions


def _build_twist_move(actions) -> np.ndarray:
    out = np.empty((N_TWIST, N_MOVES), dtype=np.uint16)
    for t in range(N_TWIST):
        co = decode_twist(t)
        for m, (mcp, mco, _, _) in enumerate(actions):
            v = 0
            for i in range(7):
                v = 3 * v + (co[mcp[i]] + mco[i]) % 3
            out[t, m] = v
    return out


def _build_flip_move(actions) -> np.ndarray:
    out = np.empty((N_FLIP, N_MOVES), dtype=np.uint16)
    for f in range(N_FLIP):
        eo = decode_flip(f)
        for m, (_, _, mep, meo) in enumerate(actions):
            v = 0
            for i in range(11):
                v = 2 * v + (eo[mep[i]] + meo[i]) % 2
            out[f, m] = v
    return out


def _build_tracked4_move(actions, lo: int) -> np.ndarray:
    """Move table for the position-and-order coordinate of edges lo..lo+3."""
    marked = []
    marked_rank = {}
    for coord in range(N_SLICE_SORTED):
        ep = decode_tracked4(coord, lo)
        key = tuple(e - lo if lo <= e <= lo + 3 else -1 for e in ep)
        marked.append(key)
        marked_rank[key] = coord
    out = np.empty((N_SLICE_SORTED, N_MOVES), dtype=np.uint16)
    for coord in range(N_SLICE_SORTED):
        src = marked[coord]
        for m, (_, _, mep, _) in enumerate(actions):
            out[coord, m] = marked_rank[tuple(src[mep[i]] for i in range(12))]
    return out


def _rank_rows_perm8(rows: np.ndarray) -> np.ndarray:
    """Vectorized lexicographic rank of many length-8 permutations."""
    fact = np.array([5040, 720, 120, 24, 6, 2, 1], dtype=np.int64)
    rank = np.zeros(len(rows), dtype=np.int64)
    for i in range(7):
        smaller = (rows[:, i + 1 :] < rows[:, i : i + 1]).sum(axis=1)
        rank += smaller.astype(np.int64) * fact[i]
    return rank


_ALL_PERM8 = np.array(list(permutations(range(8))), dtype=np.int8)


def _build_corner_perm_move(actions) -> np.ndarray:
    out = np.empty((N_PERM8, N_MOVES), dtype=np.uint16)
    for m, (mcp, _, _, _) in enumerate(actions):
        moved = _ALL_PERM8[:, list(mcp)]
        out[:, m] = _rank_rows_perm8(moved)
    return out


def _build_ud_edge_perm_move(actions) -> np.ndarray:
    out = np.empty((N_PERM8, N_P2_MOVES), dtype=np.uint16)
    for k, gm in enumerate(P2_MOVES):
        mep = actions[gm][2]
        mep8 = mep[:8]
        if any(s >= 8 for s in mep8):
            raise AssertionError("phase-2 move leaks U/D edges into the slice")
        moved = _ALL_PERM8[:, list(mep8)]
        out[:, k] = _rank_rows_perm8(moved)
    return out


def _build_slice_perm_move(actions) -> np.ndarray:
    perms = list(permutations(range(4)))
    rank = {p: i for i, p in enumerate(perms)}
    out = np.empty((N_PERM4, N_P2_MOVES), dtype=np.uint8)
    for k, gm in enumerate(P2_MOVES):
        mep = actions[gm][2]
        action = tuple(mep[8 + i] - 8 for i in range(4))
        if any(a < 0 or a > 3 for a in action):
            raise AssertionError("phase-2 move leaks slice edges out of the slice")
        for r, p in enumerate(perms):
            out[r, k] = rank[tuple(p[action[i]] for i in range(4))]
    return out


def _bfs_pair(mt_a: np.ndarray, mt_b: np.ndarray, nb: int) -> np.ndarray:
    """Exact distances over the paired coordinate space from pair (0, 0)."""
    n_moves = mt_a.shape[1]
    na = mt_a.shape[0]
    dist = np.full(na * nb, -1, dtype=np.int8)
    dist[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    d = 0
    a64 = mt_a.astype(np.int64)
    b64 = mt_b.astype(np.int64)
    while frontier.size:
        a, b = np.divmod(frontier, nb)
        step = [a64[a, m] * nb + b64[b, m] for m in range(n_moves)]
        nxt = np.unique(np.concatenate(step))
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = d + 1
        frontier = nxt
        d += 1
    if (dist < 0).any():
        raise AssertionError("pruning table has unreachable entries")
    return dist.astype(np.uint8)


def build_tables() -> SolverTables:
    """Construct every table from scratch.  Takes a little while; callers
    normally go through get_tables(), which caches on disk."""
    log.info("building move and pruning tables (first run)")
    actions = _move_cubie_actions()

    twist_move = _build_twist_move(actions)
    flip_move = _build_flip_move(actions)
    slice_sorted_move = _build_tracked4_move(actions, 8)
    u_edges_move = _build_tracked4_move(actions, 0)
    d_edges_move = _build_tracked4_move(actions, 4)
    # The combination part is independent of the order part, so the slice
    # table is the sorted table sampled at order 0, divided down.
    slice_move = (slice_sorted_move[::24, :] // 24).astype(np.uint16)
    corner_perm_move = _build_corner_perm_move(actions)
    ud_edge_perm_move = _build_ud_edge_perm_move(actions)
    slice_perm_move = _build_slice_perm_move(actions)

    p1_twist_slice = _bfs_pair(twist_move, slice_move, N_SLICE)
    p1_flip_slice = _bfs_pair(flip_move, slice_move, N_SLICE)
    cp10 = corner_perm_move[:, list(P2_MOVES)]
    p2_corner_slice = _bfs_pair(cp10, slice_perm_move, N_PERM4)
    p2_edge_slice = _bfs_pair(ud_edge_perm_move, slice_perm_move, N_PERM4)

    raw = {
        "twist_move": twist_move.reshape(-1),
        "flip_move": flip_move.reshape(-1),
        "slice_move": slice_move.reshape(-1),
        "slice_sorted_move": slice_sorted_move.reshape(-1),
        "u_edges_move": u_edges_move.reshape(-1),
        "d_edges_move": d_edges_move.reshape(-1),
        "corner_perm_move": corner_perm_move.reshape(-1),
        "ud_edge_perm_move": ud_edge_perm_move.reshape(-1),
        "slice_perm_move": slice_perm_move.reshape(-1),
        "p1_twist_slice": p1_twist_slice,
        "p1_flip_slice": p1_flip_slice,
        "p2_corner_slice": p2_corner_slice,
        "p2_edge_slice": p2_edge_slice,
    }
    t = SolverTables(**{name: arr.tolist() for name, arr in raw.items()})
    _attach_decoders(t)
    _attach_arrays(t, raw)
    log.info("tables built")
    return t


def _attach_decoders(t: SolverTables) -> None:
    u_dec = []
    d_dec = []
    for coord in range(N_SLICE_SORTED):
        for lo, dec in ((0, u_dec), (4, d_dec)):
            ep = decode_tracked4(coord, lo)
            slots = tuple(j for j in range(12) if lo <= ep[j] <= lo + 3)
            order = tuple(ep[j] - lo for j in slots)
            dec.append((slots, order))
    t.u_edges_decode = u_dec
    t.d_edges_decode = d_dec


def _attach_arrays(t: SolverTables, raw: dict[str, np.ndarray]) -> None:
    """Shape the raw tables into the arrays the frontier search indexes.

    Move tables widen to int32 so coordinate arithmetic on gathered
    columns cannot wrap; pruning tables stay one byte per entry.
    """

    def grid(name: str, rows: int, cols: int) -> np.ndarray:
        return raw[name].astype(np.int32).reshape(rows, cols)

    t.twist_move_np = grid("twist_move", N_TWIST, N_MOVES)
    t.flip_move_np = grid("flip_move", N_FLIP, N_MOVES)
    t.slice_move_np = grid("slice_move", N_SLICE, N_MOVES)
    t.slice_sorted_move_np = grid("slice_sorted_move", N_SLICE_SORTED, N_MOVES)
    t.u_edges_move_np = grid("u_edges_move", N_SLICE_SORTED, N_MOVES)
    t.d_edges_move_np = grid("d_edges_move", N_SLICE_SORTED, N_MOVES)
    t.corner_perm_move_np = grid("corner_perm_move", N_PERM8, N_MOVES)
    t.corner_perm_move_p2_np = np.ascontiguousarray(
        t.corner_perm_move_np[:, list(P2_MOVES)]
    )
    t.ud_edge_perm_move_np = grid("ud_edge_perm_move", N_PERM8, N_P2_MOVES)
    t.slice_perm_move_np = grid("slice_perm_move", N_PERM4, N_P2_MOVES)
    t.p1_twist_slice_np = raw["p1_twist_slice"].astype(np.uint8)
    t.p1_flip_slice_np = raw["p1_flip_slice"].astype(np.uint8)
    t.p2_corner_slice_np = raw["p2_corner_slice"].astype(np.uint8)
    t.p2_edge_slice_np = raw["p2_edge_slice"].astype(np.uint8)


# ---------------------------------------------------------------------------
# Cache file


def default_cache_path() -> Path:
    env = os.environ.get("RIG_TABLE_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or (Path.home() / ".cache")
    return Path(base) / "cuberig" / "tables.bin"


def save_tables(t: SolverTables, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = bytearray()
    blob += CACHE_MAGIC
    blob += struct.pack("<H", CACHE_VERSION)
    for name, length, dtype in _TABLE_SPECS:
        arr = np.asarray(getattr(t, name), dtype=dtype)
        raw = arr.tobytes()
        blob += struct.pack("<I", len(raw))
        blob += raw
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tables-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_tables(path: Path) -> SolverTables:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise TableCacheError(f"cannot read table cache {path}: {e}") from e
    if data[:4] != CACHE_MAGIC:
        raise TableCacheError("bad magic; not a table cache file")
    (version,) = struct.unpack_from("<H", data, 4)
    if version != CACHE_VERSION:
        raise TableCacheError(
            f"cache format version {version}, expected {CACHE_VERSION}"
        )
    off = 6
    raw = {}
    for name, length, dtype in _TABLE_SPECS:
        if off + 4 > len(data):
            raise TableCacheError(f"truncated before table {name}")
        (nbytes,) = struct.unpack_from("<I", data, off)
        off += 4
        itemsize = np.dtype(dtype).itemsize
        if nbytes != length * itemsize:
            raise TableCacheError(
                f"table {name}: {nbytes} bytes, expected {length * itemsize}"
            )
        if off + nbytes > len(data):
            raise TableCacheError(f"truncated inside table {name}")
        raw[name] = np.frombuffer(data, dtype=dtype, count=length, offset=off)
        off += nbytes
    if off != len(data):
        raise TableCacheError("trailing bytes after the last table")
    t = SolverTables(**{name: arr.tolist() for name, arr in raw.items()})
    _attach_decoders(t)
    _attach_arrays(t, raw)
    return t


_singleton_lock = threading.Lock()
_singleton: dict[Path, SolverTables] = {}


def get_tables(path: Path | None = None) -> SolverTables:
    """Shared tables: loaded from cache when possible, else built and saved.

    Building is idempotent, and the final rename is atomic, so concurrent
    first runs waste work but cannot corrupt the cache.
    """
    path = Path(path) if path is not None else default_cache_path()
    with _singleton_lock:
        t = _singleton.get(path)
        if t is not None:
            return t
        if path.exists():
            try:
                t = load_tables(path)
            except TableCacheError as e:
                log.warning("table cache rejected (%s); rebuilding", e)
                t = None
        if t is None:
            t = build_tables()
            save_tables(t, path)
            log.info("table cache written to %s", path)
        _singleton[path] = t
        return t


def cache_stats(t: SolverTables) -> dict:
    """Sanity summary used by the CLI's verify mode."""
    return {
        "p1_twist_slice_max": max(t.p1_twist_slice),
        "p1_flip_slice_max": max(t.p1_flip_slice),
        "p2_corner_slice_max": max(t.p2_corner_slice),
        "p2_edge_slice_max": max(t.p2_edge_slice),
        "p1_twist_slice_zeros": t.p1_twist_slice.count(0),
        "p1_flip_slice_zeros": t.p1_flip_slice.count(0),
        "p2_corner_slice_zeros": t.p2_corner_slice.count(0),
        "p2_edge_slice_zeros": t.p2_edge_slice.count(0),
    }

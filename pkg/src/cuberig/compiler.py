"""Lowering face turns onto the rig's three-motor primitive alphabet.

The machine can only turn the layer sitting on its turntable.  Executing an
arbitrary move therefore means reorienting the whole cube first: flips over
the holder's left-right axis and quarter rotations of the holder about the
vertical, until the move's face rests at the Down station, followed by one
bottom-layer turn.  This module plans those reorientations at minimal cost
under a configurable timing model and folds whole move sequences into
:class:`MachineProgram` values ready for the simulator or the serial link.

Stations are indexed like faces: Up=0, Right=1, Front=2, Down=3, Left=4,
Back=5.  An :class:`Orientation` records, for each logical face, the station
its content currently occupies.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from pathlib import Path
from typing import Union

from .cube import Face, Move, MoveSequence, Turn


class Primitive(IntEnum):
    """One atomic rig action, in planning tie-break order."""

    FLIP = 0
    ROT_CW = 1
    ROT_CCW = 2
    BOT_CW = 3
    BOT_CCW = 4
    BOT_2 = 5


_BOTTOM_TURNS = frozenset((Primitive.BOT_CW, Primitive.BOT_CCW, Primitive.BOT_2))

#: Annotation given to primitives that serve no move of their own.
REORIENTATION = "reorientation"


# ---------------------------------------------------------------------------
# Timing model


@dataclass(frozen=True)
class CostModel:
    """Per-primitive durations in milliseconds.

    Defaults are the measured rig timings.  The anticlockwise bottom turn
    really is dearer than the clockwise one, and a 180 bottom turn is cheaper
    than two 90s, which is why the planner treats all three as distinct
    primitives and never decomposes a half turn.
    """

    flip_ms: float = 2731
    rot90_ms: float = 1074
    bot_cw_ms: float = 2028
    bot_ccw_ms: float = 2582
    bot180_ms: float = 3319

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {v!r}")

    def cost_of(self, p: Primitive) -> float:
        if p is Primitive.FLIP:
            return self.flip_ms
        if p is Primitive.ROT_CW or p is Primitive.ROT_CCW:
            return self.rot90_ms
        if p is Primitive.BOT_CW:
            return self.bot_cw_ms
        if p is Primitive.BOT_CCW:
            return self.bot_ccw_ms
        return self.bot180_ms

    @classmethod
    def from_text(cls, text: str) -> "CostModel":
        """Parse a key-value document; absent keys keep their defaults.

        Accepted line shapes: ``key = value``, ``key: value``, ``key value``.
        Blank lines and ``#`` comments are ignored.
        """
        values = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            for sep in ("=", ":", None):
                parts = line.split(sep, 1)
                if len(parts) == 2:
                    break
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'key value', got {raw!r}")
            key, value = parts[0].strip(), parts[1].strip()
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"line {lineno}: unknown timing key {key!r}")
            try:
                values[key] = float(value)
            except ValueError:
                raise ValueError(
                    f"line {lineno}: bad duration {value!r} for {key}"
                ) from None
        return cls(**values)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "CostModel":
        return cls.from_text(Path(path).read_text())


# ---------------------------------------------------------------------------
# Orientation of the cube in the holder
#
# Each reorientation primitive moves the content of station s to
# _*_STATIONS[s].  The flip rotates about the left-right axis, cycling
# Down -> Back -> Up -> Front -> Down; the holder rotations keep Up and Down
# fixed, clockwise carrying Right -> Front -> Left -> Back -> Right.

_FLIP_STATIONS = (2, 1, 3, 5, 4, 0)
_ROT_CW_STATIONS = (0, 2, 4, 3, 5, 1)
_ROT_CCW_STATIONS = (0, 5, 1, 3, 2, 4)

_REORIENT_STATIONS = {
    Primitive.FLIP: _FLIP_STATIONS,
    Primitive.ROT_CW: _ROT_CW_STATIONS,
    Primitive.ROT_CCW: _ROT_CCW_STATIONS,
}

# Unit vectors per station (Up, Right, Front, Down, Left, Back) used for the
# handedness check: a genuine rotation keeps the (U, F, R) triple
# right-handed, a mirror does not.
_STATION_VECTORS = (
    (0, 0, 1),
    (0, 1, 0),
    (1, 0, 0),
    (0, 0, -1),
    (0, -1, 0),
    (-1, 0, 0),
)


def _det3(a, b, c):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


@dataclass(frozen=True)
class Orientation:
    """Where each logical face currently sits: ``stations[face] = station``.

    Only the 24 proper rotations are representable; construction rejects
    anything non-bijective, opposite-breaking, or mirrored.
    """

    stations: tuple[int, ...]

    def __post_init__(self):
        s = self.stations
        if len(s) != 6 or sorted(s) != [0, 1, 2, 3, 4, 5]:
            raise ValueError(f"stations must be a permutation of 0..5, got {s!r}")
        for face in range(3):
            if s[face + 3] != (s[face] + 3) % 6:
                raise ValueError(f"opposite faces not at opposite stations: {s!r}")
        u, f, r = (_STATION_VECTORS[s[Face.U]], _STATION_VECTORS[s[Face.F]],
                   _STATION_VECTORS[s[Face.R]])
        if _det3(u, f, r) != 1:
            raise ValueError(f"left-handed (mirrored) orientation: {s!r}")

    @classmethod
    def identity(cls) -> "Orientation":
        return cls((0, 1, 2, 3, 4, 5))

    def station_of(self, face: Face) -> int:
        return self.stations[face]

    def face_at(self, station: int) -> Face:
        return Face(self.stations.index(station))


def _apply_stations(stations, station_map):
    return tuple(station_map[s] for s in stations)


def flip_action(o: Orientation) -> Orientation:
    """Tumble the cube over the left-right axis (Down ends up at Back)."""
    return Orientation(_apply_stations(o.stations, _FLIP_STATIONS))


def rot_action(o: Orientation, direction: Primitive) -> Orientation:
    """Quarter-rotate the holder about the vertical; Up and Down stay put."""
    if direction not in (Primitive.ROT_CW, Primitive.ROT_CCW):
        raise ValueError(f"not a holder rotation: {direction!r}")
    return Orientation(_apply_stations(o.stations, _REORIENT_STATIONS[direction]))


# ---------------------------------------------------------------------------
# Reorientation planning

_DOWN = 3


@lru_cache(maxsize=None)
def _plan(stations, target, flip_ms, rot_ms):
    """Dijkstra over the 24 orientations with a fully ordered key.

    The heap entries compare as (cost, primitive count, path), so ties in
    cost fall to shorter plans and then to the lexicographically smallest
    primitive sequence; the first pop of a goal orientation is the unique
    minimum under that order.
    """
    start = tuple(stations)
    heap = [(0.0, 0, (), start)]
    done = set()
    while heap:
        cost, n, path, cur = heapq.heappop(heap)
        if cur in done:
            continue
        done.add(cur)
        if cur[target] == _DOWN:
            return path, cur
        for prim, smap, ms in (
            (Primitive.FLIP, _FLIP_STATIONS, flip_ms),
            (Primitive.ROT_CW, _ROT_CW_STATIONS, rot_ms),
            (Primitive.ROT_CCW, _ROT_CCW_STATIONS, rot_ms),
        ):
            nxt = tuple(smap[s] for s in cur)
            if nxt not in done:
                heapq.heappush(heap, (cost + ms, n + 1, path + (prim,), nxt))
    raise AssertionError("orientation graph is connected; unreachable")


def plan_reorientation(
    o: Orientation, target_face: Face, cost: CostModel | None = None
) -> tuple[tuple[Primitive, ...], Orientation]:
    """Cheapest flip/rotation plan bringing ``target_face`` to Down.

    Returns the plan and the orientation it ends in.  Deterministic: cost,
    then primitive count, then lexicographic primitive order break ties.
    """
    cost = cost if cost is not None else CostModel()
    path, end = _plan(
        o.stations, int(target_face), float(cost.flip_ms), float(cost.rot90_ms)
    )
    return path, Orientation(end)


_BOT_FOR_TURN = {
    Turn.CW: Primitive.BOT_CW,
    Turn.HALF: Primitive.BOT_2,
    Turn.CCW: Primitive.BOT_CCW,
}


def lower_move(
    o: Orientation, m: Move, cost: CostModel | None = None
) -> tuple[tuple[Primitive, ...], Orientation]:
    """Reorient so ``m.face`` is Down, then turn the bottom layer once.

    The bottom turn leaves the orientation unchanged; clockwise is clockwise
    as seen facing the turned face, matching move semantics.
    """
    prims, end = plan_reorientation(o, m.face, cost)
    return prims + (_BOT_FOR_TURN[m.turn],), end


# ---------------------------------------------------------------------------
# Programs


@dataclass(frozen=True)
class MachineProgram:
    """A lowered move sequence.

    ``annotations`` runs parallel to ``primitives``: bottom turns carry the
    index of the move they realize, everything else carries
    :data:`REORIENTATION`.  ``total_ms`` is the sum of member costs under the
    model the program was built with.
    """

    primitives: tuple[Primitive, ...]
    annotations: tuple[Union[int, str], ...]
    total_ms: float


def make_program(
    primitives, cost: CostModel | None = None
) -> MachineProgram:
    """Build a program from bare primitives with canonical annotations.

    The k-th bottom turn is taken to serve move k; this is the same labeling
    :func:`compile_moves` produces, which is what lets the serial format drop
    annotations entirely and still round-trip.
    """
    cost = cost if cost is not None else CostModel()
    prims = tuple(Primitive(p) for p in primitives)
    annotations = []
    k = 0
    for p in prims:
        if p in _BOTTOM_TURNS:
            annotations.append(k)
            k += 1
        else:
            annotations.append(REORIENTATION)
    total = sum(cost.cost_of(p) for p in prims)
    return MachineProgram(prims, tuple(annotations), total)


def compile_moves(
    seq: MoveSequence, cost: CostModel | None = None, simplify: bool = False
) -> MachineProgram:
    """Lower a move sequence into a primitive program, move by move.

    Each move is planned independently (cheapest reorientation from wherever
    the previous move left the cube).  With ``simplify`` the sequence first
    runs through :func:`simplify_moves`; left off, redundant moves like
    ``D D'`` are lowered literally, which is what real transcript replays
    want.
    """
    cost = cost if cost is not None else CostModel()
    if simplify:
        seq = simplify_moves(seq)
    o = Orientation.identity()
    primitives: list[Primitive] = []
    annotations: list[Union[int, str]] = []
    for i, m in enumerate(seq):
        prims, o = lower_move(o, m, cost)
        primitives.extend(prims)
        annotations.extend([REORIENTATION] * (len(prims) - 1))
        annotations.append(i)
    total = sum(cost.cost_of(p) for p in primitives)
    return MachineProgram(tuple(primitives), tuple(annotations), total)


def simplify_moves(seq: MoveSequence) -> MoveSequence:
    """Merge adjacent same-face moves modulo a full turn.

    Cancellations can make new neighbors adjacent, so merging runs through a
    stack: ``F U U' F'`` collapses to nothing.
    """
    out: list[Move] = []
    for m in seq:
        turn = int(m.turn)
        while out and out[-1].face == m.face:
            turn = (turn + out.pop().turn) % 4
        if turn:
            out.append(Move(m.face, Turn(turn)))
    return tuple(out)

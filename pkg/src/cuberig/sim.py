"""Deterministic simulator for the rig and its serial wire format.

A :class:`RigState` carries the cube (always in the logical frame), the
holder orientation, the cover position, and accumulated time.  Bottom turns
act on whichever logical face currently rests on the turntable; flips and
holder rotations touch only the orientation.  Because the compiler always
parks a move's face at Down before its bottom turn, simulating a compiled
program applies exactly the moves that were compiled, so the final cube is
directly comparable with the plain move-application result.

The wire format is one ASCII byte per primitive plus a closing linefeed,
matching what a microcontroller at the end of a UART link would want to
parse with a two-state loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .compiler import (
    CostModel,
    MachineProgram,
    Orientation,
    Primitive,
    flip_action,
    make_program,
    rot_action,
)
from .cube import CubieState, Move, SOLVED_CUBIES, Turn, apply_move

_DOWN = 3


class Cover(Enum):
    """Position of the clamp holding the top two layers."""

    ENGAGED = "engaged"
    RAISED = "raised"


class CoverFault(Exception):
    """Strict-mode refusal to turn the bottom layer under a raised cover."""

    def __init__(self):
        super().__init__("bottom turn attempted while the cover is raised")


@dataclass(frozen=True)
class RigState:
    cube: CubieState
    orientation: Orientation
    cover: Cover
    elapsed_ms: float


@dataclass(frozen=True)
class TraceEntry:
    primitive: Primitive
    cover_before: Cover
    cover_after: Cover
    duration_ms: float
    cumulative_ms: float


def initial_rig(cube: CubieState = SOLVED_CUBIES) -> RigState:
    """A freshly loaded rig: identity orientation, cover engaged, clock at 0."""
    return RigState(cube, Orientation.identity(), Cover.ENGAGED, 0)


_TURN_FOR_BOT = {
    Primitive.BOT_CW: Turn.CW,
    Primitive.BOT_CCW: Turn.CCW,
    Primitive.BOT_2: Turn.HALF,
}


def exec_primitive(
    r: RigState,
    p: Primitive,
    cost: CostModel | None = None,
    strict: bool = False,
) -> tuple[RigState, TraceEntry]:
    """Execute one primitive, returning the new state and its trace entry.

    Cover transitions are implicit and free: a bottom turn engages the
    cover, a flip or holder rotation raises it.  Under ``strict`` a bottom
    turn finding the cover raised raises :class:`CoverFault` instead of
    engaging it silently.
    """
    cost = cost if cost is not None else CostModel()
    duration = cost.cost_of(p)
    turn = _TURN_FOR_BOT.get(p)
    if turn is not None:
        if strict and r.cover is Cover.RAISED:
            raise CoverFault()
        cube = apply_move(r.cube, Move(r.orientation.face_at(_DOWN), turn))
        nxt = RigState(cube, r.orientation, Cover.ENGAGED, r.elapsed_ms + duration)
    else:
        if p is Primitive.FLIP:
            orientation = flip_action(r.orientation)
        else:
            orientation = rot_action(r.orientation, p)
        nxt = RigState(r.cube, orientation, Cover.RAISED, r.elapsed_ms + duration)
    entry = TraceEntry(p, r.cover, nxt.cover, duration, nxt.elapsed_ms)
    return nxt, entry


def run_program(
    r: RigState,
    prog: MachineProgram,
    cost: CostModel | None = None,
    strict: bool = False,
) -> tuple[RigState, tuple[TraceEntry, ...]]:
    """Left fold of :func:`exec_primitive` over a whole program."""
    cost = cost if cost is not None else CostModel()
    trace = []
    for p in prog.primitives:
        r, entry = exec_primitive(r, p, cost, strict)
        trace.append(entry)
    return r, tuple(trace)


def format_trace(entries: Iterable[TraceEntry]) -> str:
    """Tab-separated lines: index, primitive name, duration, running total."""
    return "\n".join(
        f"{i}\t{e.primitive.name}\t{e.duration_ms:g}\t{e.cumulative_ms:g}"
        for i, e in enumerate(entries)
    )


# ---------------------------------------------------------------------------
# Serial wire format

_PRIMITIVE_BYTES = {
    Primitive.FLIP: ord("f"),
    Primitive.ROT_CW: ord("r"),
    Primitive.ROT_CCW: ord("l"),
    Primitive.BOT_CW: ord("c"),
    Primitive.BOT_CCW: ord("a"),
    Primitive.BOT_2: ord("s"),
}
_BYTE_PRIMITIVES = {b: p for p, b in _PRIMITIVE_BYTES.items()}

_TERMINATOR = 0x0A


class BadByte(Exception):
    """A byte outside the wire alphabet, at ``position``."""

    def __init__(self, position: int):
        self.position = position
        super().__init__(f"unknown wire byte at position {position}")


class MissingTerminator(Exception):
    def __init__(self):
        super().__init__("wire data must end with a single linefeed")


def encode_serial(prog: MachineProgram) -> bytes:
    """One byte per primitive, closed by a linefeed; empty encodes as b'\\n'."""
    return bytes(_PRIMITIVE_BYTES[p] for p in prog.primitives) + b"\n"


def decode_serial(data: bytes, cost: CostModel | None = None) -> MachineProgram:
    """Inverse of :func:`encode_serial`.

    Annotations are reconstructed canonically (the k-th bottom turn serves
    move k), which agrees with how the compiler labels its output, so
    decode(encode(p)) reproduces p exactly.
    """
    if not data or data[-1] != _TERMINATOR:
        raise MissingTerminator()
    primitives = []
    for i, b in enumerate(data[:-1]):
        prim = _BYTE_PRIMITIVES.get(b)
        if prim is None:
            raise BadByte(i)
        primitives.append(prim)
    return make_program(primitives, cost)

"""Cube states, moves, notation, validation and scramble generation.

Conventions used throughout the project:

* Faces are named U, R, F, D, L, B and indexed in that order.
* A facelet string lists all 54 stickers face by face in the order
  U, R, F, D, L, B, each face row-major as seen when looking straight
  at that face with the cube held U-up, F-front::

                +--------+
                | 0  1  2|
                | 3  4  5|
                | 6  7  8|
       +--------+--------+--------+--------+
       |36 37 38|18 19 20| 9 10 11|45 46 47|
       |39 40 41|21 22 23|12 13 14|48 49 50|
       |42 43 44|24 25 26|15 16 17|51 52 53|
       +--------+--------+--------+--------+
                |27 28 29|
                |30 31 32|
                |33 34 35|
                +--------+
          L         F        R         B

  (U above, D below the F block; centers sit at 4, 13, 22, 31, 40, 49.)
* Corner slots in order: URF UFL ULB UBR DFR DLF DBL DRB.
  Edge slots in order:   UR UF UL UB DR DF DL DB FR FL BL BR.
* ``corner_perm[i]`` is the cubie currently sitting in slot ``i``.
  ``corner_orient[i]`` counts clockwise twists of that cubie relative
  to home (0..2, reading from the slot's U/D-facing sticker).
  ``edge_orient[i]`` is 0 or 1 with the usual flip convention (an edge
  is unflipped iff it can be moved home without using F or B quarter
  turns).
* A move such as R is a clockwise quarter turn as seen looking at the
  R face from outside the cube; R2 a half turn, R' counterclockwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum, IntEnum

__all__ = [
    "Face",
    "Turn",
    "Move",
    "MoveSequence",
    "FaceletState",
    "CubieState",
    "Verdict",
    "CubeError",
    "BadLength",
    "BadCharacter",
    "BadCount",
    "BadCenters",
    "UnrecognizedCubie",
    "BadToken",
    "ALL_MOVES",
    "SOLVED_FACELETS",
    "SOLVED_CUBIES",
    "parse_facelets",
    "facelets_to_cubies",
    "cubies_to_facelets",
    "apply_move",
    "apply_sequence",
    "parse_moves",
    "format_moves",
    "invert_sequence",
    "validate",
    "random_state",
    "move_index",
]


class Face(IntEnum):
    U = 0
    R = 1
    F = 2
    D = 3
    L = 4
    B = 5


class Turn(IntEnum):
    """Quarter turns clockwise: CW = 1, HALF = 2, CCW = 3."""

    CW = 1
    HALF = 2
    CCW = 3


_TURN_SUFFIX = {Turn.CW: "", Turn.HALF: "2", Turn.CCW: "'"}


@dataclass(frozen=True)
class Move:
    face: Face
    turn: Turn

    def inverse(self) -> "Move":
        if self.turn is Turn.HALF:
            return self
        return Move(self.face, Turn.CW if self.turn is Turn.CCW else Turn.CCW)

    def __str__(self) -> str:
        return self.face.name + _TURN_SUFFIX[self.turn]


MoveSequence = tuple[Move, ...]

#: All 18 moves in canonical order: faces U,R,F,D,L,B; turns CW, HALF, CCW.
ALL_MOVES: MoveSequence = tuple(
    Move(f, t) for f in Face for t in (Turn.CW, Turn.HALF, Turn.CCW)
)


def move_index(m: Move) -> int:
    """Index of ``m`` in ALL_MOVES (face-major canonical order)."""
    return m.face * 3 + (m.turn - 1)


# ---------------------------------------------------------------------------
# Errors and verdicts


class CubeError(Exception):
    """Base class for malformed cube input."""


class BadLength(CubeError):
    def __init__(self, got: int):
        self.got = got
        super().__init__(f"expected 54 facelets, got {got}")


class BadCharacter(CubeError):
    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"facelet {position}: {char!r} is not one of URFDLB")


class BadCount(CubeError):
    def __init__(self, label: str, got: int):
        self.label = label
        self.got = got
        super().__init__(f"label {label} appears {got} times, expected 9")


class BadCenters(CubeError):
    def __init__(self):
        super().__init__("centers must read U,R,F,D,L,B in facelet order")


class UnrecognizedCubie(CubeError):
    def __init__(self, kind: str, slot: int, name: str):
        self.kind = kind
        self.slot = slot
        super().__init__(f"stickers at {kind} slot {slot} ({name}) name no real cubie")


class BadToken(CubeError):
    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"move string position {position}: unexpected {char!r}")


class Verdict(Enum):
    """Outcome of the solvability laws, in the order they are checked."""

    VALID = "Valid"
    TWIST_SUM = "TwistSum"
    FLIP_SUM = "FlipSum"
    PERM_PARITY = "PermParity"


# ---------------------------------------------------------------------------
# State types

CORNER_NAMES = ("URF", "UFL", "ULB", "UBR", "DFR", "DLF", "DBL", "DRB")
EDGE_NAMES = ("UR", "UF", "UL", "UB", "DR", "DF", "DL", "DB", "FR", "FL", "BL", "BR")

SOLVED_FACELETS = "".join(f.name * 9 for f in Face)

_CENTER_POSITIONS = (4, 13, 22, 31, 40, 49)

# Sticker positions of each corner slot.  The first entry is the U/D-facing
# sticker; the other two follow clockwise around the cubie.
CORNER_FACELETS = (
    (8, 9, 20),   # URF
    (6, 18, 38),  # UFL
    (0, 36, 47),  # ULB
    (2, 45, 11),  # UBR
    (29, 26, 15),  # DFR
    (27, 44, 24),  # DLF
    (33, 53, 42),  # DBL
    (35, 17, 51),  # DRB
)

CORNER_COLORS = (
    (Face.U, Face.R, Face.F),
    (Face.U, Face.F, Face.L),
    (Face.U, Face.L, Face.B),
    (Face.U, Face.B, Face.R),
    (Face.D, Face.F, Face.R),
    (Face.D, Face.L, Face.F),
    (Face.D, Face.B, Face.L),
    (Face.D, Face.R, Face.B),
)

# Sticker positions of each edge slot; the first entry is the reference
# sticker for the flip convention (U/D face where present, else F/B).
EDGE_FACELETS = (
    (5, 10),   # UR
    (7, 19),   # UF
    (3, 37),   # UL
    (1, 46),   # UB
    (32, 16),  # DR
    (28, 25),  # DF
    (30, 43),  # DL
    (34, 52),  # DB
    (23, 12),  # FR
    (21, 41),  # FL
    (50, 39),  # BL
    (48, 14),  # BR
)

EDGE_COLORS = (
    (Face.U, Face.R),
    (Face.U, Face.F),
    (Face.U, Face.L),
    (Face.U, Face.B),
    (Face.D, Face.R),
    (Face.D, Face.F),
    (Face.D, Face.L),
    (Face.D, Face.B),
    (Face.F, Face.R),
    (Face.F, Face.L),
    (Face.B, Face.L),
    (Face.B, Face.R),
)


@dataclass(frozen=True)
class FaceletState:
    """A validated 54-sticker description of the cube surface."""

    facelets: str

    def __str__(self) -> str:
        return self.facelets


@dataclass(frozen=True)
class CubieState:
    """Permutation/orientation description of the 20 movable cubies.

    May hold unsolvable (but structurally well-formed) states so that
    validation and negative tests can talk about them.
    """

    corner_perm: tuple[int, ...]
    corner_orient: tuple[int, ...]
    edge_perm: tuple[int, ...]
    edge_orient: tuple[int, ...]

    def __post_init__(self):
        if len(self.corner_perm) != 8 or len(self.corner_orient) != 8:
            raise ValueError("corner fields must have length 8")
        if len(self.edge_perm) != 12 or len(self.edge_orient) != 12:
            raise ValueError("edge fields must have length 12")

    def is_bijective(self) -> bool:
        return (
            sorted(self.corner_perm) == list(range(8))
            and sorted(self.edge_perm) == list(range(12))
        )


SOLVED_CUBIES = CubieState(
    corner_perm=tuple(range(8)),
    corner_orient=(0,) * 8,
    edge_perm=tuple(range(12)),
    edge_orient=(0,) * 12,
)


# ---------------------------------------------------------------------------
# Facelet parsing and conversion


def parse_facelets(text: str) -> FaceletState:
    """Validate a 54-character facelet string.

    Checks length, alphabet, a count of nine per label, and that the six
    centers read U,R,F,D,L,B in facelet order.  Raises BadLength,
    BadCharacter, BadCount, or BadCenters accordingly.
    """
    if len(text) != 54:
        raise BadLength(len(text))
    labels = {f.name for f in Face}
    for i, ch in enumerate(text):
        if ch not in labels:
            raise BadCharacter(i, ch)
    for f in Face:
        n = text.count(f.name)
        if n != 9:
            raise BadCount(f.name, n)
    for f, pos in zip(Face, _CENTER_POSITIONS):
        if text[pos] != f.name:
            raise BadCenters()
    return FaceletState(text)


def facelets_to_cubies(fs: FaceletState) -> CubieState:
    """Identify the cubie and orientation in every slot of ``fs``.

    Raises UnrecognizedCubie when a sticker triple or pair names no real
    cubie (e.g. two stickers of the same color on one piece).
    """
    f = fs.facelets
    cp = [0] * 8
    co = [0] * 8
    for slot in range(8):
        stickers = CORNER_FACELETS[slot]
        # The orientation is where the U/D sticker sits on the piece.
        for ori in range(3):
            if f[stickers[ori]] in ("U", "D"):
                break
        else:
            raise UnrecognizedCubie("corner", slot, CORNER_NAMES[slot])
        a = f[stickers[(ori + 1) % 3]]
        b = f[stickers[(ori + 2) % 3]]
        for cubie in range(8):
            cols = CORNER_COLORS[cubie]
            if (
                f[stickers[ori]] == cols[0].name
                and a == cols[1].name
                and b == cols[2].name
            ):
                cp[slot] = cubie
                co[slot] = ori
                break
        else:
            raise UnrecognizedCubie("corner", slot, CORNER_NAMES[slot])

    ep = [0] * 12
    eo = [0] * 12
    for slot in range(12):
        s0, s1 = EDGE_FACELETS[slot]
        pair = (f[s0], f[s1])
        for cubie in range(12):
            c0, c1 = EDGE_COLORS[cubie]
            if pair == (c0.name, c1.name):
                ep[slot] = cubie
                eo[slot] = 0
                break
            if pair == (c1.name, c0.name):
                ep[slot] = cubie
                eo[slot] = 1
                break
        else:
            raise UnrecognizedCubie("edge", slot, EDGE_NAMES[slot])

    return CubieState(tuple(cp), tuple(co), tuple(ep), tuple(eo))


def cubies_to_facelets(c: CubieState) -> FaceletState:
    """Render a cubie state back to stickers (inverse of facelets_to_cubies)."""
    if not c.is_bijective():
        raise ValueError("corner_perm/edge_perm must be bijections")
    out = [""] * 54
    for f, pos in zip(Face, _CENTER_POSITIONS):
        out[pos] = f.name
    for slot in range(8):
        cubie = c.corner_perm[slot]
        ori = c.corner_orient[slot]
        for k in range(3):
            out[CORNER_FACELETS[slot][(k + ori) % 3]] = CORNER_COLORS[cubie][k].name
    for slot in range(12):
        cubie = c.edge_perm[slot]
        ori = c.edge_orient[slot]
        for k in range(2):
            out[EDGE_FACELETS[slot][(k + ori) % 2]] = EDGE_COLORS[cubie][k].name
    return FaceletState("".join(out))


# ---------------------------------------------------------------------------
# Moves

# Cubie action of each basic clockwise face turn: which slot's content moves
# in, and the orientation increment picked up on the way.
_BASE_CP = {
    Face.U: (3, 0, 1, 2, 4, 5, 6, 7),
    Face.R: (4, 1, 2, 0, 7, 5, 6, 3),
    Face.F: (1, 5, 2, 3, 0, 4, 6, 7),
    Face.D: (0, 1, 2, 3, 5, 6, 7, 4),
    Face.L: (0, 2, 6, 3, 4, 1, 5, 7),
    Face.B: (0, 1, 3, 7, 4, 5, 2, 6),
}
_BASE_CO = {
    Face.U: (0, 0, 0, 0, 0, 0, 0, 0),
    Face.R: (2, 0, 0, 1, 1, 0, 0, 2),
    Face.F: (1, 2, 0, 0, 2, 1, 0, 0),
    Face.D: (0, 0, 0, 0, 0, 0, 0, 0),
    Face.L: (0, 1, 2, 0, 0, 2, 1, 0),
    Face.B: (0, 0, 1, 2, 0, 0, 2, 1),
}
_BASE_EP = {
    Face.U: (3, 0, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11),
    Face.R: (8, 1, 2, 3, 11, 5, 6, 7, 4, 9, 10, 0),
    Face.F: (0, 9, 2, 3, 4, 8, 6, 7, 1, 5, 10, 11),
    Face.D: (0, 1, 2, 3, 5, 6, 7, 4, 8, 9, 10, 11),
    Face.L: (0, 1, 10, 3, 4, 5, 9, 7, 8, 2, 6, 11),
    Face.B: (0, 1, 2, 11, 4, 5, 6, 10, 8, 9, 3, 7),
}
_BASE_EO = {
    Face.U: (0,) * 12,
    Face.R: (0,) * 12,
    Face.F: (0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0),
    Face.D: (0,) * 12,
    Face.L: (0,) * 12,
    Face.B: (0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1),
}


def _combine(first, second):
    """Compose two cubie actions: apply ``first``, then ``second``."""
    cp1, co1, ep1, eo1 = first
    cp2, co2, ep2, eo2 = second
    cp = tuple(cp1[cp2[i]] for i in range(8))
    co = tuple((co1[cp2[i]] + co2[i]) % 3 for i in range(8))
    ep = tuple(ep1[ep2[i]] for i in range(12))
    eo = tuple((eo1[ep2[i]] + eo2[i]) % 2 for i in range(12))
    return cp, co, ep, eo


def _build_move_actions():
    actions = []
    for f in Face:
        quarter = (_BASE_CP[f], _BASE_CO[f], _BASE_EP[f], _BASE_EO[f])
        half = _combine(quarter, quarter)
        counter = _combine(half, quarter)
        actions.extend([quarter, half, counter])
    return tuple(actions)


_MOVE_ACTIONS = _build_move_actions()


def apply_move(c: CubieState, m: Move) -> CubieState:
    """Return the state after turning one face of ``c``."""
    mcp, mco, mep, meo = _MOVE_ACTIONS[move_index(m)]
    cp = c.corner_perm
    co = c.corner_orient
    ep = c.edge_perm
    eo = c.edge_orient
    return CubieState(
        tuple(cp[mcp[i]] for i in range(8)),
        tuple((co[mcp[i]] + mco[i]) % 3 for i in range(8)),
        tuple(ep[mep[i]] for i in range(12)),
        tuple((eo[mep[i]] + meo[i]) % 2 for i in range(12)),
    )


def apply_sequence(c: CubieState, seq: MoveSequence) -> CubieState:
    for m in seq:
        c = apply_move(c, m)
    return c


def invert_sequence(seq: MoveSequence) -> MoveSequence:
    """The sequence undoing ``seq``: reversed order, inverted turns."""
    return tuple(m.inverse() for m in reversed(seq))


# ---------------------------------------------------------------------------
# Notation

_FACE_BY_LETTER = {f.name: f for f in Face}


def parse_moves(text: str) -> MoveSequence:
    """Parse move notation into a sequence.

    Accepts both space-separated tokens ("R' B U2") and the concatenated
    form used for typed-in moves ("LUD'", "D2R'F").  Whitespace is
    ignored everywhere else; any other unexpected character raises
    BadToken with its 0-based position.
    """
    moves: list[Move] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        face = _FACE_BY_LETTER.get(ch)
        if face is None:
            raise BadToken(i, ch)
        turn = Turn.CW
        i += 1
        if i < n:
            if text[i] == "2":
                turn = Turn.HALF
                i += 1
            elif text[i] == "'":
                turn = Turn.CCW
                i += 1
        moves.append(Move(face, turn))
    return tuple(moves)


def format_moves(seq: MoveSequence) -> str:
    """Render a sequence as space-separated tokens; inverse of parse_moves."""
    return " ".join(str(m) for m in seq)


# ---------------------------------------------------------------------------
# Solvability


def _perm_parity(perm) -> int:
    n = len(perm)
    parity = 0
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                parity ^= 1
    return parity


def validate(c: CubieState) -> Verdict:
    """Check the three solvability laws, reporting the first failure.

    Laws, in check order: corner twists sum to 0 mod 3 (TwistSum), edge
    flips sum to 0 mod 2 (FlipSum), corner and edge permutation parities
    agree (PermParity).  Exactly 1 in 12 of unrestricted assignments
    passes all three.
    """
    if not c.is_bijective():
        raise ValueError("corner_perm/edge_perm must be bijections")
    if sum(c.corner_orient) % 3 != 0:
        return Verdict.TWIST_SUM
    if sum(c.edge_orient) % 2 != 0:
        return Verdict.FLIP_SUM
    if _perm_parity(c.corner_perm) != _perm_parity(c.edge_perm):
        return Verdict.PERM_PARITY
    return Verdict.VALID


def random_state(seed: int) -> CubieState:
    """Uniform random solvable state, deterministic in ``seed``.

    Permutations are independent uniform draws; orientations are uniform
    with the last cubie fixed up to satisfy the twist/flip sums, and a
    final fixed transposition of the first two edge slots repairs
    permutation parity when needed.
    """
    rng = random.Random(seed)
    cp = list(range(8))
    ep = list(range(12))
    rng.shuffle(cp)
    rng.shuffle(ep)
    co = [rng.randrange(3) for _ in range(7)]
    co.append((-sum(co)) % 3)
    eo = [rng.randrange(2) for _ in range(11)]
    eo.append(sum(eo) % 2)
    if _perm_parity(cp) != _perm_parity(ep):
        ep[0], ep[1] = ep[1], ep[0]
    return CubieState(tuple(cp), tuple(co), tuple(ep), tuple(eo))

"""Two-phase cube solver and 3-motor rig toolchain."""

from .compiler import (
    CostModel,
    MachineProgram,
    Orientation,
    Primitive,
    compile_moves,
    plan_reorientation,
    simplify_moves,
)
from .cube import (
    ALL_MOVES,
    CubeError,
    CubieState,
    Face,
    FaceletState,
    Move,
    MoveSequence,
    SOLVED_CUBIES,
    SOLVED_FACELETS,
    Turn,
    Verdict,
    apply_move,
    apply_sequence,
    cubies_to_facelets,
    facelets_to_cubies,
    format_moves,
    invert_sequence,
    parse_facelets,
    parse_moves,
    random_state,
    validate,
)
from .search import InvalidState, NoSolutionWithinBound, solve
from .sim import (
    Cover,
    CoverFault,
    RigState,
    decode_serial,
    encode_serial,
    initial_rig,
    run_program,
)
from .tables import SolverTables, get_tables

__version__ = "0.1.0"

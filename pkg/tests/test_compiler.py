"""Tests for lowering face turns onto the rig's primitive alphabet.

The reference for reorientation planning is an exhaustive enumeration over
primitive sequences, built here from 3x3 rotation matrices rather than the
compiler's own station tables, so a typo in those tables cannot hide.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuberig.compiler import (
    CostModel,
    MachineProgram,
    Orientation,
    Primitive,
    REORIENTATION,
    compile_moves,
    flip_action,
    lower_move,
    make_program,
    plan_reorientation,
    rot_action,
    simplify_moves,
)
from cuberig.cube import Face, Move, Turn, apply_sequence, parse_moves, random_state

# ---------------------------------------------------------------------------
# The reorientation oracle lives in oracles.py (shared with the acceptance
# gate); it encodes primitives as plain ints 0/1/2, which line up with the
# enum values by design.

from oracles import all_orientations, best_reorientation, reorient_station_maps

ALL_ORIENTATIONS = all_orientations()
ORACLE_MAPS = {Primitive(k): v for k, v in reorient_station_maps().items()}


def oracle_plan(stations, target, cost):
    return best_reorientation(stations, target, cost.flip_ms, cost.rot90_ms)


def test_primitive_values_line_up_with_the_oracle_encoding():
    assert (Primitive.FLIP, Primitive.ROT_CW, Primitive.ROT_CCW) == (0, 1, 2)


def test_oracle_reaches_the_full_rotation_group():
    assert len(ALL_ORIENTATIONS) == 24


# ---------------------------------------------------------------------------
# Orientation group laws


def test_identity_orientation_stations():
    assert Orientation.identity().stations == (0, 1, 2, 3, 4, 5)


def test_flip_has_order_four():
    o = Orientation.identity()
    seq = [o]
    for _ in range(4):
        seq.append(flip_action(seq[-1]))
    assert seq[4] == seq[0]
    assert len({s.stations for s in seq[:4]}) == 4


def test_rotation_has_order_four_and_inverse():
    o = Orientation.identity()
    r = o
    for _ in range(4):
        r = rot_action(r, Primitive.ROT_CW)
    assert r == o
    assert rot_action(rot_action(o, Primitive.ROT_CW), Primitive.ROT_CCW) == o
    assert rot_action(rot_action(o, Primitive.ROT_CCW), Primitive.ROT_CW) == o


def test_flip_fixes_left_and_right_stations():
    o = Orientation.identity()
    for _ in range(4):
        o = flip_action(o)
        assert o.stations[Face.L] == 4
        assert o.stations[Face.R] == 1


def test_rotation_fixes_up_and_down_stations():
    o = flip_action(Orientation.identity())
    for d in (Primitive.ROT_CW, Primitive.ROT_CCW):
        r = rot_action(o, d)
        assert r.stations[o.face_at(0)] == 0
        assert r.stations[o.face_at(3)] == 3


def test_rot_action_rejects_non_rotation_primitives():
    o = Orientation.identity()
    for p in (Primitive.FLIP, Primitive.BOT_CW, Primitive.BOT_2):
        with pytest.raises(ValueError):
            rot_action(o, p)


def test_generators_reach_all_24_orientations():
    reached = {Orientation.identity()}
    frontier = [Orientation.identity()]
    while frontier:
        cur = frontier.pop()
        for nxt in (
            flip_action(cur),
            rot_action(cur, Primitive.ROT_CW),
            rot_action(cur, Primitive.ROT_CCW),
        ):
            if nxt not in reached:
                reached.add(nxt)
                frontier.append(nxt)
    assert len(reached) == 24
    assert {o.stations for o in reached} == set(ALL_ORIENTATIONS)


def test_implementation_actions_match_oracle_maps():
    for stations in ALL_ORIENTATIONS:
        o = Orientation(stations)
        fm = ORACLE_MAPS[Primitive.FLIP]
        assert flip_action(o).stations == tuple(fm[s] for s in stations)
        cm = ORACLE_MAPS[Primitive.ROT_CW]
        assert rot_action(o, Primitive.ROT_CW).stations == tuple(
            cm[s] for s in stations
        )


def test_mirror_orientation_is_rejected():
    # Swapping Left and Right alone preserves opposites but flips handedness.
    with pytest.raises(ValueError):
        Orientation((0, 4, 2, 3, 1, 5))


def test_opposite_breaking_orientation_is_rejected():
    # U sent to Front while D stays Down: opposite faces not opposite.
    with pytest.raises(ValueError):
        Orientation((2, 1, 0, 3, 4, 5))
    # The (U, F, R) triple here is the right-handed identity, so only the
    # opposite-station law can reject L and B trading places.
    with pytest.raises(ValueError):
        Orientation((0, 1, 2, 3, 5, 4))


def test_non_bijective_orientation_is_rejected():
    with pytest.raises(ValueError):
        Orientation((0, 0, 2, 3, 4, 5))


# ---------------------------------------------------------------------------
# Cost model


def test_default_costs_match_the_rig():
    c = CostModel()
    assert (c.flip_ms, c.rot90_ms, c.bot_cw_ms, c.bot_ccw_ms, c.bot180_ms) == (
        2731,
        1074,
        2028,
        2582,
        3319,
    )


def test_cost_of_every_primitive():
    c = CostModel()
    expected = {
        Primitive.FLIP: 2731,
        Primitive.ROT_CW: 1074,
        Primitive.ROT_CCW: 1074,
        Primitive.BOT_CW: 2028,
        Primitive.BOT_CCW: 2582,
        Primitive.BOT_2: 3319,
    }
    for p, ms in expected.items():
        assert c.cost_of(p) == ms


def test_cost_model_rejects_negative_and_non_finite():
    with pytest.raises(ValueError):
        CostModel(flip_ms=-1)
    with pytest.raises(ValueError):
        CostModel(bot180_ms=math.inf)
    with pytest.raises(ValueError):
        CostModel(rot90_ms=math.nan)


def test_from_text_partial_keys_take_defaults():
    c = CostModel.from_text("flip_ms = 3000\nbot_cw_ms: 1500\n")
    assert c.flip_ms == 3000
    assert c.bot_cw_ms == 1500
    assert c.rot90_ms == 1074
    assert c.bot_ccw_ms == 2582
    assert c.bot180_ms == 3319


def test_from_text_comments_blank_lines_and_bare_pairs():
    text = """
    # rig timings
    flip_ms 2000

    rot90_ms = 900  # trailing comment
    """
    c = CostModel.from_text(text)
    assert c.flip_ms == 2000
    assert c.rot90_ms == 900


def test_from_text_rejects_unknown_keys_and_bad_values():
    with pytest.raises(ValueError):
        CostModel.from_text("warp_ms = 3\n")
    with pytest.raises(ValueError):
        CostModel.from_text("flip_ms = fast\n")
    with pytest.raises(ValueError):
        CostModel.from_text("flip_ms\n")


def test_from_file(tmp_path):
    p = tmp_path / "rig.cfg"
    p.write_text("bot_ccw_ms = 2600\n")
    c = CostModel.from_file(p)
    assert c.bot_ccw_ms == 2600
    assert c.flip_ms == 2731


# ---------------------------------------------------------------------------
# Reorientation planning

# Cheapest reorientation from the identity orientation, per target face,
# under the default model.  Frozen from the exhaustive enumeration.
EXPECTED_MINIMA = {
    Face.U: 5462,
    Face.R: 3805,
    Face.F: 2731,
    Face.D: 0,
    Face.L: 3805,
    Face.B: 4879,
}

EXPECTED_PLANS = {
    Face.U: (Primitive.FLIP, Primitive.FLIP),
    Face.R: (Primitive.ROT_CW, Primitive.FLIP),
    Face.F: (Primitive.FLIP,),
    Face.D: (),
    Face.L: (Primitive.ROT_CCW, Primitive.FLIP),
    Face.B: (Primitive.ROT_CW, Primitive.ROT_CW, Primitive.FLIP),
}


def test_oracle_matches_frozen_minima_from_identity():
    cost = CostModel()
    for face, ms in EXPECTED_MINIMA.items():
        c, n, path = oracle_plan((0, 1, 2, 3, 4, 5), int(face), cost)
        assert c == ms
        assert path == EXPECTED_PLANS[face]
        assert n == len(EXPECTED_PLANS[face])


def test_planner_matches_frozen_plans_from_identity():
    o = Orientation.identity()
    cost = CostModel()
    for face, plan in EXPECTED_PLANS.items():
        prims, end = plan_reorientation(o, face, cost)
        assert prims == plan
        assert sum(cost.cost_of(p) for p in prims) == EXPECTED_MINIMA[face]
        assert end.face_at(3) == face


def test_planner_matches_oracle_on_all_144_cases():
    cost = CostModel()
    for stations in ALL_ORIENTATIONS:
        o = Orientation(stations)
        for face in Face:
            prims, end = plan_reorientation(o, face, cost)
            oc, on, opath = oracle_plan(stations, int(face), cost)
            got = sum(cost.cost_of(p) for p in prims)
            assert got == oc, (stations, face)
            assert len(prims) == on, (stations, face)
            assert prims == opath, (stations, face)
            assert end.face_at(3) == face


def test_plans_contain_no_bottom_turns():
    for stations in ALL_ORIENTATIONS:
        for face in Face:
            prims, _ = plan_reorientation(Orientation(stations), face)
            assert all(
                p in (Primitive.FLIP, Primitive.ROT_CW, Primitive.ROT_CCW)
                for p in prims
            )


def test_expensive_rotations_push_planner_onto_flips():
    # Bringing B down normally rotates twice then flips; with dear rotations
    # three flips (8193) beat rotate-rotate-flip (12731).
    cost = CostModel(rot90_ms=5000)
    prims, _ = plan_reorientation(Orientation.identity(), Face.B, cost)
    assert prims == (Primitive.FLIP, Primitive.FLIP, Primitive.FLIP)


@settings(max_examples=25, deadline=None)
@given(
    flip=st.integers(min_value=0, max_value=5000),
    rot=st.integers(min_value=0, max_value=5000),
)
def test_planner_is_optimal_under_arbitrary_costs(flip, rot):
    cost = CostModel(flip_ms=flip, rot90_ms=rot)
    for stations in ALL_ORIENTATIONS:
        o = Orientation(stations)
        for face in Face:
            prims, _ = plan_reorientation(o, face, cost)
            oc, on, opath = oracle_plan(stations, int(face), cost)
            assert sum(cost.cost_of(p) for p in prims) == oc
            assert (len(prims), tuple(prims)) == (on, opath)


# ---------------------------------------------------------------------------
# Lowering moves


def test_lower_move_examples():
    o = Orientation.identity()
    cost = CostModel()

    prims, end = lower_move(o, Move(Face.D, Turn.CW), cost)
    assert prims == (Primitive.BOT_CW,)
    assert end == o
    assert sum(cost.cost_of(p) for p in prims) == 2028

    prims, end = lower_move(o, Move(Face.D, Turn.HALF), cost)
    assert prims == (Primitive.BOT_2,)
    assert end == o
    assert sum(cost.cost_of(p) for p in prims) == 3319

    prims, end = lower_move(o, Move(Face.U, Turn.CW), cost)
    assert prims == (Primitive.FLIP, Primitive.FLIP, Primitive.BOT_CW)
    assert end == flip_action(flip_action(o))
    assert sum(cost.cost_of(p) for p in prims) == 7490


def test_lower_move_turn_to_primitive_mapping():
    o = Orientation.identity()
    for turn, prim in (
        (Turn.CW, Primitive.BOT_CW),
        (Turn.HALF, Primitive.BOT_2),
        (Turn.CCW, Primitive.BOT_CCW),
    ):
        prims, _ = lower_move(o, Move(Face.F, turn), CostModel())
        assert prims[-1] == prim
        assert prims[:-1] == (Primitive.FLIP,)


def test_lower_move_leaves_target_face_down():
    o = Orientation.identity()
    for m in parse_moves("R U2 B' L D F2 R' B"):
        prims, o2 = lower_move(o, m, CostModel())
        assert o2.face_at(3) == m.face
        assert sum(1 for p in prims if p >= Primitive.BOT_CW) == 1
        o = o2


# ---------------------------------------------------------------------------
# Move-sequence simplification


def test_simplify_merges_and_cancels():
    assert simplify_moves(parse_moves("U' U'")) == parse_moves("U2")
    assert simplify_moves(parse_moves("F' F")) == ()
    assert simplify_moves(parse_moves("R R R")) == parse_moves("R'")
    assert simplify_moves(parse_moves("F U U' F'")) == ()
    assert simplify_moves(parse_moves("D D' R")) == parse_moves("R")
    assert simplify_moves(()) == ()


def test_simplify_leaves_canonical_sequences_alone():
    seq = parse_moves("R U2 B' L D F2")
    assert simplify_moves(seq) == seq


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=17), max_size=24))
def test_simplify_preserves_cube_effect_and_kills_repeats(idxs):
    from cuberig.cube import ALL_MOVES

    seq = tuple(ALL_MOVES[i] for i in idxs)
    simp = simplify_moves(seq)
    start = random_state(99)
    assert apply_sequence(start, simp) == apply_sequence(start, seq)
    assert all(a.face != b.face for a, b in zip(simp, simp[1:]))


# ---------------------------------------------------------------------------
# Whole-program compilation


def test_compile_empty_sequence():
    prog = compile_moves(())
    assert prog.primitives == ()
    assert prog.annotations == ()
    assert prog.total_ms == 0


def test_compile_single_moves():
    prog = compile_moves(parse_moves("D"))
    assert prog.primitives == (Primitive.BOT_CW,)
    assert prog.annotations == (0,)
    assert prog.total_ms == 2028

    prog = compile_moves(parse_moves("U"))
    assert prog.primitives == (
        Primitive.FLIP,
        Primitive.FLIP,
        Primitive.BOT_CW,
    )
    assert prog.annotations == (REORIENTATION, REORIENTATION, 0)
    assert prog.total_ms == 7490


def test_compile_d_dprime_literal_versus_simplified():
    seq = parse_moves("D D'")
    literal = compile_moves(seq)
    assert literal.primitives == (Primitive.BOT_CW, Primitive.BOT_CCW)
    assert literal.total_ms == 4610

    simplified = compile_moves(seq, simplify=True)
    assert simplified.primitives == ()
    assert simplified.total_ms == 0


def test_compile_threads_orientation_between_moves():
    # D then U: after D the cube is unmoved, so U still needs two flips.
    prog = compile_moves(parse_moves("D U"))
    assert prog.primitives == (
        Primitive.BOT_CW,
        Primitive.FLIP,
        Primitive.FLIP,
        Primitive.BOT_CW,
    )
    assert prog.annotations == (0, REORIENTATION, REORIENTATION, 1)


def test_compile_every_bottom_turn_is_annotated_with_its_move():
    seq = parse_moves("R' B U2 B D L F2 R' B' D'")
    prog = compile_moves(seq)
    bots = [a for p, a in zip(prog.primitives, prog.annotations) if p >= Primitive.BOT_CW]
    assert bots == list(range(len(seq)))
    reorients = [
        a for p, a in zip(prog.primitives, prog.annotations) if p < Primitive.BOT_CW
    ]
    assert all(a == REORIENTATION for a in reorients)


def test_compile_total_is_sum_of_member_costs():
    cost = CostModel()
    seq = parse_moves("L2 R' L D' F2 D2 F F' U2 R' U")
    prog = compile_moves(seq, cost)
    assert prog.total_ms == sum(cost.cost_of(p) for p in prog.primitives)


def test_program_concatenation_adds_totals():
    cost = CostModel()
    a = compile_moves(parse_moves("R U"), cost)
    b = compile_moves(parse_moves("F' D2"), cost)
    joined = make_program(a.primitives + b.primitives, cost)
    assert joined.total_ms == a.total_ms + b.total_ms


def test_make_program_assigns_canonical_annotations():
    prims = (
        Primitive.FLIP,
        Primitive.BOT_CW,
        Primitive.ROT_CW,
        Primitive.FLIP,
        Primitive.BOT_2,
        Primitive.BOT_CCW,
    )
    prog = make_program(prims, CostModel())
    assert prog.annotations == (REORIENTATION, 0, REORIENTATION, REORIENTATION, 1, 2)


def test_compile_respects_custom_cost_model():
    cost = CostModel(flip_ms=1, rot90_ms=1, bot_cw_ms=1, bot_ccw_ms=1, bot180_ms=1)
    prog = compile_moves(parse_moves("U"), cost)
    assert prog.total_ms == len(prog.primitives)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=17), max_size=12))
def test_compile_lowers_each_move_to_exactly_one_bottom_turn(idxs):
    from cuberig.cube import ALL_MOVES

    seq = tuple(ALL_MOVES[i] for i in idxs)
    prog = compile_moves(seq)
    bots = [p for p in prog.primitives if p >= Primitive.BOT_CW]
    assert len(bots) == len(seq)
    expected = {
        Turn.CW: Primitive.BOT_CW,
        Turn.HALF: Primitive.BOT_2,
        Turn.CCW: Primitive.BOT_CCW,
    }
    assert bots == [expected[m.turn] for m in seq]


def test_machine_program_is_immutable():
    prog = compile_moves(parse_moves("D"))
    with pytest.raises(AttributeError):
        prog.total_ms = 0

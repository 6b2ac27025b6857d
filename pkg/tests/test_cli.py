"""CLI behavior, driven through main() in process."""

import pytest

from cuberig.cli import main
from cuberig.cube import (
    SOLVED_CUBIES,
    SOLVED_FACELETS,
    apply_sequence,
    cubies_to_facelets,
    parse_moves,
    random_state,
)


@pytest.fixture(autouse=True)
def _warm_tables(tables):
    """Make sure the CLI finds the session-wide cache, never rebuilding."""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_random_is_deterministic(capsys):
    code, out1, _ = run(capsys, "solve", "--random", "--seed", "7")
    assert code == 0
    code, out2, _ = run(capsys, "solve", "--random", "--seed", "7")
    assert out1 == out2
    moves = parse_moves(out1.strip())
    assert 0 < len(moves) <= 24
    assert apply_sequence(random_state(7), moves) == SOLVED_CUBIES


def test_solve_positional_state(capsys):
    code, out, _ = run(capsys, "solve", SOLVED_FACELETS)
    assert code == 0
    assert out.strip() == ""


def test_solve_from_file(capsys, tmp_path):
    state = cubies_to_facelets(random_state(3))
    f = tmp_path / "state.txt"
    f.write_text(str(state) + "\n")
    code, out, _ = run(capsys, "solve", "--file", str(f))
    assert code == 0
    assert apply_sequence(random_state(3), parse_moves(out.strip())) == SOLVED_CUBIES


def test_solve_bad_state_exits_nonzero(capsys):
    code, _, err = run(capsys, "solve", "UUU")
    assert code == 2
    assert "error" in err


def test_solve_unreachable_bound_exits_nonzero(capsys):
    state = str(cubies_to_facelets(random_state(11)))
    code, _, err = run(capsys, "solve", state, "--max-length", "1")
    assert code == 2
    assert "error" in err


def test_scramble_outputs_generating_moves(capsys):
    code, out, _ = run(capsys, "scramble", "--seed", "5")
    assert code == 0
    lines = dict(line.split(" ", 1) for line in out.strip().splitlines())
    assert set(lines) == {"state", "moves"}
    got = apply_sequence(SOLVED_CUBIES, parse_moves(lines["moves"]))
    assert str(cubies_to_facelets(got)) == lines["state"]


def test_scramble_real_mode_includes_program(capsys):
    code, out, _ = run(capsys, "scramble", "--seed", "5", "--mode", "real")
    assert code == 0
    lines = dict(line.split(" ", 1) for line in out.strip().splitlines())
    assert set(lines) == {"state", "moves", "program", "serial", "total_ms"}
    assert lines["serial"].endswith("0a")


def test_compile_simplify_default_and_flag(capsys):
    code, out, _ = run(capsys, "compile", "D D'")
    assert code == 0
    lines = dict(line.split(" ", 1) for line in out.strip().splitlines())
    assert lines["program"] == ""
    assert lines["total_ms"] == "0"

    code, out, _ = run(capsys, "compile", "--no-simplify", "D D'")
    lines = dict(line.split(" ", 1) for line in out.strip().splitlines())
    assert lines["program"] == "BOT_CW BOT_CCW"
    assert lines["total_ms"] == "4610"
    assert lines["serial"] == "63610a"


def test_compile_with_cost_model_file(capsys, tmp_path):
    cfg = tmp_path / "rig.cfg"
    cfg.write_text("bot_cw_ms = 1000\n")
    code, out, _ = run(capsys, "compile", "D", "--cost-model", str(cfg))
    assert code == 0
    lines = dict(line.split(" ", 1) for line in out.strip().splitlines())
    assert lines["total_ms"] == "1000"


def test_simulate_prints_trace_and_final_state(capsys):
    code, out, _ = run(capsys, "simulate", "U")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t")[1] == "FLIP"
    assert lines[-2] == "total_ms 7490"
    expected = apply_sequence(SOLVED_CUBIES, parse_moves("U"))
    assert lines[-1] == f"state {cubies_to_facelets(expected)}"


def test_simulate_strict_mode_faults(capsys):
    code, _, err = run(capsys, "simulate", "U", "--strict")
    assert code == 2
    assert "cover" in err


def test_tables_verify_ok(capsys):
    code, out, _ = run(capsys, "tables", "verify")
    assert code == 0
    assert out.strip().splitlines()[-1] == "ok"
    assert "p2_corner_slice_max 14" in out


def test_tables_verify_missing_cache(capsys, tmp_path):
    code, _, err = run(capsys, "tables", "verify", "--table-cache", str(tmp_path / "x"))
    assert code == 2
    assert "error" in err


def test_tables_build_reports_stats(capsys):
    code, out, _ = run(capsys, "tables", "build")
    assert code == 0
    assert "p1_twist_slice_max 9" in out


def test_bench_small_run(capsys):
    code, out, _ = run(capsys, "bench", "--n", "3", "--seed", "100")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-2].startswith("mean_length ")
    assert lines[-1].startswith("mean_compiled_ms ")
    assert sum(int(l.split()[2]) for l in lines if l.startswith("length ")) == 3


def test_cli_requires_a_command(capsys):
    with pytest.raises(SystemExit):
        main([])

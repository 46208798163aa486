import io
import json

import pytest

from domatic_game import __version__
from domatic_game.cli import (
    EXIT_CAPACITY,
    EXIT_FAILED,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    RESULT_SCHEMA,
    main,
)
from domatic_game.experiments import archive_from_json
from domatic_game.game import GameConfig, Player, Transcript
from domatic_game.graphs import Cycle, from_edge_list, generate, parse_graph6
from domatic_game.solver import solve


def run(*argv, stdin=""):
    buf = io.StringIO()
    code = main(list(argv), buf, io.StringIO(stdin))
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


def test_solve_examples(tmp_path):
    code, doc = run_json("solve", "--family", "cycle:5", "--k", "2", "--first", "bob")
    assert code == EXIT_OK and doc["outputs"]["winner"] == "bob"
    assert doc["schema"] == RESULT_SCHEMA and doc["version"] == __version__
    path = tmp_path / "path4.txt"
    path.write_text("4 3\n0 1\n1 2\n2 3\n")
    code, doc = run_json("solve", "--edges", str(path), "--k", "1", "--first", "alice")
    assert doc["outputs"]["winner"] == "alice"
    code, doc = run_json("solve", "--family", "complete:4", "--k", "9")
    assert doc["outputs"]["winner"] == "bob"


def test_result_document_replays():
    _, doc = run_json("solve", "--family", "cycle:6", "--k", "2", "--first", "bob")
    cfg = doc["config"]
    g = from_edge_list(cfg["n"], [tuple(e) for e in cfg["edges"]])
    w, _ = solve(GameConfig(g, cfg["k"], Player(cfg["first"])))
    assert w.value == doc["outputs"]["winner"]


@pytest.mark.parametrize("argv,pair", [
    (["--family", "complete_bipartite:4,5"], (3, 2)),
    (["--family", "grid:2,4"], (1, 2)),
    (["--family", "corona", "--base", "cycle:3"], (1, 2)),
])
def test_numbers_examples(argv, pair):
    code, doc = run_json("numbers", *argv)
    assert code == EXIT_OK
    assert (doc["outputs"]["dg"], doc["outputs"]["dg_delayed"]) == pair


def test_profile_text_output():
    code, text = run("profile", "--family", "complete:4", "--k-max", "5")
    assert code == EXIT_OK and "A A B B B" in text


def test_verify_examples():
    code, text = run("verify", "--family", "path:2..10")
    assert code == EXIT_OK and "0 mismatches" in text
    code, doc = run_json("verify", "--family", "cycle:3..6")
    assert code == EXIT_OK and len(doc["outputs"]["findings"]) == 4


def test_verify_unknown_suite():
    assert run("verify", "--suite", "nope")[0] == EXIT_PARSE


def test_verify_mismatch_exit(monkeypatch):
    import domatic_game.experiments as ex

    real = ex.expected_value

    def wrong(fam):
        e = real(fam)
        return ex.ExpectedValue(fam, e.dg_expected + 1, e.dg_delayed_expected, e.source)

    monkeypatch.setattr(ex, "expected_value", wrong)
    code, text = run("verify", "--family", "path:2..3")
    assert code == EXIT_MISMATCH and "MISMATCH" in text.upper()


def test_validate_examples():
    code, doc = run_json("validate", "--strategy", "bob_tree_peeler", "--family", "path:7",
                         "--k", "2", "--first", "bob")
    assert code == EXIT_OK and doc["outputs"]["verdict"] == "holds"
    code, _ = run("validate", "--strategy", "alice_matching_follower", "--family", "cycle:6",
                  "--k", "2", "--first", "bob")
    assert code == EXIT_OK


def test_validate_refutation_exit_and_counter_line():
    code, doc = run_json("validate", "--strategy", "bipartite_general:bob,immediate_wins=no",
                         "--family", "complete_bipartite:2,2", "--k", "2", "--first", "alice")
    assert code == EXIT_FAILED
    line = Transcript.from_dict(doc["outputs"]["counter_line"])
    assert line.final.value == "alice_wins"


def test_validate_not_applicable():
    code, _ = run("validate", "--strategy", "bob_tree_peeler", "--family", "path:6",
                  "--k", "2", "--first", "bob")
    assert code == EXIT_USAGE


def test_arena_example():
    code, doc = run_json("arena", "--first", "bob_flood", "--second", "random:seed=7",
                         "--family", "cycle:4", "--k", "3")
    assert code == EXIT_OK
    tr = Transcript.from_dict(doc["outputs"]["transcript"])
    assert tr.final.value == "bob_wins" and tr.replay() is not None


def test_search_monotonicity_census(tmp_path):
    arch = tmp_path / "mono.json"
    code, text = run("search", "monotonicity", "--census", "n<=4", "--archive", str(arch))
    assert code == EXIT_OK and "0 with a Bob-then-Alice step" in text
    found = archive_from_json(arch.read_text())
    assert len(found) == 1 + 1 + 2 + 6


def test_search_monotonicity_graph6_file(tmp_path):
    f = tmp_path / "in.g6"
    f.write_text("C~\nBw\n")
    code, doc = run_json("search", "monotonicity", "--graph6", str(f))
    assert code == EXIT_OK and len(doc["outputs"]["findings"]) == 2


def test_search_edge_deletion():
    code, doc = run_json("search", "edge-deletion", "--family", "complete:4")
    assert code == EXIT_OK and len(doc["outputs"]["findings"]) == 6
    assert all("delta" in f["witness"] for f in doc["outputs"]["findings"])


def test_generate_formats():
    code, text = run("generate", "--family", "cycle:5")
    assert parse_graph6(text.strip()) == generate(Cycle(5))
    code, text = run("generate", "--family", "path:3", "--format", "edges")
    assert text.split("\n")[0] == "3 2"


def test_error_exit_codes(tmp_path):
    assert run("solve", "--family", "wheel:5", "--k", "2")[0] == EXIT_PARSE
    bad = tmp_path / "bad.g6"
    bad.write_text("C\n")
    assert run("solve", "--graph6", str(bad), "--k", "2")[0] == EXIT_PARSE
    assert run("solve", "--family", "cycle:14", "--k", "3", "--max-states", "100")[0] == EXIT_CAPACITY
    assert run("solve", "--family", "cycle:5")[0] == EXIT_USAGE
    assert run("frobnicate")[0] == EXIT_USAGE


def test_play_cycle3_human_wins(tmp_path):
    tr_path = tmp_path / "game.json"
    code, text = run("play", "--family", "cycle:3", "--k", "2", "--human", "alice",
                     "--transcript", str(tr_path), stdin="0 1\n0 2\n2 2\n")
    assert code == EXIT_OK
    assert "already coloured" in text
    tr = Transcript.from_json(tr_path.read_text())
    assert tr.final.value == "alice_wins"


def test_play_path4_engine_wins():
    moves = "".join(f"{v} {c}\n" for v in range(4) for c in (1, 2))
    code, text = run("play", "--family", "path:4", "--k", "2", "--human", "alice",
                     "--first", "alice", stdin=moves)
    assert code == EXIT_OK and "bob_wins" in text

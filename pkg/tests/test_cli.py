import json

import pytest

from fraisse.cli import EXIT_USAGE, main


def run(tmp_path, name, *argv):
    path = tmp_path / f"{name}.json"
    code = main([*argv, "--report", str(path)])
    return code, json.loads(path.read_text())


def test_check_exit_codes(tmp_path):
    code, rep = run(tmp_path, "wap", "check", "--category", "builtin:graphs", "--prop", "wap", "--bound", "3")
    assert code == 0 and rep["status"] == "Holds"
    code, rep = run(tmp_path, "ap", "check", "--category", "file:vshape.json", "--prop", "ap", "--object", "z")
    assert code == 1 and rep["status"] == "Fails"
    assert rep["result"]["counterexample"]


def test_usage_errors(tmp_path, capsys):
    assert main(["check", "--category", "builtin:graphs"]) == EXIT_USAGE
    assert main(["build", "--category", "builtin:graphs", "--steps", "0"]) == EXIT_USAGE
    assert main(["check", "--category", "builtin:graphs", "--prop", "ap"]) == EXIT_USAGE
    capsys.readouterr()


def test_missing_file_is_an_io_error(tmp_path):
    code, rep = run(tmp_path, "v", "verify", "--seq", str(tmp_path / "nope.json"))
    assert code == 3 and rep["error"]["code"] == "io_error"


def test_build_verify_iso(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code, rep = run(tmp_path, "ba", "build", "--category", "builtin:graphs", "--steps", "20", "--out", str(a))
    assert code == 0 and rep["result"]["stages"] == 21
    run(tmp_path, "bb", "build", "--category", "builtin:graphs", "--steps", "20", "--seed", "1", "--out", str(b))
    code, rep = run(tmp_path, "v", "verify", "--seq", str(a), "--depth", "3")
    assert code == 0
    code, rep = run(tmp_path, "i", "iso", "--a", str(a), "--b", str(b), "--depth", "3")
    assert code == 0


def test_game_and_rerun_hash(tmp_path):
    seq = tmp_path / "u.json"
    main(["build", "--category", "builtin:graphs", "--steps", "20", "--out", str(seq), "--report", str(tmp_path / "b.json")])
    argv = ["game", "--category", "builtin:graphs", "--eve", "cliques", "--odd", f"generic:{seq}", "--rounds", "12"]
    code, first = run(tmp_path, "g1", *argv)
    assert code == 0 and first["result"]["classify"]["status"] == "Holds"
    _, second = run(tmp_path, "g2", *argv)
    assert first["report_hash"] == second["report_hash"]


def test_ubiquity_report(tmp_path):
    code, rep = run(tmp_path, "u", "ubiquity", "--category", "builtin:graphs", "--depth", "2",
                    "--checker", "extension:1")
    assert code == 0
    # one root (K_1), then 2 and 4 one-point extensions
    assert rep["result"]["total"] == 8


@pytest.mark.parametrize("argv", [
    ["check", "--category", "builtin:linord", "--prop", "cap", "--bound", "3"],
    ["build", "--category", "builtin:surj", "--steps", "6"],
    ["ubiquity", "--category", "builtin:graphs", "--depth", "2", "--mode", "sampled", "--samples", "20"],
])
def test_reruns_are_hash_identical(tmp_path, argv):
    _, a = run(tmp_path, "a", *argv)
    _, b = run(tmp_path, "b", *argv)
    assert a["report_hash"] == b["report_hash"]


def test_tournament_tallies_seeds(tmp_path):
    seq = tmp_path / "u.json"
    main(["build", "--category", "builtin:graphs", "--steps", "20", "--out", str(seq), "--report", str(tmp_path / "b.json")])
    argv = ["tournament", "--category", "builtin:graphs", "--odd", f"generic:{seq}", "--rounds", "10",
            "--games", "3", "--seed", "5"]
    code, rep = run(tmp_path, "t", *argv)
    assert code == 0 and rep["result"]["tally"]["Holds"] == 3
    assert [p["seed"] for p in rep["result"]["plays"]] == [5, 6, 7]
    # each play matches the single game run with the same seed
    _, single = run(tmp_path, "g", "game", *argv[1:7], "--seed", "6")
    assert rep["result"]["plays"][1]["sizes"] == single["result"]["sizes"]
    assert run(tmp_path, "t2", *argv)[1]["report_hash"] == rep["report_hash"]


def test_tournament_without_target_is_unknown(tmp_path):
    code, rep = run(tmp_path, "t", "tournament", "--category", "builtin:graphs", "--games", "2", "--rounds", "3")
    assert code == 2 and rep["result"]["tally"]["UnknownWithinBound"] == 2


def test_hom_cache_dir(tmp_path, monkeypatch):
    from fraisse.instances.graphs import Graph, GraphCategory

    G = GraphCategory()
    a, b = Graph(2, {(0, 1)}), Graph(3, {(0, 1), (1, 2)})
    fresh = G.hom(a, b)
    monkeypatch.setenv("FRAISSE_CACHE_DIR", str(tmp_path / "cache"))
    assert G.hom(a, b) == fresh
    assert len(list((tmp_path / "cache").iterdir())) == 1
    assert G.hom(a, b) == fresh

import json

import pytest

from fraisse.core import constant_sequence
from fraisse.engine.builder import build_weak_fraisse
from fraisse.errors import LawViolation
from fraisse.game.play import run_game
from fraisse.game.strategies import CliquesEve, OddGeneric
from fraisse.instances.builtin import builtin_category
from fraisse.instances.graphs import Graph
from fraisse.io import (digest, load_play, load_sequence, save_play, save_sequence, sequence_from_dict,
                        sequence_to_dict)


def test_sequence_round_trip_regrows(tmp_path):
    seq = build_weak_fraisse(builtin_category("graphs"), 12, seed=3)
    path = tmp_path / "seq.json"
    save_sequence(seq, path)
    back = load_sequence(path)
    assert back.objects == seq.objects and back.bonds == seq.bonds
    assert back.grower is not None
    back.grower.step(back)
    assert len(back) == len(seq) + 1


def test_plain_sequence_round_trip(tmp_path):
    G = builtin_category("graphs")
    seq = constant_sequence(G, Graph(2, {(0, 1)}), 3)
    path = tmp_path / "c.json"
    save_sequence(seq, path)
    back = load_sequence(path)
    assert back.objects == seq.objects and back.grower is None


def test_surj_round_trip(tmp_path):
    seq = build_weak_fraisse(builtin_category("surj"), 8, seed=0)
    save_sequence(seq, tmp_path / "s.json")
    assert load_sequence(tmp_path / "s.json", regrow=False).bonds == seq.bonds


def test_tampered_ledger_is_rejected():
    doc = sequence_to_dict(build_weak_fraisse(builtin_category("graphs"), 10, seed=0))
    entry = next(e for e in doc["ledger"] if e["task"] == "V")
    entry["k"] = 0
    with pytest.raises(LawViolation):
        sequence_from_dict(doc)


def test_bad_bond_is_rejected(tmp_path):
    G = builtin_category("graphs")
    doc = sequence_to_dict(constant_sequence(G, Graph(2, {(0, 1)}), 2))
    doc["bonds"][0] = [0, 0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(LawViolation):
        load_sequence(path)


def test_play_round_trip(tmp_path):
    G = builtin_category("graphs")
    u = build_weak_fraisse(G, 16, seed=0)
    play = run_game(G, CliquesEve(), OddGeneric(u), 5)
    save_play(play, tmp_path / "p.json", result={"status": "holds"})
    back = load_play(tmp_path / "p.json")
    assert back.objects == play.objects
    assert back.moves[1]["annotations"]["stage"] == play.moves[1]["annotations"]["stage"]


def test_digest_ignores_key_order():
    assert digest({"a": 1, "b": [1, 2]}) == digest({"b": [1, 2], "a": 1})
    assert digest({"a": 1}) != digest({"a": 2})

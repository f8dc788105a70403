"""JSON files for sequences and plays, with certificate replay on load."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .core import Arrow, Category, Sequence
from .errors import DomainMismatch, LawViolation
from .instances.builtin import builtin_category

_ARROW_KEYS = ("f", "g", "arrow", "p")


def encode(cat: Category, value):
    """Plain JSON form of objects, arrows and nested containers."""
    if isinstance(value, Arrow):
        return {"dom": cat.object_payload(value.dom), "cod": cat.object_payload(value.cod),
                "map": cat.arrow_payload(value)}
    if isinstance(value, dict):
        return {str(k): encode(cat, v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(cat, v) for v in value]
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return cat.object_payload(value)


def decode_arrow(cat: Category, data) -> Arrow:
    return cat.make_arrow(cat.object_from_payload(data["dom"]), cat.object_from_payload(data["cod"]),
                          data["map"])


def canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(doc) -> str:
    return hashlib.sha256(canonical(doc).encode("utf-8")).hexdigest()


def file_hash(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def sequence_to_dict(seq: Sequence) -> dict:
    cat = seq.category
    doc = {
        "category": cat.ref,
        "stages": [cat.object_payload(x) for x in seq.objects],
        "bonds": [cat.arrow_payload(b) for b in seq.bonds],
        "ledger": [encode(cat, e) for e in seq.ledger],
    }
    builder = seq.grower
    if builder is not None and hasattr(builder, "seed"):
        doc["builder"] = {"seed": builder.seed, "bound": builder.bound, "steps": len(seq) - 1}
    return doc


def replay_ledger(seq: Sequence) -> list[int]:
    """Indices of ledger entries whose equation does not hold exactly."""
    cat = seq.category
    bad = []
    for i, e in enumerate(seq.ledger):
        try:
            k = e["k"]
            if e["task"] == "U":
                ok = e["arrow"].cod == seq[k] and cat.is_arrow(e["arrow"])
            elif e["task"] == "V":
                n = e["n"]
                ok = cat.chain(e["g"], e["f"], seq.bonds[n]) == seq.bonding(n, k)
            else:
                n = e["n"]
                ok = cat.compose(e["g"], e["p"]) == seq.bonding(n, k)
        except (KeyError, IndexError, DomainMismatch):
            ok = False
        if not ok:
            bad.append(i)
    return bad


def sequence_from_dict(doc: dict, regrow: bool = True) -> Sequence:
    """Rebuild a sequence and replay its ledger.

    With ``regrow`` a builder-made sequence is rebuilt from its recorded seed;
    when the rebuild matches stage for stage the rebuilt sequence is returned
    with its builder attached, so it can grow on demand.
    """
    cat = builtin_category(doc["category"])
    stages = [cat.object_from_payload(s) for s in doc["stages"]]
    bonds = [cat.make_arrow(stages[n], stages[n + 1], b) for n, b in enumerate(doc["bonds"])]
    for n, b in enumerate(bonds):
        if not cat.is_arrow(b):
            raise LawViolation(f"bond {n} is not an arrow of {cat.name}", index=n)
    ledger = []
    for e in doc.get("ledger", []):
        e = dict(e)
        for key in _ARROW_KEYS:
            if key in e and isinstance(e[key], dict):
                e[key] = decode_arrow(cat, e[key])
        if "x" in e:
            e["x"] = cat.object_from_payload(e["x"])
        ledger.append(e)
    seq = Sequence(cat, stages, bonds, ledger)
    bad = replay_ledger(seq)
    if bad:
        raise LawViolation(f"ledger entries {bad[:5]} do not replay", entries=bad)
    spec = doc.get("builder")
    if regrow and spec:
        from .engine.builder import build_weak_fraisse

        rebuilt = build_weak_fraisse(cat, spec["steps"], seed=spec["seed"], bound=spec["bound"])
        if rebuilt.objects == seq.objects and rebuilt.bonds == seq.bonds:
            return rebuilt
    return seq


def save_sequence(seq: Sequence, path) -> None:
    Path(path).write_text(json.dumps(sequence_to_dict(seq), indent=1) + "\n", encoding="utf-8")


def load_sequence(path, regrow: bool = True) -> Sequence:
    return sequence_from_dict(json.loads(Path(path).read_text(encoding="utf-8")), regrow)


def save_play(play, path, result=None) -> None:
    doc = play.to_dict()
    if result is not None:
        doc["result"] = result
    Path(path).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")


def load_play(path):
    from .game.play import Play

    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return Play.from_dict(builtin_category(doc["category"]), doc)

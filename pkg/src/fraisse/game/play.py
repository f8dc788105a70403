"""Plays of the Banach-Mazur game and the game loop.

Eve opens with an object ``a_0``; afterwards move ``m`` is an arrow
``a_{m-1} -> a_m``, played by Odd when ``m`` is odd and by Eve otherwise.
Round 0 is Eve's opening plus Odd's first answer; round ``n >= 1`` is Eve's
move to ``a_{2n}`` plus Odd's move to ``a_{2n+1}``.
"""

from __future__ import annotations

import copy
import random

from ..core import Arrow, Category, Sequence
from ..errors import IllegalMove

EVE, ODD = "Eve", "Odd"


class Play:
    def __init__(self, category: Category, opening=None):
        self.category = category
        self.objects: list = []
        self.moves: list[dict] = []
        if opening is not None:
            self.start(opening)

    def start(self, a0, annotations=None) -> None:
        if self.objects:
            raise ValueError("play already started")
        self.objects.append(a0)
        self.moves.append({"by": EVE, "object": a0, "annotations": dict(annotations or {})})

    def add(self, arrow: Arrow, annotations=None) -> None:
        by = self.to_move
        if not self.objects or arrow.dom != self.objects[-1]:
            raise IllegalMove(f"{by} played an arrow that does not start at the last object",
                              side=by, index=len(self.objects))
        self.objects.append(arrow.cod)
        self.moves.append({"by": by, "arrow": arrow, "annotations": dict(annotations or {})})

    @property
    def to_move(self) -> str:
        return ODD if len(self.objects) % 2 == 1 else EVE

    @property
    def rounds(self) -> int:
        """Completed rounds, i.e. Odd moves made."""
        return len(self.objects) // 2

    def __len__(self) -> int:
        return len(self.objects)

    def arrow(self, m: int) -> Arrow:
        return self.moves[m]["arrow"]

    def sequence(self) -> Sequence:
        return Sequence(self.category, self.objects, [mv["arrow"] for mv in self.moves[1:]])

    def bonding(self, n: int, m: int) -> Arrow:
        cat = self.category
        f = cat.identity(self.objects[n])
        for i in range(n + 1, m + 1):
            f = cat.compose(self.moves[i]["arrow"], f)
        return f

    def restrict(self, indices) -> "Play":
        """Sub-play through ``a_i`` for ``i`` in ``indices`` (composing skipped moves)."""
        indices = list(indices)
        out = Play(self.category, self.objects[indices[0]])
        for a, b in zip(indices, indices[1:]):
            out.add(self.bonding(a, b), self.moves[b]["annotations"] if b == a + 1 else {})
        return out

    def prefix(self, length: int) -> "Play":
        out = Play(self.category)
        out.objects = self.objects[:length]
        out.moves = self.moves[:length]
        return out

    def to_dict(self) -> dict:
        cat = self.category
        moves = []
        for mv in self.moves:
            rec = {"by": mv["by"], "annotations": _plain(cat, mv["annotations"])}
            if "object" in mv:
                rec["object"] = cat.object_payload(mv["object"])
            else:
                f = mv["arrow"]
                rec["arrow"] = {"cod": cat.object_payload(f.cod), "map": cat.arrow_payload(f)}
            moves.append(rec)
        return {"category": cat.ref, "moves": moves}

    @classmethod
    def from_dict(cls, cat: Category, data: dict) -> "Play":
        moves = data["moves"]
        play = cls(cat)
        play.start(cat.object_from_payload(moves[0]["object"]), moves[0].get("annotations"))
        for mv in moves[1:]:
            if mv["by"] != play.to_move:
                raise IllegalMove("transcript breaks the alternation", side=mv["by"], index=len(play))
            last = play.objects[-1]
            f = _arrow_from(cat, last, mv["arrow"])
            play.add(f, mv.get("annotations"))
        return play


def _arrow_from(cat, dom, payload) -> Arrow:
    # arrow payloads carry their codomain
    return cat.make_arrow(dom, cat.object_from_payload(payload["cod"]), payload["map"])


def _plain(cat, value):
    if isinstance(value, Arrow):
        return {"dom": cat.object_payload(value.dom), "cod": cat.object_payload(value.cod),
                "map": cat.arrow_payload(value)}
    if isinstance(value, dict):
        return {str(k): _plain(cat, v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(cat, v) for v in value]
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return cat.object_payload(value)


class Strategy:
    """A player's rule: ``move(play)`` returns the next arrow.

    Eve's ``move`` on an empty play returns the opening object. Strategies may
    return ``(arrow, annotations)``. ``reset(rng)`` is called before a game.
    """

    side = ODD
    name = "strategy"

    def reset(self, rng: random.Random) -> None:
        self.rng = rng

    def move(self, play: Play):
        raise NotImplementedError

    def fresh(self) -> "Strategy":
        return copy.deepcopy(self)


class FunctionStrategy(Strategy):
    def __init__(self, side: str, fn, name="function"):
        self.side = side
        self.fn = fn
        self.name = name

    def move(self, play: Play):
        return self.fn(play)


def _split(result):
    if isinstance(result, tuple) and len(result) == 2 and isinstance(result[1], dict):
        return result
    return result, {}


def run_game(cat: Category, eve: Strategy, odd: Strategy, rounds: int, seed: int = 0) -> Play:
    """Play ``rounds`` full rounds; each strategy gets its own seeded generator."""
    if eve.side != EVE or odd.side != ODD:
        raise ValueError("strategies are on the wrong sides")
    eve.reset(random.Random(f"{seed}:eve"))
    odd.reset(random.Random(f"{seed}:odd"))
    play = Play(cat)
    a0, ann = _split(eve.move(play))
    if not cat.contains(a0):
        raise IllegalMove("Eve opened with a non-object", side=EVE, index=0)
    play.start(a0, ann)
    while play.rounds < rounds:
        player = odd if play.to_move == ODD else eve
        f, ann = _split(player.move(play))
        if not isinstance(f, Arrow) or f.dom != play.objects[-1] or not cat.is_arrow(f):
            raise IllegalMove(f"{player.side} played an illegal arrow at position {len(play)}",
                              side=player.side, index=len(play))
        ann.setdefault("strategy", player.name)
        play.add(f, ann)
    return play


def play_from_sequence(seq: Sequence) -> Play:
    """Read a recorded sequence as a play (Eve plays even positions, Odd odd ones)."""
    play = Play(seq.category, seq[0])
    for b in seq.bonds:
        play.add(b)
    return play

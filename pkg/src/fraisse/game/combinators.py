"""Strategy transfer along a weakly dominating subcategory, and intersection of strategies."""

from __future__ import annotations

import copy

from ..amalgamation import _cofinal_arrow, check_subcategory
from ..core import Category
from ..errors import DominationWitnessNotFound, EmptyList
from ..verdict import Status
from .play import EVE, ODD, Play, Strategy, _split


class TransferredOdd(Strategy):
    """Odd's strategy in one game simulated inside the other.

    ``from_sub``: ``inner`` plays in ``sub``, the outer game is in ``cat``.
    Eve's outer move ``alpha`` is pushed into ``sub`` by a cofinal arrow ``j``;
    the inner answer ``r`` becomes the outer answer ``r o j``.

    ``to_sub``: ``inner`` plays in ``cat``, the outer game is in ``sub``. The
    inner answer ``r`` lands in ``c``; the outer answer is ``d o r`` with
    ``d: c -> sub`` cofinal, and Eve's next outer move ``alpha`` becomes the
    inner move ``alpha o d``.
    """

    side = ODD

    def __init__(self, cat: Category, sub, inner: Strategy, direction: str, bound: int = 3):
        self.cat = cat
        self.sub = sub
        self.inner = inner
        self.direction = direction
        self.bound = bound
        self.name = f"transfer[{direction}]({inner.name})"
        self.inner_play: Play | None = None
        self._pending = None

    def reset(self, rng) -> None:
        super().reset(rng)
        self.inner.reset(rng)
        self.inner_play = None
        self._pending = None

    def _cofinal(self, x):
        j = _cofinal_arrow(self.cat, self.sub, x, self.bound)
        if j is None:
            raise DominationWitnessNotFound(f"no arrow from {self.cat.describe(x)} into the subcategory")
        return j

    def _inner_answer(self):
        arrow, ann = _split(self.inner.move(self.inner_play))
        self.inner_play.add(arrow, ann)
        return arrow, ann

    def move(self, play: Play):
        cat = self.cat
        if self.direction == "from_sub":
            j = self._cofinal(play.objects[-1])
            if len(play) == 1:
                self.inner_play = Play(self.sub, j.cod)
            else:
                alpha = play.arrow(len(play) - 1)
                self.inner_play.add(cat.compose(j, alpha))
            r, ann = self._inner_answer()
            # r o j lands where the inner answer does, so its annotations still apply
            return cat.compose(r, j), dict(ann, inner_len=len(self.inner_play))
        if len(play) == 1:
            self.inner_play = Play(self.cat, play.objects[0])
        else:
            alpha = play.arrow(len(play) - 1)
            self.inner_play.add(cat.compose(alpha, self._pending))
        r, _ = self._inner_answer()
        d = self._cofinal(r.cod)
        self._pending = d
        return cat.compose(d, r), {"inner_len": len(self.inner_play)}


def transfer_odd_strategy(cat: Category, sub, strategy: Strategy, direction: str = "from_sub",
                          bound: int = 3) -> TransferredOdd:
    if direction not in ("from_sub", "to_sub"):
        raise ValueError("direction must be 'from_sub' or 'to_sub'")
    v = check_subcategory(cat, sub, "weakly_dominating", bound)
    if v.status is Status.FAILS:
        raise DominationWitnessNotFound("subcategory is not weakly dominating within bound",
                                        counterexample=v.counterexample)
    return TransferredOdd(cat, sub, strategy, direction, bound)


def nu2(m: int) -> int:
    return (m & -m).bit_length() - 1


def partition_index(m: int, count: int) -> int:
    """Block of the even position ``m``: ``min(nu_2(m/2 + 1), count - 1)``."""
    if m % 2:
        raise ValueError("only even positions are partitioned")
    return min(nu2(m // 2 + 1), count - 1)


def block(k: int, count: int, horizon: int) -> list[int]:
    """``I_k`` cut at ``horizon``."""
    return [m for m in range(0, horizon, 2) if partition_index(m, count) == k]


def j_block(k: int, count: int, horizon: int) -> list[int]:
    """``J_k = I_k`` together with the successors of its members."""
    return sorted({x for m in block(k, count, horizon) for x in (m, m + 1)})


class IntersectedOdd(Strategy):
    """Round ``i`` goes to strategy ``k`` with ``2i`` in ``I_k``; each sees only its ``J_k`` sub-play."""

    side = ODD
    name = "intersection"

    def __init__(self, strategies):
        strategies = list(strategies)
        if not strategies:
            raise EmptyList("need at least one strategy")
        self.strategies = strategies
        self.pristine = [copy.deepcopy(s) for s in strategies]
        self.metadata = {"rule": "I_k = {even m : min(nu2(m/2 + 1), K - 1) = k}",
                         "K": len(strategies),
                         "strategies": [s.name for s in strategies]}

    def reset(self, rng) -> None:
        super().reset(rng)
        self.strategies = [copy.deepcopy(s) for s in self.pristine]
        for s in self.strategies:
            s.reset(rng)

    def restricted(self, play: Play, k: int) -> Play:
        idx = [x for x in j_block(k, len(self.strategies), len(play) + 1) if x < len(play)]
        return play.restrict(idx)

    def move(self, play: Play):
        m = len(play) - 1
        k = partition_index(m, len(self.strategies))
        sub = self.restricted(play, k)
        arrow, ann = _split(self.strategies[k].move(sub))
        # restricted play ends at a_m, the last object
        ann = dict(ann, block=k)
        return arrow, ann


def intersect_odd_strategies(strategies) -> IntersectedOdd:
    return IntersectedOdd(strategies)


def restriction_replays(combined: IntersectedOdd, play: Play, k: int) -> bool:
    """Replay a fresh copy of strategy ``k`` on the ``J_k`` sub-play and compare every Odd move."""
    sub = combined.restricted(play, k)
    strat = copy.deepcopy(combined.pristine[k])
    strat.reset(combined.rng)
    for m in range(1, len(sub), 2):
        arrow, _ = _split(strat.move(sub.prefix(m)))
        if arrow != sub.arrow(m):
            return False
    return True

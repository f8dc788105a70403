"""Construction of weak Fraisse sequences by meeting dense requirements.

Two kinds of requirement are scheduled:

* ``("U", x)``: the object ``x`` maps into some stage;
* ``("V", n, i)``: for the ``i``-th extension ``f`` of ``u_{n+1}`` there are
  ``k`` and ``g`` with ``g o f o u_n^{n+1} == u_n^k``.

The schedule alternates one U task with one full row of V tasks. Rows are
finite, so every requirement is reached after finitely many others. A task
already met by the recorded stages is discharged for free; otherwise one
stage is appended. Every appended bond is amalgamable, which keeps the
output normalized.
"""

from __future__ import annotations

import itertools
import logging
import random

from ..amalgamation import amalgamable_arrow, is_amalgamable
from ..core import Arrow, Category, Sequence
from ..errors import DensityFailure, NotDirected
from ..verdict import Status

log = logging.getLogger(__name__)


class Builder:
    def __init__(self, category: Category, seed: int = 0, bound: int = 3):
        self.category = category
        self.seed = seed
        self.bound = bound
        self.rng = random.Random(seed)
        self.seq: Sequence | None = None
        self._tasks = None
        self._objects: list = []
        self.pending = None

    # -- setup ------------------------------------------------------------
    def _enumerated(self, i: int):
        cat = self.category
        if cat.finite:
            objs = cat.objects()
            return objs[i] if i < len(objs) else None
        while len(self._objects) <= i:
            self._objects = cat.enumerate_objects(max(2 * len(self._objects), i + 1))
        return self._objects[i]

    def _check_directed(self) -> None:
        cat = self.category
        objs = cat.objects() if cat.finite else cat.enumerate_objects(self.bound)
        for x, y in itertools.combinations(objs, 2):
            if cat.joint(x, y) is None:
                raise NotDirected(f"{cat.describe(x)} and {cat.describe(y)} have no common codomain",
                                  pair=(x, y))

    def _amalgamable_out(self, w) -> Arrow:
        """Arrow out of ``w`` certified amalgamable (identity under AP)."""
        cat = self.category
        if cat.has_ap:
            return cat.identity(w)
        e = amalgamable_arrow(cat, w, self.bound)
        if e is None and not cat.finite:
            # accept an arrow that survives the bounded scan
            for cand in [cat.identity(w), *cat.extensions(w)]:
                if is_amalgamable(cat, cand, self.bound).status is not Status.FAILS:
                    e = cand
                    break
        if e is None:
            raise DensityFailure(f"no amalgamable arrow out of {cat.describe(w)}", object=w)
        return e

    def start(self) -> Sequence:
        cat = self.category
        self._check_directed()
        u0 = self._enumerated(0)
        seq = Sequence(cat, [u0], grower=self)
        self.seq = seq
        e = self._amalgamable_out(u0)
        seq.append(e)
        self._tasks = self._schedule()
        return seq

    # -- scheduling -------------------------------------------------------
    def _schedule(self):
        seq = self.seq
        cat = self.category
        for i in itertools.count():
            x = self._enumerated(i)
            if x is not None:
                yield ("U", x)
            while len(seq) < i + 2:
                yield ("grow",)
            top = seq[i + 1]
            for j in range(cat.extension_count(top)):
                yield ("V", i, j)

    def _append(self, bond: Arrow) -> None:
        self.seq.append(bond)

    def _discharge(self, task) -> bool:
        """Meet one task; return True when a stage was appended."""
        cat, seq = self.category, self.seq
        if task[0] == "grow":
            self._append(self._amalgamable_out(seq[-1]))
            return True
        if task[0] == "U":
            x = task[1]
            L = len(seq) - 1
            f = cat.first_arrow(x, seq[L])
            if f is not None:
                seq.ledger.append({"task": "U", "x": x, "k": L, "arrow": f, "free": True})
                return False
            pair = cat.joint(x, seq[L])
            if pair is None:
                raise NotDirected(f"{cat.describe(x)} has no common codomain with the last stage")
            hx, hl = pair
            e = self._amalgamable_out(hx.cod)
            self._append(cat.compose(e, hl))
            seq.ledger.append({"task": "U", "x": x, "k": L + 1, "arrow": cat.compose(e, hx), "free": False})
            return True
        _, n, j = task
        f = cat.extension_at(seq[n + 1], j)
        p = cat.compose(f, seq.bonds[n])
        L = len(seq) - 1
        g = cat.first_factor(p, seq.bonding(n, L)) if L > n else None
        if g is not None:
            seq.ledger.append({"task": "V", "n": n, "f": f, "k": L, "g": g, "free": True})
            return False
        # amalgamating f with u_{n+1}^L directly adds the least; it needs AP at u_{n+1}
        top = seq.bonding(n + 1, L)
        pair = cat.random_amalgam(f, top, self.rng) if cat.has_ap else None
        if pair is not None and cat.compose(pair[0], f) == cat.compose(pair[1], top):
            g2, h2 = pair
            e = self._amalgamable_out(h2.cod)
            self._append(cat.compose(e, h2))
            g = cat.compose(e, g2)
            seq.ledger.append({"task": "V", "n": n, "f": f, "k": L + 1, "g": g, "free": False})
            return True
        self.realize(seq, n, p)
        seq.ledger[-1].update({"task": "V", "n": n, "f": f})
        return True

    # -- growth hooks used by Sequence ------------------------------------
    def step(self, seq: Sequence | None = None) -> None:
        """Advance the schedule until exactly one stage has been appended."""
        while True:
            task = next(self._tasks)
            self.pending = task
            if self._discharge(task):
                self.pending = None
                return

    def realize(self, seq: Sequence, n: int, p: Arrow):
        """Append a stage ``L+1`` and return ``(L+1, g)`` with ``g o p == u_n^{L+1}``."""
        cat = self.category
        L = len(seq) - 1
        pair = cat.random_amalgam(p, seq.bonding(n, L), self.rng)
        if pair is None or cat.compose(pair[0], p) != cat.compose(pair[1], seq.bonding(n, L)):
            raise DensityFailure(f"no amalgam extending stage {n}", object=seq[n])
        g2, h2 = pair
        e = self._amalgamable_out(h2.cod)
        self._append(cat.compose(e, h2))
        g = cat.compose(e, g2)
        seq.ledger.append({"task": "realize", "n": n, "p": p, "k": L + 1, "g": g, "free": False})
        return L + 1, g

    def cover(self, seq: Sequence, x):
        cat = self.category
        L = len(seq) - 1
        pair = cat.joint(x, seq[L])
        if pair is None:
            raise NotDirected(f"{cat.describe(x)} has no common codomain with the last stage")
        hx, hl = pair
        e = self._amalgamable_out(hx.cod)
        self._append(cat.compose(e, hl))
        f = cat.compose(e, hx)
        seq.ledger.append({"task": "U", "x": x, "k": L + 1, "arrow": f, "free": False})
        return L + 1, f


def build_weak_fraisse(cat: Category, steps: int, seed: int = 0, bound: int = 3) -> Sequence:
    """Sequence with ``steps`` appended bonds; the builder stays attached for growth."""
    if steps < 1:
        raise ValueError("steps must be positive")
    builder = Builder(cat, seed=seed, bound=bound)
    seq = builder.start()
    while len(seq) < steps + 1:
        builder.step(seq)
    log.debug("built %d stages, %d ledger entries", len(seq), len(seq.ledger))
    return seq

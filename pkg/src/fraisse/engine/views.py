"""Subsequences that keep growing with their parent."""

from __future__ import annotations

from ..core import Sequence


class SubsequenceGrower:
    """Grows a selected subsequence by growing the parent.

    ``head`` lists parent indices always kept; afterwards a parent index ``j``
    is kept when ``select(j, stage)`` is true.
    """

    def __init__(self, parent: Sequence, select, head=()):
        self.parent = parent
        self.select = select
        self.indices = list(head)
        self._scanned = (self.indices[-1] + 1) if self.indices else 0
        self.view: Sequence | None = None

    def _scan(self) -> None:
        while self._scanned < len(self.parent):
            j = self._scanned
            self._scanned += 1
            if self.select(j, self.parent[j]) and (not self.indices or j > self.indices[-1]):
                if self.view is not None and self.indices:
                    self.view.append(self.parent.bonding(self.indices[-1], j))
                self.indices.append(j)

    def _grow_parent(self) -> None:
        if self.parent.grower is None:
            raise IndexError("parent sequence cannot grow")
        self.parent.grower.step(self.parent)

    def step(self, seq: Sequence | None = None) -> None:
        before = len(self.indices)
        while len(self.indices) == before:
            self._grow_parent()
            self._scan()

    def _position_at_or_after(self, j: int) -> int:
        while not self.indices or self.indices[-1] < j:
            self.step()
        return next(i for i, idx in enumerate(self.indices) if idx >= j)

    def realize(self, seq: Sequence, n: int, p):
        found = self.parent.witness(self.indices[n], p, grow=True)
        if found is None:
            raise IndexError("parent could not realize the requirement")
        k, g = found
        pos = self._position_at_or_after(k)
        return pos, self.parent.category.compose(self.parent.bonding(k, self.indices[pos]), g)

    def cover(self, seq: Sequence, x):
        k, f = self.parent.cover(x, grow=True)
        pos = self._position_at_or_after(k)
        return pos, self.parent.category.compose(self.parent.bonding(k, self.indices[pos]), f)


def select_subsequence(parent: Sequence, select, head=(), category=None) -> Sequence:
    """Subsequence of ``parent`` (possibly read in a subcategory) that grows on demand."""
    grower = SubsequenceGrower(parent, select, head)
    grower._scan()
    idx = grower.indices
    objs = [parent[i] for i in idx]
    bonds = [parent.bonding(a, b) for a, b in zip(idx, idx[1:])]
    view = Sequence(category or parent.category, objs, bonds, grower=grower if parent.grower else None)
    grower.view = view
    view.index_map = idx
    return view


def tail_from(parent: Sequence, k: int) -> Sequence:
    """``(u_0, u_k, u_{k+1}, ...)``; keeps growing with the parent."""
    if k <= 1:
        return parent
    return select_subsequence(parent, lambda j, _: j >= k, head=(0,))


def restrict_to(parent: Sequence, sub) -> Sequence:
    """Stages of ``parent`` lying in the subcategory ``sub``, read as a sequence in ``sub``."""
    return select_subsequence(parent, lambda j, x: sub.contains(x), category=sub)

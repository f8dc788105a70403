"""Finite linear orders ``0 < 1 < ... < n-1`` with strictly increasing maps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import Arrow, Category
from ..errors import DomainMismatch, NotEnumerable
from .search import extend_injective


@dataclass(frozen=True, order=True)
class LinOrder:
    n: int

    def __repr__(self) -> str:
        return f"LinOrder({self.n})"

    @property
    def id(self) -> str:
        return f"L{self.n}"


def _increasing_ok(v, image, assigned):
    for u, w in assigned.items():
        if (u < v) != (w < image):
            return False
    return True


class LinOrderCategory(Category):
    name = "linord"
    ref = "builtin:linord"
    concrete = True
    has_ap = True
    complete_search = True

    def size(self, a: LinOrder) -> int:
        return a.n

    def contains(self, a) -> bool:
        return isinstance(a, LinOrder) and a.n >= 1

    def objects(self, bound=None) -> list[LinOrder]:
        if bound is None:
            raise NotEnumerable("linord: objects() needs a bound")
        return [LinOrder(n) for n in range(1, bound + 1)]

    def _hom(self, a: LinOrder, b: LinOrder) -> list[Arrow]:
        return [Arrow(a, b, c) for c in itertools.combinations(range(b.n), a.n)]

    def is_arrow(self, f: Arrow) -> bool:
        m = f.payload
        return (self.contains(f.dom) and self.contains(f.cod) and len(m) == f.dom.n
                and all(0 <= v < f.cod.n for v in m) and all(x < y for x, y in zip(m, m[1:])))

    def first_arrow(self, a: LinOrder, b: LinOrder):
        return Arrow(a, b, tuple(range(a.n))) if a.n <= b.n else None

    def identity(self, a: LinOrder) -> Arrow:
        return Arrow(a, a, tuple(range(a.n)))

    def _compose(self, g: Arrow, f: Arrow) -> Arrow:
        return Arrow(f.dom, g.cod, tuple(g.payload[i] for i in f.payload))

    def factor(self, p: Arrow, t: Arrow):
        if p.dom != t.dom:
            raise DomainMismatch("factor needs a common domain")
        partial = dict(zip(p.payload, t.payload))
        for m in extend_injective(p.cod.n, t.cod.n, _increasing_ok, partial):
            yield Arrow(p.cod, t.cod, m)

    def amalgam_bound(self, p: Arrow, q: Arrow) -> int:
        return p.cod.n + q.cod.n - p.dom.n

    def amalgamate(self, p: Arrow, q: Arrow):
        return shuffle_amalgam(p, q)

    def oracle_amalgam(self, p: Arrow, q: Arrow):
        return shuffle_amalgam(p, q)

    def random_amalgam(self, p: Arrow, q: Arrow, rng):
        return shuffle_amalgam(p, q, rng)

    def joint(self, x: LinOrder, y: LinOrder):
        w = max(x, y)
        return Arrow(x, w, tuple(range(x.n))), Arrow(y, w, tuple(range(y.n)))

    def extension_count(self, a: LinOrder) -> int:
        return a.n + 1

    def extension_at(self, a: LinOrder, i: int) -> Arrow:
        """Insert one new point at position ``i`` (0 = below everything)."""
        return Arrow(a, LinOrder(a.n + 1), tuple(j if j < i else j + 1 for j in range(a.n)))

    def object_payload(self, a: LinOrder) -> dict:
        return {"n": a.n}

    def object_from_payload(self, data) -> LinOrder:
        return LinOrder(data["n"])

    def arrow_payload(self, f: Arrow) -> list:
        return list(f.payload)

    def object_id(self, a: LinOrder) -> str:
        return a.id

    def describe(self, a: LinOrder) -> str:
        return a.id


def shuffle_amalgam(p: Arrow, q: Arrow, rng=None):
    """Merge ``cod(p)`` and ``cod(q)`` over the common part, ``cod(p)`` first on ties.

    With ``rng`` the points of each gap are interleaved at random instead.
    """
    if p.dom != q.dom:
        raise DomainMismatch("amalgamation needs a common domain")
    x, y = p.cod, q.cod
    anchors = list(zip(p.payload, q.payload)) + [(x.n, y.n)]
    fmap, gmap = {}, {}
    k = 0
    px = py = 0
    for ax, ay in anchors:
        side = ["x"] * (ax - px) + ["y"] * (ay - py)
        if rng is not None:
            rng.shuffle(side)
        for s in side:
            if s == "x":
                fmap[px] = k
                px += 1
            else:
                gmap[py] = k
                py += 1
            k += 1
        if ax < x.n:
            fmap[ax] = gmap[ay] = k
            px, py = ax + 1, ay + 1
            k += 1
    w = LinOrder(k)
    return Arrow(x, w, tuple(fmap[i] for i in range(x.n))), Arrow(y, w, tuple(gmap[i] for i in range(y.n)))


def omega_sequence(length: int):
    """Initial segments ``1 < 2 < 3 < ...`` with inclusion bonds."""
    from ..core import Sequence

    cat = LinOrderCategory()
    objs = [LinOrder(n + 1) for n in range(length)]
    bonds = [Arrow(objs[i], objs[i + 1], tuple(range(i + 1))) for i in range(length - 1)]
    return Sequence(cat, objs, bonds)

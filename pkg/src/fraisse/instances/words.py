"""Lengths with binary words as arrows.

An arrow ``n -> m`` is a word of length ``m - n`` and ``g o f`` is the word of
``g`` followed by the word of ``f``. Any two objects have a common codomain,
yet two one-letter arrows ``a`` and ``b`` out of the same object never
amalgamate, not even after precomposition: the category is directed and
fails the weak amalgamation property.
"""

from __future__ import annotations

import itertools

from ..core import Arrow, Category
from ..errors import DomainMismatch, NotEnumerable


class WordCategory(Category):
    name = "words"
    ref = "builtin:words"
    complete_search = True

    def size(self, a: int) -> int:
        return a

    def contains(self, a) -> bool:
        return isinstance(a, int) and a >= 0

    def objects(self, bound=None) -> list[int]:
        if bound is None:
            raise NotEnumerable("words: objects() needs a bound")
        return list(range(bound + 1))

    def enumerate_objects(self, n: int) -> list[int]:
        return list(range(n))

    def _hom(self, a: int, b: int) -> list[Arrow]:
        if b < a:
            return []
        return [Arrow(a, b, "".join(w)) for w in itertools.product("ab", repeat=b - a)]

    def identity(self, a: int) -> Arrow:
        return Arrow(a, a, "")

    def _compose(self, g: Arrow, f: Arrow) -> Arrow:
        return Arrow(f.dom, g.cod, g.payload + f.payload)

    def factor(self, p: Arrow, t: Arrow):
        if p.dom != t.dom:
            raise DomainMismatch("factor needs a common domain")
        if t.payload.endswith(p.payload) and t.cod >= p.cod:
            yield Arrow(p.cod, t.cod, t.payload[: len(t.payload) - len(p.payload)])

    def amalgams(self, p: Arrow, q: Arrow):
        """Exact: an amalgam exists iff one word is a suffix of the other."""
        if p.dom != q.dom:
            raise DomainMismatch("amalgamation needs a common domain")
        u, v = p.payload, q.payload
        if v.endswith(u):
            yield Arrow(p.cod, q.cod, v[: len(v) - len(u)]), self.identity(q.cod)
        elif u.endswith(v):
            yield self.identity(p.cod), Arrow(q.cod, p.cod, u[: len(u) - len(v)])

    def joint(self, x: int, y: int):
        w = max(x, y)
        return Arrow(x, w, "a" * (w - x)), Arrow(y, w, "a" * (w - y))

    def extension_count(self, a: int) -> int:
        return 2

    def extension_at(self, a: int, i: int) -> Arrow:
        return Arrow(a, a + 1, "ab"[i])

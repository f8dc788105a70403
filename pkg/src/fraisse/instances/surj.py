"""Finite nonempty sets with surjections, read backwards.

An arrow ``a -> b`` is a surjection ``b ->> a``; its payload lists the image
of every element of ``b``. Pure sets carry no relations, so every surjection
is a proper epimorphism. Reversing arrows turns the projective class into an
ordinary category and every engine operation applies unchanged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import Arrow, Category
from ..errors import DomainMismatch, NotEnumerable


@dataclass(frozen=True, order=True)
class FinSet:
    n: int

    def __repr__(self) -> str:
        return f"FinSet({self.n})"

    @property
    def id(self) -> str:
        return f"S{self.n}"


def surjections(src: int, dst: int):
    """All onto maps ``range(src) -> range(dst)`` in lexicographic order."""
    for m in itertools.product(range(dst), repeat=src):
        if len(set(m)) == dst:
            yield m


def _fibres(m, size):
    out = [[] for _ in range(size)]
    for i, v in enumerate(m):
        out[v].append(i)
    return out


class SurjCategory(Category):
    name = "surj"
    ref = "builtin:surj"
    concrete = True
    dual = True
    has_ap = True
    complete_search = True

    def size(self, a: FinSet) -> int:
        return a.n

    def contains(self, a) -> bool:
        return isinstance(a, FinSet) and a.n >= 1

    def objects(self, bound=None) -> list[FinSet]:
        if bound is None:
            raise NotEnumerable("surj: objects() needs a bound")
        return [FinSet(n) for n in range(1, bound + 1)]

    def _hom(self, a: FinSet, b: FinSet) -> list[Arrow]:
        if b.n < a.n:
            return []
        return [Arrow(a, b, m) for m in surjections(b.n, a.n)]

    def is_arrow(self, f: Arrow) -> bool:
        m = f.payload
        return (self.contains(f.dom) and self.contains(f.cod) and len(m) == f.cod.n
                and set(m) == set(range(f.dom.n)))

    def first_arrow(self, a: FinSet, b: FinSet):
        if b.n < a.n:
            return None
        return Arrow(a, b, (0,) * (b.n - a.n) + tuple(range(a.n)))

    def identity(self, a: FinSet) -> Arrow:
        return Arrow(a, a, tuple(range(a.n)))

    def _compose(self, g: Arrow, f: Arrow) -> Arrow:
        # g o f : a -> c is the surjection c ->> b ->> a
        return Arrow(f.dom, g.cod, tuple(f.payload[j] for j in g.payload))

    def factor(self, p: Arrow, t: Arrow):
        """Surjections ``G: cod(t) ->> cod(p)`` with ``P o G == T``."""
        if p.dom != t.dom:
            raise DomainMismatch("factor needs a common domain")
        y, u = p.cod, t.cod
        fib = _fibres(p.payload, p.dom.n)
        choices = [fib[t.payload[i]] for i in range(u.n)]
        # elements of u still to come, per fibre of a
        remaining = [0] * p.dom.n
        for i in range(u.n):
            remaining[t.payload[i]] += 1
        covered = [0] * y.n
        uncovered = [len(f) for f in fib]
        g = [0] * u.n

        def rec(i):
            if i == u.n:
                if all(covered):
                    yield tuple(g)
                return
            a = t.payload[i]
            remaining[a] -= 1
            for v in choices[i]:
                fresh = covered[v] == 0
                if not fresh and uncovered[a] > remaining[a]:
                    continue
                covered[v] += 1
                if fresh:
                    uncovered[a] -= 1
                g[i] = v
                yield from rec(i + 1)
                covered[v] -= 1
                if fresh:
                    uncovered[a] += 1
            remaining[a] += 1

        if any(len(f) == 0 for f in fib) or any(len(fib[a]) > remaining[a] for a in range(p.dom.n)):
            return
        for m in rec(0):
            yield Arrow(y, u, m)

    def amalgam_bound(self, p: Arrow, q: Arrow) -> int:
        return p.cod.n * q.cod.n

    def amalgamate(self, p: Arrow, q: Arrow):
        """Smallest amalgam: pair up each fibre, cycling the shorter side."""
        if p.dom != q.dom:
            raise DomainMismatch("amalgamation needs a common domain")
        fx = _fibres(p.payload, p.dom.n)
        fy = _fibres(q.payload, q.dom.n)
        pairs = []
        for a in range(p.dom.n):
            for k in range(max(len(fx[a]), len(fy[a]))):
                pairs.append((fx[a][min(k, len(fx[a]) - 1)], fy[a][min(k, len(fy[a]) - 1)]))
        return _pair_arrows(p.cod, q.cod, pairs)

    def oracle_amalgam(self, p: Arrow, q: Arrow):
        return fiber_product(p, q)

    def joint(self, x: FinSet, y: FinSet):
        w = max(x, y)
        return (Arrow(x, w, tuple(min(i, x.n - 1) for i in range(w.n))),
                Arrow(y, w, tuple(min(i, y.n - 1) for i in range(w.n))))

    def extension_count(self, a: FinSet) -> int:
        return a.n

    def extension_at(self, a: FinSet, i: int) -> Arrow:
        """One more point, sent onto element ``i``."""
        return Arrow(a, FinSet(a.n + 1), tuple(range(a.n)) + (i,))

    def object_payload(self, a: FinSet) -> dict:
        return {"n": a.n}

    def object_from_payload(self, data) -> FinSet:
        return FinSet(data["n"])

    def arrow_payload(self, f: Arrow) -> list:
        return list(f.payload)

    def object_id(self, a: FinSet) -> str:
        return a.id

    def describe(self, a: FinSet) -> str:
        return a.id


def _pair_arrows(x: FinSet, y: FinSet, pairs):
    w = FinSet(len(pairs))
    return Arrow(x, w, tuple(i for i, _ in pairs)), Arrow(y, w, tuple(j for _, j in pairs))


def fiber_product(p: Arrow, q: Arrow):
    """``W = {(i, j) : P(i) == Q(j)}`` with the two projections."""
    if p.dom != q.dom:
        raise DomainMismatch("amalgamation needs a common domain")
    pairs = [(i, j) for i in range(p.cod.n) for j in range(q.cod.n) if p.payload[i] == q.payload[j]]
    return _pair_arrows(p.cod, q.cod, pairs)

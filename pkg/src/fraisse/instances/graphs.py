"""Finite simple graphs with embeddings."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from ..core import Arrow, Category
from ..errors import DomainMismatch, NotEnumerable
from .search import extend_injective


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = frozenset()
    adj: tuple = field(default=(), compare=False, hash=False, repr=False)

    def __post_init__(self):
        edges = frozenset((min(i, j), max(i, j)) for i, j in self.edges)
        for i, j in edges:
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"bad edge {(i, j)} for {self.n} vertices")
        object.__setattr__(self, "edges", edges)
        nbrs = [set() for _ in range(self.n)]
        for i, j in edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))

    def __repr__(self) -> str:
        return f"Graph({self.n}, {sorted(self.edges)})"

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def code(self) -> tuple:
        return tuple(int(self.adjacent(i, j)) for i, j in itertools.combinations(range(self.n), 2))

    def relabel(self, perm) -> "Graph":
        """Graph whose vertex ``perm[v]`` plays the role of ``v``."""
        return Graph(self.n, frozenset((perm[i], perm[j]) for i, j in self.edges))

    def induced(self, vertices) -> "Graph":
        index = {v: k for k, v in enumerate(vertices)}
        return Graph(len(vertices), frozenset((index[i], index[j]) for i, j in self.edges if i in index and j in index))

    def add_vertex(self, neighbours) -> "Graph":
        return Graph(self.n + 1, self.edges | {(v, self.n) for v in neighbours})

    @property
    def id(self) -> str:
        c = canonical_form(self)
        return f"G{c.n}:" + "".join(map(str, c.code()))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


CANON_LIMIT = 8


def _refined_classes(g: Graph) -> list[list[int]]:
    deg = [len(g.adj[v]) for v in range(g.n)]
    key = {v: (deg[v], tuple(sorted(deg[w] for w in g.adj[v]))) for v in range(g.n)}
    order = sorted(range(g.n), key=lambda v: key[v])
    return [list(grp) for _, grp in itertools.groupby(order, key=lambda v: key[v])]


@functools.lru_cache(maxsize=4096)
def canonical_form(g: Graph) -> Graph:
    """Minimal edge code over all relabelings respecting an invariant partition."""
    if g.n > CANON_LIMIT:
        raise NotEnumerable(f"canonical labeling limited to {CANON_LIMIT} vertices")
    pairs = list(itertools.combinations(range(g.n), 2))
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in _refined_classes(g))):
        # order[k] is the old vertex that gets label k
        order = [v for part in parts for v in part]
        code = tuple(int(order[j] in g.adj[order[i]]) for i, j in pairs)
        if best is None or code < best[0]:
            best = (code, order)
    perm = {v: k for k, v in enumerate(best[1])}
    return g.relabel(perm)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Brute force over all bijections; independent of :func:`canonical_form`."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    for perm in itertools.permutations(range(g.n)):
        if all(h.adjacent(perm[i], perm[j]) for i, j in g.edges):
            return True
    return False


def _graph_ok(a: Graph, b: Graph):
    def ok(v, image, assigned):
        for u, w in assigned.items():
            if a.adjacent(u, v) != b.adjacent(w, image):
                return False
        return True

    return ok


def embeddings(a: Graph, b: Graph, partial=None):
    """Induced embeddings ``a -> b`` extending ``partial``, lexicographic order."""
    return extend_injective(a.n, b.n, _graph_ok(a, b), partial or {})


class GraphCategory(Category):
    name = "graphs"
    ref = "builtin:graphs"
    concrete = True
    has_ap = True
    complete_search = True

    def __init__(self):
        self._layers: dict[int, list[Graph]] = {0: [], 1: [Graph(1)]}

    def size(self, a: Graph) -> int:
        return a.n

    def contains(self, a) -> bool:
        return isinstance(a, Graph) and a.n >= 1

    def _layer(self, n: int) -> list[Graph]:
        if n not in self._layers:
            seen = {}
            for g in self._layer(n - 1):
                for mask in range(1 << g.n):
                    h = canonical_form(g.add_vertex([v for v in range(g.n) if mask >> v & 1]))
                    seen.setdefault(h.code(), h)
            self._layers[n] = [seen[c] for c in sorted(seen)]
        return self._layers[n]

    def objects(self, bound=None) -> list[Graph]:
        if bound is None:
            raise NotEnumerable("graphs: objects() needs a bound")
        return [g for n in range(1, bound + 1) for g in self._layer(n)]

    def canonical(self, a: Graph) -> Graph:
        return canonical_form(a)

    def _hom(self, a: Graph, b: Graph) -> list[Arrow]:
        return [Arrow(a, b, m) for m in embeddings(a, b)]

    def is_arrow(self, f: Arrow) -> bool:
        a, b, m = f.dom, f.cod, f.payload
        if not (self.contains(a) and self.contains(b)) or len(m) != a.n or len(set(m)) != a.n:
            return False
        if any(not 0 <= v < b.n for v in m):
            return False
        return all(a.adjacent(i, j) == b.adjacent(m[i], m[j]) for i, j in itertools.combinations(range(a.n), 2))

    def first_arrow(self, a: Graph, b: Graph):
        m = next(embeddings(a, b), None)
        return None if m is None else Arrow(a, b, m)

    def identity(self, a: Graph) -> Arrow:
        return Arrow(a, a, tuple(range(a.n)))

    def _compose(self, g: Arrow, f: Arrow) -> Arrow:
        return Arrow(f.dom, g.cod, tuple(g.payload[i] for i in f.payload))

    def factor(self, p: Arrow, t: Arrow):
        if p.dom != t.dom:
            raise DomainMismatch("factor needs a common domain")
        partial = {}
        for i, (pi, ti) in enumerate(zip(p.payload, t.payload)):
            partial[pi] = ti
        for m in embeddings(p.cod, t.cod, partial):
            yield Arrow(p.cod, t.cod, m)

    def amalgam_bound(self, p: Arrow, q: Arrow) -> int:
        return p.cod.n + q.cod.n - p.dom.n

    def amalgams(self, p: Arrow, q: Arrow):
        """Every amalgam up to isomorphism, fewest vertices first.

        ``w`` is ``cod(p)`` plus new vertices, ``f2`` is the inclusion. Any
        amalgam restricts to the union of the two images, so this is complete.
        """
        if p.dom != q.dom:
            raise DomainMismatch("amalgamation needs a common domain")
        x, y = p.cod, q.cod
        forced = {}
        for pi, qi in zip(p.payload, q.payload):
            forced[qi] = pi
        free_y = [v for v in range(y.n) if v not in forced]
        if any(y.adjacent(u, v) != x.adjacent(forced[u], forced[v]) for u, v in itertools.combinations(forced, 2)):
            return
        for n_new in range(len(free_y) + 1):
            for gmap in _identifications(x, y, forced, free_y, n_new):
                new = [v for v in free_y if v not in gmap]
                for k, v in enumerate(new):
                    gmap[v] = x.n + k
                used = set(gmap[v] for v in range(y.n) if gmap[v] < x.n)
                open_x = [u for u in range(x.n) if u not in used]
                base = set(x.edges)
                for u, v in y.edges:
                    base.add((gmap[u], gmap[v]))
                slots = [(u, gmap[v]) for v in new for u in open_x]
                for bits in itertools.product((0, 1), repeat=len(slots)):
                    edges = base | {s for s, b in zip(slots, bits) if b}
                    w = Graph(x.n + len(new), frozenset(edges))
                    f2 = Arrow(x, w, tuple(range(x.n)))
                    g2 = Arrow(y, w, tuple(gmap[v] for v in range(y.n)))
                    yield f2, g2

    def amalgamate(self, p: Arrow, q: Arrow):
        return next(self.amalgams(p, q), None)

    def oracle_amalgam(self, p: Arrow, q: Arrow):
        return free_amalgam(p, q)

    def random_amalgam(self, p: Arrow, q: Arrow, rng):
        """Free amalgam plus a fair coin for every cross pair left open."""
        f2, g2 = free_amalgam(p, q)
        x, w = p.cod, f2.cod
        fresh = range(x.n, w.n)
        shared = set(p.payload)
        extra = {(u, v) for v in fresh for u in range(x.n) if u not in shared and rng.random() < 0.5}
        w2 = Graph(w.n, w.edges | extra)
        return Arrow(x, w2, f2.payload), Arrow(g2.dom, w2, g2.payload)

    def joint(self, x: Graph, y: Graph):
        e = next(embeddings(y, x), None)
        if e is not None:
            return self.identity(x), Arrow(y, x, e)
        w = Graph(x.n + y.n, x.edges | {(i + x.n, j + x.n) for i, j in y.edges})
        return Arrow(x, w, tuple(range(x.n))), Arrow(y, w, tuple(range(x.n, x.n + y.n)))

    def extension_count(self, a: Graph) -> int:
        return 1 << a.n

    def extension_at(self, a: Graph, i: int) -> Arrow:
        """New vertex adjacent exactly to the bits of ``i``."""
        w = a.add_vertex([v for v in range(a.n) if i >> v & 1])
        return Arrow(a, w, tuple(range(a.n)))

    def object_payload(self, a: Graph) -> dict:
        return {"n": a.n, "edges": [list(e) for e in sorted(a.edges)]}

    def object_from_payload(self, data) -> Graph:
        return Graph(data["n"], frozenset(tuple(e) for e in data["edges"]))

    def arrow_payload(self, f: Arrow) -> list:
        return list(f.payload)

    def object_id(self, a: Graph) -> str:
        return a.id if a.n <= CANON_LIMIT else super().object_id(a)

    def describe(self, a: Graph) -> str:
        return f"G{a.n}{sorted(a.edges)}"


def _identifications(x: Graph, y: Graph, forced: dict, free_y: list, n_new: int):
    """Partial maps sending all but ``n_new`` of ``free_y`` into unused vertices of ``x``."""
    gmap = dict(forced)
    used = set(forced.values())

    def rec(i, budget):
        if i == len(free_y):
            if budget == 0:
                yield dict(gmap)
            return
        v = free_y[i]
        for image in range(x.n):
            if image in used:
                continue
            if any(y.adjacent(u, v) != x.adjacent(gmap[u], image) for u in gmap):
                continue
            gmap[v] = image
            used.add(image)
            yield from rec(i + 1, budget)
            used.discard(image)
            del gmap[v]
        if budget > 0:
            yield from rec(i + 1, budget - 1)

    yield from rec(0, n_new)


def free_amalgam(p: Arrow, q: Arrow):
    """Pushout of vertex sets with no edges between the two new parts."""
    if p.dom != q.dom:
        raise DomainMismatch("amalgamation needs a common domain")
    x, y = p.cod, q.cod
    gmap = {qi: pi for pi, qi in zip(p.payload, q.payload)}
    k = x.n
    for v in range(y.n):
        if v not in gmap:
            gmap[v] = k
            k += 1
    edges = set(x.edges) | {(gmap[u], gmap[v]) for u, v in y.edges}
    w = Graph(k, frozenset(edges))
    return Arrow(x, w, tuple(range(x.n))), Arrow(y, w, tuple(gmap[v] for v in range(y.n)))


def complete_amalgam(p: Arrow, q: Arrow):
    """Amalgam of complete graphs: the pushout with every cross edge added."""
    f2, g2 = free_amalgam(p, q)
    w = complete_graph(f2.cod.n)
    return Arrow(f2.dom, w, f2.payload), Arrow(g2.dom, w, g2.payload)


def is_complete(g: Graph) -> bool:
    return len(g.edges) == g.n * (g.n - 1) // 2


def complete_sequence(length: int, category=None):
    """``K_1 -> K_2 -> ...`` with inclusion bonds."""
    from ..core import Sequence

    cat = category or GraphCategory()
    objs = [complete_graph(n + 1) for n in range(length)]
    bonds = [Arrow(objs[i], objs[i + 1], tuple(range(i + 1))) for i in range(length - 1)]
    return Sequence(cat, objs, bonds)

"""Subcategories described by predicates on objects and arrows."""

from __future__ import annotations

from collections import abc

from ..core import Arrow, Category
from ..errors import NotEnumerable
from .graphs import (Graph, GraphCategory, complete_amalgam, complete_graph, embeddings, free_amalgam,
                     is_complete)


class Subcategory(Category):
    """Objects satisfying ``predicate``; arrows satisfying ``arrow_predicate``.

    Without ``arrow_predicate`` the subcategory is full. ``cofinal_witness``
    maps any parent object to an arrow into the subcategory; when given it is
    a constructive proof of cofinality.
    """

    def __init__(self, parent: Category, predicate, name="sub", arrow_predicate=None,
                 cofinal_witness=None, extension_fn=None, ap_oracle=None, joint_fn=None,
                 object_list=None, object_fn=None):
        self.parent = parent
        self.predicate = predicate
        self.arrow_predicate = arrow_predicate
        self.cofinal_witness = cofinal_witness
        self._extension_fn = extension_fn
        self._ap_oracle = ap_oracle
        self._joint_fn = joint_fn
        self._object_list = object_list
        self._object_fn = object_fn
        self.name = name
        self.ref = f"{parent.ref}|{name}"
        self.finite = parent.finite or object_list is not None
        self.concrete = parent.concrete
        self.has_ap = ap_oracle is not None
        # closed under substructures and under unions of chains
        self.hereditary = False

    @property
    def full(self) -> bool:
        return self.arrow_predicate is None

    def has_arrow(self, f: Arrow) -> bool:
        if not (self.contains(f.dom) and self.contains(f.cod)):
            return False
        return self.full or bool(self.arrow_predicate(f))

    def is_arrow(self, f: Arrow) -> bool:
        return self.has_arrow(f) and self.parent.is_arrow(f)

    def first_arrow(self, a, b):
        if self.full:
            return self.parent.first_arrow(a, b) if self.contains(a) and self.contains(b) else None
        return super().first_arrow(a, b)

    def size(self, a) -> int:
        return self.parent.size(a)

    def contains(self, a) -> bool:
        return self.parent.contains(a) and bool(self.predicate(a))

    def objects(self, bound=None) -> list:
        if self._object_list is not None:
            return [a for a in self._object_list if bound is None or self.size(a) <= bound]
        if self._object_fn is not None:
            return self._object_fn(bound)
        return [a for a in self.parent.objects(bound) if self.predicate(a)]

    def _hom(self, a, b) -> list:
        return [f for f in self.parent.hom(a, b) if self.full or self.arrow_predicate(f)]

    def identity(self, a) -> Arrow:
        return self.parent.identity(a)

    def _compose(self, g: Arrow, f: Arrow) -> Arrow:
        return self.parent.compose(g, f)

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        return self.parent.compose(g, f)

    def factor(self, p: Arrow, t: Arrow):
        for g in self.parent.factor(p, t):
            if self.has_arrow(g):
                yield g

    def amalgam_bound(self, p, q):
        return self.parent.amalgam_bound(p, q)

    def amalgams(self, p: Arrow, q: Arrow):
        for f2, g2 in self.parent.amalgams(p, q):
            if self.has_arrow(f2) and self.has_arrow(g2):
                yield f2, g2

    def amalgamate(self, p, q):
        if self._ap_oracle is not None:
            return self._ap_oracle(p, q)
        return next(self.amalgams(p, q), None)

    def oracle_amalgam(self, p, q):
        return self._ap_oracle(p, q) if self._ap_oracle is not None else None

    def random_amalgam(self, p, q, rng):
        return self.amalgamate(p, q)

    def joint(self, x, y):
        if self._joint_fn is not None:
            return self._joint_fn(x, y)
        pair = self.parent.joint(x, y)
        if pair is None:
            return None
        fx, fy = pair
        if self.contains(fx.cod):
            return pair
        if self.cofinal_witness is None or not self.full:
            return super().joint(x, y)
        j = self.cofinal_witness(fx.cod)
        return self.compose(j, fx), self.compose(j, fy)

    def extension_count(self, a) -> int:
        exts = self._extensions(a)
        return getattr(exts, "total", None) or len(exts)

    def extension_at(self, a, i):
        return self._extensions(a)[i]

    def _extensions(self, a) -> list:
        if self._extension_fn is not None:
            return self._extension_fn(a)
        if self.parent.finite:
            return [f for f in self.parent.out_arrows(a) if self.has_arrow(f)]
        return [f for f in self.parent.extensions(a) if self.has_arrow(f)]

    def object_payload(self, a):
        return self.parent.object_payload(a)

    def object_from_payload(self, data):
        return self.parent.object_from_payload(data)

    def arrow_payload(self, f):
        return self.parent.arrow_payload(f)

    def make_arrow(self, a, b, payload):
        return self.parent.make_arrow(a, b, payload)

    def object_id(self, a):
        return self.parent.object_id(a)

    def describe(self, a):
        return self.parent.describe(a)


def full_subcategory(parent, predicate, name="sub", **kw) -> Subcategory:
    return Subcategory(parent, predicate, name=name, **kw)


def _add_isolated(g: Graph) -> Arrow:
    if g.n % 2 == 0:
        return Arrow(g, g, tuple(range(g.n)))
    return Arrow(g, g.add_vertex([]), tuple(range(g.n)))


class _TwoPointExtensions(abc.Sequence):
    """Indexed view of the two-step extensions of ``g`` (first step outermost)."""

    def __init__(self, parent: GraphCategory, g: Graph):
        self.parent = parent
        self.g = g
        self.inner = 1 << (g.n + 1)
        # len() is capped at sys.maxsize, so the count lives here too
        self.total = (1 << g.n) * self.inner

    def __len__(self) -> int:
        return self.total

    def __getitem__(self, i):
        if not 0 <= i < self.total:
            raise IndexError(i)
        f1 = self.parent.extension_at(self.g, i // self.inner)
        return self.parent.compose(self.parent.extension_at(f1.cod, i % self.inner), f1)


def _two_point_extensions(parent: GraphCategory):
    return lambda g: _TwoPointExtensions(parent, g)


def even_graphs(parent: GraphCategory | None = None) -> Subcategory:
    """Graphs with an even number of vertices; cofinal by adding one isolated vertex.

    Extensions add two vertices.
    """
    parent = parent or GraphCategory()
    sub = Subcategory(parent, lambda g: g.n % 2 == 0, name="even", cofinal_witness=_add_isolated,
                      ap_oracle=free_amalgam, extension_fn=_two_point_extensions(parent))
    sub.ref = "builtin:even"
    sub.extension_step = 2
    return sub


def _complete_extension(g: Graph):
    return [Arrow(g, complete_graph(g.n + 1), tuple(range(g.n)))]


def _complete_joint(x: Graph, y: Graph):
    w = complete_graph(max(x.n, y.n))
    return Arrow(x, w, tuple(range(x.n))), Arrow(y, w, tuple(range(y.n)))


def _complete_objects(bound):
    if bound is None:
        raise NotEnumerable("complete graphs: objects() needs a bound")
    return [complete_graph(n) for n in range(1, bound + 1)]


def complete_graphs(parent: GraphCategory | None = None) -> Subcategory:
    """Complete graphs with embeddings; amalgamation by completing the pushout."""
    parent = parent or GraphCategory()
    sub = Subcategory(parent, is_complete, name="complete", extension_fn=_complete_extension,
                      ap_oracle=complete_amalgam, joint_fn=_complete_joint,
                      object_fn=_complete_objects)
    sub.ref = "builtin:complete"
    sub.complete_search = True
    sub.hereditary = True
    return sub


def age_subcategory(parent: Category, target, name="age") -> Subcategory:
    """Objects of ``parent`` admitting an arrow into ``target`` (hereditary)."""
    cache: dict = {}

    def embeds(a):
        key = a if parent.concrete else parent.object_id(a)
        if key not in cache:
            if isinstance(a, Graph) and isinstance(target, Graph):
                cache[key] = next(embeddings(a, target), None) is not None
            else:
                cache[key] = bool(parent.hom(a, target))
        return cache[key]

    return Subcategory(parent, embeds, name=name)

"""Arrows, categories, sequences and arrows between sequences.

Composition is written ``compose(g, f) = g o f`` and is defined iff
``f.cod == g.dom``. Arrow equality is structural: same domain, codomain and
payload.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterator

from .errors import DomainMismatch, NotEnumerable, OutOfRange
from .verdict import Verdict


@dataclass(frozen=True)
class Arrow:
    dom: Any
    cod: Any
    payload: Any

    def __repr__(self) -> str:
        return f"Arrow({self.dom!r} -> {self.cod!r}: {self.payload!r})"


class Category:
    """Interface of a countable, locally finite category.

    Subclasses provide ``hom``, ``_compose``, ``identity``, ``size`` and
    ``objects``. The remaining search primitives have brute-force defaults
    driven by ``hom``; concrete instances override them with structured
    searches.
    """

    name = "category"
    ref = "category"
    finite = False
    concrete = False
    has_ap = False
    # amalgams() is exhaustive: an empty result proves no amalgam exists
    complete_search = False

    # -- required -------------------------------------------------------
    def size(self, a) -> int:
        raise NotImplementedError

    def objects(self, bound: int | None = None) -> list:
        """Canonical object representatives of size <= bound."""
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def _hom(self, a, b) -> list:
        raise NotImplementedError

    def _compose(self, g: Arrow, f: Arrow) -> Arrow:
        raise NotImplementedError

    def identity(self, a) -> Arrow:
        raise NotImplementedError

    # -- enumeration ----------------------------------------------------
    def enumerate_objects(self, n: int) -> list:
        """First ``n`` objects of the fair enumeration (size, then payload)."""
        out: list = []
        bound = 0
        while len(out) < n:
            bound += 1
            layer = [x for x in self.objects(bound) if self.size(x) == bound]
            if self.finite:
                out = self.objects()
                break
            out.extend(layer)
            if bound > 64:
                raise NotEnumerable(f"{self.name}: enumeration stalled")
        return out[:n]

    def hom(self, a, b) -> list:
        cache_dir = os.environ.get("FRAISSE_CACHE_DIR")
        if not cache_dir or self.finite:
            return self._hom(a, b)
        key = json.dumps([self.ref, self.object_payload(a), self.object_payload(b)],
                         sort_keys=True)
        path = Path(cache_dir) / (hashlib.sha256(key.encode()).hexdigest() + ".json")
        if path.exists():
            maps = json.loads(path.read_text(encoding="utf-8"))
            return [self.make_arrow(a, b, m) for m in maps]
        arrows = self._hom(a, b)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps([self.arrow_payload(f) for f in arrows]), encoding="utf-8")
        return arrows

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        if f.cod != g.dom:
            raise DomainMismatch(f"cannot compose: cod(f)={f.cod!r} != dom(g)={g.dom!r}")
        if f.dom == f.cod and f == self.identity(f.dom):
            return g
        if g.dom == g.cod and g == self.identity(g.dom):
            return f
        return self._compose(g, f)

    def chain(self, *arrows: Arrow) -> Arrow:
        """``chain(h, g, f) == h o g o f``."""
        result = arrows[-1]
        for g in reversed(arrows[:-1]):
            result = self.compose(g, result)
        return result

    def first_arrow(self, a, b) -> Arrow | None:
        """First arrow of ``hom(a, b)`` without listing the whole hom-set."""
        arrows = self.hom(a, b)
        return arrows[0] if arrows else None

    def is_arrow(self, f: Arrow) -> bool:
        return self.contains(f.dom) and self.contains(f.cod) and f in self.hom(f.dom, f.cod)

    def out_arrows(self, a, bound: int | None = None) -> list:
        return [f for b in self.objects(bound) for f in self.hom(a, b)]

    # -- one-point extensions ------------------------------------------
    def extension_count(self, a) -> int:
        return len(self._all_out(a))

    def extension_at(self, a, i: int) -> Arrow:
        return self._all_out(a)[i]

    def extensions(self, a) -> Iterator[Arrow]:
        """Arrows out of ``a`` one step larger, up to isomorphism over ``a``.

        For finite categories this is every arrow out of ``a``.
        """
        for i in range(self.extension_count(a)):
            yield self.extension_at(a, i)

    def _all_out(self, a) -> list:
        if not self.finite:
            raise NotEnumerable(f"{self.name} must override extensions")
        return self.out_arrows(a)

    # -- search primitives --------------------------------------------
    def factor(self, p: Arrow, t: Arrow) -> Iterator[Arrow]:
        """All ``g: cod(p) -> cod(t)`` with ``g o p == t``."""
        if p.dom != t.dom:
            raise DomainMismatch("factor needs a common domain")
        for g in self.hom(p.cod, t.cod):
            if self.compose(g, p) == t:
                yield g

    def first_factor(self, p: Arrow, t: Arrow) -> Arrow | None:
        return next(self.factor(p, t), None)

    def amalgam_bound(self, p: Arrow, q: Arrow) -> int | None:
        return None

    def amalgams(self, p: Arrow, q: Arrow) -> Iterator[tuple[Arrow, Arrow]]:
        """Exhaustive search for ``(f2, g2)`` with ``f2 o p == g2 o q``."""
        if p.dom != q.dom:
            raise DomainMismatch("amalgamation needs a common domain")
        for w in self.objects(self.amalgam_bound(p, q)):
            for f2 in self.hom(p.cod, w):
                for g2 in self.factor(q, self.compose(f2, p)):
                    yield f2, g2

    def amalgamate(self, p: Arrow, q: Arrow) -> tuple[Arrow, Arrow] | None:
        return next(self.amalgams(p, q), None)

    def random_amalgam(self, p: Arrow, q: Arrow, rng) -> tuple[Arrow, Arrow] | None:
        """Some amalgam, possibly chosen with ``rng``; used by the builder."""
        return self.amalgamate(p, q)

    def oracle_amalgam(self, p: Arrow, q: Arrow) -> tuple[Arrow, Arrow] | None:
        """Class oracle; ``None`` when no oracle is registered."""
        return None

    def joint(self, x, y) -> tuple[Arrow, Arrow] | None:
        """Arrows ``x -> w``, ``y -> w`` into a common codomain."""
        bound = None if self.finite else self.size(x) + self.size(y)
        for w in self.objects(bound):
            hx, hy = self.hom(x, w), self.hom(y, w)
            if hx and hy:
                return hx[0], hy[0]
        return None

    # -- serialization --------------------------------------------------
    def object_payload(self, a) -> Any:
        return a

    def object_from_payload(self, data) -> Any:
        return data

    def arrow_payload(self, f: Arrow) -> Any:
        return f.payload

    def make_arrow(self, a, b, payload) -> Arrow:
        if isinstance(payload, list):
            payload = tuple(payload)
        return Arrow(a, b, payload)

    def object_id(self, a) -> str:
        return json.dumps(self.object_payload(a), sort_keys=True)

    def describe(self, a) -> str:
        return str(a)


class Sequence:
    """Finite, extendable prefix of a functor from the naturals into a category.

    ``bonds[n]`` is the one-step arrow ``u_n -> u_{n+1}``. An optional
    ``grower`` (see :class:`fraisse.engine.builder.Builder`) can append stages
    on demand to discharge extension requirements.
    """

    def __init__(self, category: Category, objects, bonds=(), ledger=None, grower=None):
        objects = list(objects)
        bonds = list(bonds)
        if len(bonds) != max(len(objects) - 1, 0):
            raise ValueError("need exactly len(objects) - 1 bonds")
        for n, b in enumerate(bonds):
            if b.dom != objects[n] or b.cod != objects[n + 1]:
                raise DomainMismatch(f"bond {n} does not connect stages {n} and {n + 1}")
        self.category = category
        self.objects = objects
        self.bonds = bonds
        self.ledger = list(ledger or [])
        self.grower = grower
        self._bonding: dict[tuple[int, int], Arrow] = {}

    def __len__(self) -> int:
        return len(self.objects)

    def __getitem__(self, n: int):
        return self.objects[n]

    def __repr__(self) -> str:
        sizes = [self.category.size(x) for x in self.objects[:8]]
        return f"Sequence({self.category.name}, len={len(self)}, sizes={sizes}...)"

    def append(self, bond: Arrow) -> None:
        if bond.dom != self.objects[-1]:
            raise DomainMismatch("appended bond must start at the last stage")
        self.bonds.append(bond)
        self.objects.append(bond.cod)

    def bonding(self, n: int, m: int) -> Arrow:
        if not 0 <= n <= m < len(self.objects):
            raise OutOfRange(f"bonding({n}, {m}) outside recorded length {len(self)}")
        if n == m:
            return self.category.identity(self.objects[n])
        if m == n + 1:
            return self.bonds[n]
        key = (n, m)
        if key not in self._bonding:
            self._bonding[key] = self.category.compose(self.bonds[m - 1], self.bonding(n, m - 1))
        return self._bonding[key]

    def witness(self, n: int, p: Arrow, kmin: int | None = None, grow: bool = False):
        """Find ``(k, g)`` with ``g o p == u_n^k`` and ``k >= kmin``.

        ``p`` must start at ``u_n``. With ``grow`` the sequence may be
        extended through its grower; otherwise ``None`` is returned when no
        recorded stage works.
        """
        if p.dom != self.objects[n]:
            raise DomainMismatch("witness arrow must start at u_n")
        kmin = n + 1 if kmin is None else kmin
        cat = self.category
        for k in range(kmin, len(self)):
            g = cat.first_factor(p, self.bonding(n, k))
            if g is not None:
                return k, g
        if grow and self.grower is not None:
            while len(self) < kmin:
                self.grower.step(self)
            k, g = self.grower.realize(self, n, p)
            while len(self) <= kmin:
                self.grower.step(self)
            if k < kmin:
                g, k = cat.compose(self.bonding(k, kmin), g), kmin
            return k, g
        return None

    def cover(self, x, grow: bool = False):
        """Least ``(k, f)`` with ``f: x -> u_k``, growing the sequence if allowed."""
        cat = self.category
        for k in range(len(self)):
            f = cat.first_arrow(x, self.objects[k])
            if f is not None:
                return k, f
        if grow and self.grower is not None:
            return self.grower.cover(self, x)
        return None

    def subsequence(self, indices) -> "Sequence":
        indices = list(indices)
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError("subsequence indices must increase strictly")
        objs = [self.objects[i] for i in indices]
        bonds = [self.bonding(a, b) for a, b in zip(indices, indices[1:])]
        return Sequence(self.category, objs, bonds)

    def prefix(self, k: int) -> "Sequence":
        return Sequence(self.category, self.objects[:k], self.bonds[: max(k - 1, 0)])

    def copy(self) -> "Sequence":
        return Sequence(self.category, self.objects, self.bonds, self.ledger, self.grower)


def constant_sequence(category: Category, a, length: int) -> Sequence:
    ident = category.identity(a)
    return Sequence(category, [a] * length, [ident] * (length - 1))


@dataclass
class SequenceArrow:
    """Arrow of sequences: components ``e_n: x_n -> u_{s(n)}``."""

    index_map: list[int]
    components: list[Arrow]
    factors: list[Arrow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.components)


def verify_seq_arrow(x: Sequence, u: Sequence, e: SequenceArrow, depth: int) -> Verdict:
    """Check ``u_{s(n)}^{s(n+1)} o e_n == e_{n+1} o x_n^{n+1}`` for ``n < depth``."""
    if len(e) < depth:
        raise OutOfRange(f"sequence arrow records {len(e)} < {depth} components")
    cat = x.category
    s = e.index_map
    for n in range(depth):
        comp = e.components[n]
        if comp.dom != x[n] or comp.cod != u[s[n]]:
            return Verdict.fails({"index": n, "reason": "component endpoints"}, bound=depth, complete=True)
        if n + 1 >= depth:
            break
        if s[n + 1] < s[n]:
            return Verdict.fails({"index": n, "reason": "index map decreasing"}, bound=depth, complete=True)
        left = cat.compose(u.bonding(s[n], s[n + 1]), comp)
        right = cat.compose(e.components[n + 1], x.bonding(n, n + 1))
        if left != right:
            return Verdict.fails({"index": n, "reason": "naturality square"}, bound=depth, complete=True)
    return Verdict.holds({"depth": depth}, bound=depth, complete=True)


def injective_maps(n: int, m: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(m), n)


Predicate = Callable[[Any], bool]

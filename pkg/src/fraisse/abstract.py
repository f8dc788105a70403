"""Finite categories given by composition tables.

Document format (JSON)::

    {"objects": ["z", "x"],
     "arrows": [{"id": "f", "dom": "z", "cod": "x"}],
     "composition": [["g", "f", "gf"], ...],
     "identities": {"z": "1z"}}          # optional

Identities not named in ``identities`` are implicit and get the id
``"1_<object>"``. When the ``identities`` map is present it must name every
object. Composites with an identity are implicit; every other composable pair
must appear in ``composition``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import Arrow, Category
from .errors import DomainMismatch, LawViolation


class FiniteCategory(Category):
    finite = True
    complete_search = True

    def __init__(self, objects, arrows, composition, identities=None, name="finite", doc=None):
        self.name = name
        self.ref = name
        self._objects = list(objects)
        if len(set(self._objects)) != len(self._objects):
            raise LawViolation("duplicate object names")
        self._doc = doc
        self._arrows: dict[str, Arrow] = {}
        for a in arrows:
            aid, dom, cod = a["id"], a["dom"], a["cod"]
            if aid in self._arrows:
                raise LawViolation(f"duplicate arrow id {aid!r}")
            for end in (dom, cod):
                if end not in self._objects:
                    raise LawViolation(f"arrow {aid!r} uses unknown object {end!r}")
            self._arrows[aid] = Arrow(dom, cod, aid)
        if identities is not None:
            for x in self._objects:
                if x not in identities:
                    raise LawViolation(f"missing identity on {x!r}", object=x)
            self._ids = dict(identities)
        else:
            self._ids = {x: f"1_{x}" for x in self._objects}
        for x, iid in self._ids.items():
            existing = self._arrows.get(iid)
            if existing is not None and (existing.dom, existing.cod) != (x, x):
                raise LawViolation(f"identity {iid!r} must be an endo-arrow of {x!r}")
            self._arrows[iid] = Arrow(x, x, iid)
        self._table: dict[tuple[str, str], str] = {}
        for g, f, h in composition:
            for aid in (g, f, h):
                if aid not in self._arrows:
                    raise LawViolation(f"composition mentions unknown arrow {aid!r}")
            ag, af, ah = self._arrows[g], self._arrows[f], self._arrows[h]
            if af.cod != ag.dom:
                raise LawViolation(f"composition entry ({g}, {f}) is not composable", triple=(g, f))
            if (ah.dom, ah.cod) != (af.dom, ag.cod):
                raise LawViolation(f"composite {h!r} has wrong endpoints", triple=(g, f))
            if (g, f) in self._table and self._table[(g, f)] != h:
                raise LawViolation(f"conflicting entries for ({g}, {f})", triple=(g, f))
            self._table[(g, f)] = h
        self._homs: dict[tuple, list] = {}
        for arrow in sorted(self._arrows.values(), key=lambda a: a.payload):
            self._homs.setdefault((arrow.dom, arrow.cod), []).append(arrow)
        self._validate()

    # -- validation ---------------------------------------------------
    def _lookup(self, g: str, f: str) -> str:
        ag, af = self._arrows[g], self._arrows[f]
        if g == self._ids[ag.dom]:
            if (g, f) in self._table and self._table[(g, f)] != f:
                raise LawViolation(f"identity law fails: {g} o {f} != {f}", triple=(g, f))
            return f
        if f == self._ids[af.cod]:
            if (g, f) in self._table and self._table[(g, f)] != g:
                raise LawViolation(f"identity law fails: {g} o {f} != {g}", triple=(g, f))
            return g
        try:
            return self._table[(g, f)]
        except KeyError:
            raise LawViolation(f"missing composite for ({g}, {f})", triple=(g, f)) from None

    def _validate(self) -> None:
        arrows = list(self._arrows.values())
        for g in arrows:
            for f in arrows:
                if f.cod == g.dom:
                    self._lookup(g.payload, f.payload)
        for h in arrows:
            for g in arrows:
                if g.cod != h.dom:
                    continue
                for f in arrows:
                    if f.cod != g.dom:
                        continue
                    hg_f = self._lookup(self._lookup(h.payload, g.payload), f.payload)
                    h_gf = self._lookup(h.payload, self._lookup(g.payload, f.payload))
                    if hg_f != h_gf:
                        raise LawViolation(
                            f"associativity fails on (({h.payload}, {g.payload}), {f.payload})",
                            triple=(h.payload, g.payload, f.payload),
                        )

    # -- Category interface --------------------------------------------
    def size(self, a) -> int:
        return 1

    def objects(self, bound=None) -> list:
        return list(self._objects)

    def contains(self, a) -> bool:
        return a in self._objects

    def _hom(self, a, b) -> list:
        return list(self._homs.get((a, b), []))

    def identity(self, a) -> Arrow:
        return self._arrows[self._ids[a]]

    def _compose(self, g: Arrow, f: Arrow) -> Arrow:
        return self._arrows[self._lookup(g.payload, f.payload)]

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        if f.cod != g.dom:
            raise DomainMismatch(f"cannot compose: cod({f.payload})={f.cod!r} != dom({g.payload})={g.dom!r}")
        return self._compose(g, f)

    def arrow(self, aid: str) -> Arrow:
        return self._arrows[aid]

    @property
    def arrows(self) -> list[Arrow]:
        return sorted(self._arrows.values(), key=lambda a: (self._objects.index(a.dom), a.payload))

    def make_arrow(self, a, b, payload) -> Arrow:
        arrow = self._arrows[payload]
        if (arrow.dom, arrow.cod) != (a, b):
            raise DomainMismatch(f"arrow {payload!r} is not in hom({a}, {b})")
        return arrow

    def full_subcategory(self, objects, name=None) -> "FiniteCategory":
        objects = [x for x in self._objects if x in set(objects)]
        keep = {a.payload for a in self._arrows.values() if a.dom in objects and a.cod in objects}
        ids = {x: self._ids[x] for x in objects}
        arrows = [
            {"id": a.payload, "dom": a.dom, "cod": a.cod}
            for a in self._arrows.values()
            if a.payload in keep and a.payload not in ids.values()
        ]
        comp = [[g, f, h] for (g, f), h in self._table.items() if g in keep and f in keep]
        return FiniteCategory(objects, arrows, comp, identities=ids, name=name or f"{self.name}|{','.join(objects)}")

    def to_document(self) -> dict:
        if self._doc is not None:
            return self._doc
        ids = set(self._ids.values())
        return {
            "objects": list(self._objects),
            "arrows": [{"id": a.payload, "dom": a.dom, "cod": a.cod} for a in self.arrows if a.payload not in ids],
            "composition": [[g, f, h] for (g, f), h in sorted(self._table.items())],
            "identities": dict(self._ids),
        }


def load_abstract_category(doc, name: str = "file") -> FiniteCategory:
    """Validate a category-description document (dict, JSON text or path)."""
    if isinstance(doc, (str, Path)) and Path(str(doc)).exists():
        name = Path(str(doc)).stem
        doc = json.loads(Path(str(doc)).read_text(encoding="utf-8"))
    elif isinstance(doc, str):
        doc = json.loads(doc)
    try:
        objects = doc["objects"]
        arrows = doc.get("arrows", [])
        composition = doc.get("composition", [])
    except (KeyError, TypeError) as exc:
        raise LawViolation(f"malformed category document: {exc}") from None
    return FiniteCategory(objects, arrows, composition, identities=doc.get("identities"), name=name, doc=doc)


def dump_abstract_category(cat: FiniteCategory) -> dict:
    return cat.to_document()


def from_poset(elements, leq, name="poset") -> FiniteCategory:
    """Category of a finite preorder: one arrow ``x -> y`` iff ``leq(x, y)``."""
    elements = list(elements)
    arrows = [{"id": f"{x}<{y}", "dom": x, "cod": y} for x in elements for y in elements if x != y and leq(x, y)]
    ids = {x: f"{x}<{x}" for x in elements}
    comp = []
    for x in elements:
        for y in elements:
            for z in elements:
                if leq(x, y) and leq(y, z):
                    comp.append([f"{y}<{z}", f"{x}<{y}", f"{x}<{z}"])
    return FiniteCategory(elements, arrows, comp, identities=ids, name=name)


def free_category(objects, edges, name="free") -> FiniteCategory:
    """Free category on a finite acyclic graph; arrows are paths.

    ``edges`` is a list of ``(id, dom, cod)``. A path is named by joining its
    edge ids with ``.`` in application order reversed (``"g.f"`` = g after f).
    """
    objects = list(objects)
    out: dict[str, list] = {x: [] for x in objects}
    for eid, d, c in edges:
        out[d].append((eid, c))
    paths = []  # (name, dom, cod, edge list in order of travel)

    def walk(start, at, trail):
        for eid, c in out[at]:
            t = trail + [eid]
            paths.append((".".join(reversed(t)), start, c, t))
            if len(t) > len(objects) + 1:
                raise LawViolation("free category requires an acyclic graph")
            walk(start, c, t)

    for x in objects:
        walk(x, x, [])
    by_trail = {tuple(p[3]): p for p in paths}
    arrows = [{"id": p[0], "dom": p[1], "cod": p[2]} for p in paths]
    comp = []
    for pf in paths:
        for pg in paths:
            if pf[2] == pg[1]:
                comp.append([pg[0], pf[0], by_trail[tuple(pf[3] + pg[3])][0]])
    return FiniteCategory(objects, arrows, comp, name=name)

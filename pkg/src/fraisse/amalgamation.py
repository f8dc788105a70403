"""Amalgamation at an object, amalgamable arrows, CAP, WAP and subcategory conditions.

Universal quantifiers over arrows out of an object ``b`` range over

* every arrow out of ``b`` when the category is finite;
* otherwise the arrows into objects of size at most ``bound`` together with
  the one-point extensions of ``b``.

A definitive ``Holds`` needs a completeness argument (finite category or a
registered class oracle); a definitive ``Fails`` needs an exhaustive amalgam
search. Everything else is reported as ``UnknownWithinBound``.
"""

from __future__ import annotations

from .core import Arrow, Category
from .errors import NotASubcategory
from .verdict import Status, Verdict


def arrows_out(cat: Category, b, bound: int | None) -> list[Arrow]:
    if cat.finite:
        return cat.out_arrows(b)
    out = list(cat.out_arrows(b, bound)) if bound else []
    seen = set(out)
    for f in cat.extensions(b):
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def find_amalgam(cat: Category, p: Arrow, q: Arrow):
    """``(f2, g2, source)`` with ``f2 o p == g2 o q``, oracle first; ``None`` if none exists."""
    for source, pair in (("oracle", cat.oracle_amalgam(p, q)), ("search", cat.amalgamate(p, q))):
        if pair is not None and cat.compose(pair[0], p) == cat.compose(pair[1], q):
            return pair[0], pair[1], source
    return None


def _pairs_verdict(cat, pairs, pre, bound, what):
    witnesses = []
    for f, g in pairs:
        p, q = (cat.compose(f, pre), cat.compose(g, pre)) if pre is not None else (f, g)
        found = find_amalgam(cat, p, q)
        if found is None:
            return Verdict.fails({"f": f, "g": g}, bound=bound, complete=cat.complete_search,
                                 notes=[f"no amalgam for a pair out of {what}"])
        witnesses.append({"f": f, "g": g, "f_prime": found[0], "g_prime": found[1], "via": found[2]})
    if cat.finite or cat.has_ap:
        note = "finite category, exhaustive" if cat.finite else "class oracle"
        return Verdict.holds({"pairs": witnesses}, bound=bound, complete=True, notes=[note])
    return Verdict.unknown(certificate={"pairs": witnesses}, bound=bound,
                           notes=[f"all {len(witnesses)} pairs amalgamate within bound"])


def _ordered_pairs(arrows):
    return [(f, g) for i, f in enumerate(arrows) for g in arrows[i:]]


def ap_at(cat: Category, z, bound: int | None = None) -> Verdict:
    """Every two arrows out of ``z`` complete to a commuting square."""
    return _pairs_verdict(cat, _ordered_pairs(arrows_out(cat, z, bound)), None, bound, z)


def is_amalgamable(cat: Category, e: Arrow, bound: int | None = None) -> Verdict:
    """Any two arrows out of ``cod(e)`` amalgamate after precomposing with ``e``."""
    return _pairs_verdict(cat, _ordered_pairs(arrows_out(cat, e.cod, bound)), e, bound, e)


def _candidates(cat, z, bound):
    ident = cat.identity(z)
    rest = [f for f in arrows_out(cat, z, bound) if f != ident]
    return [ident] + rest


def _cofinal_property(cat, bound, test, label):
    witnesses, pending = {}, []
    for z in cat.objects(bound):
        best = None
        for e in _candidates(cat, z, bound):
            v = test(e)
            if v.ok:
                best = (e, v)
                break
            if v.status is Status.UNKNOWN and best is None:
                best = (e, v)
        if best is None:
            note = f"no {label} witness out of {cat.describe(z)}"
            if cat.finite:
                return Verdict.fails({"object": z}, bound=bound, complete=True, notes=[note])
            return Verdict.unknown(counterexample={"object": z}, bound=bound,
                                   notes=[note + " within bound"])
        witnesses[cat.object_id(z)] = best[0]
        if not best[1].ok:
            pending.append(z)
    if pending:
        return Verdict.unknown(certificate={"witnesses": witnesses}, bound=bound,
                               notes=[f"{len(pending)} witnesses only checked within bound"])
    return Verdict.holds({"witnesses": witnesses}, bound=bound, complete=True)


def has_cap(cat: Category, bound: int | None = None) -> Verdict:
    """Every object maps into one with AP."""
    return _cofinal_property(cat, bound, lambda e: ap_at(cat, e.cod, bound), "CAP")


def has_wap(cat: Category, bound: int | None = None) -> Verdict:
    """Every object admits an amalgamable arrow."""
    return _cofinal_property(cat, bound, lambda e: is_amalgamable(cat, e, bound), "WAP")


def amalgamable_arrow(cat: Category, z, bound: int | None = None):
    """First candidate out of ``z`` certified amalgamable, else ``None``."""
    for e in _candidates(cat, z, bound):
        if is_amalgamable(cat, e, bound).ok:
            return e
    return None


# -- subcategory conditions ----------------------------------------------

def _sub_targets(cat, sub, bound):
    if sub.finite or cat.finite:
        return sub.objects()
    return sub.objects(bound + 1)


def _check_closed(cat, sub, bound):
    objs = sub.objects(bound) if not sub.finite else sub.objects()
    for a in objs:
        if not sub.has_arrow(cat.identity(a)):
            raise NotASubcategory(f"identity on {cat.describe(a)} missing", object=a)
    for a in objs:
        for b in objs:
            for f in sub.hom(a, b):
                for c in objs:
                    for g in sub.hom(b, c):
                        if not sub.has_arrow(cat.compose(g, f)):
                            raise NotASubcategory("not closed under composition", pair=(g, f))


def _cofinal_arrow(cat, sub, x, bound):
    if sub.cofinal_witness is not None and sub.full:
        f = sub.cofinal_witness(x)
        if f.dom == x and sub.contains(f.cod) and cat.is_arrow(f):
            return f
    for s in _sub_targets(cat, sub, bound):
        arrows = cat.hom(x, s)
        if arrows:
            return arrows[0]
    return None


def _sub_failure(counterexample, bound, complete):
    if complete:
        return Verdict.fails(counterexample, bound=bound, complete=True)
    return Verdict.unknown(counterexample=counterexample, bound=bound,
                           notes=["no witness among subcategory objects within bound"])


def check_subcategory(cat: Category, sub, mode: str, bound: int | None = None) -> Verdict:
    """Check (C) cofinal, (C)+(D) dominating or (C)+(W) weakly dominating within ``bound``."""
    if mode not in ("cofinal", "dominating", "weakly_dominating"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_closed(cat, sub, bound)
    complete_targets = sub.finite or cat.finite
    constructive = sub.full and sub.cofinal_witness is not None
    xs = cat.objects(bound)
    c_wit = {}
    for x in xs:
        f = _cofinal_arrow(cat, sub, x, bound)
        if f is None:
            return _sub_failure({"condition": "C", "object": x}, bound, complete_targets)
        c_wit[cat.object_id(x)] = f
    cert = {"C": c_wit}
    notes = []
    if mode == "dominating":
        if sub.full:
            notes.append("(D) follows from (C) for a full subcategory")
        else:
            d_wit = {}
            for y in sub.objects(bound):
                for f in arrows_out(cat, y, bound):
                    g = next((g for s in _sub_targets(cat, sub, bound) for g in cat.hom(f.cod, s)
                              if sub.has_arrow(cat.compose(g, f))), None)
                    if g is None:
                        return _sub_failure({"condition": "D", "object": y, "f": f}, bound,
                                            complete_targets)
                    d_wit[(cat.object_id(y), repr(f))] = g
            cert["D"] = d_wit
    if mode == "weakly_dominating":
        w_wit = {}
        for y in sub.objects(bound):
            found = None
            for j in arrows_out(sub, y, bound) if not sub.finite else sub.out_arrows(y):
                gmap = {}
                for f in arrows_out(cat, j.cod, bound):
                    g = next((g for s in _sub_targets(cat, sub, bound) for g in cat.hom(f.cod, s)
                              if sub.has_arrow(cat.chain(g, f, j))), None)
                    if g is None:
                        break
                    gmap[repr(f)] = g
                else:
                    found = (j, gmap)
                    break
            if found is None:
                return _sub_failure({"condition": "W", "object": y}, bound, complete_targets)
            w_wit[cat.object_id(y)] = found
        cert["W"] = w_wit
    if cat.finite or (constructive and sub.full):
        if constructive and not cat.finite:
            notes.append("cofinality by a constructive witness")
        return Verdict.holds(cert, bound=bound, complete=True, notes=notes)
    return Verdict.unknown(certificate=cert, bound=bound, notes=notes + ["checked within bound"])

"""Finite approximations of sequential colimits and genericity checks on them.

An arrow into the colimit is a pair ``(stage, arrow into that stage)``. Two
such pairs are equal when they agree after pushing both to a common later
stage; bonds are monic, so agreeing once means agreeing forever.

Weak injectivity of ``U`` at ``e: a -> U`` asks for ``i: a -> b`` such that
every test arrow ``f`` out of ``b`` factors back: ``g o f o i == e``. A spoil
certificate for ``e`` is the exact negation: for every ``f: a -> b`` some test
arrow ``f'`` out of ``b`` admits no ``i`` with ``i o f' o f == e``. Both searches
share one routine, so at a fixed bound exactly one of them succeeds for each
``e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import Arrow, Category, Sequence
from ..errors import AbstractCategory
from ..instances.subcats import age_subcategory
from ..verdict import Verdict


class ColimitApprox:
    """Stage ``k`` of a sequence read as an approximation of its colimit."""

    def __init__(self, seq: Sequence, k: int | None = None, window: int = 6):
        cat = seq.category
        if not cat.concrete:
            raise AbstractCategory(f"{cat.name} has no concrete colimit")
        k = len(seq) - 1 if k is None else k
        if not 0 <= k < len(seq):
            raise ValueError(f"stage {k} outside recorded length {len(seq)}")
        self.seq = seq
        self.stage = k
        self.window = min(window, k + 1)

    @property
    def category(self) -> Category:
        return self.seq.category

    @property
    def structure(self):
        return self.seq[self.stage]

    def cocone(self, n: int) -> Arrow:
        """``u_n^infty`` cut down to the approximation."""
        return self.seq.bonding(n, self.stage)

    def push(self, tagged) -> Arrow:
        n, f = tagged
        return self.category.compose(self.cocone(n), f)

    def equal(self, s, t) -> bool:
        m = max(s[0], t[0])
        cat = self.category
        return (cat.compose(self.seq.bonding(s[0], m), s[1])
                == cat.compose(self.seq.bonding(t[0], m), t[1]))

    def window_vertices(self, stages: int | None = None) -> list[int]:
        """Points of the approximation coming from the first ``stages`` stages."""
        stages = self.window if stages is None else stages
        cat = self.category
        if getattr(cat, "dual", False):
            return list(range(cat.size(self.structure)))
        pts = set()
        for n in range(min(stages, self.stage + 1)):
            pts.update(self.cocone(n).payload)
        return sorted(pts)

    def arrows_from(self, cat: Category, a) -> list:
        """Distinct arrows ``a -> U`` represented in the window, stage-tagged at first appearance."""
        seen, out = set(), []
        for n in range(self.window):
            for f in cat.hom(a, self.seq[n]):
                pushed = self.push((n, f))
                if pushed not in seen:
                    seen.add(pushed)
                    out.append((n, f))
        return out

    def __repr__(self) -> str:
        return f"ColimitApprox(stage={self.stage}, size={self.category.size(self.structure)})"


def colimit_approx(seq: Sequence, k: int | None = None, window: int = 6) -> ColimitApprox:
    return ColimitApprox(seq, k, window)


def _sources(cat: Category, bound: int) -> list:
    return cat.objects() if cat.finite else cat.objects(bound)


def _first_moves(cat: Category, a, bound: int) -> list[Arrow]:
    ident = cat.identity(a)
    rest = cat.out_arrows(a) if cat.finite else cat.out_arrows(a, bound)
    return [ident] + [i for i in rest if i != ident]


def _tests(cat: Category, b) -> list[Arrow]:
    return cat.out_arrows(b) if cat.finite else list(cat.extensions(b))


def _analyse(cat: Category, U: ColimitApprox, e_top: Arrow, bound: int):
    """Either ``("wi", i, [(f, g), ...])`` or ``("spoil", [(i, f'), ...])``."""
    table = []
    for i in _first_moves(cat, e_top.dom, bound):
        witnesses = []
        for f in _tests(cat, i.cod):
            g = cat.first_factor(cat.compose(f, i), e_top)
            if g is None:
                table.append((i, f))
                break
            witnesses.append((f, g))
        else:
            return ("wi", i, witnesses)
    return ("spoil", table)


@dataclass
class SpoilCertificate:
    """Base arrow ``e`` and, for each first move ``f``, the responder ``f'``."""

    stage: int
    e: Arrow
    responses: list = field(default_factory=list)

    def response(self, cat: Category, f: Arrow):
        for f0, f1 in self.responses:
            if f0 == f:
                return f1
        return None


def check_weak_injectivity(cat: Category, U: ColimitApprox, bound: int = 3) -> Verdict:
    """Weak injectivity over arrows ``a -> U`` with ``|a| <= bound`` from the window stages."""
    certs = []
    for a in _sources(cat, bound):
        for n, e in U.arrows_from(cat, a):
            kind, *rest = _analyse(cat, U, U.push((n, e)), bound)
            if kind == "spoil":
                i, f = rest[0][0]
                return Verdict.fails({"e": (n, e), "i": i, "f": f}, bound=bound,
                                     notes=[f"no arrow back into stage {U.stage} for the test arrow"])
            certs.append({"e": (n, e), "i": rest[0], "witnesses": rest[1]})
    return Verdict.holds({"arrows": certs}, bound=bound,
                         notes=[f"{len(certs)} arrows from the first {U.window} stages"])


def replay_weak_injectivity(cat: Category, U: ColimitApprox, v: Verdict) -> bool:
    for c in v.certificate["arrows"]:
        e = U.push(c["e"])
        for f, g in c["witnesses"]:
            if cat.chain(g, f, c["i"]) != e:
                return False
    return True


def check_universal(cat: Category, U: ColimitApprox, bound: int = 3) -> Verdict:
    """Every object of size at most ``bound`` maps into the approximation."""
    found, missing = {}, []
    for x in _sources(cat, bound):
        f = cat.first_arrow(x, U.structure)
        if f is None:
            missing.append(x)
        else:
            found[cat.object_id(x)] = f
    if missing:
        return Verdict.fails({"objects": missing}, bound=bound)
    return Verdict.holds(found, bound=bound)


def check_generic(cat: Category, U: ColimitApprox, bound: int = 3) -> Verdict:
    """(U) and weak injectivity, both at ``bound``."""
    u = check_universal(cat, U, bound)
    if u.failed:
        return Verdict.fails({"U": u.counterexample}, bound=bound, notes=["(U) fails"])
    wi = check_weak_injectivity(cat, U, bound)
    if wi.failed:
        return Verdict.fails({"WI": wi.counterexample}, bound=bound, notes=["weak injectivity fails"])
    return Verdict.holds({"U": u.certificate, "WI": wi.certificate}, bound=bound)


def find_spoil_certificate(cat: Category, U: ColimitApprox, bound: int = 3, arrows_only: bool = False):
    """First ``e`` in the window whose negated weak-injectivity search succeeds.

    An object with no arrow into the approximation is also a spoiler; the
    certificate then has ``e = None`` and Eve simply opens with that object.
    ``arrows_only`` skips that case, for callers that need an arrow to spoil.
    """
    for a in ([] if arrows_only else _sources(cat, bound)):
        if cat.first_arrow(a, U.structure) is None:
            return SpoilCertificate(U.stage, None, [("object", a)])
    for a in _sources(cat, bound):
        for n, e in U.arrows_from(cat, a):
            result = _analyse(cat, U, U.push((n, e)), bound)
            if result[0] == "spoil":
                return SpoilCertificate(n, e, result[1])
    return None


def compute_age(cat: Category, V: ColimitApprox, bound: int = 3):
    """Hereditary full subcategory of objects embeddable into the approximation.

    The returned subcategory carries ``members`` and ``missing`` (objects of
    size at most ``bound`` outside the age) and ``hereditary_checked``.
    """
    age = age_subcategory(cat, V.structure, name="age")
    age.hereditary = True
    objs = _sources(cat, bound)
    age.members = [a for a in objs if age.contains(a)]
    age.missing = [a for a in objs if not age.contains(a)]
    # closed under arrows into members
    age.hereditary_checked = all(
        age.contains(x) for b in age.members for x in objs if cat.first_arrow(x, b) is not None
    )
    return age


def check_weak_homogeneity(cat: Category, V: ColimitApprox, bound: int = 3) -> Verdict:
    """Weak homogeneity through weak injectivity relative to the age of ``V``."""
    age = compute_age(cat, V, bound)
    v = check_weak_injectivity(age, V, bound)
    v.notes.append("via weak injectivity relative to the age")
    v.notes.append(f"age: {len(age.members)} objects, {len(age.missing)} missing at bound {bound}")
    return v

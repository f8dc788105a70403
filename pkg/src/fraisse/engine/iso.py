"""Normalization, back-and-forth between sequences, and embedding of sequences."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..amalgamation import find_amalgam, is_amalgamable
from ..core import Arrow, Sequence, SequenceArrow
from ..errors import CannotNormalize, ExtensionStuck, PreconditionUnmet, WitnessNotFound
from ..verdict import Status, Verdict
from .views import tail_from


def _bond_ok(cat, e: Arrow, bound) -> bool:
    v = is_amalgamable(cat, e, bound)
    return v.ok or (v.status is Status.UNKNOWN and not cat.finite)


def normalize(seq: Sequence, bound: int = 3) -> Sequence:
    """Least subsequence whose one-step bonds are amalgamable.

    The result carries ``index_map``. Under AP every bond qualifies and the
    sequence itself is returned with the identity map.
    """
    cat = seq.category
    if len(seq) < 2:
        raise CannotNormalize("need at least two stages")
    if cat.has_ap:
        seq.index_map = list(range(len(seq)))
        return seq
    idx = [0]
    while True:
        cur = idx[-1]
        nxt = next((m for m in range(cur + 1, len(seq)) if _bond_ok(cat, seq.bonding(cur, m), bound)), None)
        if nxt is None:
            break
        idx.append(nxt)
    if len(idx) < 2:
        raise CannotNormalize("no amalgamable bond out of the first stage within recorded stages")
    out = seq.subsequence(idx)
    out.index_map = idx
    return out


@dataclass
class SequenceIso:
    """Zigzag ``h_i: u_{k_i} -> v_{l_i}`` and ``q_i: v_{l_i} -> u_{k_{i+1}}``."""

    k: list = field(default_factory=list)
    l: list = field(default_factory=list)
    h: list = field(default_factory=list)
    q: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.q)

    def verify(self, u: Sequence, v: Sequence) -> Verdict:
        cat = u.category
        for i in range(len(self.q)):
            if cat.compose(self.q[i], self.h[i]) != u.bonding(self.k[i], self.k[i + 1]):
                return Verdict.fails({"equation": "q_i o h_i", "index": i}, complete=True)
            if i + 1 < len(self.h) and cat.compose(self.h[i + 1], self.q[i]) != v.bonding(self.l[i], self.l[i + 1]):
                return Verdict.fails({"equation": "h_{i+1} o q_i", "index": i}, complete=True)
        return Verdict.holds({"depth": len(self.q)}, complete=True)

    def to_dict(self, cat) -> dict:
        return {"k": self.k, "l": self.l,
                "h": [cat.arrow_payload(a) for a in self.h],
                "q": [cat.arrow_payload(a) for a in self.q]}


def back_and_forth(u: Sequence, v: Sequence, f: Arrow, depth: int, grow: bool = False) -> SequenceIso:
    """Zigzag of length ``depth`` between normalized ``u`` and ``v`` extending ``f o u_0^1``.

    ``f`` goes from ``u_1`` to ``v_1``.
    """
    cat = u.category
    if f.dom != u[1] or (len(v) > 1 and f.cod != v[1]):
        raise ValueError("f must go from u_1 to v_1")
    iso = SequenceIso()
    k, l, fi = 0, 1, f
    for i in range(depth):
        h = cat.compose(fi, u.bonding(k, k + 1))
        iso.k.append(k)
        iso.l.append(l)
        iso.h.append(h)
        if len(v) < l + 2 and not (grow and v.grower):
            raise ExtensionStuck(f"v has no stage {l + 1}", step=i)
        if len(v) < l + 2:
            v.grower.step(v)
        big = cat.compose(v.bonding(l, l + 1), fi)
        found = u.witness(k, cat.compose(big, u.bonding(k, k + 1)), grow=grow)
        if found is None:
            raise ExtensionStuck(f"no (G2) witness in u at step {i}", step=i)
        k_next, g = found
        q = cat.compose(g, v.bonding(l, l + 1))
        iso.q.append(q)
        if len(u) < k_next + 2:
            if not (grow and u.grower):
                raise ExtensionStuck(f"u has no stage {k_next + 1}", step=i)
            u.grower.step(u)
        back = cat.compose(u.bonding(k_next, k_next + 1), g)
        found = v.witness(l, cat.compose(back, v.bonding(l, l + 1)), grow=grow)
        if found is None:
            raise ExtensionStuck(f"no (G2) witness in v at step {i}", step=i)
        l, fi = found
        k = k_next
    iso.k.append(k)
    iso.l.append(l)
    iso.h.append(cat.compose(fi, u.bonding(k, k + 1)))
    return iso


def align(u: Sequence, v: Sequence, grow: bool = False):
    """Arrow ``u_1 -> v'_1`` where ``v'`` drops ``v_1 .. v_{k-1}``; returns ``(v', f)``."""
    found = v.cover(u[1], grow=grow)
    if found is None:
        raise ExtensionStuck("u_1 maps into no recorded stage of v")
    k, f = found
    if k == 0:
        f, k = u.category.compose(v.bonding(0, 1), f), 1
    return tail_from(v, k), f


def isomorphic_prefix(u: Sequence, v: Sequence, depth: int, grow: bool = False):
    """Normalize both, align, and run the back-and-forth."""
    nu, nv = normalize(u), normalize(v)
    nv2, f = align(nu, nv, grow=grow)
    return nu, nv2, back_and_forth(nu, nv2, f, depth, grow=grow)


def transport(u: Sequence, iso: SequenceIso) -> Sequence:
    """The sequence ``v_{l_0} -> v_{l_1} -> ...`` read through the zigzag."""
    cat = u.category
    objs = [h.cod for h in iso.h]
    bonds = [cat.compose(iso.h[i + 1], iso.q[i]) for i in range(len(iso.q))]
    return Sequence(cat, objs, bonds)


def embed_sequence(x: Sequence, u: Sequence, depth: int, bound: int = 3, grow: bool = True) -> SequenceArrow:
    """Arrow of sequences ``x -> u`` with components ``e_n = e'_n o x_n^{n+2}``.

    Needs every bond of ``x`` amalgamable and ``u`` normalized; ``x`` must
    record ``depth + 2`` stages.
    """
    cat = x.category
    if len(x) < depth + 2:
        raise ValueError(f"x needs {depth + 2} stages")
    for n in range(depth + 1):
        if not is_amalgamable(cat, x.bonds[n], bound).ok:
            raise PreconditionUnmet(f"bond {n} of x has no amalgamability certificate", index=n)
    found = u.cover(x[2], grow=grow)
    if found is None:
        raise WitnessNotFound("x_2 maps into no recorded stage of u")
    s, ep = found
    index_map, comps, factors = [s], [cat.compose(ep, x.bonding(0, 2))], [ep]
    for n in range(depth - 1):
        if len(u) < s + 2:
            if not (grow and u.grower):
                raise WitnessNotFound(f"u has no stage {s + 1}")
            u.grower.step(u)
        p = x.bonding(n + 1, n + 3)
        q = cat.chain(u.bonding(s, s + 1), ep, x.bonding(n + 1, n + 2))
        pair = find_amalgam(cat, p, q)
        if pair is None:
            raise PreconditionUnmet(f"no amalgam at step {n}", index=n + 1)
        f2, g2, _ = pair
        found = u.witness(s, cat.compose(g2, u.bonding(s, s + 1)), grow=grow)
        if found is None:
            raise WitnessNotFound(f"no (G2) witness in u at step {n}")
        k, h = found
        ep = cat.compose(h, f2)
        s = k
        index_map.append(s)
        factors.append(ep)
        comps.append(cat.compose(ep, x.bonding(n + 1, n + 3)))
    return SequenceArrow(index_map, comps, factors)

"""Finite-depth classification of plays and branch-frequency estimates."""

from __future__ import annotations

import itertools
import random

from ..core import Category, Sequence
from ..engine.colimit import ColimitApprox
from ..engine.iso import align, back_and_forth, normalize
from ..errors import CannotNormalize, Explosion, ExtensionStuck, WitnessNotFound
from ..verdict import Verdict
from .play import Play


def _obstruction(play: Play, target_cat):
    """First play stage outside a hereditary target class."""
    if not getattr(target_cat, "hereditary", False):
        return None
    for m, x in enumerate(play.objects):
        if not target_cat.contains(x):
            return m, x
    return None


def _steered(play: Play, seq: Sequence):
    """Target indices ``t_n`` with ``a_{2n+1} == u_{t_n}``, when Odd's answers are target stages."""
    where: dict = {}
    for t in range(len(seq)):
        where.setdefault(seq[t], t)
    idx = []
    for m in range(1, len(play), 2):
        t = play.moves[m]["annotations"].get("stage")
        if not (isinstance(t, int) and t < len(seq) and seq[t] == play.objects[m]):
            t = where.get(play.objects[m])
        if t is None or t == 0 or (idx and t <= idx[-1]):
            return None
        idx.append(t)
    return idx if len(idx) >= 2 else None


def _zigzag(play: Play, seq: Sequence, depth: int):
    steer = _steered(play, seq)
    if steer is not None:
        # the play's odd positions against the target stages just below them
        full = play.sequence()
        x = full.subsequence(range(1, len(full), 2))
        x.index_map = list(range(1, len(full), 2))
        y = seq.subsequence([t - 1 for t in steer])
        f = seq.bonding(steer[1] - 1, steer[1])
        try:
            iso = back_and_forth(y, x, f, depth)
            if iso.verify(y, x).ok:
                return iso, "steered", x.index_map
        except ExtensionStuck:
            pass
    # Eve's positions form a cofinal subsequence whose one-step bonds
    # already carry witnesses (Odd answers in between)
    full = play.sequence()
    if len(full) < 3:
        raise ExtensionStuck("too few Eve positions to align")
    a = full.subsequence(range(0, len(full), 2))
    a.index_map = list(range(0, len(full), 2))
    u = normalize(seq)
    v, f = align(a, u, grow=True)
    iso = back_and_forth(a, v, f, depth, grow=True)
    if not iso.verify(a, v).ok:
        raise ExtensionStuck("zigzag equations did not replay")
    return iso, "aligned", a.index_map


def classify_play(play: Play, target, depth: int = 4) -> Verdict:
    """Holds with a depth-``depth`` zigzag to ``target``; Fails only on a hereditary obstruction."""
    seq = target.seq if isinstance(target, ColimitApprox) else target
    bad = _obstruction(play, seq.category)
    if bad is not None:
        m, x = bad
        return Verdict.fails({"stage": m, "object": x}, bound=depth, complete=True,
                             notes=["a play stage lies outside the hereditary target class"])
    try:
        iso, how, index = _zigzag(play, seq, depth)
    except (CannotNormalize, ExtensionStuck, WitnessNotFound) as exc:
        return Verdict.unknown(bound=depth, notes=[f"{type(exc).__name__}: {exc}"])
    return Verdict.holds({"iso": iso, "play_index": index, "seeded": how}, bound=depth,
                         notes=[f"zigzag of depth {depth} ({how})"])


# -- branches of the tree of finite sequences ------------------------------

def _choices(cat: Category, a) -> list:
    return cat.out_arrows(a) if cat.finite else list(cat.extensions(a))


def _roots(skeleton: Category, roots):
    if roots is not None:
        return list(roots)
    return skeleton.objects() if skeleton.finite else skeleton.objects(1)


def branch_sequence(skeleton: Category, root, choices) -> Sequence:
    seq = Sequence(skeleton, [root])
    for c in choices:
        seq.append(_choices(skeleton, seq[-1])[c])
    return seq


def count_branches(skeleton: Category, depth: int, roots=None, cap: int = 100_000) -> int:
    total = 0
    for r in _roots(skeleton, roots):
        level = [r]
        for _ in range(depth):
            level = [f.cod for a in level for f in _choices(skeleton, a)]
            if total + len(level) > cap:
                raise Explosion(f"more than {cap} branches at depth {depth}", cap=cap)
        total += len(level)
    return total


def _all_branches(skeleton, depth, roots):
    for ri, r in enumerate(_roots(skeleton, roots)):
        def walk(a, path):
            if len(path) == depth:
                yield (ri, *path)
                return
            for c, f in enumerate(_choices(skeleton, a)):
                yield from walk(f.cod, path + [c])
        yield from walk(r, [])


def ubiquity_estimate(skeleton: Category, depth: int, checker, mode: str = "exhaustive",
                      samples: int = 500, seed: int = 0, roots=None, cap: int = 100_000) -> dict:
    """Fraction of depth-``depth`` branches whose sequence passes ``checker``.

    A branch is a root object followed by ``depth`` choices of test arrows
    (all arrows in a finite category, one-point extensions otherwise).
    """
    rts = _roots(skeleton, roots)
    if mode == "exhaustive":
        total = count_branches(skeleton, depth, rts, cap)
        branches = _all_branches(skeleton, depth, rts)
    elif mode == "sampled":
        rng = random.Random(seed)

        def sample():
            for _ in range(samples):
                ri = rng.randrange(len(rts))
                a, path = rts[ri], [ri]
                for _ in range(depth):
                    ch = _choices(skeleton, a)
                    c = rng.randrange(len(ch))
                    path.append(c)
                    a = ch[c].cod
                yield tuple(path)
        total = samples
        branches = sample()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    passed = 0
    for br in branches:
        if checker(branch_sequence(skeleton, rts[br[0]], br[1:])):
            passed += 1
    return {"mode": mode, "depth": depth, "count": passed, "total": total,
            "fraction": passed / total if total else 0.0,
            **({"samples": samples, "seed": seed} if mode == "sampled" else {})}


def branch_distance(x, y) -> float:
    """``1/n`` for the first position ``n`` (from 1) where the branches differ; 0 if equal."""
    x, y = tuple(x), tuple(y)
    if x == y:
        return 0.0
    for n, (p, q) in enumerate(itertools.zip_longest(x, y, fillvalue=object()), start=1):
        if p != q:
            return 1.0 / n
    return 0.0

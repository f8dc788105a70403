"""Baseline players, Odd's generic strategy and Eve's spoiling strategy."""

from __future__ import annotations

from ..core import Arrow, Category, Sequence
from ..engine.colimit import ColimitApprox, _analyse
from ..errors import NoSpoilCertificate, WitnessNotFound
from ..instances.graphs import Graph, GraphCategory, complete_graph, path_graph
from .play import EVE, ODD, Play, Strategy


def _random_extension(cat: Category, a, rng) -> Arrow:
    n = cat.extension_count(a)
    return cat.extension_at(a, rng.randrange(n))


class RandomEve(Strategy):
    """Opens with a random small object, then adds one or two random extensions."""

    side = EVE
    name = "random-eve"

    def __init__(self, cat: Category, opening_bound: int = 2, max_steps: int = 2):
        self.cat = cat
        self.opening_bound = opening_bound
        self.max_steps = max_steps

    def move(self, play: Play):
        cat = self.cat
        if not play.objects:
            objs = cat.objects() if cat.finite else cat.objects(self.opening_bound)
            return objs[self.rng.randrange(len(objs))]
        a = play.objects[-1]
        if cat.finite:
            outs = cat.out_arrows(a)
            return outs[self.rng.randrange(len(outs))]
        f = cat.identity(a)
        for _ in range(self.rng.randint(1, self.max_steps)):
            f = cat.compose(_random_extension(cat, f.cod, self.rng), f)
        return f


class RandomOdd(RandomEve):
    side = ODD
    name = "random-odd"

    def __init__(self, cat: Category, max_steps: int = 1):
        super().__init__(cat, max_steps=max_steps)


def _add_vertex(g: Graph, neighbours) -> Arrow:
    return Arrow(g, g.add_vertex(sorted(neighbours)), tuple(range(g.n)))


class CliquesEve(Strategy):
    """Opens with ``K_step``; each move adds ``step`` vertices, each adjacent to all earlier ones."""

    side = EVE
    name = "cliques-eve"

    def __init__(self, step: int = 1):
        self.step = step

    def move(self, play: Play):
        if not play.objects:
            return complete_graph(self.step)
        G = GraphCategory()
        f = G.identity(play.objects[-1])
        for _ in range(self.step):
            f = G.compose(_add_vertex(f.cod, range(f.cod.n)), f)
        return f


class PathsEve(Strategy):
    """Opens with a path on ``step`` vertices; each move extends the path by ``step`` vertices."""

    side = EVE
    name = "paths-eve"

    def __init__(self, step: int = 1):
        self.step = step

    def move(self, play: Play):
        if not play.objects:
            return path_graph(self.step)
        G = GraphCategory()
        f = G.identity(play.objects[-1])
        for _ in range(self.step):
            f = G.compose(_add_vertex(f.cod, [f.cod.n - 1]), f)
        return f


def _max_clique(g: Graph) -> list[int]:
    best: list[int] = []

    def grow(clique, cands):
        nonlocal best
        if len(clique) > len(best):
            best = list(clique)
        for i, v in enumerate(cands):
            if len(clique) + len(cands) - i <= len(best):
                return
            grow(clique + [v], [w for w in cands[i + 1:] if g.adjacent(v, w)])

    grow([], list(range(g.n)))
    return best


class RealizeCliqueOdd(Strategy):
    """Makes sure ``K_n`` appears; adds the missing clique vertices at once."""

    side = ODD

    def __init__(self, n: int):
        self.n = n
        self.name = f"realize-K{n}"

    def move(self, play: Play):
        g = play.objects[-1]
        cat = GraphCategory()
        clique = _max_clique(g)
        f = cat.identity(g)
        for _ in range(max(self.n - len(clique), 0)):
            h = f.cod
            f = cat.compose(_add_vertex(h, clique), f)
            clique = clique + [h.n]
        return f, {"clique": len(clique)}


class OddGeneric(Strategy):
    """Odd steers the play along a normalized weak Fraisse sequence ``u``.

    After each response the last object is ``u_{l+1}``. Eve's move ``F`` is
    answered by a witness ``g`` with ``g o F o u_l^{l+1} == u_l^k`` and the
    response ``u_k^{k+1} o g``.
    """

    side = ODD
    name = "odd-generic"

    def __init__(self, u: Sequence, grow: bool = True):
        self.u = u
        self.grow = grow
        self.ell = None

    def reset(self, rng) -> None:
        super().reset(rng)
        self.ell = None

    def _ensure(self, k: int) -> None:
        u = self.u
        while len(u) <= k:
            if not (self.grow and u.grower):
                raise WitnessNotFound(f"u has only {len(u)} stages, need {k + 1}")
            u.grower.step(u)

    def move(self, play: Play):
        u, cat = self.u, self.u.category
        if len(play) == 1:
            found = u.cover(play.objects[0], grow=self.grow)
            if found is None:
                raise WitnessNotFound("Eve's opening maps into no recorded stage")
            k, f0 = found
        else:
            F = play.arrow(len(play) - 1)
            ell = self.ell
            self._ensure(ell + 2)
            found = u.witness(ell, cat.compose(F, u.bonding(ell, ell + 1)), grow=self.grow)
            if found is None:
                raise WitnessNotFound(f"no witness over stage {ell} within recorded stages")
            k, f0 = found
        self._ensure(k + 1)
        self.ell = k
        return cat.compose(u.bonding(k, k + 1), f0), {"stage": k + 1}


def odd_generic_strategy(u: Sequence, grow: bool = True) -> OddGeneric:
    return OddGeneric(u, grow)


def spoil_schedule(n: int):
    """Task ``(k, j)`` scheduled at round ``n``, or ``None``.

    Round ``phi(k, j) = 2**k * (2j + 3)`` serves the ``j``-th arrow into
    ``a_k``; the blocks are disjoint and ``phi(k, j) > k``.
    """
    if n < 3:
        return None
    k = (n & -n).bit_length() - 1
    odd = n >> k
    if odd < 3:
        return None
    return k, (odd - 3) // 2


def phi(k: int, j: int) -> int:
    return (2 ** k) * (2 * j + 3)


class EveSpoiler(Strategy):
    """Eve keeps ``e`` from factoring through the play.

    At round ``n`` she picks ``f_n: a -> a_{2n-1}`` (a scheduled task or the
    default ``a_0^{2n-1}``) and plays the first test arrow ``f'`` with no
    ``i`` satisfying ``i o f' o f_n == e``. The (dagger) ledger records, per
    round, how many such ``i`` exist after the move; it must always be zero.
    """

    side = EVE
    name = "eve-spoiler"

    def __init__(self, cat: Category, V: ColimitApprox, e: Arrow, bound: int = 3, certificate=None):
        self.cat = cat
        self.V = V
        self.e = e
        self.bound = bound
        self.certificate = certificate
        self.ledger: list[dict] = []

    def reset(self, rng) -> None:
        super().reset(rng)
        self.ledger = []

    def _respond(self, base: Arrow) -> Arrow | None:
        cat = self.cat
        tests = cat.out_arrows(base.cod) if cat.finite else cat.extensions(base.cod)
        for f1 in tests:
            if cat.first_factor(cat.compose(f1, base), self.e) is None:
                return f1
        return None

    def move(self, play: Play):
        cat = self.cat
        if not play.objects:
            return self.e.dom, {"e": self.e}
        n = len(play) // 2
        last = len(play) - 1
        task = spoil_schedule(n)
        f_n, used = play.bonding(0, last), None
        if task is not None:
            k, j = task
            homs = cat.hom(self.e.dom, play.objects[k]) if k <= last else []
            if j < len(homs):
                f_n = cat.compose(play.bonding(k, last), homs[j])
                used = [k, j]
        f1 = self._respond(f_n)
        if f1 is None:
            raise NoSpoilCertificate(f"no spoiling response at round {n}")
        count = sum(1 for _ in cat.factor(cat.compose(f1, f_n), self.e))
        self.ledger.append({"round": n, "task": used, "factorizations": count})
        return f1, {"f_n": f_n, "task": used, "dagger": count}


def eve_spoiler_strategy(cat: Category, V: ColimitApprox, e, bound: int = 3) -> EveSpoiler:
    """``e`` is an arrow into ``V.structure`` or a stage-tagged pair ``(n, arrow)``."""
    if isinstance(e, tuple):
        e = V.push(e)
    kind, *rest = _analyse(cat, V, e, bound)
    if kind != "spoil":
        raise NoSpoilCertificate("the responder condition fails for e within bound",
                                 witness=rest[0])
    return EveSpoiler(cat, V, e, bound, certificate=rest[0])

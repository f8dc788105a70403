import itertools

import pytest

from fraisse.abstract import FiniteCategory, free_category, from_poset, load_abstract_category
from fraisse.instances.builtin import data_path
from fraisse.instances.graphs import GraphCategory


def _posets(n):
    """All partial orders on ``range(n)`` (labelled)."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2 and i != k):
            continue
        yield rel


def finite_corpus():
    """Small finite categories (at most 6 objects) used by the exhaustive regressions."""
    cats = []
    for n in range(1, 5):
        seen = set()
        for rel in _posets(n):
            key = frozenset(rel)
            if key in seen:
                continue
            seen.add(key)
            cats.append(from_poset(range(n), lambda a, b, r=rel: a == b or (a, b) in r,
                                   name=f"poset{n}:{sorted(rel)}"))
    # free categories on small dags, parallel edges allowed
    pairs = [(0, 1), (0, 2), (1, 2)]
    for mult in itertools.product(range(3), repeat=3):
        edges = [(f"e{d}{c}{k}", d, c) for (d, c), m in zip(pairs, mult) for k in range(m)]
        cats.append(free_category(range(3), edges, name=f"free3:{mult}"))
    cats.append(free_category(range(6), [(f"e{i}", i, i + 1) for i in range(5)], name="chain6"))
    cats.append(free_category(range(5), [("a", 0, 1), ("b", 0, 2), ("c", 1, 3), ("d", 2, 3), ("e", 0, 4)],
                              name="diamond+"))
    # an idempotent and a two-element group on one object
    cats.append(FiniteCategory(["*"], [{"id": "e", "dom": "*", "cod": "*"}], [["e", "e", "e"]], name="idem"))
    cats.append(FiniteCategory(["*"], [{"id": "s", "dom": "*", "cod": "*"}], [["s", "s", "1_*"]], name="z2"))
    # right-zero monoid {1, a, b} (x o y == y, shipped as wap_not_cap.json) under a sink
    rz = [[g, f, f] for g in "ab" for f in "ab"]
    cats.append(FiniteCategory(
        ["*", "x"],
        [{"id": a, "dom": "*", "cod": "*"} for a in "ab"]
        + [{"id": c, "dom": "*", "cod": "x"} for c in ("c", "ca", "cb")],
        rz + [["c", "a", "ca"], ["c", "b", "cb"]]
        + [[h, f, "c" + f] for h in ("ca", "cb") for f in "ab"],
        name="rzero+x"))
    for name in ("vshape.json", "wap_not_ap.json", "wap_not_cap.json", "point.json"):
        cats.append(load_abstract_category(data_path(name)))
    return cats


@pytest.fixture(scope="session")
def corpus():
    return finite_corpus()


@pytest.fixture(scope="session")
def graphs():
    return GraphCategory()

import itertools

import pytest

from fraisse.abstract import load_abstract_category
from fraisse.amalgamation import ap_at, has_cap, has_wap
from fraisse.core import Arrow, Sequence, constant_sequence
from fraisse.errors import UnknownInstance
from fraisse.instances.builtin import builtin_category, data_path, extension_axiom_check, projective_cover_check
from fraisse.instances.graphs import Graph, complete_graph, free_amalgam, path_graph
from fraisse.instances.orders import LinOrder
from fraisse.instances.subcats import complete_graphs, even_graphs
from fraisse.instances.surj import FinSet, fiber_product, surjections


def _all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield Graph(n, frozenset(p for p, b in zip(pairs, bits) if b))


def _iso_brute(g, h):
    return g.n == h.n and any(g.relabel(perm).edges == h.edges for perm in itertools.permutations(range(g.n)))


def test_canonical_ids_match_brute_force_isomorphism():
    G = builtin_category("graphs")
    for n in range(1, 5):
        gs = list(_all_graphs(n))
        for g, h in itertools.combinations(gs, 2):
            assert (G.object_id(g) == G.object_id(h)) == _iso_brute(g, h)


def test_graph_enumeration_order():
    G = builtin_category("builtin:graphs")
    assert G.enumerate_objects(3) == [Graph(1), Graph(2), Graph(2, {(0, 1)})]
    # iso types on 4 vertices
    assert len([g for g in G.objects(4) if g.n == 4]) == 11


def test_linord_hom_count():
    L = builtin_category("linord")
    assert len(L.hom(LinOrder(2), LinOrder(3))) == 3


def test_surjection_count_by_brute_force():
    S = builtin_category("surj")
    brute = [m for m in itertools.product(range(2), repeat=3) if set(m) == {0, 1}]
    assert len(brute) == 2 ** 3 - 2 == 6
    assert [f.payload for f in S.hom(FinSet(2), FinSet(3))] == brute
    assert list(surjections(3, 2)) == brute


def test_surj_fiber_product_amalgams_exhaustive():
    S = builtin_category("surj")
    for z, x, y in itertools.product(range(1, 4), repeat=3):
        for p in S.hom(FinSet(z), FinSet(x)):
            for q in S.hom(FinSet(z), FinSet(y)):
                f2, g2 = fiber_product(p, q)
                assert S.is_arrow(f2) and S.is_arrow(g2)
                assert S.compose(f2, p) == S.compose(g2, q)


def test_unknown_instance():
    with pytest.raises(UnknownInstance):
        builtin_category("builtin:nope")


def test_free_amalgam_examples():
    G = builtin_category("graphs")
    k1 = G.identity(Graph(1))
    f2, g2 = free_amalgam(k1, k1)
    assert f2.cod == Graph(1)
    # K_1 into two different 2-vertex graphs
    p = Arrow(Graph(1), Graph(2), (0,))
    q = Arrow(Graph(1), Graph(2, {(0, 1)}), (0,))
    f2, g2 = free_amalgam(p, q)
    assert f2.cod == Graph(3, {(0, 2)})
    # K_2 into two triangles
    tri = complete_graph(3)
    e = Arrow(complete_graph(2), tri, (0, 1))
    f2, _ = free_amalgam(e, e)
    assert f2.cod.n == 4 and len(f2.cod.edges) == 5


def test_extension_axiom_examples():
    assert not extension_axiom_check(Graph(1), 1)["ok"]
    rep = extension_axiom_check(complete_graph(5), 2)
    assert not rep["ok"]
    assert all(f["non_adjacent"] for f in rep["failures"])
    # the 5-cycle: adjacent vertices share no neighbour
    c5 = Graph(5, {(i, (i + 1) % 5) for i in range(5)})
    assert extension_axiom_check(c5, 1)["ok"]
    assert {"adjacent": [0, 1], "non_adjacent": []} in extension_axiom_check(c5, 2)["failures"]


def test_projective_cover_examples():
    S = builtin_category("surj")
    assert projective_cover_check(constant_sequence(S, FinSet(1), 3), 2)["missing"] == [2]
    two = Sequence(S, [FinSet(1), FinSet(2)], [Arrow(FinSet(1), FinSet(2), (0, 0))])
    rep = projective_cover_check(two, 3)
    assert sorted(rep["witnesses"]) == [1, 2] and rep["missing"] == [3]


def test_subcategories():
    even = even_graphs()
    assert even.contains(Graph(2)) and not even.contains(Graph(3))
    assert all(f.cod.n == f.dom.n + 2 for f in even.extensions(Graph(2)))
    K = complete_graphs()
    assert K.objects(3) == [complete_graph(n) for n in (1, 2, 3)]
    assert not K.contains(path_graph(3))


def test_words_fail_wap():
    W = builtin_category("words")
    assert ap_at(W, 0, 2).failed
    v = has_wap(W, 2)
    assert not v.ok


def test_shipped_assets():
    wna = load_abstract_category(data_path("wap_not_ap.json"))
    assert has_wap(wna).ok and ap_at(wna, "z").failed
    wnc = load_abstract_category(data_path("wap_not_cap.json"))
    assert has_wap(wnc).ok and has_cap(wnc).failed

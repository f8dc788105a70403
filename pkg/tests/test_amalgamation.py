import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fraisse.abstract import load_abstract_category
from fraisse.amalgamation import ap_at, check_subcategory, find_amalgam, has_cap, has_wap, is_amalgamable
from fraisse.errors import NotASubcategory
from fraisse.instances.builtin import data_path
from fraisse.instances.graphs import Graph, GraphCategory, embeddings, free_amalgam
from fraisse.instances.orders import LinOrder, LinOrderCategory
from fraisse.instances.subcats import Subcategory, even_graphs, full_subcategory
from fraisse.verdict import Status

G = GraphCategory()


@pytest.fixture
def vshape():
    return load_abstract_category(data_path("vshape.json"))


def test_vshape_fails_ap_at_z(vshape):
    v = ap_at(vshape, "z")
    assert v.status is Status.FAILS and v.complete
    assert {v.counterexample["f"].payload, v.counterexample["g"].payload} == {"f", "g"}


def test_vshape_identity_not_amalgamable(vshape):
    assert is_amalgamable(vshape, vshape.identity("z")).failed
    assert is_amalgamable(vshape, vshape.arrow("f")).ok


def test_vshape_has_wap_through_leg(vshape):
    # only identities leave x, so z -> x is amalgamable
    v = has_wap(vshape)
    assert v.ok
    assert v.certificate["witnesses"][vshape.object_id("z")].payload == "f"


def test_trivial_pair_amalgamates(vshape):
    i = vshape.identity("z")
    assert find_amalgam(vshape, i, i)[:2] == (i, i)


def test_graphs_wap_and_cap():
    assert has_wap(G, 4).ok
    cap = has_cap(G, 3)
    assert cap.ok
    assert all(e == G.identity(e.dom) for e in cap.certificate["witnesses"].values())


def test_linear_orders_wap_with_identities():
    L = LinOrderCategory()
    v = has_wap(L, 4)
    assert v.ok
    assert all(e == L.identity(e.dom) for e in v.certificate["witnesses"].values())


def _shuffles_brute(p, q):
    """Every amalgam of two order embeddings on at most |x|+|y|-|z| points."""
    x, y = p.cod, q.cod
    for n in range(max(x.n, y.n), x.n + y.n - p.dom.n + 1):
        for fm in itertools.combinations(range(n), x.n):
            for gm in itertools.combinations(range(n), y.n):
                if all(fm[p.payload[i]] == gm[q.payload[i]] for i in range(p.dom.n)):
                    return fm, gm
    return None


def test_linear_order_amalgams_exist_by_brute_force():
    L = LinOrderCategory()
    for zn in (1, 2):
        for xn in range(zn, 4):
            for yn in range(zn, 4):
                for p in L.hom(LinOrder(zn), LinOrder(xn)):
                    for q in L.hom(LinOrder(zn), LinOrder(yn)):
                        assert _shuffles_brute(p, q) is not None
                        f2, g2, _ = find_amalgam(L, p, q)
                        assert L.compose(f2, p) == L.compose(g2, q)


@st.composite
def graph_spans(draw):
    def graph(n):
        pairs = list(itertools.combinations(range(n), 2))
        return Graph(n, frozenset(e for e in pairs if draw(st.booleans())))
    z = graph(draw(st.integers(1, 2)))
    spans = []
    for _ in range(2):
        for _ in range(20):
            x = graph(draw(st.integers(z.n, 4)))
            maps = list(embeddings(z, x))
            if maps:
                spans.append(G.make_arrow(z, x, draw(st.sampled_from(maps))))
                break
        else:
            spans.append(G.identity(z))
    return spans


@given(graph_spans())
@settings(max_examples=80, deadline=None)
def test_free_amalgam_commutes(span):
    p, q = span
    f2, g2 = free_amalgam(p, q)
    assert G.is_arrow(f2) and G.is_arrow(g2)
    assert G.compose(f2, p) == G.compose(g2, q)
    assert f2.cod.n == p.cod.n + q.cod.n - p.dom.n


def test_identity_ap_equivalence(corpus):
    for cat in corpus:
        for z in cat.objects():
            assert ap_at(cat, z).status is is_amalgamable(cat, cat.identity(z)).status


def test_amalgamability_closure(corpus):
    for cat in corpus[::5]:
        for e in cat.arrows:
            if not is_amalgamable(cat, e).ok:
                continue
            for i in cat.out_arrows(e.cod):
                assert is_amalgamable(cat, cat.compose(i, e)).ok
            for j in cat.arrows:
                if j.cod == e.dom:
                    assert is_amalgamable(cat, cat.compose(e, j)).ok


def test_even_graphs_cofinal():
    v = check_subcategory(G, even_graphs(), "cofinal", 3)
    assert v.ok
    for f in v.certificate["C"].values():
        assert f.cod.n % 2 == 0


def test_single_object_not_cofinal():
    sub = Subcategory(G, lambda g: g == Graph(1), name="point", object_list=[Graph(1)])
    v = check_subcategory(G, sub, "cofinal", 3)
    assert v.failed
    assert v.counterexample["condition"] == "C"
    assert v.counterexample["object"].n == 2


def test_full_cofinal_is_dominating(corpus):
    cat = next(c for c in corpus if c.name == "vshape")
    sub = full_subcategory(cat, lambda a: a in "xy", object_list=["x", "y"])
    v = check_subcategory(cat, sub, "dominating")
    assert v.ok
    assert "(D) follows from (C) for a full subcategory" in v.notes


def test_not_a_subcategory():
    # drops every arrow, identities included
    sub = Subcategory(G, lambda g: True, arrow_predicate=lambda f: False)
    with pytest.raises(NotASubcategory):
        check_subcategory(G, sub, "cofinal", 2)

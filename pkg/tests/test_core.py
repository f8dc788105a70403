import pytest
from hypothesis import given, settings, strategies as st

from fraisse.core import Arrow, Sequence, SequenceArrow, constant_sequence, verify_seq_arrow
from fraisse.errors import DomainMismatch, OutOfRange
from fraisse.instances.graphs import Graph, GraphCategory, complete_graph, path_graph
from fraisse.instances.orders import LinOrderCategory, omega_sequence

G = GraphCategory()


@st.composite
def graphs(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph(n, frozenset(p for p in pairs if draw(st.booleans())))


@st.composite
def chains(draw):
    """A short chain of random one-point extensions in graphs."""
    g = draw(graphs(3))
    seq = Sequence(G, [g])
    for _ in range(draw(st.integers(1, 4))):
        a = seq[-1]
        seq.append(G.extension_at(a, draw(st.integers(0, G.extension_count(a) - 1))))
    return seq


def test_compose_requires_matching_ends():
    f = G.identity(Graph(1))
    g = G.identity(Graph(2))
    with pytest.raises(DomainMismatch):
        G.compose(g, f)


def test_arrows_compare_structurally():
    a = Arrow(Graph(1), Graph(2), (0,))
    b = Arrow(Graph(1), Graph(2), (0,))
    assert a == b and hash(a) == hash(b)
    assert a != Arrow(Graph(1), Graph(2), (1,))


@given(graphs(), graphs())
@settings(max_examples=40, deadline=None)
def test_identity_laws(x, y):
    for f in G.hom(x, y)[:4]:
        assert G.compose(f, G.identity(x)) == f
        assert G.compose(G.identity(y), f) == f


@given(chains())
@settings(max_examples=40, deadline=None)
def test_bonding_is_functorial(seq):
    n = len(seq)
    for i in range(n):
        assert seq.bonding(i, i) == G.identity(seq[i])
        for j in range(i, n):
            for k in range(j, n):
                assert G.compose(seq.bonding(j, k), seq.bonding(i, j)) == seq.bonding(i, k)


@given(chains())
@settings(max_examples=30, deadline=None)
def test_subsequence_keeps_bonds(seq):
    idx = list(range(0, len(seq), 2))
    sub = seq.subsequence(idx)
    for a in range(len(idx)):
        for b in range(a, len(idx)):
            assert sub.bonding(a, b) == seq.bonding(idx[a], idx[b])


def test_witness_finds_least_stage():
    seq = Sequence(G, [complete_graph(1)])
    for n in range(1, 4):
        seq.append(Arrow(seq[-1], complete_graph(n + 1), tuple(range(n))))
    p = seq.bonding(0, 2)
    k, g = seq.witness(0, p)
    assert k == 2 and G.compose(g, p) == seq.bonding(0, 2)


def test_witness_rejects_wrong_domain():
    seq = Sequence(G, [Graph(1), Graph(2)], [Arrow(Graph(1), Graph(2), (0,))])
    with pytest.raises(DomainMismatch):
        seq.witness(0, G.identity(Graph(2)))


def test_constant_sequence():
    seq = constant_sequence(G, path_graph(3), 5)
    assert len(seq) == 5
    assert seq.bonding(0, 4) == G.identity(path_graph(3))


def test_sequence_arrow_naturality():
    L = LinOrderCategory()
    u = omega_sequence(6)
    x = u.subsequence([0, 2, 4])
    e = SequenceArrow([0, 2, 4], [L.identity(u[i]) for i in (0, 2, 4)])
    assert verify_seq_arrow(x, u, e, 3).ok
    # shifting the middle component breaks the square at n = 0
    shifted = Arrow(u[2], u[3], (1, 2, 3))
    bad = SequenceArrow([0, 3, 4], [L.identity(u[0]), shifted, u.bonding(3, 4)])
    v = verify_seq_arrow(x, u, bad, 3)
    assert v.failed and v.counterexample == {"index": 0, "reason": "naturality square"}
    with pytest.raises(OutOfRange):
        verify_seq_arrow(x, u, e, 4)

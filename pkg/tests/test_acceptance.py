"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` (the lines are printed past
pytest's capture either way) or ``python3 tests/test_acceptance.py``.
"""

import contextlib
import itertools
import json
import sys
import time

import pytest

from fraisse.amalgamation import ap_at, check_subcategory, has_cap, has_wap, is_amalgamable
from fraisse.cli import main as cli_main
from fraisse.engine.builder import build_weak_fraisse
from fraisse.engine.colimit import (_analyse, _sources, check_generic, check_weak_homogeneity, colimit_approx,
                                    find_spoil_certificate)
from fraisse.engine.iso import back_and_forth, normalize
from fraisse.engine.verify import verify_wf
from fraisse.engine.views import restrict_to
from fraisse.game.classify import classify_play
from fraisse.game.combinators import intersect_odd_strategies, restriction_replays, transfer_odd_strategy
from fraisse.game.play import run_game
from fraisse.game.strategies import (CliquesEve, OddGeneric, PathsEve, RandomEve, RandomOdd, RealizeCliqueOdd,
                                     _max_clique, eve_spoiler_strategy)
from fraisse.instances.builtin import builtin_category, extension_axiom_check, projective_cover_check
from fraisse.instances.graphs import Graph, GraphCategory, complete_sequence, free_amalgam
from fraisse.instances.orders import LinOrderCategory, omega_sequence
from fraisse.instances.subcats import complete_graphs, even_graphs, full_subcategory
from fraisse.instances.surj import FinSet
from fraisse.verdict import Status

G = GraphCategory()
L = LinOrderCategory()


@contextlib.contextmanager
def criterion(n, title, capsys=None):
    start = time.time()
    ok = False
    try:
        yield
        ok = True
    finally:
        line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {title} ({time.time() - start:.1f}s)"
        if capsys is not None:
            with capsys.disabled():
                print("\n" + line)
        else:
            print(line)


# -- 1. graph amalgams -------------------------------------------------------

def _embeds(a, b, m):
    if len(set(m)) != len(m):
        return False
    return all((tuple(sorted((m[i], m[j]))) in b.edges) == ((i, j) in a.edges)
               for i, j in itertools.combinations(range(a.n), 2))


def _brute_amalgams(p, q):
    """All amalgams on the layout x + (y outside q(z)), one per choice of cross edges."""
    x, y, z = p.cod, q.cod, p.dom
    back = {q.payload[t]: p.payload[t] for t in range(z.n)}
    fresh = [v for v in range(y.n) if v not in back]
    g_map = tuple(back[v] if v in back else x.n + fresh.index(v) for v in range(y.n))
    n = x.n + len(fresh)
    base = set(x.edges) | {tuple(sorted((g_map[i], g_map[j]))) for i, j in y.edges}
    outside = [v for v in range(x.n) if v not in p.payload]
    cross = [(a, x.n + k) for a in outside for k in range(len(fresh))]
    found = []
    for bits in itertools.product((0, 1), repeat=len(cross)):
        w = Graph(n, frozenset(base | {e for e, b in zip(cross, bits) if b}))
        f_map = tuple(range(x.n))
        if (_embeds(x, w, f_map) and _embeds(y, w, g_map)
                and all(f_map[p.payload[t]] == g_map[q.payload[t]] for t in range(z.n))):
            found.append((w, f_map, g_map))
    return found


def test_criterion_01_graph_ap_oracle(capsys):
    with criterion(1, "free amalgam agrees with exhaustive search, |z| <= 2, |x|,|y| <= 4", capsys):
        pairs = disagree = 0
        for z in G.objects(2):
            targets = [x for x in G.objects(4) if x.n >= z.n]
            for x, y in itertools.product(targets, repeat=2):
                for p in G.hom(z, x):
                    for q in G.hom(z, y):
                        pairs += 1
                        brute = _brute_amalgams(p, q)
                        f2, g2 = free_amalgam(p, q)
                        fewest = min(brute, key=lambda c: len(c[0].edges)) if brute else None
                        ok = (fewest is not None
                              and sum(len(c[0].edges) == len(fewest[0].edges) for c in brute) == 1
                              and (f2.cod, f2.payload, g2.payload) == fewest
                              and f2.cod.n <= x.n + y.n - z.n)
                        disagree += not ok
        assert pairs > 1000 and disagree == 0


# -- 2-3. builder ------------------------------------------------------------

def test_criterion_02_builder_soundness(capsys):
    with criterion(2, "builder output passes verify_wf(4, 3) and the 2-extension property", capsys):
        u = build_weak_fraisse(G, 40, seed=0)
        rep = verify_wf(u, 4, 3)
        assert rep.ok and rep.replay(u)
        V = colimit_approx(u)
        ext = extension_axiom_check(V, 2, window=V.window_vertices(6))
        assert ext["ok"] and not ext["failures"] and ext["checked"] > 0


def test_criterion_03_uniqueness(capsys):
    with criterion(3, "seeds 1 and 2 are isomorphic to depth 4 after normalize", capsys):
        u = normalize(build_weak_fraisse(G, 20, seed=1))
        v = normalize(build_weak_fraisse(G, 20, seed=2))
        f = G.first_arrow(u[1], v[1])
        iso = back_and_forth(u, v, f, 4, grow=True)
        assert iso.verify(u, v).ok


# -- 4-8. games --------------------------------------------------------------

def _eves(step=1, cat=G):
    return [("random0", RandomEve(cat), 0), ("random1", RandomEve(cat), 1), ("random2", RandomEve(cat), 2),
            ("cliques", CliquesEve(step), 0), ("paths", PathsEve(step), 0)]


def test_criterion_04_odd_wins(capsys):
    with criterion(4, "Odd's generic strategy wins 16-round plays against five Eves", capsys):
        for name, eve, seed in _eves():
            u = build_weak_fraisse(G, 20, seed=0)
            play = run_game(G, eve, OddGeneric(u), 16, seed=seed)
            assert classify_play(play, u, 4).status is Status.HOLDS, name


def test_criterion_05_eve_spoils(capsys):
    with criterion(5, "Eve spoils the complete-graph and omega targets; (dagger) at bound 3", capsys):
        K = complete_graphs()
        Vc = colimit_approx(complete_sequence(8))
        cert = find_spoil_certificate(G, Vc, 3, arrows_only=True)
        for seed in range(100):
            eve = eve_spoiler_strategy(G, Vc, Vc.push((cert.stage, cert.e)))
            play = run_game(G, eve, RandomOdd(G), 2, seed=seed)
            assert any(len(g.edges) < g.n * (g.n - 1) // 2 for g in play.objects[:3])
            v = classify_play(play, complete_sequence(8, K), 4)
            assert v.failed and v.counterexample["stage"] <= 2

        Vw = colimit_approx(omega_sequence(12))
        cert = find_spoil_certificate(L, Vw, 3, arrows_only=True)
        assert cert.e.dom.n == 1 and cert.e.payload == (0,)
        for seed in range(3):
            eve = eve_spoiler_strategy(L, Vw, Vw.push((cert.stage, cert.e)))
            play = run_game(L, eve, RandomOdd(L), 11, seed=seed)
            for k in range(11):
                # the designated point's image in a_{2k} has at least k points below it
                assert play.bonding(0, 2 * k).payload[0] >= k

        for cat, V in ((G, Vc), (L, Vw)):
            spoilable = 0
            for a in _sources(cat, 3):
                for tag in V.arrows_from(cat, a):
                    e = V.push(tag)
                    if _analyse(cat, V, e, 3)[0] != "spoil":
                        continue
                    spoilable += 1
                    eve = eve_spoiler_strategy(cat, V, e)
                    run_game(cat, eve, RandomOdd(cat), 8, seed=spoilable)
                    # one ledger row per Eve move after the opening
                    assert [r["factorizations"] for r in eve.ledger] == [0] * 7
            assert spoilable > 0


def test_criterion_06_determinacy(capsys):
    with criterion(6, "exactly one of spoil certificate / generic holds per target", capsys):
        targets = {
            "generic graph": (G, colimit_approx(build_weak_fraisse(G, 40, seed=0)), False),
            "complete graphs": (G, colimit_approx(complete_sequence(8)), True),
            "omega": (L, colimit_approx(omega_sequence(12)), True),
            "dense order": (L, colimit_approx(build_weak_fraisse(L, 30, seed=0)), False),
        }
        for name, (cat, V, spoils) in targets.items():
            cert = find_spoil_certificate(cat, V, 3)
            generic = check_generic(cat, V, 3).status is Status.HOLDS
            assert (cert is not None) != generic, name
            assert (cert is not None) == spoils, name


def test_criterion_07_intersection(capsys):
    with criterion(7, "intersected realize-K_n strategies build K_4; restrictions replay", capsys):
        odd = intersect_odd_strategies([RealizeCliqueOdd(n) for n in range(1, 6)])
        play = run_game(G, RandomEve(G), odd, 64, seed=0)
        assert len(_max_clique(play.objects[-1])) >= 4
        assert all(restriction_replays(odd, play, k) for k in range(5))


def test_criterion_08_transfer(capsys):
    with criterion(8, "Odd's generic strategy transferred to even graphs still wins", capsys):
        ev = even_graphs()
        assert check_subcategory(G, ev, "dominating", 3).ok
        for name, eve, seed in _eves(step=2, cat=ev):
            u = restrict_to(build_weak_fraisse(G, 20, seed=0), ev)
            odd = transfer_odd_strategy(G, ev, OddGeneric(u), "to_sub")
            play = run_game(ev, eve, odd, 16, seed=seed)
            assert all(ev.contains(g) for g in play.objects)
            assert classify_play(play, u, 4).status is Status.HOLDS, name


# -- 9. finite categories ----------------------------------------------------

def test_criterion_09_finite_equivalences(capsys, corpus):
    with criterion(9, "AP/CAP/WAP equivalences on finite categories", capsys):
        discrepancies = cap_fails = 0
        for cat in corpus:
            objs = cat.objects()
            assert len(objs) <= 6
            for z in objs:
                discrepancies += ap_at(cat, z).status is not is_amalgamable(cat, cat.identity(z)).status
            wap = has_wap(cat).status
            dominated_ap = False
            for r in range(1, len(objs) + 1):
                for S in itertools.combinations(objs, r):
                    sub = full_subcategory(cat, lambda a, S=S: a in S, object_list=list(S))
                    if not check_subcategory(cat, sub, "cofinal").ok:
                        continue
                    discrepancies += has_wap(sub).status is not wap
                    if not dominated_ap and check_subcategory(cat, sub, "dominating").ok:
                        dominated_ap = all(ap_at(sub, z).ok for z in S)
            cap = has_cap(cat).ok
            cap_fails += not cap
            discrepancies += cap != dominated_ap
        assert discrepancies == 0 and cap_fails > 0


# -- 10-11 -------------------------------------------------------------------

def test_criterion_10_weak_homogeneity(capsys):
    with criterion(10, "weak homogeneity: generic and complete hold, omega fails at its minimum", capsys):
        assert check_weak_homogeneity(G, colimit_approx(build_weak_fraisse(G, 40, seed=0)), 3).ok
        assert check_weak_homogeneity(G, colimit_approx(complete_sequence(8)), 3).ok
        v = check_weak_homogeneity(L, colimit_approx(omega_sequence(12)), 3)
        assert v.failed
        n, e = v.counterexample["e"]
        assert e.dom.n == 1 and e.payload == (0,)


def test_criterion_11_projective(capsys):
    with criterion(11, "surjections 3 -> 2 number 6; builder covers set sizes up to 4", capsys):
        S = builtin_category("surj")
        brute = [m for m in itertools.product(range(2), repeat=3) if set(m) == {0, 1}]
        assert len(brute) == 6 == len(S.hom(FinSet(2), FinSet(3)))
        seq = build_weak_fraisse(S, 12, seed=0)
        rep = projective_cover_check(seq, 4)
        assert rep["ok"] and sorted(rep["witnesses"]) == [1, 2, 3, 4]
        for size, w in rep["witnesses"].items():
            stage = seq[w["stage"]]
            assert len(w["surjection"]) == stage.n and set(w["surjection"]) == set(range(size))


# -- 12. CLI -----------------------------------------------------------------

def test_criterion_12_reproducible_reports(capsys, tmp_path):
    with criterion(12, "every CLI command reruns to a hash-identical report", capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        done = tmp_path / "done.json"
        cli_main(["build", "--category", "builtin:graphs", "--steps", "20", "--out", str(a), "--report", str(done)])
        cli_main(["build", "--category", "builtin:graphs", "--steps", "20", "--seed", "1", "--out", str(b),
                  "--report", str(done)])
        spoil = tmp_path / "k.json"
        cli_main(["build", "--category", "builtin:complete", "--steps", "6", "--out", str(spoil), "--report", str(done)])
        commands = [
            ["check", "--category", "builtin:graphs", "--prop", "wap", "--bound", "3"],
            ["check", "--category", "file:vshape.json", "--prop", "ap", "--object", "z"],
            ["build", "--category", "builtin:linord", "--steps", "10"],
            ["verify", "--seq", str(a), "--depth", "3"],
            ["iso", "--a", str(a), "--b", str(b), "--depth", "3"],
            ["game", "--category", "builtin:graphs", "--eve", "random", "--odd", f"generic:{a}", "--rounds", "12"],
            ["game", "--category", "builtin:graphs", "--eve", f"spoiler:{spoil}", "--rounds", "4"],
            ["ubiquity", "--category", "builtin:graphs", "--depth", "3"],
        ]
        for argv in commands:
            hashes = []
            for run in range(2):
                out = tmp_path / f"r{run}.json"
                cli_main([*argv, "--report", str(out)])
                rep = json.loads(out.read_text())
                assert "error" not in rep, argv
                hashes.append(rep["report_hash"])
            assert hashes[0] == hashes[1], argv


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

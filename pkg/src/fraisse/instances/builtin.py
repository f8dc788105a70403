"""Named categories and instance-level checks."""

from __future__ import annotations

import itertools
from importlib import resources
from pathlib import Path

from ..abstract import load_abstract_category
from ..errors import UnknownInstance
from .graphs import Graph, GraphCategory
from .orders import LinOrderCategory
from .subcats import complete_graphs, even_graphs
from .surj import SurjCategory
from .words import WordCategory

_BUILTINS = {
    "graphs": GraphCategory,
    "linord": LinOrderCategory,
    "surj": SurjCategory,
    "words": WordCategory,
    "complete": complete_graphs,
    "even": even_graphs,
}


def data_path(name: str) -> Path:
    return Path(str(resources.files("fraisse") / "data" / name))


def builtin_category(ref: str):
    """Resolve ``graphs``, ``builtin:graphs`` or ``file:<path>`` (shipped assets by bare file name)."""
    if ref.startswith("file:"):
        path = Path(ref[5:])
        if not path.exists() and data_path(path.name).exists():
            path = data_path(path.name)
        if not path.exists():
            raise UnknownInstance(f"no such category file: {ref[5:]}")
        cat = load_abstract_category(path)
        cat.ref = ref
        return cat
    name = ref[8:] if ref.startswith("builtin:") else ref
    if name not in _BUILTINS:
        raise UnknownInstance(f"unknown category {ref!r}; known: {sorted(_BUILTINS)}")
    return _BUILTINS[name]()


def _final_graph(g):
    # accept a Graph or anything exposing .structure and .window_vertices()
    if isinstance(g, Graph):
        return g, list(range(g.n))
    return g.structure, g.window_vertices()


def extension_axiom_check(g, n: int, window=None) -> dict:
    """Every disjoint ``U, V`` inside the window with ``|U|+|V| <= n`` has a witness.

    A witness is a vertex outside ``U`` and ``V`` adjacent to all of ``U`` and to
    none of ``V``.
    """
    graph, default_window = _final_graph(g)
    window = list(default_window if window is None else window)
    failures, checked = [], 0
    for size in range(1, n + 1):
        for subset in itertools.combinations(window, size):
            for mask in range(1 << size):
                u = [v for i, v in enumerate(subset) if mask >> i & 1]
                w = [v for i, v in enumerate(subset) if not mask >> i & 1]
                checked += 1
                ok = any(
                    z not in subset
                    and all(graph.adjacent(z, a) for a in u)
                    and not any(graph.adjacent(z, b) for b in w)
                    for z in range(graph.n)
                )
                if not ok:
                    failures.append({"adjacent": u, "non_adjacent": w})
    return {"n": n, "window": window, "checked": checked, "failures": failures, "ok": not failures}


def projective_cover_check(seq, n: int) -> dict:
    """Each set size up to ``n`` is covered by some stage (stage maps onto it)."""
    cat = seq.category
    witnesses, missing = {}, []
    for size in range(1, n + 1):
        for k, stage in enumerate(seq.objects):
            if stage.n >= size:
                # stage -> size, folding the tail onto the last point
                onto = tuple(min(i, size - 1) for i in range(stage.n))
                arrow = cat.make_arrow(cat.object_from_payload({"n": size}), stage, onto)
                if not cat.is_arrow(arrow):
                    continue
                witnesses[size] = {"stage": k, "surjection": list(onto)}
                break
        else:
            missing.append(size)
    sizes = [x.n for x in seq.objects]
    monotone = all(a <= b for a, b in zip(sizes, sizes[1:]))
    growing = len(sizes) > 1 and sizes[-1] > sizes[0]
    return {"n": n, "witnesses": witnesses, "missing": missing, "non_decreasing": monotone,
            "growing": growing, "ok": not missing and monotone}

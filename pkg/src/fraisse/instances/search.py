"""Backtracking search for injective maps under pairwise constraints."""

from __future__ import annotations


def extend_injective(n: int, m: int, ok, partial: dict):
    """Yield injective maps ``range(n) -> range(m)`` extending ``partial``.

    ``ok(v, image, assigned)`` decides whether ``v -> image`` is compatible
    with the current assignment. Maps are produced in lexicographic order of
    their image tuples.
    """
    if len(set(partial.values())) != len(partial):
        return
    assigned = {}
    for v in sorted(partial):
        if not ok(v, partial[v], assigned):
            return
        assigned[v] = partial[v]
    free = [v for v in range(n) if v not in partial]
    used = set(assigned.values())

    def rec(i):
        if i == len(free):
            yield tuple(assigned[v] for v in range(n))
            return
        v = free[i]
        for image in range(m):
            if image in used or not ok(v, image, assigned):
                continue
            assigned[v] = image
            used.add(image)
            yield from rec(i + 1)
            used.discard(image)
            del assigned[v]

    yield from rec(0)

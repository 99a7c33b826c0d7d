"""Small edge-coloured multigraphs: brute-force canonical labelling and
orderly generation by adding one edge at a time."""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

Edge = tuple[str, int, int]  # (colour, u, v), undirected
Graph = tuple[int, tuple[Edge, ...]]  # (vertex count, edges)


def _vertex_invariants(n: int, edges: Sequence[Edge]) -> list[tuple]:
    inc: list[list[str]] = [[] for _ in range(n)]
    for c, u, v in edges:
        inc[u].append(c)
        inc[v].append(c)
    first = [tuple(sorted(x)) for x in inc]
    # one refinement round: colours of incident edges paired with the far end's class
    nbr: list[list[tuple]] = [[] for _ in range(n)]
    for c, u, v in edges:
        nbr[u].append((c, first[v]))
        nbr[v].append((c, first[u]))
    return [(first[i], tuple(sorted(nbr[i]))) for i in range(n)]


def canonical_form(n: int, edges: Sequence[Edge]) -> tuple:
    """Isomorphism-invariant key of a coloured multigraph (exhaustive within invariant cells)."""
    inv = _vertex_invariants(n, edges)
    classes: dict[tuple, list[int]] = {}
    for v in range(n):
        classes.setdefault(inv[v], []).append(v)
    keys = sorted(classes)
    cells = [classes[k] for k in keys]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        label = {}
        nxt = 0
        for cell in choice:
            for v in cell:
                label[v] = nxt
                nxt += 1
        form = tuple(sorted((c, min(label[u], label[v]), max(label[u], label[v])) for c, u, v in edges))
        if best is None or form < best:
            best = form
    return (n, tuple(keys), best)


def add_edge_variants(g: Graph, colour: str, max_vertices: int) -> Iterator[Graph]:
    n, edges = g
    for u, v in itertools.combinations(range(n), 2):
        yield n, edges + ((colour, u, v),)
    if n + 1 <= max_vertices:
        for u in range(n):
            yield n + 1, edges + ((colour, u, n),)
    if n + 2 <= max_vertices:
        yield n + 2, edges + ((colour, n, n + 1),)


def grow(graphs: Iterable[Graph], colour: str, max_vertices: int) -> list[Graph]:
    """All non-isomorphic one-edge extensions, in deterministic order."""
    seen: dict[tuple, Graph] = {}
    for g in graphs:
        for h in add_edge_variants(g, colour, max_vertices):
            key = canonical_form(*h)
            if key not in seen:
                seen[key] = h
    return [seen[k] for k in sorted(seen)]


def is_connected(g: Graph) -> bool:
    n, edges = g
    if n == 0:
        return True
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, u, v in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(n)}) == 1


def colour_forest(g: Graph, colours: set[str]) -> bool:
    """True iff the edges of the given colours contain no circuit."""
    n, edges = g
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c, u, v in edges:
        if c in colours:
            a, b = find(u), find(v)
            if a == b:
                return False
            parent[a] = b
    return True

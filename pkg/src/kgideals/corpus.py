"""Seeded random generators for small valid k-graphs and dynamical systems."""

from __future__ import annotations

import random
from itertools import product

from .dynsys import DynSys, to_kgraph, validate_dynsys
from .kgraph import Edge, KGraph, validate_kgraph


def random_1graph(rng: random.Random, max_vertices: int = 4, max_edges: int = 6) -> KGraph:
    n = rng.randint(1, max_vertices)
    names = [f"v{t}" for t in range(n)]
    m = rng.randint(0, max_edges)
    edges = [Edge(f"e{t}", 1, rng.choice(names), rng.choice(names)) for t in range(m)]
    return KGraph(1, tuple(names), tuple(edges))


def _matrix(rng: random.Random, n: int, density: float) -> list[list[int]]:
    return [[1 if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]


def _mul(a, b):
    n = len(a)
    return [[sum(a[r][t] * b[t][c] for t in range(n)) for c in range(n)] for r in range(n)]


def random_2graph(rng: random.Random, max_vertices: int = 4, tries: int = 500) -> KGraph:
    """Commuting 0/1 adjacency matrices with a random factorisation bijection.

    ``A[r][s]`` counts edges with range ``r`` and source ``s``.  Falls back to
    the product of two random 1-graphs if no commuting pair turns up.
    """
    n = rng.randint(1, max_vertices)
    for _ in range(tries):
        density = rng.choice((0.2, 0.3, 0.45))
        A1, A2 = _matrix(rng, n, density), _matrix(rng, n, density)
        if _mul(A1, A2) == _mul(A2, A1):
            return _graph_from_matrices(rng, n, A1, A2)
    return product_graph([random_1graph(rng, 2, 3), random_1graph(rng, 2, 3)])


def _graph_from_matrices(rng, n, A1, A2) -> KGraph:
    names = [f"v{t}" for t in range(n)]
    edges = []
    by_color = {1: [], 2: []}
    for color, A in ((1, A1), (2, A2)):
        for r, s in product(range(n), repeat=2):
            if A[r][s]:
                eid = f"{'ef'[color - 1]}{r}{s}"
                edges.append(Edge(eid, color, names[r], names[s]))
                by_color[color].append((eid, r, s))
    squares = []
    for r, s in product(range(n), repeat=2):
        left = [(e, f) for e, er, es in by_color[1] if er == r
                for f, fr, fs in by_color[2] if fr == es and fs == s]
        right = [(f, e) for f, fr, fs in by_color[2] if fr == r
                 for e, er, es in by_color[1] if er == fs and es == s]
        rng.shuffle(right)
        for (e, f), (f2, e2) in zip(left, right):
            squares.append((e, f, f2, e2))
    return KGraph(2, tuple(names), tuple(edges), tuple(squares))


def product_graph(factors: list[KGraph]) -> KGraph:
    """Cartesian product of 1-graphs; factor ``t`` supplies color ``t + 1``."""
    k = len(factors)
    coords = list(product(*[g.vertices for g in factors]))
    name = ".".join
    edges = []
    for t, g in enumerate(factors):
        for point in coords:
            for e in g.edges:
                if point[t] != e.range:
                    continue
                src = point[:t] + (e.source,) + point[t + 1:]
                edges.append(Edge(f"{t + 1}{e.id}@{name(point)}", t + 1, name(point), name(src)))
    squares = []
    for i in range(k):
        for j in range(i + 1, k):
            for point in coords:
                for e in factors[i].edges:
                    if e.range != point[i]:
                        continue
                    for f in factors[j].edges:
                        # e at the corner point, then f after e's source
                        after_e = point[:i] + (e.source,) + point[i + 1:]
                        if f.range != after_e[j]:
                            continue
                        after_f = point[:j] + (f.source,) + point[j + 1:]
                        squares.append((
                            f"{i + 1}{e.id}@{name(point)}",
                            f"{j + 1}{f.id}@{name(after_e)}",
                            f"{j + 1}{f.id}@{name(point)}",
                            f"{i + 1}{e.id}@{name(after_f)}",
                        ))
    return KGraph(k, tuple(name(p) for p in coords), tuple(edges), tuple(squares))


def random_partial_map(rng: random.Random, n: int, defined: float = 0.8) -> list[int | None]:
    return [rng.randrange(n) if rng.random() < defined else None for _ in range(n)]


def _compose(a, b):
    """``a o b`` as partial maps."""
    return [None if b[v] is None else a[b[v]] for v in range(len(b))]


def random_dynsys(rng: random.Random, d: int, max_points: int = 4, tries: int = 200) -> DynSys:
    """Commuting partial maps: powers of one map, or a lucky random pair."""
    n = rng.randint(1, max_points)
    carrier = tuple(f"p{t}" for t in range(n))
    if rng.random() < 0.5:
        for _ in range(tries):
            maps = [random_partial_map(rng, n) for _ in range(d)]
            D = DynSys(d, carrier, maps)
            if validate_dynsys(D).ok:
                return D
    base = random_partial_map(rng, n)
    maps = []
    for _ in range(d):
        m = list(range(n))
        for _ in range(rng.randint(0, 3)):
            m = _compose(base, m)
        maps.append(m)
    return DynSys(d, carrier, maps)


def random_automorphic(rng: random.Random, d: int, max_points: int = 10) -> DynSys:
    """Commuting permutations built as powers of one random permutation."""
    n = rng.randint(1, max_points)
    carrier = tuple(f"p{t}" for t in range(n))
    base = list(range(n))
    rng.shuffle(base)
    maps = []
    for _ in range(d):
        m = list(range(n))
        for _ in range(rng.randint(0, n)):
            m = [base[x] for x in m]
        maps.append(m)
    return DynSys(d, carrier, maps)


def random_kgraph(rng: random.Random, k: int, max_vertices: int = 4) -> KGraph:
    """A valid k-graph from one of the generators suited to the rank."""
    if k == 1:
        return random_1graph(rng, max_vertices)
    if k == 2:
        pick = rng.random()
        if pick < 0.6:
            g = random_2graph(rng, max_vertices)
        elif pick < 0.8:
            g = to_kgraph(random_dynsys(rng, 2, max_points=max_vertices))
        else:
            g = product_graph([random_1graph(rng, 2, 3), random_1graph(rng, 2, 3)])
    else:
        g = to_kgraph(random_dynsys(rng, k, max_points=max_vertices))
    assert validate_kgraph(g).ok
    return g

"""Constructors for standard finite k-graphs used in examples and tests."""

from __future__ import annotations

import random
import string
from typing import Sequence, Tuple

from .degrees import Degree
from .kgraph import Edge, KGraph, KGraphError

_LOOP_NAMES = string.ascii_lowercase


def bouquet(n: int, vertex: str = "v") -> KGraph:
    """1-graph with a single vertex and n loops named a, b, c, ..."""
    if not 1 <= n <= 26:
        raise KGraphError("bouquet supports 1..26 loops")
    edges = [Edge(_LOOP_NAMES[i], 1, vertex, vertex) for i in range(n)]
    return KGraph(1, [vertex], edges)


def cycle_graph(n: int) -> KGraph:
    """1-graph directed cycle on n vertices."""
    if n < 1:
        raise KGraphError("cycle needs at least one vertex")
    vs = ["v%d" % i for i in range(n)]
    edges = [Edge("e%d" % i, 1, vs[i], vs[(i + 1) % n]) for i in range(n)]
    return KGraph(1, vs, edges)


def single_edge() -> KGraph:
    """1-graph with one edge e, r(e) = v and s(e) = w."""
    return KGraph(1, ["v", "w"], [Edge("e", 1, "w", "v")])


def chain(n: int) -> KGraph:
    """1-graph line v0 <- v1 <- ... <- v_{n-1} (no cycles)."""
    vs = ["v%d" % i for i in range(n)]
    edges = [Edge("e%d" % i, 1, vs[i], vs[i - 1]) for i in range(1, n)]
    return KGraph(1, vs, edges)


def two_loops_plus_exit() -> KGraph:
    """Two loops a, b at v plus an edge c from v into a second vertex w."""
    edges = [
        Edge("a", 1, "v", "v"),
        Edge("b", 1, "v", "v"),
        Edge("c", 1, "v", "w"),
    ]
    return KGraph(1, ["v", "w"], edges)


def loop_with_exit() -> KGraph:
    """One loop a at v and an exit edge b from v to w; no other cycle."""
    edges = [Edge("a", 1, "v", "v"), Edge("b", 1, "v", "w")]
    return KGraph(1, ["v", "w"], edges)


def torus(k: int) -> KGraph:
    """Single-vertex k-graph with one loop per color, all loops commuting."""
    if not 1 <= k <= 6:
        raise KGraphError("torus supports k in 1..6")
    names = "efghij"[:k]
    edges = [Edge(names[i], i + 1, "v", "v") for i in range(k)]
    squares = []
    for i in range(k):
        for j in range(i + 1, k):
            squares.append((names[i], names[j], names[j], names[i]))
    return KGraph(k, ["v"], edges, squares)


def _grid_vertex(m: Sequence[int]) -> str:
    return "p" + "".join(str(c) for c in m)


def grid(shape: Degree) -> KGraph:
    """The k-graph of the lattice interval [0, shape] in N^k.

    Vertices are lattice points m <= shape; for each color i and each m
    with m_i < shape_i there is a unique edge from m + e_i to m. There is
    exactly one morphism for every pair of comparable lattice points, so
    the graph has no cycles and unique factorizations are forced.
    """
    k = len(shape)
    if k < 1 or any(c < 0 for c in shape):
        raise KGraphError("shape must be a nonempty nonnegative vector")
    if any(c > 9 for c in shape):
        raise KGraphError("grid supports side lengths up to 9")

    points = [()]
    for c in shape:
        points = [p + (i,) for p in points for i in range(c + 1)]
    vs = [_grid_vertex(p) for p in points]

    def bump(m, i):
        return tuple(c + (1 if j == i else 0) for j, c in enumerate(m))

    edges = []
    for m in points:
        for i in range(k):
            if m[i] < shape[i]:
                edges.append(
                    Edge(
                        "e%d_%s" % (i + 1, "".join(str(c) for c in m)),
                        i + 1,
                        _grid_vertex(bump(m, i)),
                        _grid_vertex(m),
                    )
                )

    def eid(i, m):
        return "e%d_%s" % (i + 1, "".join(str(c) for c in m))

    squares = []
    for m in points:
        for i in range(k):
            for j in range(i + 1, k):
                if m[i] < shape[i] and m[j] < shape[j]:
                    # the color-i edge into m, then color-j into m+e_i
                    squares.append(
                        (eid(i, m), eid(j, bump(m, i)), eid(j, m), eid(i, bump(m, j)))
                    )
    return KGraph(k, vs, edges, squares)


def product(*graphs: KGraph) -> KGraph:
    """Cartesian product of k-graphs; colors of later factors are shifted."""
    if not graphs:
        raise KGraphError("product needs at least one factor")
    out = graphs[0]
    for g in graphs[1:]:
        out = _product2(out, g)
    return out


def _product2(g1: KGraph, g2: KGraph) -> KGraph:
    k = g1.k + g2.k

    def vid(v1, v2):
        return "%s_%s" % (v1, v2)

    vs = [vid(v1, v2) for v1 in g1.vertices for v2 in g2.vertices]
    edges = []
    for eid in sorted(g1.edges):
        e = g1.edges[eid]
        for w in g2.vertices:
            edges.append(
                Edge("%s_%s" % (e.id, w), e.color, vid(e.source, w), vid(e.range, w))
            )
    for v in g1.vertices:
        for fid in sorted(g2.edges):
            f = g2.edges[fid]
            edges.append(
                Edge(
                    "%s_%s" % (v, f.id),
                    g1.k + f.color,
                    vid(v, f.source),
                    vid(v, f.range),
                )
            )

    def e1(e, w):
        return "%s_%s" % (e, w)

    def e2(v, f):
        return "%s_%s" % (v, f)

    squares = []
    for (e, f), (fp, ep) in sorted(g1.square_fwd.items()):
        for w in g2.vertices:
            squares.append((e1(e, w), e1(f, w), e1(fp, w), e1(ep, w)))
    for v in g1.vertices:
        for (e, f), (fp, ep) in sorted(g2.square_fwd.items()):
            squares.append((e2(v, e), e2(v, f), e2(v, fp), e2(v, ep)))
    # mixed colors commute through the product structure
    for eid in sorted(g1.edges):
        e = g1.edges[eid]
        for fid in sorted(g2.edges):
            f = g2.edges[fid]
            squares.append(
                (
                    e1(e.id, f.range),
                    e2(e.source, f.id),
                    e2(e.range, f.id),
                    e1(e.id, f.source),
                )
            )
    return KGraph(k, vs, edges, squares)


def flip_loop_pair() -> KGraph:
    """A 2-vertex rank-2 graph: commuting loops a, f at v, a loop fw at w,
    and a color-1 edge b from w into v twisted by fw."""
    edges = [
        Edge("a", 1, "v", "v"),
        Edge("f", 2, "v", "v"),
        Edge("b", 1, "w", "v"),
        Edge("fw", 2, "w", "w"),
    ]
    squares = [("a", "f", "f", "a"), ("b", "fw", "f", "b")]
    return KGraph(2, ["v", "w"], edges, squares)


def random_square_graph(seed: int, n1: int = 2, n2: int = 2) -> KGraph:
    """Single-vertex rank-2 graph with a seeded random square bijection."""
    rng = random.Random(seed)
    loops1 = ["a%d" % i for i in range(n1)]
    loops2 = ["b%d" % i for i in range(n2)]
    edges = [Edge(x, 1, "v", "v") for x in loops1]
    edges += [Edge(x, 2, "v", "v") for x in loops2]
    domain = [(x, y) for x in loops1 for y in loops2]
    images = [(y, x) for x in loops1 for y in loops2]
    rng.shuffle(images)
    squares = [(e, f, fp, ep) for (e, f), (fp, ep) in zip(domain, images)]
    return KGraph(2, ["v"], edges, squares)

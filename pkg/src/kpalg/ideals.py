"""Hereditary and saturated vertex sets, their lattice, and quotient graphs.

These vertex sets index the graded ideals of the path algebra; the quotient
graph realizes the quotient algebra on the k-graph side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Set, Tuple

from .kgraph import KGraph, KGraphError


@dataclass(frozen=True)
class SatHerSet:
    """A saturated hereditary subset of the vertex set."""

    vertices: Tuple[str, ...]

    def __contains__(self, v: str) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def as_set(self) -> Set[str]:
        return set(self.vertices)


def _close(g: KGraph, start: Set[str]) -> Set[str]:
    h = set(start)
    changed = True
    while changed:
        changed = False
        for eid in g.edges:
            e = g.edges[eid]
            if e.range in h and e.source not in h:
                h.add(e.source)
                changed = True
        for v in g.vertices:
            if v in h:
                continue
            for c in range(1, g.k + 1):
                ins = g.edges_by_range(v, c)
                # saturation: a vertex all of whose color-c feeders lie in h
                # is forced into h
                if ins and all(e.source in h for e in ins):
                    h.add(v)
                    changed = True
                    break
    return h


def is_sat_her(g: KGraph, vertices: Iterable[str]) -> bool:
    h = set(vertices)
    for eid in g.edges:
        e = g.edges[eid]
        if e.range in h and e.source not in h:
            return False
    for v in g.vertices:
        if v in h:
            continue
        for c in range(1, g.k + 1):
            ins = g.edges_by_range(v, c)
            if ins and all(e.source in h for e in ins):
                return False
    return True


def sat_her_closure(g: KGraph, vertices: Iterable[str]) -> SatHerSet:
    """Smallest saturated hereditary set containing the given vertices."""
    vs = list(vertices)
    for v in vs:
        if not g.has_vertex(v):
            raise KGraphError("unknown vertex %r" % v)
    return SatHerSet(tuple(sorted(_close(g, set(vs)))))


@dataclass(frozen=True)
class IdealLattice:
    """All saturated hereditary sets, ordered by inclusion.

    ``covers`` lists index pairs (i, j) with sets[i] covered by sets[j].
    """

    sets: Tuple[SatHerSet, ...]
    covers: Tuple[Tuple[int, int], ...]

    def __iter__(self):
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)


def enumerate_sat_her(g: KGraph) -> IdealLattice:
    """Materialize the lattice by closing single-vertex augmentations."""
    found = {frozenset()}
    work = [frozenset()]
    while work:
        h = work.pop()
        for v in g.vertices:
            if v in h:
                continue
            bigger = frozenset(_close(g, set(h) | {v}))
            if bigger not in found:
                found.add(bigger)
                work.append(bigger)
    sets = tuple(
        SatHerSet(tuple(sorted(h)))
        for h in sorted(found, key=lambda s: (len(s), tuple(sorted(s))))
    )
    covers: List[Tuple[int, int]] = []
    for i, a in enumerate(sets):
        sa = a.as_set()
        for j, b in enumerate(sets):
            sb = b.as_set()
            if sa < sb and not any(
                sa < c.as_set() < sb for c in sets
            ):
                covers.append((i, j))
    return IdealLattice(sets, tuple(covers))


def quotient(g: KGraph, h: SatHerSet) -> KGraph:
    """The k-graph on the vertices outside h, with paths avoiding h.

    Only edges whose source survives are kept; heredity guarantees their
    ranges survive too, and every square either survives whole or loses its
    shared source.
    """
    hs = set(h)
    for v in hs:
        if not g.has_vertex(v):
            raise KGraphError("unknown vertex %r" % v)
    if not is_sat_her(g, hs):
        raise KGraphError("vertex set %r is not saturated hereditary" % sorted(hs))
    vertices = [v for v in g.vertices if v not in hs]
    keep = {
        eid for eid, e in g.edges.items() if e.source not in hs
    }
    edges = [g.edges[eid] for eid in sorted(keep)]
    squares = [
        (e, f, fp, ep)
        for (e, f), (fp, ep) in sorted(g.square_fwd.items())
        if e in keep and f in keep and fp in keep and ep in keep
    ]
    return KGraph(g.k, vertices, edges, squares)

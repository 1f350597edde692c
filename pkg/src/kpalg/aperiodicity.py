"""Aperiodicity semi-decision.

Aperiodicity asks, at every vertex v, for a boundary path x with range v
such that distinct paths with source v stay distinct after composing with
x. The check here is depth-bounded on both the pair degrees and the
separator, so the positive verdict means "separated up to the stated
depth"; the Periodic verdict is certified by a finite state-pair machine
and is sound unconditionally.

Truncated comparison: alpha x = beta x "as truncated paths" means the two
composites agree up to their common (meet) degree; when x is maximal
(its source supports no further edges) the composites are genuine boundary
paths and different degrees already separate them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .degrees import meet
from .kgraph import KGraph, Path, path_sort_key
from .paths import _degrees_with_total


@dataclass(frozen=True)
class SeparationEvidence:
    """One vertex's witness: a single boundary path separating all checked
    pairs."""

    vertex: str
    separator: Path
    pairs_checked: int


@dataclass(frozen=True)
class PeriodicCertificate:
    """A pair that provably stays identified under every extension.

    ``extensions_checked`` counts the exhaustive boundary separators tried
    at the search depth; ``machine_states`` is the size of the closed
    state-pair set proving the invariant for arbitrary extensions.
    """

    alpha: Path
    beta: Path
    vertex: str
    extensions_checked: int
    machine_states: int


@dataclass(frozen=True)
class AperiodicityVerdict:
    status: str  # aperiodic | periodic | unknown
    depth: int
    evidence: Tuple[SeparationEvidence, ...] = ()
    certificate: Optional[PeriodicCertificate] = None
    note: str = ""


def _prefix(g: KGraph, p: Path, m) -> Path:
    return g.factorize(p, m)[0]


def _is_maximal(g: KGraph, x: Path) -> bool:
    return not g.edges_by_range(x.source)


def separates(g: KGraph, alpha: Path, beta: Path, x: Path) -> bool:
    """True when composing with x tells alpha and beta apart (truncated
    comparison as described in the module docstring)."""
    ax = g.compose(alpha, x)
    bx = g.compose(beta, x)
    m = meet(ax.degree, bx.degree)
    if _prefix(g, ax, m) != _prefix(g, bx, m):
        return True
    return ax.degree != bx.degree and _is_maximal(g, x)


def _pairs_at(g: KGraph, v: str, depth: int) -> List[Tuple[Path, Path]]:
    # pairs of distinct paths with source v and a common range; pairs of
    # equal degree are skipped since unique factorization separates them
    # under any extension
    by_range: Dict[str, List[Path]] = {}
    for u in g.vertices:
        for t in range(0, depth + 1):
            for n in _degrees_with_total(g.k, t):
                for p in g.paths(u, n):
                    if p.source == v:
                        by_range.setdefault(u, []).append(p)
    pairs: List[Tuple[Path, Path]] = []
    for u in sorted(by_range):
        ps = sorted(by_range[u], key=path_sort_key)
        for i, a in enumerate(ps):
            for b in ps[i + 1 :]:
                if a.degree != b.degree:
                    pairs.append((a, b))
    return pairs


def _strip(g: KGraph, p: Path, q: Path) -> Optional[Tuple[Path, Path]]:
    # factor out the common prefix at the meet degree; None means the
    # prefixes already disagree (the pair is separated)
    w = meet(p.degree, q.degree)
    hp, tp = g.factorize(p, w)
    hq, tq = g.factorize(q, w)
    if hp != hq:
        return None
    return tp, tq


def certify_never_separated(
    g: KGraph, alpha: Path, beta: Path, max_states: int = 4000
) -> Optional[int]:
    """Prove that no extension separates (alpha, beta); returns the state
    count of the closed machine, or None when no proof is obtained.

    State: the residual pair after stripping the common prefix. Extending
    by one edge maps residuals to residuals, so a closed consistent set of
    reachable states shows prefix agreement for every extension. Soundness
    of the overall claim additionally needs every color in the degree
    difference to be immortal (every vertex receives an edge of it);
    otherwise a maximal boundary path of deficient degree could separate
    the pair literally, and we refuse to certify.
    """
    delta = [a - b for a, b in zip(alpha.degree, beta.degree)]
    for i, d in enumerate(delta):
        if d != 0 and any(not g.edges_by_range(w, i + 1) for w in g.vertices):
            return None
    start = _strip(g, alpha, beta)
    if start is None:
        return None
    seen = {start}
    stack = [start]
    while stack:
        if len(seen) > max_states:
            return None
        t1, t2 = stack.pop()
        in_edges = g.edges_by_range(t1.source)
        if not in_edges:
            # dead end with distinct residuals: a maximal boundary path
            # separates the pair, so it is not periodic
            return None
        for e in in_edges:
            step = g.path_from_edges([e.id])
            nxt = _strip(g, g.compose(t1, step), g.compose(t2, step))
            if nxt is None:
                return None
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen)


def aperiodicity_check(g: KGraph, depth: int = 6) -> AperiodicityVerdict:
    """Three-valued aperiodicity check with explicit certificates."""
    evidence: List[SeparationEvidence] = []
    for v in g.vertices:
        cap = (depth + 1,) * g.k
        candidates = sorted(g.boundary_paths(v, cap), key=path_sort_key)
        pairs = _pairs_at(g, v, depth)
        if not pairs:
            x = candidates[0] if candidates else g.trivial_path(v)
            evidence.append(SeparationEvidence(v, x, 0))
            continue
        winner = None
        for x in candidates:
            if all(separates(g, a, b, x) for a, b in pairs):
                winner = x
                break
        if winner is not None:
            evidence.append(SeparationEvidence(v, winner, len(pairs)))
            continue
        stubborn = [
            (a, b)
            for a, b in pairs
            if not any(separates(g, a, b, x) for x in candidates)
        ]
        for a, b in stubborn:
            states = certify_never_separated(g, a, b)
            if states is not None:
                cert = PeriodicCertificate(a, b, v, len(candidates), states)
                return AperiodicityVerdict("periodic", depth, (), cert)
        return AperiodicityVerdict(
            "unknown",
            depth,
            note="vertex %s: no single separating boundary path within depth %d"
            % (v, depth),
        )
    return AperiodicityVerdict("aperiodic", depth, tuple(evidence))

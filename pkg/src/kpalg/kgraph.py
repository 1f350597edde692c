"""Finite k-graph presentations: colored edges plus commuting squares.

A presentation consists of k colors (1-based), a vertex set, colored edges,
and for each pair of composable edges of ascending colors a square relation
``e f ~ f' e'`` identifying the two factorizations of a path of mixed degree.
Paths are stored in canonical form: the edge word is sorted by nondecreasing
color, using the square relations to transpose adjacent edges.

Composition is written operator-style: ``p q`` requires s(p) = r(q), the
range of the composite is r(p) and the source is s(q).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .degrees import Degree, add, below, is_zero, join, leq, sub, total, unit, zero


class KGraphError(Exception):
    pass


class ParseError(KGraphError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Edge:
    """A colored edge. ``source`` is s(e), ``range`` is r(e)."""

    id: str
    color: int
    source: str
    range: str


@dataclass(frozen=True)
class Path:
    """A path in canonical (color-nondecreasing) form.

    ``edges`` is a tuple of edge ids; the trivial path at a vertex has an
    empty word and carries the vertex in ``range``.
    """

    graph: "KGraph"
    range: str
    edges: Tuple[str, ...]

    def __post_init__(self):
        g = self.graph
        if self.edges:
            d = list(zero(g.k))
            for eid in self.edges:
                d[g.edges[eid].color - 1] += 1
            src = g.edges[self.edges[-1]].source
            object.__setattr__(self, "degree", tuple(d))
            object.__setattr__(self, "source", src)
        else:
            object.__setattr__(self, "degree", zero(g.k))
            object.__setattr__(self, "source", self.range)

    degree: Degree = field(init=False, compare=False)
    source: str = field(init=False, compare=False)

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    def __str__(self) -> str:
        return self.range if not self.edges else ".".join(self.edges)

    def __repr__(self) -> str:
        return "Path(%s)" % self


def path_sort_key(p: Path):
    """Deterministic ordering: shorter first, then by degree, then word."""
    return (total(p.degree), p.degree, p.edges)


_ID = r"[A-Za-z0-9_]+"
_ID_RE = re.compile(r"^%s$" % _ID)
_EDGE_RE = re.compile(
    r"^edge\s+(%s)\s+color=(\d+)\s+from=(%s)\s+to=(%s)$" % (_ID, _ID, _ID)
)
_SQUARE_RE = re.compile(
    r"^square\s+(%s)\s+(%s)\s*~\s*(%s)\s+(%s)$" % (_ID, _ID, _ID, _ID)
)


class KGraph:
    """A finite k-graph presentation.

    Treated as immutable after construction; path enumeration results are
    cached on the instance.
    """

    def __init__(
        self,
        k: int,
        vertices: Iterable[str],
        edges: Iterable[Edge],
        squares: Iterable[Tuple[str, str, str, str]] = (),
    ):
        if k < 1:
            raise KGraphError("k must be >= 1, got %d" % k)
        self.k = k
        vs = list(vertices)
        seen = set()
        for v in vs:
            if not _ID_RE.match(v):
                raise KGraphError("bad vertex id %r" % v)
            if v in seen:
                raise KGraphError("duplicate vertex id %r" % v)
            seen.add(v)
        self.vertices: Tuple[str, ...] = tuple(sorted(seen))

        self.edges: Dict[str, Edge] = {}
        for e in edges:
            if not _ID_RE.match(e.id):
                raise KGraphError("bad edge id %r" % e.id)
            if e.id in seen or e.id in self.edges:
                raise KGraphError("duplicate id %r" % e.id)
            if not 1 <= e.color <= k:
                raise KGraphError(
                    "edge %r has color %d, expected 1..%d" % (e.id, e.color, k)
                )
            self.edges[e.id] = e

        # square e f ~ f' e'  encodes  ef = f'e'  with color(e) < color(f)
        self.square_fwd: Dict[Tuple[str, str], Tuple[str, str]] = {}
        self.square_rev: Dict[Tuple[str, str], Tuple[str, str]] = {}
        for e, f, fp, ep in squares:
            for eid in (e, f, fp, ep):
                if eid not in self.edges:
                    raise KGraphError("square references unknown edge %r" % eid)
            ce, cf = self.edges[e].color, self.edges[f].color
            cfp, cep = self.edges[fp].color, self.edges[ep].color
            if not (ce < cf and cfp == cf and cep == ce):
                raise KGraphError(
                    "square %s %s ~ %s %s must pair colors i<j with j i"
                    % (e, f, fp, ep)
                )
            if (e, f) in self.square_fwd:
                raise KGraphError("duplicate square for pair (%s, %s)" % (e, f))
            self.square_fwd[(e, f)] = (fp, ep)
            self.square_rev[(fp, ep)] = (e, f)

        self._by_range: Dict[Tuple[str, int], Tuple[str, ...]] = {}
        self._by_source: Dict[Tuple[str, int], Tuple[str, ...]] = {}
        by_r: Dict[Tuple[str, int], List[str]] = {}
        by_s: Dict[Tuple[str, int], List[str]] = {}
        for eid in sorted(self.edges):
            e = self.edges[eid]
            by_r.setdefault((e.range, e.color), []).append(eid)
            by_s.setdefault((e.source, e.color), []).append(eid)
        self._by_range = {key: tuple(ids) for key, ids in by_r.items()}
        self._by_source = {key: tuple(ids) for key, ids in by_s.items()}
        self._paths_cache: Dict[Tuple[str, Degree], Tuple[Path, ...]] = {}

    def __repr__(self) -> str:
        return "<KGraph k=%d |V|=%d |E|=%d>" % (
            self.k,
            len(self.vertices),
            len(self.edges),
        )

    # -- basic accessors -------------------------------------------------

    def has_vertex(self, v: str) -> bool:
        return v in set(self.vertices)

    def edges_by_range(self, v: str, color: Optional[int] = None) -> Tuple[Edge, ...]:
        """Edges e with r(e) = v, i.e. the set vLambda^{e_color}."""
        if color is not None:
            ids = self._by_range.get((v, color), ())
            return tuple(self.edges[i] for i in ids)
        out: List[Edge] = []
        for c in range(1, self.k + 1):
            out.extend(self.edges[i] for i in self._by_range.get((v, c), ()))
        return tuple(out)

    def edges_by_source(self, v: str, color: Optional[int] = None) -> Tuple[Edge, ...]:
        """Edges e with s(e) = v."""
        if color is not None:
            ids = self._by_source.get((v, color), ())
            return tuple(self.edges[i] for i in ids)
        out: List[Edge] = []
        for c in range(1, self.k + 1):
            out.extend(self.edges[i] for i in self._by_source.get((v, c), ()))
        return tuple(out)

    def color_of(self, eid: str) -> int:
        return self.edges[eid].color

    # -- words and canonical form ----------------------------------------

    def _swap_rev(self, g: str, h: str) -> Tuple[str, str]:
        # (g, h) has color(g) > color(h); rewrite to ascending order
        try:
            return self.square_rev[(g, h)]
        except KeyError:
            raise KGraphError(
                "no square relation rewrites (%s, %s); presentation is incomplete"
                % (g, h)
            )

    def _swap_fwd(self, e: str, f: str) -> Tuple[str, str]:
        # (e, f) has color(e) < color(f); rewrite to descending order
        try:
            return self.square_fwd[(e, f)]
        except KeyError:
            raise KGraphError(
                "no square relation rewrites (%s, %s); presentation is incomplete"
                % (e, f)
            )

    def _sort_word(self, word: List[str]) -> List[str]:
        # insertion sort by color; adjacent transpositions use the squares
        for i in range(1, len(word)):
            j = i
            while j > 0 and self.color_of(word[j - 1]) > self.color_of(word[j]):
                word[j - 1], word[j] = self._swap_rev(word[j - 1], word[j])
                j -= 1
        return word

    def trivial_path(self, v: str) -> Path:
        if not self.has_vertex(v):
            raise KGraphError("unknown vertex %r" % v)
        return Path(self, v, ())

    def path_from_edges(self, edge_ids: Sequence[str]) -> Path:
        """Build a path from a composable edge word, canonicalizing it."""
        if not edge_ids:
            raise KGraphError("empty edge word; use trivial_path for vertices")
        for eid in edge_ids:
            if eid not in self.edges:
                raise KGraphError("unknown edge %r" % eid)
        for a, b in zip(edge_ids, edge_ids[1:]):
            if self.edges[a].source != self.edges[b].range:
                raise KGraphError(
                    "edges %s and %s are not composable (s(%s)=%s, r(%s)=%s)"
                    % (a, b, a, self.edges[a].source, b, self.edges[b].range)
                )
        rng = self.edges[edge_ids[0]].range
        word = self._sort_word(list(edge_ids))
        return Path(self, rng, tuple(word))

    def compose(self, p: Path, q: Path) -> Path:
        if p.source != q.range:
            raise KGraphError(
                "paths are not composable: s(%s)=%s but r(%s)=%s"
                % (p, p.source, q, q.range)
            )
        if not p.edges:
            return q
        if not q.edges:
            return p
        word = self._sort_word(list(p.edges + q.edges))
        return Path(self, p.range, tuple(word))

    def factorize(self, p: Path, m: Degree) -> Tuple[Path, Path]:
        """Split p = head tail with d(head) = m. Unique by the square rules."""
        if len(m) != self.k:
            raise KGraphError("degree %r has wrong rank" % (m,))
        if not leq(m, p.degree):
            raise KGraphError(
                "cannot factorize %s at degree %r (path degree %r)"
                % (p, m, p.degree)
            )
        rest = list(p.edges)
        head: List[str] = []
        for c in range(1, self.k + 1):
            for _ in range(m[c - 1]):
                pos = next(
                    i for i, eid in enumerate(rest) if self.color_of(eid) == c
                )
                # bubble the color-c edge to the front of the remainder;
                # the square map returns the transposed pair directly
                while pos > 0:
                    rest[pos - 1], rest[pos] = self._swap_fwd(
                        rest[pos - 1], rest[pos]
                    )
                    pos -= 1
                head.append(rest.pop(0))
        head_rng = p.range
        head_path = Path(self, head_rng, tuple(head))
        tail_rng = head_path.source
        return head_path, Path(self, tail_rng, tuple(rest))

    # -- path enumeration -------------------------------------------------

    def paths(self, v: str, n: Degree) -> Tuple[Path, ...]:
        """All paths of degree exactly n with range v, in canonical form."""
        if not self.has_vertex(v):
            raise KGraphError("unknown vertex %r" % v)
        if len(n) != self.k:
            raise KGraphError("degree %r has wrong rank" % (n,))
        return self._paths(v, tuple(n))

    def _paths(self, v: str, n: Degree) -> Tuple[Path, ...]:
        key = (v, n)
        cached = self._paths_cache.get(key)
        if cached is not None:
            return cached
        if is_zero(n):
            out: Tuple[Path, ...] = (Path(self, v, ()),)
        else:
            c = next(i + 1 for i, ci in enumerate(n) if ci)
            rest_deg = sub(n, unit(self.k, c))
            acc: List[Path] = []
            for eid in self._by_range.get((v, c), ()):
                e = self.edges[eid]
                for tail in self._paths(e.source, rest_deg):
                    acc.append(Path(self, v, (eid,) + tail.edges))
            out = tuple(acc)
        self._paths_cache[key] = out
        return out

    def paths_upto(self, v: str, n: Degree) -> Tuple[Path, ...]:
        """All paths of degree <= n with range v."""
        out: List[Path] = []
        for m in below(tuple(n)):
            out.extend(self.paths(v, m))
        return tuple(out)

    def boundary_paths(self, v: str, n: Degree) -> Tuple[Path, ...]:
        """Paths of degree <= n from v that cannot extend in any slack color.

        A path counts when for every color i with d(p)_i < n_i its source
        receives no color-i edge.
        """
        out: List[Path] = []
        for p in self.paths_upto(v, n):
            ok = True
            for i in range(self.k):
                if p.degree[i] < n[i] and self._by_range.get((p.source, i + 1)):
                    ok = False
                    break
            if ok:
                out.append(p)
        return tuple(out)

    # -- common extensions -------------------------------------------------

    def mce(self, mu: Path, nu: Path) -> Tuple[Path, ...]:
        """Minimal common extensions: paths of degree d(mu) v d(nu) extending both."""
        if mu.range != nu.range:
            return ()
        if leq(mu.degree, nu.degree):
            head, _ = self.factorize(nu, mu.degree)
            return (nu,) if head == mu else ()
        if leq(nu.degree, mu.degree):
            head, _ = self.factorize(mu, nu.degree)
            return (mu,) if head == nu else ()
        m = join(mu.degree, nu.degree)
        out: List[Path] = []
        for alpha in self.paths(mu.source, sub(m, mu.degree)):
            lam = self.compose(mu, alpha)
            head, _ = self.factorize(lam, nu.degree)
            if head == nu:
                out.append(lam)
        return tuple(out)

    def mce_disjoint(self, mu: Path, nu: Path) -> bool:
        return not self.mce(mu, nu)


# module-level conveniences delegating to the path's graph


def compose(p: Path, q: Path) -> Path:
    return p.graph.compose(p, q)


def factorize(p: Path, m: Degree) -> Tuple[Path, Path]:
    return p.graph.factorize(p, m)


def mce(mu: Path, nu: Path) -> Tuple[Path, ...]:
    return mu.graph.mce(mu, nu)


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    items: Tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return "%s: %s" % (self.kind, self.message)


@dataclass
class ValidationReport:
    violations: List[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> Tuple[str, ...]:
        return tuple(sorted({v.kind for v in self.violations}))

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def validate(g: KGraph) -> ValidationReport:
    """Check a presentation: endpoints, square axioms, hexagons, local convexity."""
    out: List[Violation] = []
    vset = set(g.vertices)

    for eid in sorted(g.edges):
        e = g.edges[eid]
        for v in (e.source, e.range):
            if v not in vset:
                out.append(
                    Violation(
                        "dangling-edge",
                        (eid, v),
                        "edge %s references undeclared vertex %s" % (eid, v),
                    )
                )

    # squares: well-formed, endpoint-compatible, injective
    hit = {}
    for (e, f), (fp, ep) in sorted(g.square_fwd.items()):
        E, F, FP, EP = g.edges[e], g.edges[f], g.edges[fp], g.edges[ep]
        if E.source != F.range:
            out.append(
                Violation(
                    "non-bijective-square",
                    (e, f),
                    "square (%s, %s): left side is not composable" % (e, f),
                )
            )
            continue
        bad = (
            FP.range != E.range
            or EP.source != F.source
            or FP.source != EP.range
        )
        if bad:
            out.append(
                Violation(
                    "non-bijective-square",
                    (e, f, fp, ep),
                    "square %s %s ~ %s %s: endpoint mismatch" % (e, f, fp, ep),
                )
            )
            continue
        if (fp, ep) in hit:
            out.append(
                Violation(
                    "non-bijective-square",
                    (fp, ep),
                    "pairs (%s, %s) and (%s, %s) map to the same factorization"
                    % (hit[(fp, ep)] + (e, f)),
                )
            )
        hit[(fp, ep)] = (e, f)

    # totality over composable ascending pairs, surjectivity onto descending
    for i in range(1, g.k + 1):
        for j in range(i + 1, g.k + 1):
            for eid in sorted(g.edges):
                e = g.edges[eid]
                if e.color != i:
                    continue
                for f in g.edges_by_range(e.source, j):
                    if (eid, f.id) not in g.square_fwd:
                        out.append(
                            Violation(
                                "missing-square",
                                (eid, f.id),
                                "no square for composable pair (%s, %s)"
                                % (eid, f.id),
                            )
                        )
            for fid in sorted(g.edges):
                f = g.edges[fid]
                if f.color != j:
                    continue
                for e in g.edges_by_range(f.source, i):
                    if (fid, e.id) not in g.square_rev:
                        out.append(
                            Violation(
                                "non-bijective-square",
                                (fid, e.id),
                                "descending pair (%s, %s) is not the image of any square"
                                % (fid, e.id),
                            )
                        )

    # hexagon: for color triples i<j<l both transposition routes must agree
    def swap_at(word, pos):
        a, b = word[pos], word[pos + 1]
        key = (a, b)
        if key not in g.square_fwd:
            return None
        fp, ep = g.square_fwd[key]
        w = list(word)
        w[pos], w[pos + 1] = fp, ep
        return w

    def run_route(word, route):
        w = list(word)
        for pos in route:
            w = swap_at(w, pos)
            if w is None:
                return None
        return w

    for eid in sorted(g.edges):
        e = g.edges[eid]
        for f in g.edges_by_range(e.source, None):
            if f.color <= e.color:
                continue
            for h in g.edges_by_range(f.source, None):
                if h.color <= f.color:
                    continue
                start = [eid, f.id, h.id]
                wa = run_route(start, (0, 1, 0))
                wb = run_route(start, (1, 0, 1))
                if wa is None or wb is None:
                    continue  # missing squares already reported
                if wa != wb:
                    out.append(
                        Violation(
                            "hexagon-failure",
                            tuple(start),
                            "triple (%s, %s, %s): routes give %s vs %s"
                            % (eid, f.id, h.id, ".".join(wa), ".".join(wb)),
                        )
                    )

    # local convexity: an edge may not see a color its source cannot continue
    for eid in sorted(g.edges):
        e = g.edges[eid]
        for j in range(1, g.k + 1):
            if j == e.color:
                continue
            if g._by_range.get((e.range, j)) and not g._by_range.get(
                (e.source, j)
            ):
                out.append(
                    Violation(
                        "not-locally-convex",
                        (eid, str(j)),
                        "edge %s: range continues in color %d but source cannot"
                        % (eid, j),
                    )
                )

    return ValidationReport(out)


# -- file format ------------------------------------------------------------


def parse_kgraph(text: str) -> KGraph:
    """Parse the ``kgraph v1`` text format.

    Header line ``kgraph v1``, then ``k: N``, ``vertices:`` lines (which
    accumulate), ``edge id color=c from=src to=rng`` (from = source,
    to = range) and ``square e f ~ f' e'`` lines. ``#`` starts a comment.
    """
    k: Optional[int] = None
    vertices: List[str] = []
    edges: List[Edge] = []
    squares: List[Tuple[str, str, str, str]] = []
    saw_header = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_header:
            if line != "kgraph v1":
                raise ParseError("expected header 'kgraph v1', got %r" % line, lineno)
            saw_header = True
            continue
        if line.startswith("k:"):
            if k is not None:
                raise ParseError("duplicate k: line", lineno)
            try:
                k = int(line[2:].strip())
            except ValueError:
                raise ParseError("bad k: line %r" % line, lineno)
            if k < 1:
                raise ParseError("k must be >= 1", lineno)
            continue
        if line.startswith("vertices:"):
            for v in line[len("vertices:"):].split():
                if not _ID_RE.match(v):
                    raise ParseError("bad vertex id %r" % v, lineno)
                vertices.append(v)
            continue
        if line.startswith("edge"):
            if k is None:
                raise ParseError("edge line before k: line", lineno)
            m = _EDGE_RE.match(line)
            if not m:
                raise ParseError("bad edge line %r" % line, lineno)
            eid, color, src, rng = m.groups()
            color_i = int(color)
            if not 1 <= color_i <= k:
                raise ParseError(
                    "edge %s has color %d, expected 1..%d" % (eid, color_i, k),
                    lineno,
                )
            edges.append(Edge(eid, color_i, src, rng))
            continue
        if line.startswith("square"):
            m = _SQUARE_RE.match(line)
            if not m:
                raise ParseError("bad square line %r" % line, lineno)
            squares.append(m.groups())
            continue
        raise ParseError("unrecognized line %r" % line, lineno)

    if not saw_header:
        raise ParseError("empty input, expected 'kgraph v1' header")
    if k is None:
        raise ParseError("missing k: line")
    try:
        return KGraph(k, vertices, edges, squares)
    except KGraphError as exc:
        raise ParseError(str(exc))


def format_kgraph(g: KGraph) -> str:
    lines = ["kgraph v1", "k: %d" % g.k]
    if g.vertices:
        lines.append("vertices: %s" % " ".join(g.vertices))
    for eid in sorted(g.edges):
        e = g.edges[eid]
        lines.append(
            "edge %s color=%d from=%s to=%s" % (e.id, e.color, e.source, e.range)
        )
    for (e, f) in sorted(g.square_fwd):
        fp, ep = g.square_fwd[(e, f)]
        lines.append("square %s %s ~ %s %s" % (e, f, fp, ep))
    return "\n".join(lines) + "\n"


def load_kgraph(path: str) -> KGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_kgraph(fh.read())

"""Exact arithmetic in the path algebra of a k-graph.

Elements are finite linear combinations of spanning terms s_lam s_{mu*}
with s(lam) = s(mu), stored sparsely with nonzero exact coefficients. The
product reduces cross terms through minimal common extensions:

    (s_lam s_{mu*})(s_nu s_{rho*}) = sum over mu a = nu b in MCE(mu, nu)
                                     of s_{lam a} s_{(rho b)*}

Structural equality (==) compares term maps; algebraic equality is
``equals``, which normalizes the difference by boundary expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .degrees import Degree, join, sub
from .field import Field, Scalar
from .kgraph import KGraph, KGraphError, Path, path_sort_key

TermKey = Tuple[Path, Path]


class AlgebraError(KGraphError):
    pass


def _term_sort_key(key: TermKey):
    lam, mu = key
    return (path_sort_key(lam), path_sort_key(mu))


@dataclass(frozen=True)
class KPElement:
    graph: KGraph
    field: Field
    terms: Tuple[Tuple[TermKey, Scalar], ...]

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: "KPElement") -> "KPElement":
        _check_compatible(self, other)
        acc = dict(self.terms)
        for key, c in other.terms:
            acc[key] = acc.get(key, self.field.zero) + c
        return _make(self.graph, self.field, acc)

    def __sub__(self, other: "KPElement") -> "KPElement":
        return self + (-other)

    def __neg__(self) -> "KPElement":
        return KPElement(
            self.graph, self.field, tuple((k, -c) for k, c in self.terms)
        )

    def __mul__(self, other):
        if isinstance(other, KPElement):
            return kp_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "KPElement":
        if isinstance(c, int):
            c = self.field.of(c)
        if not c:
            return zero(self.graph, self.field)
        return KPElement(
            self.graph, self.field, tuple((k, c * v) for k, v in self.terms)
        )

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, lam: Path, mu: Path) -> Scalar:
        for key, c in self.terms:
            if key == (lam, mu):
                return c
        return self.field.zero

    def keys(self) -> Tuple[TermKey, ...]:
        return tuple(k for k, _ in self.terms)

    def graded_components(self) -> Dict[Degree, "KPElement"]:
        out: Dict[Degree, Dict[TermKey, Scalar]] = {}
        for (lam, mu), c in self.terms:
            gdeg = tuple(a - b for a, b in zip(lam.degree, mu.degree))
            out.setdefault(gdeg, {})[(lam, mu)] = c
        return {
            gdeg: _make(self.graph, self.field, terms)
            for gdeg, terms in out.items()
        }

    def __str__(self) -> str:
        from .expr import format_element

        return format_element(self)


def _check_compatible(a: KPElement, b: KPElement) -> None:
    if a.graph is not b.graph:
        raise AlgebraError("elements live over different graphs")
    if a.field != b.field:
        raise AlgebraError("elements live over different fields")


def _make(g: KGraph, field: Field, terms: Dict[TermKey, Scalar]) -> KPElement:
    kept = {k: c for k, c in terms.items() if c}
    ordered = tuple(sorted(kept.items(), key=lambda it: _term_sort_key(it[0])))
    return KPElement(g, field, ordered)


# -- constructors -------------------------------------------------------------


def zero(g: KGraph, field: Field) -> KPElement:
    return KPElement(g, field, ())


def spanning_term(
    g: KGraph, field: Field, lam: Path, mu: Path, coef: Optional[Scalar] = None
) -> KPElement:
    if lam.source != mu.source:
        raise AlgebraError(
            "spanning term needs s(lam) = s(mu), got %s and %s"
            % (lam.source, mu.source)
        )
    c = field.one if coef is None else coef
    return _make(g, field, {(lam, mu): c})


def generator(g: KGraph, field: Field, p: Path) -> KPElement:
    """s_p, the generator attached to a path."""
    return spanning_term(g, field, p, g.trivial_path(p.source))


def star_generator(g: KGraph, field: Field, p: Path) -> KPElement:
    """s_{p*}."""
    return spanning_term(g, field, g.trivial_path(p.source), p)


def vertex_unit(g: KGraph, field: Field, v: str) -> KPElement:
    t = g.trivial_path(v)
    return spanning_term(g, field, t, t)


def local_unit(*elements: KPElement) -> KPElement:
    """Sum of vertex idempotents covering every term of the inputs."""
    if not elements:
        raise AlgebraError("local_unit needs at least one element")
    g, field = elements[0].graph, elements[0].field
    vs = set()
    for a in elements:
        _check_compatible(elements[0], a)
        for (lam, mu), _ in a.terms:
            vs.add(lam.range)
            vs.add(mu.range)
    out = zero(g, field)
    for v in sorted(vs):
        out = out + vertex_unit(g, field, v)
    return out


@dataclass(frozen=True)
class KP:
    """Convenience handle pairing a graph with a coefficient field."""

    graph: KGraph
    field: Field

    def zero(self) -> KPElement:
        return zero(self.graph, self.field)

    def s(self, p: Union[Path, str]) -> KPElement:
        if isinstance(p, str):
            return vertex_unit(self.graph, self.field, p)
        return generator(self.graph, self.field, p)

    def star(self, p: Path) -> KPElement:
        return star_generator(self.graph, self.field, p)

    def term(self, lam: Path, mu: Path, coef: Optional[Scalar] = None) -> KPElement:
        return spanning_term(self.graph, self.field, lam, mu, coef)

    def path(self, *edge_ids: str) -> Path:
        return self.graph.path_from_edges(list(edge_ids))

    def vertex(self, v: str) -> Path:
        return self.graph.trivial_path(v)


# -- multiplication ------------------------------------------------------------


def kp_mul(a: KPElement, b: KPElement) -> KPElement:
    _check_compatible(a, b)
    g = a.graph
    acc: Dict[TermKey, Scalar] = {}
    for (lam, mu), c1 in a.terms:
        for (nu, rho), c2 in b.terms:
            for xi in g.mce(mu, nu):
                alpha = g.factorize(xi, mu.degree)[1]
                beta = g.factorize(xi, nu.degree)[1]
                key = (g.compose(lam, alpha), g.compose(rho, beta))
                c = c1 * c2
                acc[key] = acc.get(key, a.field.zero) + c
    return _make(g, a.field, acc)


# -- normal form and equality ---------------------------------------------------


def normal_form(a: KPElement, target: Optional[Degree] = None) -> KPElement:
    """Expand each graded component to a common boundary depth.

    Within the component of grading d(lam) - d(mu), every term is expanded
    over the boundary extensions of its source up to the componentwise max
    of the occurring lam-degrees (joined with ``target`` when given). The
    result is canonical relative to that expansion depth, and identical
    maps certify equality.
    """
    g, field = a.graph, a.field
    acc: Dict[TermKey, Scalar] = {}
    for _, comp in sorted(a.graded_components().items()):
        m = None
        for (lam, _), _c in comp.terms:
            m = lam.degree if m is None else join(m, lam.degree)
        if target is not None:
            m = join(m, tuple(target))
        for (lam, mu), c in comp.terms:
            slack = sub(m, lam.degree)
            for tau in g.boundary_paths(lam.source, slack):
                key = (g.compose(lam, tau), g.compose(mu, tau))
                acc[key] = acc.get(key, field.zero) + c
    return _make(g, field, acc)


def equals(a: KPElement, b: KPElement) -> bool:
    _check_compatible(a, b)
    return normal_form(a - b).is_zero()


# -- matrices -------------------------------------------------------------------


@dataclass(frozen=True)
class KPMatrix:
    rows: Tuple[Tuple[KPElement, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise AlgebraError("matrix needs at least one entry")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise AlgebraError("ragged matrix")
        first = self.rows[0][0]
        for r in self.rows:
            for x in r:
                _check_compatible(first, x)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]))

    @property
    def graph(self) -> KGraph:
        return self.rows[0][0].graph

    @property
    def field(self) -> Field:
        return self.rows[0][0].field

    def __add__(self, other: "KPMatrix") -> "KPMatrix":
        if self.shape != other.shape:
            raise AlgebraError("shape mismatch %r vs %r" % (self.shape, other.shape))
        return KPMatrix(
            tuple(
                tuple(x + y for x, y in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            )
        )

    def __matmul__(self, other: "KPMatrix") -> "KPMatrix":
        m, n = self.shape
        n2, p = other.shape
        if n != n2:
            raise AlgebraError("shape mismatch %r vs %r" % (self.shape, other.shape))
        z = zero(self.graph, self.field)
        out = []
        for i in range(m):
            row = []
            for j in range(p):
                acc = z
                for l in range(n):
                    acc = acc + kp_mul(self.rows[i][l], other.rows[l][j])
                row.append(acc)
            out.append(tuple(row))
        return KPMatrix(tuple(out))

    def entry(self, i: int, j: int) -> KPElement:
        return self.rows[i][j]


def as_matrix(x: Union[KPElement, KPMatrix]) -> KPMatrix:
    if isinstance(x, KPMatrix):
        return x
    return KPMatrix(((x,),))


def column(*entries: KPElement) -> KPMatrix:
    return KPMatrix(tuple((e,) for e in entries))


def row(*entries: KPElement) -> KPMatrix:
    return KPMatrix((tuple(entries),))


def oplus(a: Union[KPElement, KPMatrix], b: Union[KPElement, KPMatrix]) -> KPMatrix:
    """Block-diagonal sum."""
    ma, mb = as_matrix(a), as_matrix(b)
    _check_compatible(ma.rows[0][0], mb.rows[0][0])
    z = zero(ma.graph, ma.field)
    ra, ca = ma.shape
    rb, cb = mb.shape
    out = []
    for i in range(ra):
        out.append(tuple(ma.rows[i]) + (z,) * cb)
    for i in range(rb):
        out.append((z,) * ca + tuple(mb.rows[i]))
    return KPMatrix(tuple(out))


def matrix_equals(a: Union[KPElement, KPMatrix], b: Union[KPElement, KPMatrix]) -> bool:
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        return False
    for r1, r2 in zip(ma.rows, mb.rows):
        for x, y in zip(r1, r2):
            if not equals(x, y):
                return False
    return True


# -- relation verifiers ----------------------------------------------------------


def precsim_verify(
    a: Union[KPElement, KPMatrix],
    b: Union[KPElement, KPMatrix],
    x: Union[KPElement, KPMatrix],
    y: Union[KPElement, KPMatrix],
) -> bool:
    """Check a = x b y, the explicit subequivalence witness equation."""
    ma, mb = as_matrix(a), as_matrix(b)
    mx, my = as_matrix(x), as_matrix(y)
    try:
        prod = mx @ mb @ my
    except AlgebraError:
        return False
    return matrix_equals(ma, prod)


def equivalent_verify(
    p: Union[KPElement, KPMatrix],
    q: Union[KPElement, KPMatrix],
    r: Union[KPElement, KPMatrix],
    s: Union[KPElement, KPMatrix],
) -> bool:
    """Check rs = p and sr = q."""
    mr, ms = as_matrix(r), as_matrix(s)
    try:
        return matrix_equals(mr @ ms, p) and matrix_equals(ms @ mr, q)
    except AlgebraError:
        return False


def subidempotent_verify(
    a: Union[KPElement, KPMatrix], b: Union[KPElement, KPMatrix]
) -> bool:
    """Check ab = ba = a."""
    ma, mb = as_matrix(a), as_matrix(b)
    try:
        return matrix_equals(ma @ mb, ma) and matrix_equals(mb @ ma, ma)
    except AlgebraError:
        return False


def is_idempotent(a: Union[KPElement, KPMatrix]) -> bool:
    ma = as_matrix(a)
    return matrix_equals(ma @ ma, ma)

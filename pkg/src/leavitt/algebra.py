"""Exact arithmetic in the Leavitt path algebra of a graph.

Elements are F-linear combinations of monomials p q* (p, q paths with a
common range).  The defining relations are oriented into a terminating,
confluent rewriting system:

  (R1)  e* f        -> delta_{e,f} r(e)          (applied during products)
  (R2)  g g*        -> v - sum_{f != g} f f*     for g the special edge of v

where the special edge of a non-sink vertex is its first out-edge in
document order.  A monomial p q* is in normal form iff p and q do not end
with the same special edge; distinct normal-form monomials are linearly
independent, which the test suite checks by rank computations.
"""

from __future__ import annotations

from .graphs import Path, GraphError
from .linalg import SpanBasis

__all__ = [
    "Monomial",
    "AlgebraElement",
    "AlgebraError",
    "ParseError",
    "zero",
    "vertex_element",
    "edge_element",
    "ghost_element",
    "monomial_element",
    "identity_element",
    "star",
    "enumerate_basis",
    "enumerate_paths",
    "graded_dimension",
    "span_dimension",
    "parse_element",
]


class AlgebraError(ValueError):
    """Graph/field mismatch or invalid algebra operation."""


class ParseError(AlgebraError):
    """Expression syntax error; carries the offending position."""

    def __init__(self, message, pos):
        self.pos = pos
        super().__init__("%s (at position %d)" % (message, pos))


class Monomial:
    """A normal-form monomial p q*; `vertex` is the common range r(p) = r(q)."""

    __slots__ = ("p", "q", "vertex")

    def __init__(self, p, q, vertex):
        self.p = tuple(p)
        self.q = tuple(q)
        self.vertex = vertex

    @property
    def degree(self):
        return len(self.p) + len(self.q)

    def sort_key(self):
        return (self.degree, self.p, self.q, self.vertex)

    def __eq__(self, other):
        return (
            isinstance(other, Monomial)
            and self.p == other.p
            and self.q == other.q
            and self.vertex == other.vertex
        )

    def __hash__(self):
        return hash((self.p, self.q, self.vertex))

    def __repr__(self):
        return "Monomial(%s)" % self.format()

    def format(self):
        parts = list(self.p) + ["%s'" % e for e in reversed(self.q)]
        if not parts:
            return str(self.vertex)
        return " ".join(parts)


def _is_reducible(g, p, q):
    if not p or not q or p[-1] != q[-1]:
        return False
    e = p[-1]
    return e == g.special_edge(g.source(e))


class AlgebraElement:
    """Finite F-linear combination of normal-form monomials."""

    __slots__ = ("graph", "field", "terms")

    def __init__(self, graph, field, terms):
        self.graph = graph
        self.field = field
        self.terms = {m: c for m, c in terms.items() if c}

    def _compat(self, other):
        if self.graph != other.graph or self.field != other.field:
            raise AlgebraError("elements live over different graphs or fields")

    def __add__(self, other):
        self._compat(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m, self.field.zero()) + c
            if acc:
                terms[m] = acc
            else:
                terms.pop(m, None)
        return AlgebraElement(self.graph, self.field, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(
            self.graph, self.field, {m: -c for m, c in self.terms.items()}
        )

    def scale(self, scalar):
        return AlgebraElement(
            self.graph, self.field, {m: c * scalar for m, c in self.terms.items()}
        )

    def __mul__(self, other):
        self._compat(other)
        out = {}
        g = self.graph
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                raw = _mul_monomials(g, m1, m2)
                if raw is None:
                    continue
                c = c1 * c2
                for sign, m in _normalize_monomial(g, *raw):
                    coeff = c if sign > 0 else -c
                    acc = out.get(m, self.field.zero()) + coeff
                    if acc:
                        out[m] = acc
                    else:
                        out.pop(m, None)
        return AlgebraElement(self.graph, self.field, out)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.graph == other.graph
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.field, frozenset(self.terms.items()))
        )

    def __bool__(self):
        return bool(self.terms)

    def is_idempotent(self):
        return self * self == self

    def star(self):
        """The involution: p q* with coefficient a maps to q p* with a."""
        return AlgebraElement(
            self.graph,
            self.field,
            {Monomial(m.q, m.p, m.vertex): c for m, c in self.terms.items()},
        )

    def coordinates(self):
        """Sparse coordinate row for exact linear algebra."""
        return dict(self.terms)

    def degree(self):
        return max((m.degree for m in self.terms), default=0)

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=Monomial.sort_key):
            c = self.terms[m]
            cs = str(c)
            if cs == "1":
                parts.append(m.format())
            elif cs == "-1":
                parts.append("- %s" % m.format())
            else:
                parts.append("%s %s" % (cs, m.format()))
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("- "):
                out += " - " + p[2:]
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return "<%s>" % self.format()


def _path_start(g, edges, base):
    return g.source(edges[0]) if edges else base


def _mul_monomials(g, m1, m2):
    """Raw product (p q*)(u w*), or None when it is zero.

    Cancels q* against u edge by edge via (R1); the survivor is appended
    to p or to w.  Result is (p', q', vertex) before (R2) normalization.
    """
    q, u = m1.q, m2.p
    if _path_start(g, q, m1.vertex) != _path_start(g, u, m2.vertex):
        return None
    n = min(len(q), len(u))
    if q[:n] != u[:n]:
        return None
    if n == len(q):
        # q is a prefix of u: q* u = rest of u, compose onto p
        return (m1.p + u[n:], m2.q, m2.vertex)
    # u is a proper prefix of q: survivor is a ghost path, compose onto w
    return (m1.p, m2.q + q[n:], m1.vertex)


def _normalize_monomial(g, p, q, vertex):
    """Expand (R2) until normal; yields (sign, Monomial) pairs."""
    out = []
    stack = [(1, p, q, vertex)]
    while stack:
        sign, p, q, vertex = stack.pop()
        if _is_reducible(g, p, q):
            e = p[-1]
            v = g.source(e)
            stack.append((sign, p[:-1], q[:-1], v))
            for f in g.out_edges(v):
                if f != e:
                    out.append(
                        (-sign, Monomial(p[:-1] + (f,), q[:-1] + (f,), g.range(f)))
                    )
        else:
            out.append((sign, Monomial(p, q, vertex)))
    return out


def zero(g, field):
    return AlgebraElement(g, field, {})


def vertex_element(g, field, v):
    if v not in g.vertices:
        raise AlgebraError("unknown vertex %r" % v)
    return AlgebraElement(g, field, {Monomial((), (), v): field.one()})


def edge_element(g, field, e):
    m = g._edge_map().get(e)
    if m is None:
        raise AlgebraError("unknown edge %r" % e)
    return AlgebraElement(g, field, {Monomial((e,), (), m[1]): field.one()})


def ghost_element(g, field, e):
    return edge_element(g, field, e).star()


def monomial_element(g, field, p, q):
    """Element p q* from two Path objects with matching ranges, normalized."""
    if p.range(g) != q.range(g):
        raise AlgebraError("paths %s and %s have different ranges" % (p, q))
    out = {}
    for sign, m in _normalize_monomial(g, p.edges, q.edges, p.range(g)):
        c = field.one() if sign > 0 else -field.one()
        acc = out.get(m, field.zero()) + c
        if acc:
            out[m] = acc
        else:
            out.pop(m, None)
    return AlgebraElement(g, field, out)


def path_idempotent(g, field, p):
    """The idempotent p p* for a Path p."""
    return monomial_element(g, field, p, p)


def identity_element(g, field):
    """Sum of all vertex idempotents (the identity of the unital closure)."""
    out = zero(g, field)
    for v in g.vertices:
        out = out + vertex_element(g, field, v)
    return out


def star(a):
    return a.star()


def enumerate_paths(g, maxlen):
    """All paths of length <= maxlen, trivial paths included."""
    result = [Path(v) for v in g.vertices]
    frontier = list(result)
    for _ in range(maxlen):
        nxt = []
        for p in frontier:
            v = p.range(g)
            for e in g.out_edges(v):
                nxt.append(Path(p.base, p.edges + (e,)))
        result.extend(nxt)
        frontier = nxt
    return result


def enumerate_basis(g, field, maxdeg):
    """All normal-form monomials of degree <= maxdeg, canonically ordered."""
    by_range = {}
    for p in enumerate_paths(g, maxdeg):
        by_range.setdefault(p.range(g), []).append(p)
    monos = []
    for v, paths in by_range.items():
        for p in paths:
            for q in paths:
                if len(p.edges) + len(q.edges) > maxdeg:
                    continue
                if _is_reducible(g, p.edges, q.edges):
                    continue
                monos.append(Monomial(p.edges, q.edges, v))
    monos.sort(key=Monomial.sort_key)
    return monos


def generator_elements(g, field):
    """The canonical generating set {v} + {e} + {e*} as elements."""
    gens = [vertex_element(g, field, v) for v in g.vertices]
    for eid, _, _ in g.edges:
        gens.append(edge_element(g, field, eid))
        gens.append(ghost_element(g, field, eid))
    return gens


def graded_dimension(g, field, n):
    """dim of the span of all products of <= n generators (n = 0: vertices)."""
    basis = SpanBasis(field)
    layer = [vertex_element(g, field, v) for v in g.vertices]
    for el in layer:
        basis.add(el.coordinates())
    if n == 0:
        return basis.rank
    gens = generator_elements(g, field)
    current = list(layer)
    for _ in range(n):
        nxt = []
        for gen in gens:
            for el in current:
                prod = gen * el
                if prod and basis.add(prod.coordinates()):
                    nxt.append(prod)
        for gen in gens:
            if basis.add(gen.coordinates()):
                nxt.append(gen)
        if not nxt:
            break
        current = current + nxt
    return basis.rank


def span_dimension(elements):
    """Exact rank of a list of elements over their monomial coordinates."""
    elements = list(elements)
    if not elements:
        return 0
    first = elements[0]
    for el in elements[1:]:
        first._compat(el)
    basis = SpanBasis(first.field)
    for el in elements:
        basis.add(el.coordinates())
    return basis.rank


# ---------------------------------------------------------------------------
# expression parser
#
# expr   := [ "+" | "-" ] term { ("+" | "-") term }
# term   := [ scalar ] factor { "*"? factor }
# factor := id [ "'" ] | "(" expr ")"
#
# Scalar literals: integers, a/b rationals, and (for GF(2^k) fields) modulus
# polynomials written without spaces, e.g. "x^2+x+1".  Ids are graph vertex
# or edge identifiers; a trailing apostrophe is the ghost edge e*.
# ---------------------------------------------------------------------------

import re as _re

_TOKEN_RE = _re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<gfpoly>x\^\d+(?:\+(?:x\^\d+|x|1))*|x(?:\+(?:x\^\d+|x|1))+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*'?)
  | (?P<op>[+\-*()])
    """,
    _re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r" % text[pos], pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, g, field, bindings=None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.g = g
        self.field = field
        self.bindings = bindings or {}

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        el = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected %r" % val, pos)
        return el

    def expr(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            el = self.term()
            if val == "-":
                el = -el
        else:
            el = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                el = el + rhs if val == "+" else el - rhs
            else:
                return el

    def term(self):
        coeff = self.field.one()
        saw_scalar = False
        kind, val, pos = self.peek()
        if kind in ("number", "gfpoly"):
            self.next()
            coeff = self._scalar(kind, val, pos)
            saw_scalar = True
        el = None
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.next()
                continue
            if kind == "id" or (kind == "op" and val == "("):
                factor = self.factor()
                el = factor if el is None else el * factor
            else:
                break
        if el is None:
            if not saw_scalar:
                kind, val, pos = self.peek()
                raise ParseError("expected a term, got %r" % val, pos)
            # a bare scalar multiplies the identity (sum of vertices)
            el = identity_element(self.g, self.field)
        return el.scale(coeff)

    def factor(self):
        kind, val, pos = self.next()
        if kind == "op" and val == "(":
            el = self.expr()
            kind, val, pos = self.next()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", pos)
            return el
        if kind != "id":
            raise ParseError("expected identifier", pos)
        ghost = val.endswith("'")
        name = val[:-1] if ghost else val
        if name in self.g.vertices:
            if ghost:
                raise ParseError("vertex %r cannot carry a ghost mark" % name, pos)
            return vertex_element(self.g, self.field, name)
        if name in self.g._edge_map():
            if ghost:
                return ghost_element(self.g, self.field, name)
            return edge_element(self.g, self.field, name)
        if name in self.bindings:
            el = self.bindings[name]
            return el.star() if ghost else el
        raise ParseError("unknown id %r" % name, pos)

    def _scalar(self, kind, val, pos):
        try:
            return self.field.parse(val)
        except Exception as exc:
            raise ParseError("bad scalar literal %r: %s" % (val, exc), pos)


def parse_element(text, g, field, bindings=None):
    """Parse an expression string into a normal-form element.

    `bindings` maps names to previously computed elements (CLI let-bindings).
    """
    return _Parser(text, g, field, bindings).parse()

"""The algebraic Toeplitz (Jacobson) algebra A = <x, y | xy = 1>.

Canonical basis: monomials y^i x^j (the relation is oriented xy -> 1, which
strictly shortens words, so rewriting terminates and products of basis
monomials are again basis monomials).  The faithful matrix model sends
y to the lower shift and x to the upper shift on an N x N index space;
elements of the ideal generated by 1 - yx become finitary matrices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .linalg import SpanBasis, invert_block

__all__ = [
    "JacobsonElement",
    "AlmostToeplitzMatrix",
    "JacobsonError",
    "jac_zero",
    "jac_one",
    "jac_x",
    "jac_y",
    "jac_monomial",
    "jac_parse",
    "jac_matrix_unit",
    "jac_to_matrix",
    "jac_quotient_laurent",
    "DescentState",
    "descent_measure",
    "corner_dimension",
    "splitting_probe",
    "RefutationCertificate",
]


class JacobsonError(ValueError):
    pass


class JacobsonElement:
    """Finite-support map (i, j) -> nonzero Scalar, meaning sum a_ij y^i x^j."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        self.field = field
        self.terms = {k: c for k, c in terms.items() if c}

    def _compat(self, other):
        if self.field != other.field:
            raise JacobsonError("elements over different fields")

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k, self.field.zero()) + c
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        return JacobsonElement(self.field, out)

    def __neg__(self):
        return JacobsonElement(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        # (y^i x^j)(y^k x^l) = y^(i + max(0, k-j)) x^(l + max(0, j-k))
        self._compat(other)
        out = {}
        for (i, j), c1 in self.terms.items():
            for (k, l), c2 in other.terms.items():
                key = (i + max(0, k - j), l + max(0, j - k))
                acc = out.get(key, self.field.zero()) + c1 * c2
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return JacobsonElement(self.field, out)

    def scale(self, scalar):
        return JacobsonElement(self.field, {k: c * scalar for k, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, JacobsonElement)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coordinates(self):
        return dict(self.terms)

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms):
            c = self.terms[(i, j)]
            word = " ".join(["y"] * i + ["x"] * j) or "1"
            cs = str(c)
            parts.append(word if cs == "1" else "%s %s" % (cs, word))
        return " + ".join(parts)

    def __repr__(self):
        return "<%s>" % self.format()


def jac_zero(field):
    return JacobsonElement(field, {})


def jac_one(field):
    return JacobsonElement(field, {(0, 0): field.one()})


def jac_x(field):
    return JacobsonElement(field, {(0, 1): field.one()})


def jac_y(field):
    return JacobsonElement(field, {(1, 0): field.one()})


def jac_monomial(field, i, j, coeff=None):
    return JacobsonElement(field, {(i, j): coeff if coeff is not None else field.one()})


def jac_matrix_unit(field, i, j):
    """e_ij = y^(i-1) (1 - yx) x^(j-1), expanded to normal form."""
    if i < 1 or j < 1:
        raise JacobsonError("matrix unit indices must be >= 1")
    one = field.one()
    return JacobsonElement(field, {(i - 1, j - 1): one, (i, j): -one})


_JTOKEN_RE = re.compile(
    r"\s+|(?P<number>\d+(?:/\d+)?)|(?P<id>[xy])|(?P<op>[+\-*()])"
)


def jac_parse(text, field):
    """Parse a word expression over x, y with coefficients into normal form."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _JTOKEN_RE.match(text, pos)
        if not m:
            raise JacobsonError("bad character %r at %d" % (text[pos], pos))
        if m.lastgroup:
            tokens.append((m.lastgroup, m.group()))
        pos = m.end()
    tokens.append(("end", ""))
    state = {"i": 0}

    def peek():
        return tokens[state["i"]]

    def advance():
        tok = tokens[state["i"]]
        state["i"] += 1
        return tok

    def expr():
        el = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = advance()[1]
            rhs = term()
            el = el + rhs if op == "+" else el - rhs
        return el

    def term():
        coeff = field.one()
        saw_scalar = False
        if peek()[0] == "number":
            coeff = field.parse(advance()[1])
            saw_scalar = True
        el = None
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                advance()
                continue
            if kind == "id" or (kind == "op" and val == "("):
                f = factor()
                el = f if el is None else el * f
            else:
                break
        if el is None:
            if not saw_scalar:
                raise JacobsonError("expected a term, got %r" % (peek()[1],))
            el = jac_one(field)
        return el.scale(coeff)

    def factor():
        kind, val = advance()
        if kind == "op" and val == "(":
            el = expr()
            kind, val = advance()
            if not (kind == "op" and val == ")"):
                raise JacobsonError("expected ')'")
            return el
        if kind == "id":
            return jac_x(field) if val == "x" else jac_y(field)
        raise JacobsonError("expected x, y or '('")

    el = expr()
    if peek()[0] != "end":
        raise JacobsonError("trailing input %r" % peek()[1])
    return el


class AlmostToeplitzMatrix:
    """Exact N x N matrix of the form (finitary) + sum_k band[k] c^(k).

    c^(k) is the constant diagonal sum_{j-i=k} e_ij over rows and columns
    >= 1.  The class is closed under add, mul and transpose; band-band
    products re-enter the form with an explicit finitary correction, so no
    truncation ever happens.
    """

    __slots__ = ("field", "finitary", "band")

    def __init__(self, field, finitary=None, band=None):
        self.field = field
        self.finitary = {k: c for k, c in (finitary or {}).items() if c}
        self.band = {k: c for k, c in (band or {}).items() if c}

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def identity(cls, field):
        return cls(field, band={0: field.one()})

    @classmethod
    def unit(cls, field, i, j, coeff=None):
        return cls(field, finitary={(i, j): coeff if coeff is not None else field.one()})

    @classmethod
    def shift_down(cls, field):
        """The matrix sum e_{i+1,i} (image of y)."""
        return cls(field, band={-1: field.one()})

    @classmethod
    def shift_up(cls, field):
        """The matrix sum e_{i,i+1} (image of x)."""
        return cls(field, band={1: field.one()})

    def _compat(self, other):
        if self.field != other.field:
            raise JacobsonError("matrices over different fields")

    def entry(self, i, j):
        v = self.field.zero()
        b = self.band.get(j - i)
        if b:
            v = v + b
        f = self.finitary.get((i, j))
        if f:
            v = v + f
        return v

    def __add__(self, other):
        self._compat(other)
        fin = dict(self.finitary)
        for k, c in other.finitary.items():
            acc = fin.get(k, self.field.zero()) + c
            if acc:
                fin[k] = acc
            else:
                fin.pop(k, None)
        band = dict(self.band)
        for k, c in other.band.items():
            acc = band.get(k, self.field.zero()) + c
            if acc:
                band[k] = acc
            else:
                band.pop(k, None)
        return AlmostToeplitzMatrix(self.field, fin, band)

    def __neg__(self):
        return AlmostToeplitzMatrix(
            self.field,
            {k: -c for k, c in self.finitary.items()},
            {k: -c for k, c in self.band.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        return AlmostToeplitzMatrix(
            self.field,
            {k: c * scalar for k, c in self.finitary.items()},
            {k: c * scalar for k, c in self.band.items()},
        )

    def __mul__(self, other):
        self._compat(other)
        zero = self.field.zero()
        fin = {}
        band = {}

        def fadd(key, c):
            acc = fin.get(key, zero) + c
            if acc:
                fin[key] = acc
            else:
                fin.pop(key, None)

        # band x band: c^(k) c^(l) = c^(k+l) minus the rows whose middle
        # index i + k would fall below 1
        for k, c1 in self.band.items():
            for l, c2 in other.band.items():
                c = c1 * c2
                key = k + l
                acc = band.get(key, zero) + c
                if acc:
                    band[key] = acc
                else:
                    band.pop(key, None)
                if k < 0:
                    lo = max(1, 1 - (k + l))
                    for i in range(lo, -k + 1):
                        fadd((i, i + k + l), -c)
        # band x finitary: c^(k) e_ab = e_{a-k, b}
        for k, c1 in self.band.items():
            for (a, b), c2 in other.finitary.items():
                if a - k >= 1:
                    fadd((a - k, b), c1 * c2)
        # finitary x band: e_ab c^(k) = e_{a, b+k}
        for (a, b), c1 in self.finitary.items():
            for k, c2 in other.band.items():
                if b + k >= 1:
                    fadd((a, b + k), c1 * c2)
        # finitary x finitary
        cols = {}
        for (a, b), c in other.finitary.items():
            cols.setdefault(a, []).append((b, c))
        for (a, b), c1 in self.finitary.items():
            for (b2, c2) in cols.get(b, []):
                fadd((a, b2), c1 * c2)
        return AlmostToeplitzMatrix(self.field, fin, band)

    def transpose(self):
        return AlmostToeplitzMatrix(
            self.field,
            {(j, i): c for (i, j), c in self.finitary.items()},
            {-k: c for k, c in self.band.items()},
        )

    def is_finitary(self):
        return not self.band

    def is_symmetric(self):
        return self == self.transpose()

    def __eq__(self, other):
        return (
            isinstance(other, AlmostToeplitzMatrix)
            and self.field == other.field
            and self.finitary == other.finitary
            and self.band == other.band
        )

    def __bool__(self):
        return bool(self.finitary) or bool(self.band)

    def support_bound(self):
        """Least n with all finitary entries inside the n x n corner."""
        n = 0
        for (i, j) in self.finitary:
            n = max(n, i, j)
        return n

    def block(self, n):
        """Dense n x n top-left block as lists of Scalars."""
        return [[self.entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]

    def to_json(self):
        return {
            "finitary": [
                [i, j, str(c)] for (i, j), c in sorted(self.finitary.items())
            ],
            "band": [[k, str(c)] for k, c in sorted(self.band.items())],
        }

    def __repr__(self):
        return "AlmostToeplitz(band=%r, finitary=%r)" % (
            {k: str(c) for k, c in sorted(self.band.items())},
            {k: str(c) for k, c in sorted(self.finitary.items())},
        )


def invert_id_plus_finitary(m):
    """Inverse of a matrix of the form alpha Id + finitary; None if singular.

    Works on the finite block where the matrix differs from its diagonal
    scalar; outside it the inverse is alpha^-1 Id.
    """
    alpha = m.band.get(0)
    if alpha is None or set(m.band) - {0}:
        raise JacobsonError("matrix is not of the form alpha Id + finitary")
    n = m.support_bound()
    if n == 0:
        return AlmostToeplitzMatrix(m.field, band={0: m.field.inv(alpha)})
    inv_block = invert_block(m.field, m.block(n), n)
    if inv_block is None:
        return None
    inv_alpha = m.field.inv(alpha)
    fin = {}
    for i in range(n):
        for j in range(n):
            c = inv_block[i][j]
            if i == j:
                c = c - inv_alpha
            if c:
                fin[(i + 1, j + 1)] = c
    return AlmostToeplitzMatrix(m.field, fin, {0: inv_alpha})


def jac_to_matrix(a):
    """Faithful homomorphism y -> lower shift, x -> upper shift.

    y^i x^j maps to sum_{r >= 1} e_{r+i, r+j}: the band c^(j-i) minus its
    first min(i, j) entries.  Computed through the exact band arithmetic.
    """
    field = a.field
    down = AlmostToeplitzMatrix.shift_down(field)
    up = AlmostToeplitzMatrix.shift_up(field)
    powers = {}

    def power(base, n, tag):
        key = (tag, n)
        if key not in powers:
            m = AlmostToeplitzMatrix.identity(field)
            for _ in range(n):
                m = m * base
            powers[key] = m
        return powers[key]

    out = AlmostToeplitzMatrix.zero(field)
    for (i, j), c in a.terms.items():
        out = out + (power(down, i, "y") * power(up, j, "x")).scale(c)
    return out


def jac_quotient_laurent(a):
    """Quotient map y -> t, x -> t^-1 onto F[t, t^-1]."""
    from .laurent import LaurentPoly

    out = LaurentPoly.zero(a.field)
    for (i, j), c in a.terms.items():
        out = out + LaurentPoly.monomial(a.field, i - j, c)
    return out


def matrix_to_jacobson(field, fin):
    """Finitary matrix-unit support back to a normal-form element."""
    out = jac_zero(field)
    for (i, j), c in fin.items():
        out = out + jac_matrix_unit(field, i, j).scale(c)
    return out


@dataclass
class DescentState:
    P: set  # row-index set P(b)
    measures: list  # |a|, |b a|, ... until membership in rho
    N: int  # first k with b^k a in rho


def _rows_outside(fin, P):
    return [i for (i, j) in fin if i not in P and fin[(i, j)]]


def descent_measure(a, b, extra_steps=5):
    """Trace the descent of |b^k a| into the right ideal rho.

    a must be a finitary element (in the matrix-unit span); b must map to
    t^-1 in the Laurent quotient, i.e. b = x + finitary part.  Returns the
    strictly decreasing measure sequence and the first index N with
    b^N a in rho, having checked membership up to N + extra_steps.
    """
    from .laurent import LaurentPoly

    field = a.field
    if jac_quotient_laurent(b) != LaurentPoly.monomial(field, -1):
        raise JacobsonError("b does not map to t^-1 in the quotient")
    ma = jac_to_matrix(a)
    if not ma.is_finitary():
        raise JacobsonError("a is not in the finitary ideal")
    b_fin = jac_to_matrix(b - jac_x(field))
    if not b_fin.is_finitary():
        raise JacobsonError("b - x is not finitary")
    P = {i for (i, j) in b_fin.finitary}
    measures = []
    current = a
    k = 0
    while True:
        fin = jac_to_matrix(current).finitary
        outside = _rows_outside(fin, P)
        if not outside:
            break
        measures.append(max(outside))
        current = b * current
        k += 1
        if k > 10000:
            raise AssertionError("descent did not terminate")
    N = max(k, 1)
    # confirm stability: b^k a stays in rho for a few more steps
    probe = current
    for _ in range(extra_steps):
        probe = b * probe
        fin = jac_to_matrix(probe).finitary
        if _rows_outside(fin, P):
            raise AssertionError("membership in rho not stable")
    return DescentState(P=P, measures=measures, N=N)


def corner_dimension(field, n):
    """dim span{(1 - yx) w : w a word of length <= n}, computed by rank.

    Every word of length <= n normalizes to some y^i x^j with i + j <= n,
    so the span is generated by (1 - yx) y^i x^j over that range.
    """
    e11 = jac_matrix_unit(field, 1, 1)
    basis = SpanBasis(field)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            el = e11 * jac_monomial(field, i, j)
            if el:
                basis.add(el.coordinates())
    return basis.rank


@dataclass
class RefutationCertificate:
    kind: str  # "closure_failure" | "dimension_contradiction"
    truncation: int
    P_rows: set
    P_cols: set
    dim_rho_cap_sigma: int
    corner_dims: list  # corner_dimension(0..n)
    witness: JacobsonElement | None = None

    def to_dict(self):
        return {
            "kind": self.kind,
            "truncation": self.truncation,
            "P_rows": sorted(self.P_rows),
            "P_cols": sorted(self.P_cols),
            "dim_rho_cap_sigma": self.dim_rho_cap_sigma,
            "corner_dims": list(self.corner_dims),
            "witness": self.witness.format() if self.witness else None,
        }


def splitting_probe(b1, bm1, b0, n):
    """Refute a candidate splitting of the finitary ideal extension.

    The candidate is a triple mapping to (t^-1, t, 1) in the Laurent
    quotient, with b0 the would-be identity of the lifted subalgebra.
    Either the triple fails to close (b1 bm1 != b0, impossible for a
    genuine lift), or the corner dimensions (1 - yx) A grow past the
    finite bound dim(rho intersect sigma) that a splitting would force.
    """
    from .laurent import LaurentPoly

    field = b1.field
    if jac_quotient_laurent(b1) != LaurentPoly.monomial(field, -1):
        raise JacobsonError("b1 does not map to t^-1")
    if jac_quotient_laurent(bm1) != LaurentPoly.monomial(field, 1):
        raise JacobsonError("bm1 does not map to t")
    if jac_quotient_laurent(b0) != LaurentPoly.one(field):
        raise JacobsonError("b0 does not map to 1")
    p_rows = {i for (i, j) in jac_to_matrix(b1 - jac_x(field)).finitary}
    p_cols = {j for (i, j) in jac_to_matrix(bm1 - jac_y(field)).finitary}
    dim_rs = len(p_rows) * len(p_cols)
    corner_dims = [corner_dimension(field, m) for m in range(n + 1)]
    closure_defect = b1 * bm1 - b0
    if closure_defect:
        return RefutationCertificate(
            kind="closure_failure",
            truncation=n,
            P_rows=p_rows,
            P_cols=p_cols,
            dim_rho_cap_sigma=dim_rs,
            corner_dims=corner_dims,
            witness=closure_defect,
        )
    if corner_dims[-1] > dim_rs:
        return RefutationCertificate(
            kind="dimension_contradiction",
            truncation=n,
            P_rows=p_rows,
            P_cols=p_cols,
            dim_rho_cap_sigma=dim_rs,
            corner_dims=corner_dims,
        )
    raise JacobsonError(
        "truncation %d too small to exhibit a contradiction; increase n" % n
    )

"""Automorphisms and involutions of the Toeplitz algebra in its matrix model.

An automorphism is stored as a pair (alpha, g): a nonzero scalar acting
through the geometric diagonal diag(1, alpha, alpha^2, ...) and an
invertible finitary perturbation of the identity.  The diagonal is never
materialized; its conjugation action scales entry (i, j) by alpha^(j-i),
which keeps everything inside the almost-Toeplitz forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import NoSquareRoot
from .jacobson import AlmostToeplitzMatrix, invert_id_plus_finitary

__all__ = [
    "ToeplitzAutomorphism",
    "Involution",
    "AutomorphismError",
    "pi_conjugate",
    "aut_apply",
    "aut_compose",
    "aut_invert",
    "induced_scalar",
    "reconstruct_conjugator",
    "involution_apply",
    "congruence_decompose",
    "involution_equivalence",
    "StuckAlternatingBlock",
]


class AutomorphismError(ValueError):
    pass


class StuckAlternatingBlock(AutomorphismError):
    """Symmetric elimination met an all-zero diagonal block it cannot pivot."""


def _scalar_pow(field, alpha, n):
    if n >= 0:
        r = field.one()
        for _ in range(n):
            r = r * alpha
        return r
    return field.inv(_scalar_pow(field, alpha, -n))


def pi_conjugate(alpha, m):
    """diag(1, alpha, alpha^2, ...)^-1 . m . diag(...): entry (i, j) picks
    up alpha^(j-i), bands pick up alpha^k per offset k."""
    field = m.field
    if not alpha:
        raise AutomorphismError("alpha must be nonzero")
    fin = {
        (i, j): c * _scalar_pow(field, alpha, j - i)
        for (i, j), c in m.finitary.items()
    }
    band = {k: c * _scalar_pow(field, alpha, k) for k, c in m.band.items()}
    return AlmostToeplitzMatrix(field, fin, band)


@dataclass(frozen=True)
class ToeplitzAutomorphism:
    """Conjugation by pi(alpha) g with g = Id + finitary, invertible."""

    alpha: object  # nonzero Scalar
    g: AlmostToeplitzMatrix

    def __post_init__(self):
        if not self.alpha:
            raise AutomorphismError("alpha must be nonzero")
        if self.g.band != {0: self.g.field.one()}:
            raise AutomorphismError("g must be Id + finitary")
        if invert_id_plus_finitary(self.g) is None:
            raise AutomorphismError("g is singular")

    @classmethod
    def identity(cls, field):
        return cls(field.one(), AlmostToeplitzMatrix.identity(field))

    def to_dict(self):
        return {"alpha": str(self.alpha), "g": self.g.to_json()}


def aut_apply(phi, a):
    """phi acting on a: (pi(alpha) g)^-1 . a . (pi(alpha) g), exactly."""
    g_inv = invert_id_plus_finitary(phi.g)
    out = g_inv * pi_conjugate(phi.alpha, a) * phi.g
    return out


def aut_compose(phi, psi):
    """The automorphism acting as phi followed by psi.

    Conjugators multiply: pi(a) g . pi(b) h = pi(ab) . (pi(b)^-1 g pi(b)) . h,
    and the middle factor stays Id + finitary, which keeps the semidirect
    normal form explicit.
    """
    g_moved = pi_conjugate(psi.alpha, phi.g)
    return ToeplitzAutomorphism(phi.alpha * psi.alpha, g_moved * psi.g)


def aut_invert(phi):
    field = phi.g.field
    g_inv = invert_id_plus_finitary(phi.g)
    alpha_inv = field.inv(phi.alpha)
    return ToeplitzAutomorphism(alpha_inv, pi_conjugate(alpha_inv, g_inv))


def induced_scalar(phi):
    """The scalar a of the induced quotient map t -> a t (read off the
    band of the image of the lower shift; always alpha^-1 here)."""
    field = phi.g.field
    c = AlmostToeplitzMatrix.shift_down(field)
    image = aut_apply(phi, c)
    a = image.band.get(-1, field.zero())
    assert a == field.inv(phi.alpha), "quotient scalar must be alpha^-1"
    assert set(image.band) == {-1}, "image of the shift must stay single-banded"
    return a


def matrix_unit(field, i, j):
    return AlmostToeplitzMatrix.unit(field, i, j)


def reconstruct_conjugator(field, images, m):
    """Recover the conjugator from the images of e_j1 and e_1j, j <= m.

    images: dict with keys ("col", j) -> phi(e_j1) and ("row", j) -> phi(e_1j)
    as finitary AlmostToeplitzMatrix values.  Returns S, normalized so the
    first nonzero entry of its first column is 1, with
    phi(e_ij) = S^-1 e_ij S on the corner.  S is unique up to a scalar.

    The conjugator is assumed to be scalar (Id + finitary) with the
    perturbation supported strictly inside the m-corner; that is the only
    shape expressible in the almost-Toeplitz return type.
    """
    e11_img = images[("col", 1)]
    if images[("row", 1)] != e11_img:
        raise AutomorphismError("inconsistent images of the corner idempotent")
    if e11_img * e11_img != e11_img:
        raise AutomorphismError("image of e_11 is not idempotent")
    for j in range(1, m + 1):
        prod = images[("row", j)] * images[("col", j)]
        if prod != e11_img:
            raise AutomorphismError(
                "images violate e_1%d e_%d1 = e_11" % (j, j)
            )
        if not images[("col", j)] * images[("row", j)]:
            raise AutomorphismError("image of e_%d%d vanished" % (j, j))
    # fixed vector: a nonzero column of the idempotent phi(e_11)
    cols = {}
    for (i, j), c in e11_img.finitary.items():
        cols.setdefault(j, {})[i] = c
    w = None
    for j in sorted(cols):
        if any(c for c in cols[j].values()):
            w = cols[j]
            break
    if w is None:
        raise AutomorphismError("no fixed vector for the corner idempotent")
    # columns of M: M eps_j = phi(e_j1) w; then phi(a) = M a M^-1 and the
    # conjugator in the orientation phi(a) = S^-1 a S is M^-1
    n = m
    col_vectors = {}
    for j in range(1, m + 1):
        img = images[("col", j)]
        vec = {}
        for (r, c), coeff in img.finitary.items():
            if c in w:
                acc = vec.get(r, field.zero()) + coeff * w[c]
                if acc:
                    vec[r] = acc
                else:
                    vec.pop(r, None)
        if not vec:
            raise AutomorphismError("degenerate image of e_%d1" % j)
        col_vectors[j] = vec
        n = max(n, max(vec))
    # beyond the given corner the conjugator is assumed scalar; infer the
    # scalar from the deepest available diagonal entry
    lam = col_vectors[m].get(m)
    if lam is None or not lam:
        raise AutomorphismError(
            "corner too small: column %d has no diagonal entry" % m
        )
    fin = {}
    for j, vec in col_vectors.items():
        for i, c in vec.items():
            fin[(i, j)] = c
    M = AlmostToeplitzMatrix(field, band={0: lam})
    for (i, j), c in fin.items():
        d = c - (lam if i == j else field.zero())
        if d:
            M = M + AlmostToeplitzMatrix.unit(field, i, j, d)
    M_scaled = M.scale(field.inv(lam))
    S = invert_id_plus_finitary(M_scaled)
    if S is None:
        raise AutomorphismError("reconstructed conjugator is singular")
    # gauge: first nonzero entry of the first column equals 1
    first_col = {}
    for (i, j), c in S.finitary.items():
        if j == 1:
            first_col[i] = first_col.get(i, field.zero()) + c
    first_col[1] = first_col.get(1, field.zero()) + S.band.get(0, field.zero())
    pivot = next(
        (first_col[i] for i in sorted(first_col) if first_col[i]), None
    )
    if pivot is None:
        raise AutomorphismError("reconstructed conjugator has a zero column")
    S = S.scale(field.inv(pivot))
    # verify on the corner
    S_inv = _invert_scalar_plus_finitary(S)
    for i in range(1, m + 1):
        expected = S_inv * matrix_unit(field, i, 1) * S
        if expected != images[("col", i)]:
            raise AutomorphismError("reconstruction failed on e_%d1" % i)
        expected = S_inv * matrix_unit(field, 1, i) * S
        if expected != images[("row", i)]:
            raise AutomorphismError("reconstruction failed on e_1%d" % i)
    return S


def _invert_scalar_plus_finitary(m):
    """Inverse of alpha Id + finitary for nonzero alpha."""
    field = m.field
    alpha = m.band.get(0)
    if not alpha:
        raise AutomorphismError("not of the form alpha Id + finitary")
    scaled = m.scale(field.inv(alpha))
    inv = invert_id_plus_finitary(scaled)
    if inv is None:
        raise AutomorphismError("matrix is singular")
    return inv.scale(field.inv(alpha))


@dataclass(frozen=True)
class Involution:
    """a -> T^-1 a^t T for a symmetric invertible T = alpha Id + finitary."""

    T: AlmostToeplitzMatrix

    def __post_init__(self):
        if set(self.T.band) - {0} or not self.T.band.get(0):
            raise AutomorphismError("T must be alpha Id + finitary")
        if not self.T.is_symmetric():
            raise AutomorphismError("T must be symmetric")
        if _try_invert(self.T) is None:
            raise AutomorphismError("T is singular")

    @classmethod
    def standard(cls, field):
        return cls(AlmostToeplitzMatrix.identity(field))


def _try_invert(t):
    try:
        return _invert_scalar_plus_finitary(t)
    except AutomorphismError:
        return None


def involution_apply(iota, a):
    t_inv = _invert_scalar_plus_finitary(iota.T)
    return t_inv * a.transpose() * iota.T


def congruence_decompose(T):
    """Q with Q^t Q = T, for symmetric invertible T = alpha Id + finitary.

    Needs sqrt(alpha) and square roots of the pivots met during symmetric
    elimination on the block where T differs from alpha Id; raises
    NoSquareRoot when the field cannot supply one and StuckAlternatingBlock
    when every remaining diagonal entry vanishes (possible only in
    characteristic 2).
    """
    field = T.field
    alpha = T.band.get(0)
    if alpha is None or set(T.band) - {0}:
        raise AutomorphismError("T must be alpha Id + finitary")
    if not T.is_symmetric():
        raise AutomorphismError("T must be symmetric")
    sqrt_alpha = field.sqrt(alpha)
    if isinstance(sqrt_alpha, NoSquareRoot):
        raise NoSquareRootError(alpha)
    n = T.support_bound()
    if n == 0:
        return AlmostToeplitzMatrix(field, band={0: sqrt_alpha})
    # normalize to Id + block and decompose the block
    inv_alpha = field.inv(alpha)
    M = [[T.entry(i, j) * inv_alpha for j in range(1, n + 1)] for i in range(1, n + 1)]
    remaining = list(range(n))
    q_rows = []
    zero = field.zero()
    while remaining:
        pivot = next((i for i in remaining if M[i][i]), None)
        if pivot is None:
            raise StuckAlternatingBlock(
                "all remaining diagonal entries are zero"
            )
        s = field.sqrt(M[pivot][pivot])
        if isinstance(s, NoSquareRoot):
            raise NoSquareRootError(M[pivot][pivot])
        inv_piv = field.inv(M[pivot][pivot])
        row = {j: M[pivot][j] / s for j in remaining if M[pivot][j]}
        q_rows.append(row)
        remaining.remove(pivot)
        for i in remaining:
            if M[i][pivot]:
                c = M[i][pivot] * inv_piv
                for j in remaining:
                    M[i][j] = M[i][j] - c * M[pivot][j]
    # assemble: Q_block rows stacked in pivot order, block embedded in Id
    blk = {}
    for r, row in enumerate(q_rows, start=1):
        for j, c in row.items():
            blk[(r, j + 1)] = c
    fin = {}
    one = field.one()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            d = blk.get((i, j), zero) - (one if i == j else zero)
            if d:
                fin[(i, j)] = d
    Q = AlmostToeplitzMatrix(field, fin, band={0: one}).scale(sqrt_alpha)
    assert Q.transpose() * Q == T, "congruence decomposition must be exact"
    return Q


class NoSquareRootError(AutomorphismError):
    def __init__(self, value):
        self.value = value
        super().__init__("no square root of %s in the field" % value)


def involution_equivalence(iota):
    """Q intertwining iota with plain transposition:
    transpose(Q a Q^-1) = Q iota(a) Q^-1 for all a.  Propagates
    NoSquareRootError / StuckAlternatingBlock from the decomposition."""
    return congruence_decompose(iota.T)

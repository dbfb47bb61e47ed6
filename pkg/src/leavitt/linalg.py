"""Exact incremental Gaussian elimination over sparse coordinate dicts.

Rows are dicts mapping arbitrary hashable coordinates to nonzero Scalars.
Used for span dimensions, basis extraction and finite-block inversion.
"""

from __future__ import annotations

__all__ = ["SpanBasis", "span_rank", "invert_block"]


class SpanBasis:
    """Maintains a reduced basis of sparse rows; supports rank queries."""

    def __init__(self, field):
        self.field = field
        self.pivots = {}  # pivot coordinate -> reduced row (pivot coeff = 1)

    def reduce(self, row):
        """Reduce a row against the basis; returns the (possibly zero) residue."""
        row = dict(row)
        # pivot rows may contain later pivots, so iterate to a fixed point;
        # each elimination only reintroduces pivots inserted after it
        while True:
            hit = next((c for c in row if c in self.pivots), None)
            if hit is None:
                break
            c = row[hit]
            for k, v in self.pivots[hit].items():
                acc = row.get(k, self.field.zero()) - c * v
                if acc:
                    row[k] = acc
                else:
                    row.pop(k, None)
        return row

    def add(self, row):
        """Insert a row; returns True if it enlarged the span."""
        residue = self.reduce(row)
        if not residue:
            return False
        pivot = next(iter(residue))
        inv = self.field.inv(residue[pivot])
        normalized = {k: v * inv for k, v in residue.items()}
        self.pivots[pivot] = normalized
        return True

    def contains(self, row):
        return not self.reduce(row)

    @property
    def rank(self):
        return len(self.pivots)


def span_rank(field, rows):
    basis = SpanBasis(field)
    for row in rows:
        basis.add(row)
    return basis.rank


def invert_block(field, block, n):
    """Invert an n x n dense matrix (list of lists of Scalars); None if singular."""
    zero, one = field.zero(), field.one()
    aug = [
        [block[i][j] for j in range(n)]
        + [one if i == j else zero for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = field.inv(aug[col][col])
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]

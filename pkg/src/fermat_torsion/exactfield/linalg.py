"""Dense exact linear algebra over a tower field."""

from __future__ import annotations

from .element import FieldElement, field_dot
from .tower import Q, Tower, TowerMismatchError

__all__ = ["ExactMatrix", "nullspace", "solve", "SingularMatrixError"]


class SingularMatrixError(ArithmeticError):
    pass


class ExactMatrix:
    """Row-major matrix of field elements sharing one tower."""

    __slots__ = ("rows", "cols", "tower", "entries")

    def __init__(self, rows: int, cols: int, entries, tower: Tower | None = None):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        if tower is None:
            tower = next(
                (e.tower for e in entries if isinstance(e, FieldElement) and e.tower is not Q), Q
            )
        coerced = []
        for e in entries:
            if isinstance(e, FieldElement) and e.tower is not tower and e.tower is not Q:
                raise TowerMismatchError(f"entry in {e.tower.id}, matrix in {tower.id}")
            coerced.append(FieldElement.coerce(e, tower))
        self.rows = rows
        self.cols = cols
        self.tower = tower
        self.entries = tuple(coerced)

    @classmethod
    def from_rows(cls, rows, tower: Tower | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r], tower)

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def apply(self, vec):
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [field_dot(self.row(i), vec) for i in range(self.rows)]

    def permute_rows(self, perm) -> "ExactMatrix":
        rows = self.to_rows()
        return ExactMatrix.from_rows([rows[p] for p in perm], self.tower)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, tower={self.tower.id})"


def _echelon(rows, ncols):
    """In-place Gaussian elimination; returns pivot columns.

    Each pivot row is scaled to have pivot 1, which costs one inversion per
    pivot but keeps entry sizes flat.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = r
        while p < nrows and not rows[p][c]:
            p += 1
        if p == nrows:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        pr = [e * inv if e else e for e in rows[r]]
        rows[r] = pr
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def nullspace(m: ExactMatrix) -> list[list[FieldElement]]:
    """Basis of the right kernel of ``m``; empty iff full column rank.

    Vector ``k`` of the basis has a 1 in the k-th free column and zeros in the
    other free columns.
    """
    rows = [list(r) for r in m.to_rows()]
    pivots = _echelon(rows, m.cols)
    free = [c for c in range(m.cols) if c not in pivots]
    zero = m.tower.zero()
    one = m.tower.one()
    basis = []
    for f in free:
        x = [zero] * m.cols
        x[f] = one
        for k, c in enumerate(pivots):
            x[c] = -rows[k][f]
        basis.append(x)
    return basis


def rank(m: ExactMatrix) -> int:
    rows = [list(r) for r in m.to_rows()]
    return len(_echelon(rows, m.cols))


def solve(m: ExactMatrix, rhs) -> list[FieldElement]:
    """Unique solution of ``m x = rhs`` for square nonsingular ``m``."""
    if m.rows != m.cols or len(rhs) != m.rows:
        raise ValueError("solve needs a square system")
    tower = m.tower
    rows = [r + [FieldElement.coerce(b, tower)] for r, b in zip(m.to_rows(), rhs)]
    pivots = _echelon(rows, m.cols)
    if len(pivots) < m.cols:
        raise SingularMatrixError("matrix is singular")
    return [rows[i][m.cols] for i in range(m.cols)]

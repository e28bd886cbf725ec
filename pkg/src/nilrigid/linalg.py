"""Exact Gaussian elimination over the rationals.

Matrices are lists of rows, rows are lists of Fraction.  Pivoting is always
"first nonzero in column order", so every result (rref, nullspace, solved
coordinates) is deterministic for a given input.  The matrices showing up in
the cochain complexes are sparse with small entries, so plain rational
elimination with zero-skipping is fast enough at the scales we need; this
module is the single place to swap in a modular fast path if that ever
changes.
"""

from __future__ import annotations

from fractions import Fraction

Row = list[Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rref(rows: list[Row], ncols: int | None = None) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form of the row span.

    Returns (nonzero rows, pivot column per row).  Input rows are not
    modified.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    work: list[Row] = []
    pivots: list[int] = []
    for row in rows:
        r = list(row)
        # reduce against existing pivots
        for prow, pc in zip(work, pivots):
            f = r[pc]
            if f:
                for j, x in enumerate(prow):
                    if x:
                        r[j] -= f * x
        # find leading entry
        lead = -1
        for j in range(ncols):
            if r[j]:
                lead = j
                break
        if lead < 0:
            continue
        inv = _ONE / r[lead]
        if inv != 1:
            r = [x * inv if x else x for x in r]
        # back-substitute into earlier rows
        for prow, pc in zip(work, pivots):
            f = prow[lead]
            if f:
                for j, x in enumerate(r):
                    if x:
                        prow[j] -= f * x
        # keep rows ordered by pivot column
        pos = 0
        while pos < len(pivots) and pivots[pos] < lead:
            pos += 1
        work.insert(pos, r)
        pivots.insert(pos, lead)
    return work, pivots


def rank(rows: list[Row], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[0])


def nullspace(rows: list[Row], ncols: int) -> list[Row]:
    """Basis of {v : A v = 0} for the matrix with the given rows.

    Vectors come out with a 1 in their free coordinate and are ordered by
    that coordinate.
    """
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis: list[Row] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [_ZERO] * ncols
        v[free] = _ONE
        for prow, pc in zip(red, pivots):
            if prow[free]:
                v[pc] = -prow[free]
        basis.append(v)
    return basis


def in_rowspan(red: list[Row], pivots: list[int], v: Row) -> bool:
    """Membership test against a precomputed rref basis."""
    r = list(v)
    for prow, pc in zip(red, pivots):
        f = r[pc]
        if f:
            for j, x in enumerate(prow):
                if x:
                    r[j] -= f * x
    return not any(r)


def identity(n: int) -> list[Row]:
    return [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]


def mat_vec(rows: list[Row], v: Row) -> Row:
    out = []
    for row in rows:
        s = _ZERO
        for a, b in zip(row, v):
            if a and b:
                s += a * b
        out.append(s)
    return out


def invert(rows: list[Row]) -> list[Row] | None:
    """Inverse of a square matrix, or None if singular."""
    n = len(rows)
    aug = [list(row) + ident_row for row, ident_row in zip(rows, identity(n))]
    red, pivots = rref(aug, 2 * n)
    if pivots[: n if len(pivots) >= n else len(pivots)] != list(range(n)):
        return None
    return [row[n:] for row in red]


class ColumnSolver:
    """Factor a column matrix once, then solve M x = b for many b.

    Elimination is recorded in a transform T with R = T M in reduced row
    echelon form; each solve is then a couple of dot products.
    """

    def __init__(self, columns: list[Row], nrows: int):
        self.ncols = len(columns)
        self.nrows = nrows
        rows = [[col[i] for col in columns] for i in range(nrows)]
        transform = identity(nrows)
        pivots: list[int] = []
        pivot_rows: list[int] = []
        used = [False] * nrows
        for col in range(self.ncols):
            piv = -1
            for i in range(nrows):
                if not used[i] and rows[i][col]:
                    piv = i
                    break
            if piv < 0:
                continue
            inv = _ONE / rows[piv][col]
            if inv != 1:
                rows[piv] = [x * inv if x else x for x in rows[piv]]
                transform[piv] = [x * inv if x else x for x in transform[piv]]
            prow = rows[piv]
            ptrans = transform[piv]
            pnz = [j for j, x in enumerate(prow) if x]
            tnz = [j for j, x in enumerate(ptrans) if x]
            for i in range(nrows):
                if i == piv:
                    continue
                f = rows[i][col]
                if f:
                    ri = rows[i]
                    ti = transform[i]
                    for j in pnz:
                        ri[j] -= f * prow[j]
                    for j in tnz:
                        ti[j] -= f * ptrans[j]
            used[piv] = True
            pivots.append(col)
            pivot_rows.append(piv)
        self._transform = transform
        self._pivots = pivots
        self._pivot_rows = pivot_rows
        self._spare_rows = [i for i in range(nrows) if not used[i]]

    def solve(self, b: Row) -> Row | None:
        """Coordinates x with M x = b, free coordinates set to 0."""
        bnz = [(i, v) for i, v in enumerate(b) if v]

        def tdot(row: Row) -> Fraction:
            s = _ZERO
            for i, v in bnz:
                if row[i]:
                    s += row[i] * v
            return s

        for i in self._spare_rows:
            if tdot(self._transform[i]):
                return None
        x = [_ZERO] * self.ncols
        for col, prow in zip(self._pivots, self._pivot_rows):
            x[col] = tdot(self._transform[prow])
        return x

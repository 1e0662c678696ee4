"""Exact linear algebra over the rationals.

Matrices are plain lists of lists of Fraction.  Everything here is small and
dense; the callers (kernel extraction, flat intersection, line solving) work
with matrices of at most a few hundred rows and a few dozen columns, so a
straightforward fraction-free-ish Gaussian elimination is plenty.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def mat_copy(m: Matrix) -> Matrix:
    return [row[:] for row in m]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.  Returns (rref matrix, pivot column indices)."""
    a = mat_copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Matrix, cols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column, in column order."""
    if not m:
        n = cols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(a: Matrix, b: list[Fraction]) -> list[Fraction] | None:
    """One solution of a x = b, or None if inconsistent.  Free variables are set to 0."""
    aug = [row[:] + [b[i]] for i, row in enumerate(a)]
    n = len(a[0]) if a else 0
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return x


def solve_full(a: Matrix, b: list[Fraction]) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Particular solution plus null-space basis, or None if inconsistent."""
    x = solve(a, b)
    if x is None:
        return None
    return x, nullspace(a)


class EchelonBasis:
    """Incrementally maintained row space, for cheap rank queries while rows stream in.

    Rows are reduced against the stored echelon rows as they are added; the
    stored basis always has one row per pivot column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: list[Fraction]) -> list[Fraction]:
        v = row[:]
        for r, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, r)]
        return v

    def add(self, row: list[Fraction]) -> bool:
        """Add a row; returns True if it increased the rank."""
        v = self.reduce(row)
        for c in range(self.ncols):
            if v[c] != 0:
                pv = v[c]
                v = [x / pv for x in v]
                # keep existing rows reduced against the new pivot
                for i, r in enumerate(self.rows):
                    if r[c] != 0:
                        f = r[c]
                        self.rows[i] = [x - f * y for x, y in zip(r, v)]
                self.rows.append(v)
                self.pivots.append(c)
                return True
        return False

    def would_add(self, rows: list[list[Fraction]]) -> int:
        """Rank increase if `rows` were added, without mutating the basis."""
        extra = EchelonBasis(self.ncols)
        gained = 0
        for row in rows:
            v = self.reduce(row)
            if extra.add(v):
                gained += 1
        return gained

    def snapshot(self) -> tuple[list[list[Fraction]], list[int]]:
        return [r[:] for r in self.rows], self.pivots[:]

    def restore(self, snap: tuple[list[list[Fraction]], list[int]]) -> None:
        self.rows = [r[:] for r in snap[0]]
        self.pivots = snap[1][:]

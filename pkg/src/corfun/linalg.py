"""Exact integer linear algebra: Bareiss rank/determinant, rational kernel, Smith form."""
from __future__ import annotations

from fractions import Fraction


class IntegerMatrix:
    """Dense matrix of Python ints."""

    def __init__(self, rows, ncols=None):
        self.rows = [list(map(int, r)) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def shape(self):
        return self.nrows, self.ncols

    def transpose(self):
        return IntegerMatrix([list(c) for c in zip(*self.rows)] if self.rows else [], self.nrows)

    def __matmul__(self, other):
        cols = list(zip(*other.rows)) if other.rows else [() for _ in range(other.ncols)]
        return IntegerMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
                             other.ncols)

    def apply(self, vec):
        return [sum(a * b for a, b in zip(r, vec)) for r in self.rows]

    def rank(self):
        return rank(self.rows)

    def __eq__(self, other):
        return isinstance(other, IntegerMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"IntegerMatrix({self.nrows}x{self.ncols})"


def _rows(M):
    return M.rows if isinstance(M, IntegerMatrix) else M


def bareiss(M):
    """Fraction-free row echelon form; returns (echelon rows, pivot columns, sign)."""
    A = [list(r) for r in _rows(M)]
    if not A:
        return A, [], 1
    m, n = len(A), len(A[0])
    prev, r, sign, pivots = 1, 0, 1, []
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            sign = -sign
        piv = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, n):
                row_i[j] = (piv * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        # columns left of c in rows below are already zero
        prev = piv
        pivots.append(c)
        r += 1
    return A, pivots, sign


def rank_mod2(M) -> int:
    """Rank over GF(2); rows packed into int bitsets.  Never exceeds the rational rank."""
    basis = {}
    r = 0
    for row in _rows(M):
        v = 0
        for j, a in enumerate(row):
            if a & 1:
                v |= 1 << j
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                r += 1
                break
    return r


def _distinct_nonzero(A):
    rows = list({tuple(r) for r in A if any(r)})
    if not rows:
        return []
    cols = list({c for c in zip(*rows) if any(c)})
    return cols


def rank(M) -> int:
    """Exact rank over Q.

    Duplicate and zero rows/columns are dropped first.  A GF(2) rank that already
    reaches the smaller dimension settles it (it is a lower bound); otherwise Bareiss.
    """
    A = _distinct_nonzero(_rows(M))
    if not A:
        return 0
    full = min(len(A), len(A[0]))
    if rank_mod2(A) == full:
        return full
    return len(bareiss(A)[1])


def determinant(M) -> int:
    A = _rows(M)
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    E, piv, sign = bareiss(A)
    if len(piv) < n:
        return 0
    return sign * E[n - 1][n - 1]


def kernel_basis(M, ncols=None):
    """Basis of the rational right kernel {v | M v = 0}, as lists of Fractions."""
    rows = [[Fraction(v) for v in r] for r in _rows(M)]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fcol]
        basis.append(v)
    return basis


def smith_normal_form(M):
    """Diagonal of the Smith normal form (length min(m, n)), each dividing the next."""
    A = [list(r) for r in _rows(M)]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # a smaller remainder appeared: move it to the pivot spot
            best = None
            for i in range(t, m):
                if A[i][t] and (best is None or abs(A[i][t]) < abs(A[best][t])):
                    best = i
            A[t], A[best] = A[best], A[t]
            bestj = None
            for j in range(t, n):
                if A[t][j] and (bestj is None or abs(A[t][j]) < abs(A[t][bestj])):
                    bestj = j
            for row in A:
                row[t], row[bestj] = row[bestj], row[t]
        t += 1
    diag = [abs(A[i][i]) for i in range(min(m, n))]
    return diag


def smith_divisors(M):
    """Nonzero elementary divisors."""
    return [d for d in smith_normal_form(M) if d]

"""Exact sparse linear algebra over the rationals.

Everything in this module is exact: entries are Python ints or
``fractions.Fraction``; floats are rejected at the door.  Rank and kernel
computations run a deterministic sparsity-aware elimination, so identical
inputs always produce identical outputs.

The integer Smith normal form lives here too, since it shares the sparse
matrix carrier.
"""

from __future__ import annotations

import heapq
from collections import deque
from fractions import Fraction


class SubspaceNotContained(ValueError):
    """A vector of the claimed subspace is outside the ambient span."""


def _exact(value):
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return value
    raise TypeError("exact rational entry required, got %r" % (value,))


class RationalMatrix:
    """Sparse matrix with exact rational entries.

    Stored entries are nonzero; absent entries are zero.  Instances are
    immutable after construction -- elimination always works on copies.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows, cols, entries=()):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        data = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for key, value in items:
            i, j = key
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError("entry (%d, %d) outside %dx%d matrix" % (i, j, rows, cols))
            value = _exact(value)
            if value:
                data[(i, j)] = value
        self._entries = data

    @classmethod
    def from_rows(cls, table):
        rows = len(table)
        cols = len(table[0]) if rows else 0
        entries = {}
        for i, row in enumerate(table):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, value in enumerate(row):
                if value:
                    entries[(i, j)] = _exact(value)
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    def entry(self, i, j):
        return self._entries.get((i, j), 0)

    def items(self):
        return iter(self._entries.items())

    def nnz(self):
        return len(self._entries)

    def is_zero(self):
        return not self._entries

    def is_integer(self):
        return all(isinstance(v, int) or v.denominator == 1 for v in self._entries.values())

    def transpose(self):
        return RationalMatrix(self.cols, self.rows,
                              {(j, i): v for (i, j), v in self._entries.items()})

    def column_dicts(self):
        """Column-major copy {j: {i: value}} for elimination routines."""
        cols = {}
        for (i, j), v in self._entries.items():
            cols.setdefault(j, {})[i] = v
        return cols

    def to_rows(self):
        table = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            table[i][j] = v
        return table

    def apply(self, vector):
        """Matrix times a length-``cols`` vector, returned as a tuple."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        out = [0] * self.rows
        for (i, j), v in self._entries.items():
            x = vector[j]
            if x:
                out[i] = out[i] + v * x
        return tuple(out)

    def compose(self, other):
        """self @ other, both sparse."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in composition")
        by_row = {}
        for (i, j), v in other._entries.items():
            by_row.setdefault(i, []).append((j, v))
        acc = {}
        for (i, k), v in self._entries.items():
            for j, w in by_row.get(k, ()):
                key = (i, j)
                s = acc.get(key, 0) + v * w
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return RationalMatrix(self.rows, other.cols, acc)

    def scaled(self, c):
        c = _exact(c)
        return RationalMatrix(self.rows, self.cols,
                              {k: c * v for k, v in self._entries.items()} if c else {})

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            s = acc.get(k, 0) + v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return RationalMatrix(self.rows, self.cols, acc)

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self._entries == other._entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self):
        return "RationalMatrix(%d, %d, nnz=%d)" % (self.rows, self.cols, len(self._entries))


# ---------------------------------------------------------------------------
# sparse rank

def _strip_singletons(cols, rows, rq, cq):
    """Eliminate pivots whose row or column has a single entry (zero fill)."""
    rank = 0
    while rq or cq:
        while rq:
            i = rq.popleft()
            js = rows.get(i)
            if js is None or len(js) != 1:
                continue
            (j,) = js
            for i2 in cols[j]:
                if i2 == i:
                    continue
                s = rows[i2]
                s.discard(j)
                if len(s) == 1:
                    rq.append(i2)
                elif not s:
                    del rows[i2]
            del cols[j]
            del rows[i]
            rank += 1
        while cq:
            j = cq.popleft()
            col = cols.get(j)
            if col is None or len(col) != 1:
                continue
            (i,) = col
            for j2 in rows[i]:
                if j2 == j:
                    continue
                c2 = cols[j2]
                del c2[i]
                if len(c2) == 1:
                    cq.append(j2)
                elif not c2:
                    del cols[j2]
            del cols[j]
            del rows[i]
            rank += 1
            break  # favor fresh row singletons before more column work
    return rank


def _pick_pivot_row(col, rows):
    """Deterministic pivot inside a column: unit entries first, then sparse rows."""
    best = None
    for i, v in col.items():
        unit = 0 if (v == 1 or v == -1) else 1
        key = (unit, len(rows[i]), i)
        if best is None or key < best[0]:
            best = (key, i, v)
    return best[1], best[2]


def sparse_rank(cols):
    """Rank of a sparse column dictionary {j: {i: value}}; consumes its input.

    Elimination is exact (int fast path for unit pivots, Fraction otherwise)
    and deterministic: singleton rows/columns are stripped first, remaining
    pivots are chosen by a fixed sparsity heuristic.
    """
    cols = {j: dict(col) for j, col in cols.items() if col}
    rows = {}
    for j, col in cols.items():
        for i in col:
            rows.setdefault(i, set()).add(j)
    rq = deque(sorted(i for i, js in rows.items() if len(js) == 1))
    cq = deque(sorted(j for j, col in cols.items() if len(col) == 1))
    rank = _strip_singletons(cols, rows, rq, cq)

    heap = [(len(col), j) for j, col in cols.items()]
    heapq.heapify(heap)
    while cols:
        while heap:
            length, j = heapq.heappop(heap)
            col = cols.get(j)
            if col is None:
                continue
            if len(col) != length:
                heapq.heappush(heap, (len(col), j))
                continue
            break
        else:
            break
        i, v = _pick_pivot_row(col, rows)
        pivot_col = [(i2, w) for i2, w in col.items() if i2 != i]
        unit = v == 1 or v == -1
        for j2 in sorted(rows[i]):
            if j2 == j:
                continue
            c2 = cols[j2]
            c = c2.pop(i)
            factor = c * v if unit else Fraction(c, 1) / v
            for i2, w in pivot_col:
                x = c2.get(i2, 0) - factor * w
                if isinstance(x, Fraction) and x.denominator == 1:
                    x = int(x)
                if x:
                    if i2 not in c2:
                        rows[i2].add(j2)
                    c2[i2] = x
                else:
                    if i2 in c2:
                        del c2[i2]
                        rows[i2].discard(j2)
            if not c2:
                del cols[j2]
            else:
                heapq.heappush(heap, (len(c2), j2))
                if len(c2) == 1:
                    cq.append(j2)
        for i2, _ in pivot_col:
            s = rows[i2]
            s.discard(j)
            if len(s) == 1:
                rq.append(i2)
            elif not s:
                del rows[i2]
        del cols[j]
        del rows[i]
        rank += 1
        rank += _strip_singletons(cols, rows, rq, cq)
    return rank


def rank(matrix):
    """Rank over Q, by exact sparse elimination."""
    return sparse_rank(matrix.column_dicts())


# ---------------------------------------------------------------------------
# dense reduced row echelon (for kernels, solves and basis bookkeeping)

def rref(table):
    """Reduced row-echelon form of a dense table; returns (rows, pivot_cols).

    Input rows are lists of ints/Fractions and are not modified.
    """
    m = [[Fraction(x) for x in row] for row in table]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def kernel_basis(matrix):
    """Exact basis of the null space of ``matrix``.

    One canonical vector per free column of the reduced echelon form, so the
    result is deterministic and has exactly ``cols - rank`` elements.
    """
    if isinstance(matrix, RationalMatrix):
        table = matrix.to_rows()
        ncols = matrix.cols
    else:
        table = [list(row) for row in matrix]
        ncols = len(table[0]) if table else 0
    if not table:
        return [tuple(1 if k == j else 0 for k in range(ncols)) for j in range(ncols)]
    reduced, pivots = rref(table)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(tuple(int(x) if x.denominator == 1 else x for x in vec))
    return basis


def _echelon_with_memory(vectors):
    """Row echelon over a list of vectors, remembering which inputs were kept.

    Returns (echelon_rows, kept_indices).  Used to extract deterministic
    bases of spans and to test membership incrementally.
    """
    echelon = []  # list of (lead_col, row)
    kept = []
    for idx, vec in enumerate(vectors):
        row = [Fraction(x) for x in vec]
        for lead, erow in echelon:
            if row[lead]:
                f = row[lead]
                row = [a - f * b for a, b in zip(row, erow)]
        lead = next((k for k, x in enumerate(row) if x), None)
        if lead is None:
            continue
        pv = row[lead]
        row = [x / pv for x in row]
        echelon.append((lead, row))
        echelon.sort(key=lambda t: t[0])
        kept.append(idx)
    return echelon, kept


def span_rank(vectors):
    return len(_echelon_with_memory(vectors)[0])


def in_span(echelon, vec):
    row = [Fraction(x) for x in vec]
    for lead, erow in echelon:
        if row[lead]:
            f = row[lead]
            row = [a - f * b for a, b in zip(row, erow)]
    return not any(row)


def quotient_dim(ambient, sub):
    """dim span(ambient) - dim span(sub); raises if sub is not contained."""
    if not ambient and not sub:
        return 0
    echelon, _ = _echelon_with_memory(ambient)
    for vec in sub:
        if not in_span(echelon, vec):
            raise SubspaceNotContained("subspace vector outside ambient span: %r" % (vec,))
    return len(echelon) - span_rank(sub)


def solve(columns, target):
    """Solve sum_k x_k * columns[k] = target exactly, or return None.

    ``columns`` is a list of vectors (the basis), ``target`` a vector of the
    same length.  Uses a dense augmented reduction; intended for the modest
    sizes that arise in homology bookkeeping.
    """
    n = len(target)
    k = len(columns)
    table = [[Fraction(columns[c][r]) for c in range(k)] + [Fraction(target[r])]
             for r in range(n)]
    reduced, pivots = rref(table) if table else ([], [])
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for r, p in enumerate(pivots):
        x[p] = reduced[r][k]
    # verify: guards against underdetermined junk
    for r in range(n):
        s = sum(Fraction(columns[c][r]) * x[c] for c in range(k))
        if s != target[r]:
            return None
    return tuple(int(v) if v.denominator == 1 else v for v in x)


# ---------------------------------------------------------------------------
# Smith normal form (integers)

class SmithForm:
    """Diagonalization U @ M @ V = D with unimodular U, V and d_1 | d_2 | ..."""

    __slots__ = ("matrix", "diagonal", "U", "V")

    def __init__(self, matrix, diagonal, U, V):
        self.matrix = matrix
        self.diagonal = diagonal
        self.U = U
        self.V = V

    def reconstruct(self):
        return self.U.compose(self.matrix).compose(self.V)

    def diagonal_matrix(self):
        entries = {(k, k): d for k, d in enumerate(self.diagonal) if d}
        return RationalMatrix(self.matrix.rows, self.matrix.cols, entries)


def _det2_unimodular(m):
    return abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]) == 1


def smith_normal_form(matrix):
    """Smith normal form of an integer matrix, with transforms.

    Classical pivoting reduction; pivots are chosen as the smallest nonzero
    absolute value (ties by position), which keeps runs reproducible.
    """
    if not matrix.is_integer():
        raise TypeError("smith_normal_form needs integer entries")
    nrows, ncols = matrix.rows, matrix.cols
    a = [[int(matrix.entry(i, j)) for j in range(ncols)] for i in range(nrows)]
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_op(i, k, q):  # row_i -= q * row_k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        U[i] = [x - q * y for x, y in zip(U[i], U[k])]

    def col_op(j, k, q):  # col_j -= q * col_k
        for r in range(nrows):
            a[r][j] -= q * a[r][k]
        for r in range(ncols):
            V[r][j] -= q * V[r][k]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in range(nrows):
            a[r][j], a[r][k] = a[r][k], a[r][j]
        for r in range(ncols):
            V[r][j], V[r][k] = V[r][k], V[r][j]

    def make_positive(k):
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            U[k] = [-x for x in U[k]]

    def clear_cross(t):
        """Euclid away everything in row t / column t beyond the pivot."""
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j]:
                    key = (abs(a[i][j]), i, j)
                    if pivot is None or key < pivot:
                        pivot = key
        if pivot is None:
            break
        _, pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        clear_cross(t)
        make_positive(t)
        t += 1

    # enforce the divisibility chain d_k | d_{k+1}
    changed = True
    while changed:
        changed = False
        for k in range(t - 1):
            d1, d2 = a[k][k], a[k + 1][k + 1]
            if d1 and d2 % d1 != 0:
                col_op(k, k + 1, -1)  # puts d2 under the pivot: a[k+1][k] = d2
                clear_cross(k)        # gcd lands at (k, k), lcm at (k+1, k+1)
                make_positive(k)
                make_positive(k + 1)
                changed = True
    diagonal = [a[k][k] for k in range(limit)]
    return SmithForm(matrix,
                     diagonal,
                     RationalMatrix.from_rows(U),
                     RationalMatrix.from_rows(V))

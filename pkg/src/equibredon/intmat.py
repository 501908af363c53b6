"""Exact integer matrices, Smith normal form and lattice helpers.

Everything works on Python ints, so intermediate growth is never a concern.
Pivot choices are deterministic: the nonzero entry of least absolute value,
ties broken by row-major position.
"""

from math import gcd


class IntMatrix:
    """Immutable dense integer matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows, cols, data=None):
        if data is None:
            data = tuple((0,) * cols for _ in range(rows))
        else:
            data = tuple(tuple(int(x) for x in r) for r in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"entry count does not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count needed for an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None):
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            data[i][i] = d
        return cls(rows, cols, data)

    @classmethod
    def from_sparse(cls, rows, cols, entries):
        """Build from a mapping ``(i, j) -> value`` (values are summed)."""
        data = [[0] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            data[i][j] += v
        return cls(rows, cols, data)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(r[j] for r in self._data)

    def to_lists(self):
        return [list(r) for r in self._data]

    def entries(self):
        """Row-major flat tuple of entries."""
        return tuple(x for r in self._data for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.rows}, {self.cols}, {self.to_lists()})"

    def is_zero(self):
        return all(x == 0 for r in self._data for x in r)

    def transpose(self):
        return IntMatrix(self.cols, self.rows, list(zip(*self._data)) if self.rows else [[] for _ in range(self.cols)])

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [[-x for x in r] for r in self._data])

    def __add__(self, other):
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other):
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def scale(self, k):
        return IntMatrix(self.rows, self.cols, [[k * x for x in r] for r in self._data])

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n = other.cols
        odata = other._data
        out = []
        for r in self._data:
            acc = [0] * n
            for k, a in enumerate(r):
                if a:
                    orow = odata[k]
                    for j in range(n):
                        b = orow[j]
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return IntMatrix(self.rows, n, out)

    def apply(self, vec):
        """Matrix times column vector, returned as a tuple."""
        return tuple(sum(a * b for a, b in zip(r, vec) if a) for r in self._data)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return IntMatrix(self.rows, self.cols + other.cols, [r + s for r, s in zip(self._data, other._data)])

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return IntMatrix(self.rows + other.rows, self.cols, self._data + other._data)

    def submatrix(self, row_idx, col_idx):
        return IntMatrix(len(row_idx), len(col_idx), [[self._data[i][j] for j in col_idx] for i in row_idx])

    def det(self):
        """Determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_lists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def block_diagonal(blocks):
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            data[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(rows, cols, data)


# -- Smith normal form --------------------------------------------------------


def _pick_pivot(a, t, m, n):
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form(M):
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` and U, V unimodular.

    D is diagonal with nonnegative entries d1 | d2 | ... followed by zeros.
    """
    m, n = M.rows, M.cols
    a = M.to_lists()
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        ra, rs = a[dst], a[src]
        for j in range(n):
            if rs[j]:
                ra[j] -= q * rs[j]
        ua, us = u[dst], u[src]
        for j in range(m):
            if us[j]:
                ua[j] -= q * us[j]

    def add_col(dst, src, q):
        # col_dst -= q * col_src
        for r in a:
            if r[src]:
                r[dst] -= q * r[src]
        for r in v:
            if r[src]:
                r[dst] -= q * r[src]

    rank = 0
    for t in range(min(m, n)):
        piv = _pick_pivot(a, t, m, n)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived in row/column t
                best = None
                for i in range(t, m):
                    x = a[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t + 1, n):
                    x = a[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                _, bi, bj = best
                if bi != t:
                    swap_rows(t, bi)
                if bj != t:
                    swap_cols(t, bj)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        rank += 1
    return IntMatrix(m, m, u), IntMatrix(m, n, a), IntMatrix(n, n, v)


def invariant_factors_of_diagonal(diag):
    """Normalize a list of nonzero diagonal entries into a divisibility chain."""
    ds = sorted(abs(d) for d in diag if d)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                if b % a:
                    g = gcd(a, b)
                    ds[i], ds[j] = g, a * b // g
                    changed = True
        ds.sort()
    return ds


def rank_and_diagonal(M):
    """Rank and the nonzero invariant factors of M, without transforms.

    Sparse elimination; used for large free complexes where only the
    diagonal matters.
    """
    rows = {}
    cols = {}
    for i in range(M.rows):
        r = {j: x for j, x in enumerate(M.row(i)) if x}
        if r:
            rows[i] = r
            for j in r:
                cols.setdefault(j, set()).add(i)
    diag = []
    while rows:
        best = None
        for i in sorted(rows):
            for j, x in rows[i].items():
                ax = abs(x)
                if best is None or ax < best[0] or (ax == best[0] and (i, j) < (best[1], best[2])):
                    best = (ax, i, j)
            if best and best[0] == 1:
                break
        _, pi, pj = best
        prow = rows[pi]
        p = prow[pj]
        # clear column pj in the other rows
        for i in sorted(cols.get(pj, ())):
            if i == pi:
                continue
            r = rows[i]
            q = r[pj] // p
            for j, x in prow.items():
                nv = r.get(j, 0) - q * x
                if nv:
                    if j not in r:
                        cols.setdefault(j, set()).add(i)
                    r[j] = nv
                elif j in r:
                    del r[j]
                    cols[j].discard(i)
            if not r:
                del rows[i]
        if len(cols[pj]) > 1:
            continue
        # column ops only touch the pivot row now
        leftover = False
        for j in list(prow):
            if j == pj:
                continue
            rem = prow[j] % p
            if rem:
                prow[j] = rem
                leftover = True
            else:
                del prow[j]
                cols[j].discard(pi)
        if leftover:
            continue
        diag.append(abs(p))
        del rows[pi]
        cols[pj].discard(pi)
    return len(diag), invariant_factors_of_diagonal(diag)


# -- lattices -------------------------------------------------------------------


def echelon_basis(vectors, ncols):
    """Row-echelon basis of the integer row lattice spanned by ``vectors``.

    Returns a list of (pivot column, row list) pairs with strictly increasing
    pivot columns and positive pivots.
    """
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for c in range(ncols):
        active = [r for r in rows if r[c]]
        if not active:
            continue
        rest = [r for r in rows if not r[c]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[c] // p[c]
                r = [x - q * y for x, y in zip(r, p)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        p = active[0]
        if p[c] < 0:
            p = [-x for x in p]
        basis.append((c, p))
        rows = rest
    return basis


class Lattice:
    """A sublattice of Z^n given by generating rows, kept in echelon form."""

    def __init__(self, n, generators=()):
        self.n = n
        self._basis = echelon_basis(generators, n)

    @property
    def rank(self):
        return len(self._basis)

    def basis(self):
        return [tuple(r) for _, r in self._basis]

    def basis_matrix(self):
        return IntMatrix(self.rank, self.n, self.basis())

    def coordinates(self, vec):
        """Coefficients of ``vec`` in the echelon basis, or None if not a member."""
        v = list(vec)
        coeffs = []
        for c, r in self._basis:
            if v[c] % r[c]:
                return None
            q = v[c] // r[c]
            coeffs.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, r)]
        if any(v):
            return None
        return coeffs

    def contains(self, vec):
        return self.coordinates(vec) is not None

    def contains_lattice(self, other):
        return all(self.contains(b) for b in other.basis())


def integer_kernel(M):
    """Basis (as rows) of {x in Z^cols : M x = 0}."""
    n, m = M.cols, M.rows
    # unimodular row reduction of [M^T | I]
    aug = [list(M.column(j)) + [1 if k == j else 0 for k in range(n)] for j in range(n)]
    rows = aug
    for c in range(m):
        active = [r for r in rows if r[c]]
        if not active:
            continue
        rest = [r for r in rows if not r[c]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[c] // p[c]
                r = [x - q * y for x, y in zip(r, p)]
                (nxt if r[c] else rest).append(r)
            active = nxt
        # the surviving pivot row is not in the kernel; drop it
        rows = rest
    return [tuple(r[m:]) for r in rows]

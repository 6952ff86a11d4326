"""Exact dense linear algebra over the rationals and the integers.

Everything in this package stays well under a few hundred rows and columns,
so the implementations favour clarity: fraction-based Gauss elimination for
rational ranks, nullspaces and solves, plus an incremental integer row
echelon (Hermite-style) lattice and a Smith normal form for saturation
checks and divisibility-aware solving.
"""

from fractions import Fraction

from .errors import InternalInvariantError


# ---------------------------------------------------------------------------
# rational elimination

def rref(rows):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows):
    """Basis of the right nullspace (one vector per free column)."""
    if not rows:
        return []
    reduced, pivots = rref(rows)
    cols = len(rows[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One rational solution of rows*x = rhs (free variables zero), or None."""
    if not rows:
        return None
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    cols = len(rows[0])
    if cols in pivots:
        return None  # pivot in the augmented column: inconsistent
    x = [Fraction(0)] * cols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return x


# ---------------------------------------------------------------------------
# integer lattices

def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


class IntegerLattice:
    """Row span over Z, kept in integer echelon form with positive pivots.

    add() returns True exactly when the lattice strictly grows, so repeated
    insertion is a fixed-point loop; full_unimodular() detects Z^dim.
    """

    def __init__(self, dim):
        self.dim = dim
        self.rows = []  # sorted by pivot column
        self._pivot_cols = []

    def rank(self):
        return len(self.rows)

    def basis_rows(self):
        return [list(r) for r in self.rows]

    def add(self, vec):
        if len(vec) != self.dim:
            raise InternalInvariantError(
                f"vector of length {len(vec)} in a dim-{self.dim} lattice")
        v = list(vec)
        grew = False
        for idx in range(len(self.rows)):
            p = self._pivot_cols[idx]
            if any(v[: p]):
                break  # v now has an earlier pivot; insert below
            if not v[p]:
                continue
            a = self.rows[idx][p]
            if v[p] % a == 0:
                f = v[p] // a
                v = [x - f * y for x, y in zip(v, self.rows[idx])]
            else:
                g, s, t = _xgcd(a, v[p])
                row = self.rows[idx]
                combined = [s * x + t * y for x, y in zip(row, v)]
                v = [(a // g) * y - (v[p] // g) * x for x, y in zip(row, v)]
                self.rows[idx] = combined
                grew = True  # pivot value shrank: strictly larger lattice
        pivot = next((c for c, x in enumerate(v) if x), None)
        if pivot is not None:
            if v[pivot] < 0:
                v = [-x for x in v]
            at = next((k for k, c in enumerate(self._pivot_cols) if c > pivot),
                      len(self.rows))
            self.rows.insert(at, v)
            self._pivot_cols.insert(at, pivot)
            grew = True
        return grew

    def contains(self, vec):
        v = list(vec)
        for row, p in zip(self.rows, self._pivot_cols):
            if any(v[: p]):
                return False
            if v[p]:
                if v[p] % row[p]:
                    return False
                f = v[p] // row[p]
                v = [x - f * y for x, y in zip(v, row)]
        return not any(v)

    def full_unimodular(self):
        """True when the lattice is all of Z^dim."""
        return (len(self.rows) == self.dim
                and all(r[p] == 1 for r, p in zip(self.rows, self._pivot_cols)))

    def elementary_divisors(self):
        return smith_normal_form(self.rows)


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(rows):
    """Nonzero diagonal of the Smith form: positive d1 | d2 | ... | dr."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    divisors = []
    top = 0
    while top < min(nrows, ncols):
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        m[top], m[i] = m[i], m[top]
        for row in m:
            row[top], row[j] = row[j], row[top]
        while True:
            again = False
            for i in range(top + 1, nrows):
                if m[i][top]:
                    q = m[i][top] // m[top][top]
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    if m[i][top]:
                        m[top], m[i] = m[i], m[top]
                        again = True
            for j in range(top + 1, ncols):
                if m[top][j]:
                    q = m[top][j] // m[top][top]
                    for row in m:
                        row[j] -= q * row[top]
                    if m[top][j]:
                        for row in m:
                            row[top], row[j] = row[j], row[top]
                        again = True
            if not again:
                break
        d = abs(m[top][top])
        stray = next(((i, j) for i in range(top + 1, nrows)
                      for j in range(top + 1, ncols) if m[i][j] % d), None)
        if stray is not None:
            m[top] = [a + b for a, b in zip(m[top], m[stray[0]])]
            continue  # redo this corner; the gcd strictly divides d
        divisors.append(d)
        top += 1
    for prev, nxt in zip(divisors, divisors[1:]):
        if nxt % prev:
            raise InternalInvariantError("Smith divisors fail the chain condition")
    return divisors


def snf_with_transforms(rows):
    """(diag, U, V) with U * rows * V diagonal, U and V unimodular."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_op(i, q, k):  # row_i -= q * row_k
        m[i] = [a - q * b for a, b in zip(m[i], m[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    def col_op(j, q, k):  # col_j -= q * col_k
        for row in m:
            row[j] -= q * row[k]
        for row in V:
            row[j] -= q * row[k]

    def row_swap(i, k):
        m[i], m[k] = m[k], m[i]
        U[i], U[k] = U[k], U[i]

    def col_swap(j, k):
        for row in m:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    top = 0
    while top < min(nrows, ncols):
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(top, best[0])
        col_swap(top, best[1])
        while True:
            again = False
            for i in range(top + 1, nrows):
                if m[i][top]:
                    q = m[i][top] // m[top][top]
                    row_op(i, q, top)
                    if m[i][top]:
                        row_swap(top, i)
                        again = True
            for j in range(top + 1, ncols):
                if m[top][j]:
                    q = m[top][j] // m[top][top]
                    col_op(j, q, top)
                    if m[top][j]:
                        col_swap(top, j)
                        again = True
            if not again:
                break
        if m[top][top] < 0:
            m[top] = [-a for a in m[top]]
            U[top] = [-a for a in U[top]]
        d = m[top][top]
        stray = next(((i, j) for i in range(top + 1, nrows)
                      for j in range(top + 1, ncols) if m[i][j] % d), None)
        if stray is not None:
            row_op(top, -1, stray[0])  # fold the offending row in, then redo
            continue
        top += 1
    diag = [m[k][k] for k in range(min(nrows, ncols)) if m[k][k]]
    return diag, U, V


def solve_integer(rows, rhs):
    """One integer solution of rows*x = rhs, or None when none exists."""
    if not rows:
        return None
    ncols = len(rows[0])
    diag, U, V = snf_with_transforms(rows)
    r = len(diag)
    ub = [sum(u * b for u, b in zip(urow, rhs)) for urow in U]
    if any(ub[i] for i in range(r, len(ub))):
        return None
    y = []
    for i in range(r):
        if ub[i] % diag[i]:
            return None
        y.append(ub[i] // diag[i])
    y += [0] * (ncols - r)
    return [sum(V[i][k] * y[k] for k in range(ncols)) for i in range(ncols)]

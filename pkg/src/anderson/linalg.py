"""Exact linear algebra: Gaussian elimination over fields and fraction-free
Gauss-Jordan elimination over integral domains (sparse rows)."""

from .errors import NoSolution


def _size(x):
    """Heuristic cost of a domain element used for pivot selection."""
    c = getattr(x, "c", None)
    if c is None:
        return (0, 0)
    inner = 0
    for y in c:
        yc = getattr(y, "c", None)
        inner += len(yc) if yc is not None else 1
    return (len(c), inner)


def _is_unit_const(x):
    c = getattr(x, "c", None)
    if c is None:
        return bool(x)
    if len(c) != 1:
        return False
    return _is_unit_const(c[0])


def rref_den(rows, ncols, one):
    """Fraction-free Gauss-Jordan elimination over an integral domain.

    ``rows`` are dicts {column: nonzero element}.  Returns
    ``(rows, den, pivots)`` where ``pivots`` maps a row index to its pivot
    column; each pivot row carries ``den`` in its pivot column and zero in
    every other pivot column.  Pivots are chosen greedily by size, preferring
    constant units, which keeps intermediate minors small on sparse input.
    """
    rows = [dict(r) for r in rows]
    den = one
    pivots = {}
    pivot_cols = set()
    free_rows = set(i for i, r in enumerate(rows) if r)
    while free_rows:
        best = None
        for i in free_rows:
            r = rows[i]
            for c, x in r.items():
                if c in pivot_cols:
                    continue
                key = (0 if _is_unit_const(x) else 1, _size(x), len(r), c, i)
                if best is None or key < best[0]:
                    best = (key, i, c)
        if best is None:
            break
        _, pr, pc = best
        prow = rows[pr]
        p = prow[pc]
        same = p == den
        for i, r in enumerate(rows):
            if i == pr or not r:
                continue
            f = r.get(pc)
            if f is None:
                if same:
                    continue
                new = {}
                for c, x in r.items():
                    y = x * p
                    if not den == one:
                        y = y.exquo(den) if hasattr(y, "exquo") else y / den
                    if y:
                        new[c] = y
                rows[i] = new
                continue
            new = {}
            cols = set(r) | set(prow)
            for c in cols:
                a = r.get(c)
                b = prow.get(c)
                if a is not None and b is not None:
                    y = a * p - f * b
                elif a is not None:
                    y = a * p
                else:
                    y = -(f * b)
                if not y:
                    continue
                if not den == one:
                    y = y.exquo(den) if hasattr(y, "exquo") else y / den
                if y:
                    new[c] = y
            new.pop(pc, None)
            rows[i] = new
        den = p
        pivots[pr] = pc
        pivot_cols.add(pc)
        free_rows.discard(pr)
        free_rows = set(i for i in free_rows if rows[i])
    return rows, den, pivots


def kernel_den(rows, ncols, zero, one):
    """Kernel basis over the fraction field, as domain vectors (one per free column)."""
    R, den, pivots = rref_den(rows, ncols, one)
    pivot_cols = set(pivots.values())
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = [zero] * ncols
        v[f] = den
        for r, c in pivots.items():
            x = R[r].get(f)
            if x is not None:
                v[c] = -x
        basis.append(v)
    return basis, len(pivots)


# --- dense linear algebra over a field ---

def rref_field(M, zero=None):
    """Reduced row echelon form over a field; returns (R, pivot_columns)."""
    R = [list(r) for r in M]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots = []
    row = 0
    for col in range(ncols):
        pr = None
        for i in range(row, len(R)):
            if R[i][col]:
                pr = i
                break
        if pr is None:
            continue
        R[row], R[pr] = R[pr], R[row]
        inv = 1 / R[row][col] if not hasattr(R[row][col], "inverse") else R[row][col].inverse()
        R[row] = [x * inv for x in R[row]]
        for i in range(len(R)):
            if i != row and R[i][col]:
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[row])]
        pivots.append(col)
        row += 1
        if row == len(R):
            break
    return R, pivots


def nullspace_field(M, ncols, zero, one):
    """Basis of {x : M x = 0} over a field."""
    if not M:
        return [[one if j == i else zero for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref_field(M)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -R[r][f]
        basis.append(v)
    return basis


def solve_field(M, b, zero, one):
    """One solution of M x = b over a field, or raise NoSolution."""
    ncols = len(M[0]) if M else 0
    aug = [list(r) + [bi] for r, bi in zip(M, b)]
    R, pivots = rref_field(aug)
    if ncols in pivots:
        raise NoSolution("inconsistent linear system")
    x = [zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = R[r][ncols]
    return x


def rank_field(M):
    return len(rref_field(M)[1]) if M else 0


def det_field(M, zero, one):
    """Determinant over a field by Gaussian elimination."""
    n = len(M)
    if n == 0:
        return one
    A = [list(r) for r in M]
    det = one
    for col in range(n):
        pr = None
        for i in range(col, n):
            if A[i][col]:
                pr = i
                break
        if pr is None:
            return zero
        if pr != col:
            A[col], A[pr] = A[pr], A[col]
            det = -det
        piv = A[col][col]
        det = det * piv
        inv = piv.inverse()
        for i in range(col + 1, n):
            if A[i][col]:
                f = A[i][col] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return det


def det_bareiss(M, one):
    """Determinant over an integral domain (Bareiss)."""
    n = len(M)
    if n == 0:
        return one
    A = [list(r) for r in M]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return A[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                y = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = y.exquo(prev) if hasattr(y, "exquo") else y / prev
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign > 0 else -d

"""Exact integer and rational matrix helpers.

Matrices are lists (or tuples) of rows.  Integer routines never leave ZZ;
rational routines work over :class:`fractions.Fraction`.
"""

from fractions import Fraction
from math import gcd


def _xgcd(a, b):
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def content(vec):
    g = 0
    for v in vec:
        g = gcd(g, v)
    return g


def hnf_transform(rows):
    """Row Hermite normal form with unimodular transform.

    Returns ``(H, T)`` with ``T * rows == H``, ``T`` unimodular and ``H`` in
    row Hermite normal form (positive pivots, entries above a pivot reduced
    into ``[0, pivot)``).  Zero rows of ``H`` are kept at the bottom; the
    matching rows of ``T`` span the integer left kernel of ``rows``.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    H = [list(r) for r in rows]
    T = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    pivots = []
    for j in range(ncols):
        if r == m:
            break
        # fold every entry below row r in column j into row r
        for i in range(r + 1, m):
            b = H[i][j]
            if b == 0:
                continue
            a = H[r][j]
            g, s, t = _xgcd(a, b)
            ua, ub = a // g, b // g
            Hr, Hi = H[r], H[i]
            H[r] = [s * x + t * y for x, y in zip(Hr, Hi)]
            H[i] = [ua * y - ub * x for x, y in zip(Hr, Hi)]
            Tr, Ti = T[r], T[i]
            T[r] = [s * x + t * y for x, y in zip(Tr, Ti)]
            T[i] = [ua * y - ub * x for x, y in zip(Tr, Ti)]
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            T[r] = [-x for x in T[r]]
        p = H[r][j]
        for i in range(r):
            q = H[i][j] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                T[i] = [x - q * y for x, y in zip(T[i], T[r])]
        pivots.append(j)
        r += 1
    return H, T


def hnf(rows):
    """Nonzero rows of the row Hermite normal form, as tuples."""
    if not rows:
        return ()
    H, _ = hnf_transform(rows)
    return tuple(tuple(row) for row in H if any(row))


def integer_kernel(rows, ncols=None):
    """Saturated integer basis of ``{v in Z^N : row . v == 0 for all rows}``."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return tuple(tuple(int(i == j) for j in range(ncols)) for i in range(ncols))
    cols = [[row[j] for row in rows] for j in range(ncols)]
    H, T = hnf_transform(cols)
    return tuple(tuple(T[i]) for i in range(ncols) if not any(H[i]))


def rational_rows_to_integer(rows):
    """Scale each row by its common denominator (row spaces are unchanged)."""
    out = []
    for row in rows:
        den = 1
        for v in row:
            den = den * Fraction(v).denominator // gcd(den, Fraction(v).denominator)
        out.append([int(Fraction(v) * den) for v in row])
    return out


def rank(rows):
    return len(hnf(rational_rows_to_integer(rows))) if rows else 0


def det(matrix):
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    A = [[Fraction(x) for x in row] for row in matrix]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        result *= p
        for r in range(c + 1, n):
            f = A[r][c] / p
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return sign * result


def inverse(matrix):
    """Exact inverse over QQ (Gauss-Jordan); raises ValueError if singular."""
    n = len(matrix)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def solve(matrix, rhs):
    """Solve ``matrix @ x == rhs`` for square nonsingular ``matrix``."""
    inv = inverse(matrix)
    return [sum(a * b for a, b in zip(row, rhs)) for row in inv]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))

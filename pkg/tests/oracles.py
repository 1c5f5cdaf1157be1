"""Independent reference computations used by the tests.

Everything here goes through sympy matrices or plain brute force, never
through the package's own linear algebra.
"""

from fractions import Fraction
from itertools import combinations, product

import sympy
from sympy.matrices.normalforms import smith_normal_form


def F(x):
    """sympy Rational -> Fraction."""
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def minors(rows):
    """Plucker coordinates as the maximal minors of the row matrix."""
    M = sympy.Matrix(rows)
    k, N = M.shape
    out = {}
    for cols in combinations(range(N), k):
        v = M.extract(list(range(k)), list(cols)).det()
        if v != 0:
            out[cols] = F(v)
    return out


def projection_distance_sq(y, basis):
    """sin^2 of the angle between y and span(basis), by least squares."""
    A = sympy.Matrix(basis).T
    yv = sympy.Matrix([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction)
                       else c for c in y])
    coef = (A.T * A).solve(A.T * yv)
    proj = A * coef
    cos_sq = (proj.dot(proj)) / yv.dot(yv)
    return F(1 - cos_sq)


def smith_invariants(rows):
    M = sympy.Matrix(rows)
    S = smith_normal_form(M, domain=sympy.ZZ)
    return [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]


def is_saturation_of(basis, gens):
    """basis spans the same Q-space as gens and Z^N / span(basis) is torsion-free."""
    B = sympy.Matrix(basis)
    G = sympy.Matrix(gens)
    if B.rank() != G.rank() or B.col_join(G).rank() != B.rank():
        return False
    return smith_invariants(basis) == [1] * B.rank()


def brute_shortest(gram, box=None, max_points=200_000):
    """Exhaustive SVP. Without ``box`` the search box is the exact bound
    |c_i| <= sqrt(B (G^-1)_ii) with B the smallest diagonal entry.
    Returns None when the box holds more than ``max_points`` points."""
    r = len(gram)
    G = sympy.Matrix(gram)
    if box is None:
        B = min(gram[i][i] for i in range(r))
        inv = G.inv()
        boxes = [int(sympy.floor(sympy.sqrt(B * inv[i, i]))) for i in range(r)]
    else:
        boxes = [box] * r
    size = 1
    for b in boxes:
        size *= 2 * b + 1
    if size > max_points:
        return None
    best = None
    for c in product(*(range(-b, b + 1) for b in boxes)):
        if not any(c):
            continue
        v = sum(c[i] * gram[i][j] * c[j] for i in range(r) for j in range(r))
        if best is None or v < best:
            best = v
    return Fraction(best)


def gram_det(basis):
    M = sympy.Matrix(basis)
    return F((M * M.T).det())


def scan_point(theta, X):
    """min over nonzero x with sup norm <= X of max |x0 t_i - x_i|, by brute force."""
    best = None
    n = len(theta)
    for x in product(range(-X, X + 1), repeat=n + 1):
        if not any(x):
            continue
        err = max(abs(x[0] * t - xi) for t, xi in zip(theta, x[1:]))
        if best is None or err < best:
            best = err
    return best


def scan_form(y, X):
    best = None
    for x in product(range(-X, X + 1), repeat=len(y)):
        if not any(x):
            continue
        err = abs(sum(a * b for a, b in zip(x, y)))
        if best is None or err < best:
            best = err
    return best

"""Exact lattice algorithms on sublattices and projections of Z^(n+1).

A :class:`GramLattice` is an abstract lattice given by its Gram matrix.  It
optionally remembers ambient generators (``basis_tag``, rational vectors) and
integer lifts (``lift_map``) of its basis; both follow every change of basis.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import linalg
from .intervals import Interval, evaluate, to_iv

SVP_MAX_RANK = 12


class BudgetError(RuntimeError):
    """A requested exact computation exceeds its configured budget."""


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class GramLattice:
    gram: tuple
    basis_tag: tuple = None
    lift_map: tuple = None

    def __post_init__(self):
        g = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        r = len(g)
        if r < 1 or any(len(row) != r for row in g):
            raise LatticeError("Gram matrix must be square of size >= 1")
        if any(g[i][j] != g[j][i] for i in range(r) for j in range(i)):
            raise LatticeError("Gram matrix is not symmetric")
        if any(b <= 0 for b in _gso(g)[1]):
            raise LatticeError("Gram matrix is not positive definite")

    @property
    def rank(self):
        return len(self.gram)

    def norm_sq(self, coeffs):
        g = self.gram
        return sum(coeffs[i] * g[i][j] * coeffs[j]
                   for i in range(len(g)) for j in range(len(g)) if coeffs[i] and coeffs[j])

    def lift(self, coeffs):
        """Ambient integer vector for the lattice element with these coefficients."""
        if self.lift_map is None:
            raise LatticeError("lattice carries no lift map")
        N = len(self.lift_map[0])
        return tuple(sum(c * v[k] for c, v in zip(coeffs, self.lift_map)) for k in range(N))

    def ambient(self, coeffs):
        if self.basis_tag is None:
            raise LatticeError("lattice carries no ambient basis")
        N = len(self.basis_tag[0])
        return tuple(sum(c * Fraction(v[k]) for c, v in zip(coeffs, self.basis_tag))
                     for k in range(N))


def _gso(g):
    """Gram-Schmidt data from a Gram matrix: (mu, squared GSO norms)."""
    r = len(g)
    mu = [[Fraction(0)] * r for _ in range(r)]
    B = [Fraction(0)] * r
    for i in range(r):
        for j in range(i):
            s = g[i][j] - sum(mu[j][k] * mu[i][k] * B[k] for k in range(j))
            mu[i][j] = s / B[j] if B[j] else Fraction(0)
        B[i] = g[i][i] - sum(mu[i][k] ** 2 * B[k] for k in range(i))
        if B[i] <= 0:
            # not positive definite; callers check the sign
            B[i:] = [B[i]] + [Fraction(0)] * (r - i - 1)
            break
    return mu, B


def saturate(generators):
    """HNF basis of ``V cap Z^(n+1)`` where ``V`` is the rational span of ``generators``."""
    gens = [list(map(int, g)) for g in generators]
    if not gens or not any(any(g) for g in gens):
        raise LatticeError("cannot saturate the zero lattice")
    N = len(gens[0])
    orth = linalg.integer_kernel([g for g in gens if any(g)], N)
    if not orth:
        return tuple(tuple(int(i == j) for j in range(N)) for i in range(N))
    return linalg.hnf(list(linalg.integer_kernel(orth, N)))


def gram(basis):
    rows = [tuple(Fraction(x) for x in b) for b in basis]
    g = [[linalg.dot(u, v) for v in rows] for u in rows]
    try:
        return GramLattice(g, basis_tag=tuple(rows))
    except LatticeError as exc:
        raise LatticeError("basis rows are linearly dependent") from exc


def det_sq(L):
    return linalg.det(L.gram)


def completion(basis):
    """Integer vectors extending a saturated basis to a basis of Z^N."""
    r = len(basis)
    N = len(basis[0])
    cols = [[b[j] for b in basis] for j in range(N)]
    H, T = linalg.hnf_transform(cols)
    D = [H[i][:r] for i in range(r)]
    if abs(linalg.det(D)) != 1:
        raise LatticeError("basis is not saturated")
    S = [list(col) for col in zip(*linalg.inverse(T))]
    return tuple(tuple(int(x) for x in S[i]) for i in range(r, N))


def project_orthogonal(V_basis):
    """Orthogonal projection of Z^(n+1) onto the complement of span(V_basis)."""
    r = len(V_basis)
    N = len(V_basis[0])
    if r >= N:
        raise LatticeError("V must be a proper subspace")
    lifts = completion(V_basis)
    GV = [[Fraction(linalg.dot(u, v)) for v in V_basis] for u in V_basis]
    GVinv = linalg.inverse(GV)

    def project(c):
        rhs = [linalg.dot(b, c) for b in V_basis]
        coef = [sum(a * b for a, b in zip(row, rhs)) for row in GVinv]
        return tuple(c[k] - sum(coef[i] * V_basis[i][k] for i in range(r)) for k in range(N))

    tags = tuple(project(c) for c in lifts)
    g = [[linalg.dot(u, v) for v in tags] for u in tags]
    return GramLattice(g, basis_tag=tags, lift_map=lifts)


def _apply_transform(L, U, gram_matrix):
    def combine(vectors):
        if vectors is None:
            return None
        N = len(vectors[0])
        return tuple(tuple(sum(u * v[k] for u, v in zip(row, vectors)) for k in range(N))
                     for row in U)
    return GramLattice(gram_matrix, basis_tag=combine(L.basis_tag), lift_map=combine(L.lift_map))


def lll_transform(g, delta=Fraction(3, 4)):
    """LLL on a Gram matrix; returns (reduced Gram, unimodular U with rows = coefficients)."""
    r = len(g)
    G = [[Fraction(x) for x in row] for row in g]
    U = [[int(i == j) for j in range(r)] for i in range(r)]

    def sub_row(k, j, q):
        # b_k <- b_k - q b_j
        for i in range(r):
            G[k][i] -= q * G[j][i]
        for i in range(r):
            if i != k:
                G[i][k] = G[k][i]
        G[k][k] -= q * G[k][j]
        U[k] = [a - q * b for a, b in zip(U[k], U[j])]

    k = 1
    mu, B = _gso(G)
    while k < r:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                sub_row(k, j, q)
                mu, B = _gso(G)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            U[k], U[k - 1] = U[k - 1], U[k]
            mu, B = _gso(G)
            k = max(k - 1, 1)
    return G, U


def lll_reduce(L, delta=Fraction(3, 4)):
    G, U = lll_transform(L.gram, delta)
    return _apply_transform(L, U, G)


def is_lll_reduced(g, delta=Fraction(3, 4)):
    mu, B = _gso(g)
    r = len(g)
    size = all(abs(mu[i][j]) <= Fraction(1, 2) for i in range(r) for j in range(i))
    lovasz = all(B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1] for k in range(1, r))
    return size and lovasz


def _int_range(c, t):
    """Integers x with (x - c)^2 <= t, as (lo, hi); empty when lo > hi."""
    s = isqrt(t.numerator // t.denominator)
    lo = (c.numerator // c.denominator) - s - 1
    hi = -((-c.numerator) // c.denominator) + s + 1
    while lo <= hi and (lo - c) ** 2 > t:
        lo += 1
    while hi >= lo and (hi - c) ** 2 > t:
        hi -= 1
    return lo, hi


def _cholesky_form(g):
    """Coefficients with Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2."""
    mu, B = _gso(g)
    r = len(g)
    q = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        q[i][i] = B[i]
        for j in range(i + 1, r):
            q[i][j] = mu[j][i]
    return q


def enumerate_short(g, bound, shrink=False, max_nodes=None, reduce=True):
    """Fincke-Pohst enumeration of nonzero x in Z^r with x^T g x <= bound.

    Yields ``(x, value)`` pairs.  With ``shrink`` the bound tightens to the
    best value found so far (ties kept), which turns the walk into an exact
    shortest-vector search.  ``max_nodes`` caps the search tree.  With
    ``reduce`` the walk runs on an LLL-reduced form and maps points back.
    """
    if reduce and len(g) > 1:
        G, U = lll_transform(g)
        r = len(g)
        for y, value in enumerate_short(G, bound, shrink, max_nodes, reduce=False):
            yield tuple(sum(y[i] * U[i][j] for i in range(r)) for j in range(r)), value
        return
    r = len(g)
    q = _cholesky_form(g)
    x = [0] * r
    state = {"bound": Fraction(bound), "nodes": 0}

    def rec(i, committed):
        rem = state["bound"] - committed
        if rem < 0:
            return
        c = Fraction(-sum(q[i][j] * x[j] for j in range(i + 1, r)))
        lo, hi = _int_range(c, rem / q[i][i])
        # zig-zag outward from the center so a shrinking bound prunes early
        for v in sorted(range(lo, hi + 1), key=lambda v: (abs(v - c), v)):
            state["nodes"] += 1
            if max_nodes is not None and state["nodes"] > max_nodes:
                raise BudgetError(f"enumeration exceeded {max_nodes} nodes")
            value = committed + q[i][i] * (v - c) ** 2
            if value > state["bound"]:
                continue
            x[i] = v
            if i > 0:
                yield from rec(i - 1, value)
            elif any(x):
                if shrink:
                    state["bound"] = value
                yield tuple(x), value
        x[i] = 0

    yield from rec(r - 1, Fraction(0))


def shortest_vector(L, max_rank=SVP_MAX_RANK):
    """Exact shortest nonzero vector: ``(coeffs, norm_sq)`` in the basis of ``L``.

    Ties go to the lexicographically smallest coefficient vector whose first
    nonzero entry is positive.
    """
    if L.rank > max_rank:
        raise BudgetError(f"rank {L.rank} exceeds the enumeration budget {max_rank}")
    G, U = lll_transform(L.gram)
    best = G[0][0]
    ties = []
    for y, val in enumerate_short(G, best, shrink=True, reduce=False):
        if val < best:
            best, ties = val, []
        if val == best:
            ties.append(y)
    candidates = []
    for y in ties:
        coeffs = tuple(sum(y[i] * U[i][j] for i in range(L.rank)) for j in range(L.rank))
        if next(c for c in coeffs if c) < 0:
            coeffs = tuple(-c for c in coeffs)
        candidates.append(coeffs)
    return min(candidates), best


def unit_ball_volume(k, ctx):
    """v_k = pi^(k/2) / Gamma(1 + k/2), via v_k = 2 pi / k * v_(k-2)."""
    rational = Fraction(1) if k % 2 == 0 else Fraction(2)
    for j in range(k, 1, -2):
        rational *= Fraction(2, j)
    return to_iv(rational) * ctx.pi ** (k // 2)


def minkowski_radius(k, det_lattice_sq, prec=128):
    """Certified enclosure of R = 2 v_k^(-1/k) det^(1/k)."""
    if k < 1:
        raise ValueError("need k >= 1")
    det_lattice_sq = Fraction(det_lattice_sq)
    if det_lattice_sq <= 0:
        raise ValueError("lattice determinant must be positive")

    def compute(ctx):
        v = unit_ball_volume(k, ctx)
        return 2 * ctx.exp((ctx.log(to_iv(det_lattice_sq)) / 2 - ctx.log(v)) / k)

    R = evaluate(compute, prec)
    if k == 1:
        # R = det exactly; keep the enclosure but snap to the exact value when it is rational
        root = _exact_sqrt(det_lattice_sq)
        if root is not None and root in R:
            return Interval(root, root)
    return R


def _exact_sqrt(q):
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None

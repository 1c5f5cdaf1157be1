"""Finite-height measurement of approximation exponents.

All searches run at a :class:`PointProxy`.  Witness exponents are evaluated
on the pessimistic end of the proxy halo and rounded downward, so a
``certified_lower`` estimate is a sound lower bound for the exponent of the
true point along the witnesses found.  Nothing here ever claims an upper
bound.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt

from . import lattice
from .grassmann import norm_sq, wedge
from .intervals import decimal_str, log_interval, log_ratio
from .linalg import content, dot
from .subspace import (
    SubspaceError,
    distance_bounds_sq,
    from_generators,
    hyperplane,
    join,
    orthogonal_complement,
    point,
    wedge_with_point,
)
from .transfer import INF, SearchBudget, going_up_lift

CERTIFIED = "certified_lower"
HEURISTIC = "heuristic"

# gamma_r^r for the Hermite constants, r = 1..8 (all rational)
HERMITE_POWER = {1: Fraction(1), 2: Fraction(4, 3), 3: Fraction(2), 4: Fraction(4),
                 5: Fraction(8), 6: Fraction(64, 3), 7: Fraction(64), 8: Fraction(256)}


# ---------------------------------------------------------------------------
# best approximations in the sup norm


def _iroot(x, k):
    """floor(x ** (1/k)) for a nonnegative integer x."""
    if x < 2:
        return x
    r = int(round(x ** (1.0 / k))) if x < 1 << 1000 else 1 << (x.bit_length() // k)
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def _sign_canonical(x):
    first = next((v for v in x if v), 0)
    return tuple(-v for v in x) if first < 0 else tuple(x)


def _point_error(theta, x):
    return max(abs(x[0] * t - xi) for t, xi in zip(theta, x[1:]))


def _form_error(y, x):
    return abs(sum(a * b for a, b in zip(x, y)))


def _better(err, x, best):
    """Order: smaller error, then smaller sup norm, then lexicographic."""
    key = (err, max(abs(v) for v in x), x)
    return best is None or key < best


def _scan_point(theta, X):
    best = None
    for x0 in range(0, X + 1):
        x = [x0]
        for t in theta:
            v = round(x0 * t)
            x.append(max(-X, min(X, v)))
        if not any(x):
            x[1] = 1
        x = _sign_canonical(x)
        key = (_point_error(theta, x), max(abs(v) for v in x), x)
        if best is None or key < best:
            best = key
    return best[2], best[0]


def _scan_form(y, X):
    n = len(y) - 1
    best = None
    rng = range(-X, X + 1)

    def visit(tail):
        nonlocal best
        s = sum(a * b for a, b in zip(tail, y[1:]))
        x0 = max(-X, min(X, -round(s)))
        x = _sign_canonical((x0, *tail))
        if not any(x):
            return
        key = (_form_error(y, x), max(abs(v) for v in x), x)
        if best is None or key < best:
            best = key

    def rec(prefix):
        if len(prefix) == n:
            visit(prefix)
            return
        for v in rng:
            rec(prefix + (v,))

    rec(())
    visit((0,) * n)
    return best[2], best[0]


def _enum_best(g, bound, accept, error):
    best = None
    for x, _ in lattice.enumerate_short(g, bound):
        if not accept(x):
            continue
        x = _sign_canonical(x)
        key = (error(x), max(abs(v) for v in x), x)
        if best is None or key < best:
            best = key
    return best


def _enum_point(theta, X):
    n = len(theta)
    Xp = (X - 1) // max(1, math.ceil(max(abs(t) for t in theta)))
    if Xp < 1:
        return None
    eps = Fraction(1, _iroot(Xp, n))
    # scaled so the box |x0| <= X, |x0 theta_i - x_i| <= eps lies in Q <= n + 1
    N = n + 1
    g = [[Fraction(0)] * N for _ in range(N)]
    g[0][0] = eps * eps / (X * X) + sum(t * t for t in theta)
    for i, t in enumerate(theta, start=1):
        g[0][i] = g[i][0] = -t
        g[i][i] = Fraction(1)
    best = _enum_best(g, (n + 1) * eps * eps,
                      lambda x: max(abs(v) for v in x) <= X and _point_error(theta, x) <= eps,
                      lambda x: _point_error(theta, x))
    return (best[2], best[0]) if best else None


def _enum_form(y, X):
    n = len(y) - 1
    Xp = (X - 1) // max(1, math.ceil(sum(abs(t) for t in y[1:])))
    if Xp < 1:
        return None
    eps = Fraction(1, Xp ** n)
    N = n + 1
    g = [[y[i] * y[j] for j in range(N)] for i in range(N)]
    for i in range(1, N):
        g[i][i] += eps * eps / (X * X)
    best = _enum_best(g, (n + 1) * eps * eps,
                      lambda x: max(abs(v) for v in x) <= X and _form_error(y, x) <= eps,
                      lambda x: _form_error(y, x))
    return (best[2], best[0]) if best else None


def _lll_candidates_point(theta, X, steps=40):
    y = (Fraction(1), *theta)
    N = len(y)
    out = []
    for j in range(steps):
        s = 1 << j
        Y = [round(s * v) for v in y]
        rows = []
        for k in range(N):
            w = [int(i == k) for i in range(N)]
            for a, b in combinations(range(N), 2):
                w.append(Y[a] * int(b == k) - Y[b] * int(a == k))
            rows.append(w)
        g = [[dot(u, v) for v in rows] for u in rows]
        _, U = lattice.lll_transform(g)
        fresh = [tuple(r) for r in U if max(abs(v) for v in r) <= X]
        out.extend(fresh)
        if all(max(abs(v) for v in r) > X for r in U):
            break
    return out


def _lll_candidates_form(y, X, steps=60):
    N = len(y)
    out = []
    for j in range(steps):
        s = 1 << j
        rows = [[int(i == k) for i in range(N)] + [round(s * y[k])] for k in range(N)]
        g = [[dot(u, v) for v in rows] for u in rows]
        _, U = lattice.lll_transform(g)
        out.extend(tuple(r) for r in U if max(abs(v) for v in r) <= X)
        if all(max(abs(v) for v in r) > X for r in U):
            break
    return out


def best_point_error(P, X_bound, method="auto"):
    """Minimize ``max_i |x0 theta_i - x_i|`` over nonzero x with sup norm <= X_bound.

    ``scan`` loops over x0 and ``enum`` runs a complete Fincke-Pohst search in
    an ellipsoid that Dirichlet's theorem guarantees to be nonempty; both are
    exact at the proxy.  ``lll`` returns the best vector of an LLL weight
    ladder and is only a heuristic upper bound on the minimum.
    """
    if X_bound < 1:
        raise ValueError("X_bound must be >= 1")
    theta = P.theta
    if method == "auto":
        method = "scan" if X_bound <= 256 else "enum"
    if method == "enum":
        found = _enum_point(theta, X_bound)
        if found is not None:
            return found
        method = "scan"
    if method == "scan":
        return _scan_point(theta, X_bound)
    if method == "lll":
        cands = [_sign_canonical(c) for c in _lll_candidates_point(theta, X_bound)]
        cands.append(_sign_canonical(_scan_point(theta, 1)[0]))
        best = min(cands, key=lambda x: (_point_error(theta, x), max(abs(v) for v in x), x))
        return best, _point_error(theta, best)
    raise ValueError(f"unknown method {method!r}")


def best_form_error(P, X_bound, method="auto"):
    """Minimize ``|x0 + x1 theta_1 + ... + xn theta_n|`` over sup norm <= X_bound."""
    if X_bound < 1:
        raise ValueError("X_bound must be >= 1")
    y = P.coords
    n = len(y) - 1
    if method == "auto":
        method = "scan" if (2 * X_bound + 1) ** n <= 5000 else "enum"
    if method == "enum":
        found = _enum_form(y, X_bound)
        if found is not None:
            return found
        method = "scan"
    if method == "scan":
        return _scan_form(y, X_bound)
    if method == "lll":
        cands = [_sign_canonical(c) for c in _lll_candidates_form(y, X_bound)]
        cands.append((1,) + (0,) * n)
        best = min(cands, key=lambda x: (_form_error(y, x), max(abs(v) for v in x), x))
        return best, _form_error(y, best)
    raise ValueError(f"unknown method {method!r}")


def approximation_halo(P, x, end):
    """Bound on how much the error at the true point can differ from the proxy error."""
    if end == "point":
        return abs(x[0]) * P.radius
    return sum(abs(v) for v in x[1:]) * P.radius


# ---------------------------------------------------------------------------
# exhaustive enumeration of subspaces by height


def _integer_ball(dim, bound):
    """Sign-canonical primitive integer vectors with squared norm <= bound."""
    bound = Fraction(bound)
    out = []
    v = [0] * dim

    def rec(i, used):
        if i == dim:
            if any(v) and content(v) == 1 and _sign_canonical(v) == tuple(v):
                out.append(tuple(v))
            return
        r = isqrt(int(bound - used))
        for a in range(-r, r + 1):
            if used + a * a <= bound:
                v[i] = a
                rec(i + 1, used + a * a)
        v[i] = 0

    rec(0, 0)
    out.sort(key=lambda x: (dot(x, x), x))
    return out


def _count_ball(dim, bound):
    r = math.sqrt(float(bound))
    vol = math.pi ** (dim / 2) / math.gamma(1 + dim / 2)
    return vol * (r + math.sqrt(dim)) ** dim


def _square_sum_counts(dim, bound):
    """counts[m] = number of integer vectors in Z^dim with squared norm m, for m <= bound."""
    counts = [1] + [0] * bound
    for _ in range(dim):
        nxt = [0] * (bound + 1)
        for m, c in enumerate(counts):
            if not c:
                continue
            a = 0
            while m + a * a <= bound:
                nxt[m + a * a] += c * (1 if a == 0 else 2)
                a += 1
        counts = nxt
    return counts


def enumeration_cost(n, d, H_sq_max):
    """Upper bound on the vector tuples visited by :func:`enumerate_subspaces`."""
    r = min(d + 1, n - d)
    bound = HERMITE_POWER[r] * Fraction(H_sq_max)
    if _count_ball(n + 1, bound) > 5e7:
        return math.inf
    counts = _square_sum_counts(n + 1, int(bound))
    # halve for the sign choice; zero vector excluded
    norms = [(m, c // 2) for m, c in enumerate(counts) if m and c]

    def tuples(start, left, prod):
        if left == 0:
            return 1
        total = 0
        for i in range(start, len(norms)):
            m, c = norms[i]
            if prod * m ** left > bound:
                break
            total += c * tuples(i, left - 1, prod * m)
        return total

    return tuples(0, r, 1)


def check_enumeration_budget(n, d, H_sq_max, max_count=200_000):
    cost = enumeration_cost(n, d, H_sq_max)
    if cost > max_count * 2:
        raise lattice.BudgetError(
            f"about {cost:.3g} candidate vector tuples exceed the budget of {max_count}")


def enumerate_subspaces(n, d, H_sq_max, max_count=200_000):
    """Every d-dimensional rational subvariety of P^n with height_sq <= H_sq_max, once each.

    A saturated rank-r lattice of squared covolume D contains independent
    vectors b_1..b_r realising its successive minima with
    ``prod |b_i|^2 <= gamma_r^r * D``; all such tuples are visited and
    deduplicated through the canonical HNF.  Dimensions with a smaller
    orthogonal complement are enumerated through that complement, which has
    the same height.
    """
    if not 0 <= d <= n - 1:
        raise ValueError(f"need 0 <= d <= n-1, got d={d}, n={n}")
    H_sq_max = Fraction(H_sq_max)
    N = n + 1
    r, dual = (d + 1, False) if d + 1 <= n - d else (n - d, True)
    check_enumeration_budget(n, d, H_sq_max, max_count)
    vec_bound = HERMITE_POWER[r] * H_sq_max
    vecs = _integer_ball(N, vec_bound)
    norms = [dot(v, v) for v in vecs]
    seen = set()
    emitted = 0

    def emit(rows):
        nonlocal emitted
        L = from_generators(rows)
        if dual:
            L = orthogonal_complement(L)
        emitted += 1
        if emitted > max_count:
            raise lattice.BudgetError(f"more than {max_count} subspaces")
        return L

    def rec(start, chosen, prod):
        if len(chosen) == r:
            basis = lattice.saturate([vecs[i] for i in chosen])
            if len(basis) != r or basis in seen:
                return
            g = lattice.det_sq(lattice.gram(basis))
            if g <= H_sq_max:
                seen.add(basis)
                yield emit(basis)
            return
        for i in range(start, len(vecs)):
            p = prod * norms[i]
            # remaining vectors are at least as long as this one
            if p * norms[i] ** (r - len(chosen) - 1) > vec_bound:
                break
            yield from rec(i + 1, chosen + [i], p)

    yield from rec(0, [], Fraction(1))


# ---------------------------------------------------------------------------
# witnesses and estimates


@dataclass
class Witness:
    subspace: object
    height_sq: Fraction
    distance_sq: Fraction
    distance_sq_hi: Fraction
    halo: Fraction
    exponent_lo: object  # Fraction or INF; None when the height is 1
    source: str = ""

    @property
    def halo_sound(self):
        return self.halo == 0 or 4 * self.halo <= self.distance_sq

    def exponent_def4(self, P):
        """Exponent read off |y ^ X| <= |X|^(-w), as an enclosure."""
        wsq = wedge_with_point(P, self.subspace.plucker)
        if wsq == 0:
            return None
        return log_ratio(1 / wsq, self.height_sq)

    def exponent_def2(self):
        if self.distance_sq == 0:
            return None
        iv = log_ratio(1 / self.distance_sq, self.height_sq)
        return type(iv)(iv.lo - 1, iv.hi - 1)

    def as_row(self, d):
        return {
            "d": d,
            "height_sq": str(int(self.height_sq)),
            "distance_sq": str(self.distance_sq),
            "exponent": "inf" if self.exponent_lo is INF else (
                "" if self.exponent_lo is None else decimal_str(self.exponent_lo, 15, "down")),
            "certified": int(self.halo_sound),
        }


def make_witness(P, L, source=""):
    X = L.plucker
    hsq = norm_sq(X)
    wsq = wedge_with_point(P, X)
    value = wsq / (norm_sq(P.vector) * hsq)
    lo, hi = distance_bounds_sq(P, X, wsq)
    halo = max(hi - value, value - lo)
    if hsq <= 1:
        expo = None
    elif hi == 0:
        expo = INF
    else:
        # d <= H^(-1-w)  <=>  w <= -log(d^2)/log(H^2) - 1; round down
        expo = log_ratio(1 / hi, hsq).lo - 1
    return Witness(L, hsq, value, hi, halo, expo, source)


class RecordSequence:
    """Best-so-far records: heights strictly increase, distances strictly decrease."""

    def __init__(self, entries=()):
        self.entries = []
        for h, dist in sorted(entries):
            self.add(h, dist)

    def add(self, height_sq, distance_sq):
        if self.entries and self.entries[-1][0] >= height_sq:
            raise ValueError("records must be added in increasing height")
        if not self.entries or distance_sq < self.entries[-1][1]:
            self.entries.append((height_sq, distance_sq))
            return True
        return False

    @classmethod
    def from_witnesses(cls, witnesses):
        best = {}
        for w in witnesses:
            if w.height_sq not in best or w.distance_sq < best[w.height_sq]:
                best[w.height_sq] = w.distance_sq
        seq = cls()
        for h in sorted(best):
            seq.add(h, best[h])
        return seq

    def is_monotone(self):
        e = self.entries
        return all(a[0] < b[0] and a[1] > b[1] for a, b in zip(e, e[1:]))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass
class ExponentEstimate:
    n: int
    d: object  # int, or "uniform-0" / "uniform-(n-1)"
    value: object  # Fraction or INF
    direction: str
    height_max: int
    witnesses: list = field(default_factory=list)
    scatter: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def value_str(self):
        return "inf" if self.value is INF else decimal_str(self.value, 15, "down")

    def summary(self):
        return {
            "n": self.n,
            "d": self.d,
            "value": self.value_str,
            "value_exact": "inf" if self.value is INF else str(self.value),
            "direction": self.direction,
            "height_max": self.height_max,
            "witnesses": [
                {"subspace": w.subspace.serialize() if hasattr(w.subspace, "serialize") else str(w.subspace),
                 "height_sq": str(w.height_sq), "distance_sq": str(w.distance_sq)}
                for w in self.witnesses],
            "notes": list(self.notes),
            **{k: v for k, v in self.extra.items()},
        }


def _ladder_points(P, H_sq_max, steps):
    """Candidate rational points from LLL on |x|^2 + t |y ^ x|^2 for t = 4^j."""
    y = P.coords
    N = len(y)
    U_prev = None
    seen = set()
    for j in range(steps):
        s = 1 << j
        Y = [round(s * v) for v in y]
        rows = []
        for k in range(N):
            w = [int(i == k) for i in range(N)]
            for a, b in combinations(range(N), 2):
                w.append(Y[a] * int(b == k) - Y[b] * int(a == k))
            rows.append(w)
        if U_prev is not None:
            # warm start from the previous reduced basis
            rows = [[sum(u * r[c] for u, r in zip(urow, rows)) for c in range(len(rows[0]))]
                    for urow in U_prev]
        g = [[dot(u, v) for v in rows] for u in rows]
        _, U = lattice.lll_transform(g)
        U_total = U if U_prev is None else [
            [sum(U[i][k] * U_prev[k][c] for k in range(N)) for c in range(N)] for i in range(N)]
        U_prev = U_total
        for row in U_total:
            x = _sign_canonical(row)
            if dot(x, x) <= H_sq_max and x not in seen:
                seen.add(x)
                yield x
        if min(dot(r, r) for r in U_total) > H_sq_max:
            break


def _ladder_forms(P, H_sq_max, steps):
    """Candidate hyperplane normals from LLL on |a|^2 + t (a . y)^2."""
    y = P.coords
    N = len(y)
    U_prev = None
    seen = set()
    for j in range(steps):
        s = 1 << j
        rows = [[int(i == k) for i in range(N)] + [round(s * y[k])] for k in range(N)]
        if U_prev is not None:
            rows = [[sum(u * r[c] for u, r in zip(urow, rows)) for c in range(N + 1)]
                    for urow in U_prev]
        g = [[dot(u, v) for v in rows] for u in rows]
        _, U = lattice.lll_transform(g)
        U_total = U if U_prev is None else [
            [sum(U[i][k] * U_prev[k][c] for k in range(N)) for c in range(N)] for i in range(N)]
        U_prev = U_total
        for row in U_total:
            a = _sign_canonical(row)
            if dot(a, a) <= H_sq_max and a not in seen:
                seen.add(a)
                yield a
        if min(dot(r, r) for r in U_total) > H_sq_max:
            break


def _fit(P, d, witnesses, budget, notes):
    """Best certified exponent over witnesses inside the fitting window."""
    usable = [w for w in witnesses
              if w.exponent_lo is not None and w.height_sq >= budget.H_sq_min_fit]
    n = P.ambient_n
    if any(w.distance_sq_hi == 0 for w in witnesses):
        hits = [w for w in witnesses if w.distance_sq_hi == 0]
        notes.append("degenerate: point is rational" if d == 0 or n == 1 else
                     "degenerate: point lies on a rational subspace")
        return INF, hits[:1]
    if not usable:
        return Fraction(0), []
    top = max(w.exponent_lo for w in usable)
    best = [w for w in usable if w.exponent_lo == top]
    best.sort(key=lambda w: (w.height_sq, tuple(w.subspace.plucker.items())))
    return max(Fraction(0), top), best[:1]


def _pool_pick(witnesses, top):
    """Every search-found witness, plus the ``top`` best exhaustive ones."""
    def rank(w):
        return -(w.exponent_lo if isinstance(w.exponent_lo, Fraction) else 10 ** 9)

    found = [w for w in witnesses if w.source != "exhaustive"]
    small = sorted((w for w in witnesses if w.source == "exhaustive" and w.exponent_lo is not None),
                   key=rank)
    return found + small[:top]


def collect_witnesses(P, d, budget, pool=None):
    """Candidate witnesses for dimension d from all applicable strategies."""
    n = P.ambient_n
    found = {}

    def add(L, source):
        if L is None or L.dim_d != d:
            return
        key = L.basis
        if key in found:
            return
        w = make_witness(P, L, source)
        if w.height_sq <= budget.H_sq_max:
            found[key] = w

    ex_cap = min(budget.H_sq_max, budget.exhaustive_H_sq)
    try:
        for L in enumerate_subspaces(n, d, ex_cap, budget.max_enum):
            add(L, "exhaustive")
    except lattice.BudgetError:
        pass
    if d == 0:
        for x in _ladder_points(P, budget.H_sq_max, budget.ladder_size):
            add(point(x), "ladder")
    if d == n - 1:
        for a in _ladder_forms(P, budget.H_sq_max, budget.ladder_size):
            try:
                add(hyperplane(a), "ladder")
            except SubspaceError:
                pass
    if 1 <= d and pool is not None:
        lower = _pool_pick(pool.get(d - 1, []), budget.join_pool)
        points = _pool_pick(pool.get(0, []), budget.join_pool)
        for w in lower:
            if w.subspace.dim_d <= n - 2:
                try:
                    L_up, _ = going_up_lift(P, w.subspace)
                    add(L_up, "lift")
                except (lattice.BudgetError, ValueError):
                    pass
            # join with the points closest in height
            near = sorted(points, key=lambda p: abs(math.log(p.height_sq / w.height_sq)))
            for p in near[:3]:
                try:
                    add(join(w.subspace, p.subspace.basis[0]), "join")
                except SubspaceError:
                    pass
    return list(found.values())


def _estimate_from(P, d, witnesses, budget):
    n = P.ambient_n
    notes = []
    value, best = _fit(P, d, witnesses, budget, notes)
    sound = all(w.halo_sound for w in best)
    direction = CERTIFIED if sound else HEURISTIC
    if P.independence == "violated":
        direction = HEURISTIC
        notes.append("independence violated: exponent not certified")
        hits = [w for w in witnesses if w.distance_sq <= w.halo]
        if hits:
            notes.append("distance consistent with zero at " + hits[0].subspace.serialize())
    elif not sound:
        notes.append("proxy halo dominates a witness; refine the proxy")
    est = ExponentEstimate(n, d, value, direction, isqrt(int(budget.H_sq_max)), best,
                           sorted(witnesses, key=lambda w: (w.height_sq, w.distance_sq)), notes)
    est.extra["records"] = [(str(h), str(v)) for h, v in RecordSequence.from_witnesses(witnesses)]
    return est


def estimate_many(P, ds, budget=None):
    """Estimates for several dimensions sharing one witness pool."""
    n = P.ambient_n
    budget = budget or SearchBudget()
    for d in ds:
        if not 0 <= d <= n - 1:
            raise ValueError(f"need 0 <= d <= n-1, got d={d}, n={n}")
    middle = [d for d in ds if d <= n - 2]
    pool = {}
    for e in range(max(middle) + 1 if middle else 0):
        pool[e] = collect_witnesses(P, e, budget, pool)
    out = []
    for d in ds:
        if d not in pool:
            pool_d = pool if (d <= n - 2 and d >= 1) else None
            pool[d] = collect_witnesses(P, d, budget, pool_d)
        out.append(_estimate_from(P, d, pool[d], budget))
    return out


def estimate_omega_d(P, d, budget=None, pool=None):
    """Certified lower estimate of the exponent of approximation by d-dimensional subvarieties."""
    n = P.ambient_n
    if not 0 <= d <= n - 1:
        raise ValueError(f"need 0 <= d <= n-1, got d={d}, n={n}")
    budget = budget or SearchBudget()
    if pool is None and 1 <= d <= n - 2:
        pool = {}
        for e in range(d):
            pool[e] = collect_witnesses(P, e, budget, pool)
    return _estimate_from(P, d, collect_witnesses(P, d, budget, pool), budget)


def uniform_profile(P, end, X_grid, method="auto"):
    """Exact minimal errors m(X) on the grid, with their halos."""
    fn = best_point_error if end == "point" else best_form_error
    rows = []
    for X in X_grid:
        x, err = fn(P, X, method)
        rows.append((X, x, err, approximation_halo(P, x, end)))
    return rows


def estimate_uniform(P, end, X_grid, onset=None, method="auto", profile=None):
    """Uniform exponent read off the minimal errors m(X) on a grid of size bounds.

    The value is the envelope ``min -log m(X) / log X`` over grid points
    ``X >= onset``, with m taken at the pessimistic end of its halo and the
    quotient rounded down.  ``extra["window"]`` holds the stricter
    ``min -log m(X_i) / log X_(i+1)``, which covers every real X between
    consecutive grid points because m is nonincreasing.  ``profile`` may
    carry precomputed :func:`uniform_profile` rows for the same grid.
    """
    if end not in ("point", "form"):
        raise ValueError(f"end must be 'point' or 'form', got {end!r}")
    grid = sorted(set(int(X) for X in X_grid))
    if not grid or grid[0] < 2:
        raise ValueError("grid needs size bounds >= 2")
    onset = grid[0] if onset is None else onset
    used = [X for X in grid if X >= onset]
    if not used:
        raise ValueError("onset lies beyond the grid")
    n = P.ambient_n
    if profile is None:
        rows = uniform_profile(P, end, used, method)
    else:
        rows = [r for r in profile if r[0] >= onset]
    notes = [f"onset X={onset}"]

    def expo(m_hi, X):
        return INF if m_hi == 0 else log_ratio(1 / m_hi, X).lo

    per_point = [expo(err + halo, X) for X, _, err, halo in rows]
    window = [expo(a[2] + a[3], b[0]) for a, b in zip(rows, rows[1:])]
    value = min(per_point, key=lambda v: math.inf if v is INF else v)
    if value is not INF and value < 0:
        value = Fraction(0)
    sound = all(halo == 0 or 4 * halo <= err for _, _, err, halo in rows)
    exhaustive = method in ("auto", "scan", "enum")
    direction = CERTIFIED if exhaustive and sound else HEURISTIC
    if not exhaustive:
        notes.append("LLL ladder search: m(X) is only an upper bound")
    if not sound:
        notes.append("proxy halo dominates m(X); refine the proxy")
    if P.independence == "violated":
        direction = HEURISTIC
        notes.append("independence violated: exponent not certified")
    label = "uniform-0" if end == "point" else "uniform-(n-1)"
    worst = min(range(len(rows)),
                key=lambda i: math.inf if per_point[i] is INF else per_point[i])
    X, x, err, halo = rows[worst]
    try:
        L = point(x) if end == "point" else hyperplane(x)
        witnesses = [make_witness(P, L, "uniform")]
    except SubspaceError:
        witnesses = []
    est = ExponentEstimate(n, label, value, direction, grid[-1], witnesses, [], notes)
    est.extra["onset"] = onset
    est.extra["profile"] = [
        {"X": X, "vector": list(x), "error": str(err), "halo": str(halo),
         "exponent": "inf" if e is INF else decimal_str(e, 15, "down")}
        for (X, x, err, halo), e in zip(rows, per_point)]
    if window:
        w = min(window, key=lambda v: math.inf if v is INF else v)
        est.extra["window"] = "inf" if w is INF else decimal_str(max(w, Fraction(0)), 15, "down")
    return est

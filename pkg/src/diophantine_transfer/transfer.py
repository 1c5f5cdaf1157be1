"""Transfer inequalities between approximation exponents, and the going-up lift.

Exponents are extended rationals: a :class:`~fractions.Fraction` or ``INF``.
Each threshold formula is evaluated at ``INF`` as its limit, so every
predicate is total.
"""

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import lattice
from .grassmann import norm_sq, primitive_part, wedge
from .intervals import decimal_str
from .subspace import join, wedge_with_point

INF = math.inf


class NoRoomError(ValueError):
    """The subspace already has dimension n - 1."""


def is_inf(x):
    return x == INF


def ext(value):
    """Parse an extended rational from a number or a string such as ``"3/2"`` or ``"inf"``."""
    if isinstance(value, str):
        s = value.strip().lower()
        if s in ("inf", "+inf", "infinity", "+infinity", "oo"):
            return INF
        return Fraction(s)
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            return INF
        return Fraction(value)
    return Fraction(value)


def ext_str(x):
    return "inf" if is_inf(x) else str(x)


def _ext_all(*values):
    return [None if v is None else ext(v) for v in values]


def _need(cond, msg):
    if not cond:
        raise ValueError(msg)


# --- thresholds ------------------------------------------------------------


def going_up_threshold(n, d, w):
    (w,) = _ext_all(w)
    _need(0 <= d <= n - 2, f"going-up needs 0 <= d <= n-2 (n={n}, d={d})")
    if is_inf(w):
        return INF
    return ((n - d) * w + 1) / Fraction(n - d - 1)


def going_down_threshold(n, d, w):
    (w,) = _ext_all(w)
    _need(1 <= d <= n - 1, f"going-down needs 1 <= d <= n-1 (n={n}, d={d})")
    if is_inf(w):
        return Fraction(d)
    return d * w / (w + d + 1)


def check_going_up(n, d, omega_d, omega_d1):
    return omega_d1 >= going_up_threshold(n, d, omega_d)


def check_going_down(n, d, omega_d, omega_dm1):
    return omega_dm1 >= going_down_threshold(n, d, omega_d)


def iterated_up(n, d, k, w):
    (w,) = _ext_all(w)
    _need(0 <= d <= n - 2 and 1 <= k <= n - d - 1, f"bad (d, k) = ({d}, {k}) for n = {n}")
    if is_inf(w):
        return INF
    return ((n - d) * w + k) / Fraction(n - d - k)


def iterated_down(n, d, k, w):
    (w,) = _ext_all(w)
    _need(1 <= d <= n - 1 and 1 <= k <= d, f"bad (d, k) = ({d}, {k}) for n = {n}")
    if is_inf(w):
        return Fraction(d - k + 1, k)
    return (d - k + 1) * w / (k * w + d + 1)


def iterated_bounds(n, d, k, omega_d):
    """``(up, down)``; a side is ``None`` when (d, k) is outside its range."""
    up = iterated_up(n, d, k, omega_d) if 0 <= d <= n - 2 and 1 <= k <= n - d - 1 else None
    down = iterated_down(n, d, k, omega_d) if 1 <= d <= n - 1 and 1 <= k <= d else None
    if up is None and down is None:
        raise ValueError(f"(d, k) = ({d}, {k}) admissible for neither bound at n = {n}")
    return up, down


def khintchine_lower(n, omega_n1):
    (omega_n1,) = _ext_all(omega_n1)
    _need(n >= 1, "n >= 1")
    if is_inf(omega_n1):
        return INF if n == 1 else Fraction(1, n - 1)
    return omega_n1 / ((n - 1) * omega_n1 + n)


def khintchine_upper(n, omega_n1):
    (omega_n1,) = _ext_all(omega_n1)
    if is_inf(omega_n1):
        return INF
    return (omega_n1 - n + 1) / Fraction(n)


def khintchine_bounds(n, omega_n1):
    """``(lower0, upper0)``: the two sides of Khintchine's transference for omega_0."""
    return khintchine_lower(n, omega_n1), khintchine_upper(n, omega_n1)


def khintchine_holds(n, omega_0, omega_n1):
    lo, hi = khintchine_bounds(n, omega_n1)
    return lo <= omega_0 <= hi


def corollary_floor(n, d):
    _need(0 <= d <= n - 1, f"need 0 <= d <= n-1 (n={n}, d={d})")
    return Fraction(d + 1, n - d)


def jarnik_identity(uniform1):
    (uniform1,) = _ext_all(uniform1)
    if is_inf(uniform1):
        return Fraction(1)
    return 1 - 1 / Fraction(uniform1)


def theorem3_lower(n, omega_n1, uniformN1):
    omega_n1, uniformN1 = _ext_all(omega_n1, uniformN1)
    w, u = omega_n1, uniformN1
    if is_inf(w) and is_inf(u):
        return INF if n == 2 else Fraction(1, n - 2)
    if is_inf(w):
        return (u - 1) / ((n - 2) * u + 1)
    if is_inf(u):
        return w / ((n - 2) * w + n - 1)
    return (u - 1) * w / (((n - 2) * u + 1) * w + (n - 1) * u)


def theorem3_upper(n, omega_n1, uniform0):
    omega_n1, uniform0 = _ext_all(omega_n1, uniform0)
    u0 = uniform0
    _need(not is_inf(u0), "the uniform point exponent is finite")
    if is_inf(omega_n1):
        return INF if u0 < 1 else Fraction(-1)
    return ((1 - u0) * omega_n1 - n + 2 - u0) / Fraction(n - 1)


def eq8_bounds(omega_1, uniform1):
    """The n = 2 form of the refined transference, in terms of the hat exponent of the form."""
    omega_1, uniform1 = _ext_all(omega_1, uniform1)
    w, u = omega_1, uniform1
    if is_inf(w):
        return (INF if is_inf(u) else u - 1), INF
    if is_inf(u):
        return w, Fraction(-1)
    return (u - 1) * w / (w + u), (w - u + 1) / u


def theorem3_bounds(n, omega_n1, uniform0=None, uniformN1=None):
    """``(lower0, upper0)`` bracketing omega_0 given the uniform exponents.

    For n = 2 a missing ``uniform0`` is filled in through Jarnik's identity and
    the bounds are cross-checked against the two-variable form.
    """
    _need(n >= 2, "n >= 2")
    omega_n1, uniform0, uniformN1 = _ext_all(omega_n1, uniform0, uniformN1)
    if uniformN1 is not None and uniformN1 < n:
        warnings.warn(f"uniform form exponent {uniformN1} below the Dirichlet floor {n}")
    if uniform0 is not None and uniform0 < Fraction(1, n):
        warnings.warn(f"uniform point exponent {uniform0} below the Dirichlet floor 1/{n}")
    if n == 2 and uniform0 is None and uniformN1 is not None:
        uniform0 = jarnik_identity(uniformN1)
    lower = theorem3_lower(n, omega_n1, uniformN1) if uniformN1 is not None else None
    upper = theorem3_upper(n, omega_n1, uniform0) if uniform0 is not None else None
    if (n == 2 and uniformN1 is not None and not is_inf(uniformN1) and not is_inf(omega_n1)
            and uniform0 == jarnik_identity(uniformN1)):
        lo8, hi8 = eq8_bounds(omega_n1, uniformN1)
        if (lo8, hi8) != (lower, upper):
            raise AssertionError(f"two-variable form disagrees: {(lo8, hi8)} vs {(lower, upper)}")
    return lower, upper


def family_up(n, w):
    (w,) = _ext_all(w)
    _need(w >= Fraction(1, n), "family_up needs w >= 1/n")
    if is_inf(w):
        return [INF] * n
    return [(n * w + d) / Fraction(n - d) for d in range(n)]


def family_down(n, w):
    (w,) = _ext_all(w)
    _need(w >= n, "family_down needs w >= n")
    if is_inf(w):
        return [Fraction(d + 1, n - d - 1) for d in range(n - 1)] + [INF]
    return [(d + 1) * w / ((n - d - 1) * w + n) for d in range(n)]


def spectrum_families(n, w):
    """Both one-parameter families of exponent tuples; ``None`` where w is out of range."""
    up = family_up(n, w) if w >= Fraction(1, n) else None
    down = family_down(n, w) if w >= n else None
    return up, down


# --- tuple checking --------------------------------------------------------


VERIFIED, CONSISTENT, VIOLATED = "verified", "consistent", "violated"


@dataclass
class ExponentTuple:
    n: int
    omega: tuple
    uniform0: object = None
    uniformN1: object = None

    def __post_init__(self):
        self.omega = tuple(ext(w) for w in self.omega)
        if len(self.omega) != self.n:
            raise ValueError(f"need {self.n} exponents, got {len(self.omega)}")
        if any(w < 0 for w in self.omega):
            raise ValueError("exponents are nonnegative")
        if self.uniform0 is not None:
            self.uniform0 = ext(self.uniform0)
        if self.uniformN1 is not None:
            self.uniformN1 = ext(self.uniformN1)


@dataclass
class PredicateResult:
    name: str
    status: str
    lhs: object
    rhs: object
    equality: bool = False

    def as_dict(self):
        return {"predicate": self.name, "status": self.status, "lhs": ext_str(self.lhs),
                "rhs": ext_str(self.rhs), "equality": self.equality}


def check_tuple(t, mode="exact"):
    """Evaluate every applicable inequality on an exponent tuple.

    ``mode="exact"``: the entries are the exponents themselves, so each
    predicate is verified or violated.  ``mode="lower"``: the entries are
    certified lower estimates; only inequalities bounding a measured
    exponent from below by a constant can be verified, the rest are
    reported consistent.
    """
    n, w = t.n, t.omega
    results = []

    def record(name, lhs, rhs, floor_type=False):
        # every predicate has the shape lhs >= rhs
        holds = lhs >= rhs
        if mode == "exact":
            status = VERIFIED if holds else VIOLATED
        else:
            status = VERIFIED if (floor_type and holds) else CONSISTENT
        results.append(PredicateResult(name, status, lhs, rhs, holds and lhs == rhs))

    record("(1) lower", w[0], khintchine_lower(n, w[n - 1]))
    record("(1) upper", khintchine_upper(n, w[n - 1]), w[0])
    for d in range(0, n - 1):
        record(f"(2) d={d}", w[d + 1], going_up_threshold(n, d, w[d]))
    for d in range(1, n):
        record(f"(3) d={d}", w[d - 1], going_down_threshold(n, d, w[d]))
    for d in range(0, n - 1):
        for k in range(1, n - d):
            record(f"(4) d={d} k={k}", w[d + k], iterated_up(n, d, k, w[d]))
    for d in range(1, n):
        for k in range(1, d + 1):
            record(f"(5) d={d} k={k}", w[d - k], iterated_down(n, d, k, w[d]))
    for d in range(n):
        record(f"(6) d={d}", w[d], corollary_floor(n, d), floor_type=True)
    u0, u1 = t.uniform0, t.uniformN1
    if n == 2 and u0 is None and u1 is not None:
        u0 = jarnik_identity(u1)
    if u1 is not None:
        record("dirichlet uniform form", u1, Fraction(n), floor_type=True)
    if t.uniform0 is not None:
        record("dirichlet uniform point", t.uniform0, Fraction(1, n), floor_type=True)
    if n >= 2 and u1 is not None:
        record("theorem3 lower", w[0], theorem3_lower(n, w[n - 1], u1))
    if n >= 2 and u0 is not None:
        record("theorem3 upper", theorem3_upper(n, w[n - 1], u0), w[0])
    if n == 2 and u1 is not None:
        lo8, hi8 = eq8_bounds(w[1], u1)
        record("(8) lower", w[0], lo8)
        record("(8) upper", hi8, w[0])
        if t.uniform0 is not None:
            j = jarnik_identity(u1)
            ok = t.uniform0 == j
            status = VERIFIED if ok else (VIOLATED if mode == "exact" else CONSISTENT)
            results.append(PredicateResult("(7)", status, t.uniform0, j, ok))
    return results


# --- going-up lift ---------------------------------------------------------


@dataclass
class SearchBudget:
    H_sq_max: Fraction = Fraction(10 ** 10)
    ladder_size: int = 80
    exhaustive_H_sq: Fraction = Fraction(50)
    max_enum: int = 50_000
    join_pool: int = 6
    # witnesses below this height are ignored by the fit; None means sqrt(H_sq_max)
    H_sq_min_fit: Fraction = None
    time_hint_s: float = None

    def __post_init__(self):
        self.H_sq_max = Fraction(self.H_sq_max)
        self.exhaustive_H_sq = Fraction(self.exhaustive_H_sq)
        if self.H_sq_min_fit is None:
            self.H_sq_min_fit = Fraction(max(2, isqrt(int(self.H_sq_max))))
        self.H_sq_min_fit = Fraction(self.H_sq_min_fit)
        if min(self.H_sq_max, self.exhaustive_H_sq, self.ladder_size, self.max_enum) <= 0:
            raise ValueError("budget entries must be positive")


@dataclass
class LiftCertificate:
    input_plucker: object
    xi_ambient: tuple
    xi_norm_sq: Fraction
    R_interval: object
    output_plucker: object
    bound_norm: bool
    bound_wedge: bool
    minkowski_ok: bool
    norm_identity: bool
    svp_mode: str
    det_identity: bool = True
    extra: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.bound_norm and self.bound_wedge

    def to_dict(self):
        def mv(m):
            return [[list(k), str(v)] for k, v in m.items()]

        lo, hi = self.R_interval.as_strings(30)
        return {
            "input_plucker": mv(self.input_plucker),
            "xi_lift": [str(v) for v in self.xi_ambient],
            "xi_norm_sq": str(self.xi_norm_sq),
            "R_interval": {"lo": lo, "hi": hi, "rounding": "outward (lo down, hi up)"},
            "R_hi_sq": str(self.R_interval.hi ** 2),
            "output_plucker": mv(self.output_plucker),
            "bound_norm": self.bound_norm,
            "bound_wedge": self.bound_wedge,
            "minkowski_ok": self.minkowski_ok,
            "norm_identity": self.norm_identity,
            "det_identity": self.det_identity,
            "svp_mode": self.svp_mode,
            **self.extra,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def going_up_lift(P, L, max_rank=lattice.SVP_MAX_RANK):
    """Lift a d-dimensional subspace to a (d+1)-dimensional one through a short projected vector.

    Returns ``(L_up, certificate)``.  The certificate records exact checks of
    ``|X'|^2 <= R_hi^2 |X|^2`` and ``|y ^ X'|^2 <= R_hi^2 |y ^ X|^2``.
    """
    n, d = L.ambient_n, L.dim_d
    if d > n - 2:
        raise NoRoomError("no room to go up")
    X = L.plucker
    X_sq = norm_sq(X)
    Lam = lattice.project_orthogonal(L.basis)
    det_lam = lattice.det_sq(Lam)
    k = n - d
    R = lattice.minkowski_radius(k, det_lam)
    try:
        coeffs, xi_sq = lattice.shortest_vector(Lam, max_rank)
        mode = "exact"
    except lattice.BudgetError:
        Lam = lattice.lll_reduce(Lam)
        coeffs = (1,) + (0,) * (Lam.rank - 1)
        xi_sq = Lam.gram[0][0]
        mode = "lll"
    x = Lam.lift(coeffs)
    X_new = wedge(x, X)
    R_hi_sq = R.hi ** 2
    wsq = wedge_with_point(P, X)
    wsq_new = wedge_with_point(P, X_new)
    cert = LiftCertificate(
        input_plucker=X,
        xi_ambient=x,
        xi_norm_sq=xi_sq,
        R_interval=R,
        output_plucker=primitive_part(X_new),
        bound_norm=norm_sq(X_new) <= R_hi_sq * X_sq,
        bound_wedge=wsq_new <= R_hi_sq * wsq,
        minkowski_ok=0 < xi_sq <= R_hi_sq,
        norm_identity=norm_sq(X_new) == xi_sq * X_sq,
        svp_mode=mode,
        det_identity=det_lam * X_sq == 1,
        extra={"n": n, "d": d, "y_wedge_X_sq": str(wsq), "y_wedge_Xnew_sq": str(wsq_new),
               "R_lo_decimal": decimal_str(R.lo, 20, "down"),
               "R_hi_decimal": decimal_str(R.hi, 20, "up")},
    )
    L_up = join(L, x)
    return L_up, cert

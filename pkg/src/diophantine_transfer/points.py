"""Test points with certified rational proxies.

Point spec text format::

    poly:<coeffs, leading first>;interval:<lo>,<hi>[;powers:<n>]
    decimal:<d1>[,<d2>,...]
    sqrt:<m1>,<m2>,...
    cf:<rule>[,<rule>...]        rule = liouville:<e> | random:<seed>
    catalog:<name>

Continued-fraction streams describe numbers in (0, 1) as ``[0; a1, a2, ...]``.
"""

import random
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import sympy

from .subspace import PointProxy


class PointSpecError(ValueError):
    pass


@dataclass(frozen=True)
class PointSpec:
    kind: str
    payload: dict = field(hash=False)
    n: int
    name: str = ""
    negative: bool = False
    note: str = ""

    def __str__(self):
        return format_spec(self)


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_sign_change(coeffs, lo, hi):
    a, b = _poly_eval(coeffs, lo), _poly_eval(coeffs, hi)
    return a == 0 or b == 0 or (a < 0) != (b < 0)


def algebraic(coeffs, lo, hi, n=1, name=""):
    coeffs = tuple(int(c) for c in coeffs)
    lo, hi = Fraction(lo), Fraction(hi)
    if n == 1:
        return PointSpec("algebraic-root", {"poly": coeffs, "interval": (lo, hi)}, 1, name)
    return PointSpec("power-vector", {"poly": coeffs, "interval": (lo, hi)}, n, name)


def sqrt_combination(radicands, name=""):
    radicands = tuple(int(m) for m in radicands)
    return PointSpec("sqrt-combination", {"radicands": radicands}, len(radicands), name)


def cf_stream(rules, name=""):
    rules = tuple(rules)
    return PointSpec("cf-stream", {"rules": rules}, len(rules), name)


def decimal(values, name=""):
    values = tuple(str(v) for v in values)
    return PointSpec("decimal-literal", {"values": values}, len(values), name)


def _check_isolation(coeffs, lo, hi):
    if lo >= hi:
        raise PointSpecError("empty isolating interval")
    if not _poly_sign_change(coeffs, lo, hi):
        raise PointSpecError("no sign change on the isolating interval")
    x = sympy.Symbol("x")
    p = sympy.Poly(list(coeffs), x)
    if sympy.degree(sympy.gcd(p, p.diff(x))) > 0:
        raise PointSpecError("polynomial is not squarefree")
    if p.count_roots(sympy.Rational(lo.numerator, lo.denominator),
                     sympy.Rational(hi.numerator, hi.denominator)) != 1:
        raise PointSpecError("interval does not isolate exactly one root")


def _bisect(coeffs, lo, hi, bits):
    """Shrink an isolating interval below width 2**-bits."""
    flo = _poly_eval(coeffs, lo)
    if flo == 0:
        return lo, lo
    if _poly_eval(coeffs, hi) == 0:
        return hi, hi
    target = Fraction(1, 1 << bits)
    while hi - lo > target:
        mid = (lo + hi) / 2
        fm = _poly_eval(coeffs, mid)
        if fm == 0:
            return mid, mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


def _cf_partial_quotients(rule):
    """Generator of partial quotients a1, a2, ... for a stream rule."""
    kind, _, arg = rule.partition(":")
    if kind == "liouville":
        e = int(arg or 15)
        q_prev, q = 0, 1
        a = 2
        while True:
            yield a
            q_prev, q = q, a * q + q_prev
            a = q ** e
    elif kind == "random":
        rng = random.Random(int(arg or 0))
        while True:
            u = rng.random()
            yield max(1, int(1 / u)) if u > 0 else 1
    elif kind == "periodic":
        period = [int(v) for v in arg.split("/")]
        while True:
            yield from period
    else:
        raise PointSpecError(f"unknown continued-fraction rule {rule!r}")


def _cf_proxy(rule, bits):
    """Convergent p/q of [0; a1, ...] with |xi - p/q| <= 1/(q q') <= 2**-bits."""
    p_prev, p = 1, 0
    q_prev, q = 0, 1
    target = 1 << bits
    for a in _cf_partial_quotients(rule):
        p_next, q_next = a * p + p_prev, a * q + q_prev
        if q > 1 and q * q_next >= target:
            return Fraction(p, q), Fraction(1, q * q_next)
        p_prev, p, q_prev, q = p, p_next, q, q_next


def refine(spec, precision_bits=128):
    """Proxy of ``spec`` with certified Euclidean radius <= 2**-precision_bits."""
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    kind, pl, n = spec.kind, spec.payload, spec.n
    indep = independence_check(spec)[0] if kind != "decimal-literal" else "violated"
    extra = n.bit_length() + 1
    if kind == "decimal-literal":
        return PointProxy.from_affine([Fraction(v) for v in pl["values"]], 0,
                                      label=spec.name, independence=indep)
    if kind in ("algebraic-root", "power-vector"):
        coeffs = pl["poly"]
        lo, hi = pl["interval"]
        _check_isolation(coeffs, lo, hi)
        M = max(abs(lo), abs(hi), Fraction(1))
        # |xi^k - m^k| <= k M^(k-1) |xi - m|, summed over k
        growth = sum(k * M ** (k - 1) for k in range(1, n + 1))
        bits = precision_bits + extra + int(growth).bit_length()
        a, b = _bisect(coeffs, lo, hi, bits)
        m = (a + b) / 2
        r = (b - a) / 2
        theta = [m ** k for k in range(1, n + 1)]
        radius = r * growth
        return PointProxy.from_affine(theta, radius, label=spec.name, independence=indep)
    if kind == "sqrt-combination":
        bits = precision_bits + extra
        theta = []
        for m in pl["radicands"]:
            s = isqrt(m << (2 * bits))
            theta.append(Fraction(s, 1 << bits) if s * s == m << (2 * bits)
                         else Fraction(2 * s + 1, 1 << (bits + 1)))
        exact = all(isqrt(m) ** 2 == m for m in pl["radicands"])
        radius = Fraction(0) if exact else Fraction(n, 1 << (bits + 1))
        return PointProxy.from_affine(theta, radius, label=spec.name, independence=indep)
    if kind == "cf-stream":
        theta, radius = [], Fraction(0)
        for rule in pl["rules"]:
            v, r = _cf_proxy(rule, precision_bits + extra)
            theta.append(v)
            radius += r
        return PointProxy.from_affine(theta, radius, label=spec.name, independence=indep)
    raise PointSpecError(f"unknown point kind {kind!r}")


def _squarefree_split(m):
    """m = s^2 * f with f squarefree."""
    f = dict(sympy.factorint(m))
    s, core = 1, 1
    for p, e in f.items():
        s *= p ** (e // 2)
        if e % 2:
            core *= p
    return s, core


@lru_cache(maxsize=None)
def independence_check(spec, n=None, H_probe=50):
    """Linear independence of 1, theta_1, ..., theta_n over Q.

    Returns ``(status, relation)`` with status in {"certified", "probable",
    "violated"}; ``relation`` is an integer vector ``a`` with
    ``a0 + a1 theta_1 + ... = 0`` when one was found.
    """
    n = spec.n if n is None else n
    kind, pl = spec.kind, spec.payload
    if kind == "decimal-literal":
        v = Fraction(pl["values"][0])
        rel = [-v.numerator, v.denominator] + [0] * (n - 1)
        return "violated", tuple(rel)
    if kind in ("algebraic-root", "power-vector"):
        coeffs = pl["poly"]
        lo, hi = pl["interval"]
        x = sympy.Symbol("x")
        minpoly = None
        for factor, _ in sympy.factor_list(sympy.Poly(list(coeffs), x))[1]:
            fc = [int(c) for c in factor.all_coeffs()]
            if factor.degree() > 0 and _poly_sign_change(fc, lo, hi):
                minpoly = fc
                break
        if minpoly is None:
            raise PointSpecError("no factor has a root in the isolating interval")
        deg = len(minpoly) - 1
        if deg > n:
            return "certified", None
        # powers xi^0..xi^n are dependent through the minimal polynomial
        rel = list(reversed(minpoly)) + [0] * (n - deg)
        if next(c for c in rel if c) < 0:
            rel = [-c for c in rel]
        return "violated", tuple(rel)
    if kind == "sqrt-combination":
        seen = {}
        for i, m in enumerate(pl["radicands"], start=1):
            s, core = _squarefree_split(m)
            if core == 1:
                rel = [0] * (n + 1)
                rel[0], rel[i] = s, -1
                return "violated", tuple(rel)
            if core in seen:
                j, sj = seen[core]
                rel = [0] * (n + 1)
                rel[j], rel[i] = s, -sj
                return "violated", tuple(rel)
            seen[core] = (i, s)
        return "certified", None
    if kind == "cf-stream":
        if n == 1:
            # an infinite continued fraction is irrational
            return "certified", None
        from .exponents import best_form_error

        proxy = refine_raw_cf(spec, 160)
        x, err = best_form_error(proxy, H_probe)
        slack = sum(abs(c) for c in x) * proxy.radius
        if err <= slack:
            return "violated", tuple(x)
        return "probable", None
    raise PointSpecError(f"unknown point kind {kind!r}")


def refine_raw_cf(spec, bits):
    theta, radius = [], Fraction(0)
    for rule in spec.payload["rules"]:
        v, r = _cf_proxy(rule, bits)
        theta.append(v)
        radius += r
    return PointProxy.from_affine(theta, radius, label=spec.name)


_CATALOG = (
    sqrt_combination((2, 3), name="sqrt2-sqrt3"),
    algebraic((1, 0, -1, -1), 1, 2, n=2, name="plastic"),
    algebraic((1, 0, 0, -2), 1, 2, n=2, name="cbrt2"),
    cf_stream(("random:1", "random:2"), name="random2"),
    cf_stream(("random:3", "random:4", "random:5"), name="random3"),
    sqrt_combination((2, 3, 5), name="sqrt2-sqrt3-sqrt5"),
    cf_stream(("liouville:15",), name="liouville"),
    PointSpec("power-vector", {"poly": (1, -1, -1), "interval": (Fraction(1), Fraction(2))},
              2, name="golden-trap", negative=True,
              note="1, phi, phi^2 are dependent: kept as a negative test"),
)


def catalog():
    return list(_CATALOG)


def catalog_entry(name):
    for spec in _CATALOG:
        if spec.name == name:
            return spec
    raise PointSpecError(f"no catalog entry named {name!r}")


def parse_spec(text):
    text = text.strip()
    head, _, rest = text.partition(":")
    if head == "catalog":
        return catalog_entry(rest)
    if head == "decimal":
        return decimal(rest.split(","))
    if head == "sqrt":
        return sqrt_combination(int(v) for v in rest.split(","))
    if head == "cf":
        return cf_stream(rest.split(","))
    if head == "poly":
        fields = dict(part.split(":", 1) for part in text.split(";"))
        try:
            coeffs = [int(c) for c in fields["poly"].split(",")]
            lo, hi = (Fraction(v) for v in fields["interval"].split(","))
        except (KeyError, ValueError) as exc:
            raise PointSpecError(f"malformed polynomial spec {text!r}") from exc
        return algebraic(coeffs, lo, hi, n=int(fields.get("powers", 1)))
    raise PointSpecError(f"unrecognized point spec {text!r}")


def format_spec(spec):
    pl = spec.payload
    if spec.kind in ("algebraic-root", "power-vector"):
        lo, hi = pl["interval"]
        s = f"poly:{','.join(map(str, pl['poly']))};interval:{lo},{hi}"
        return s + (f";powers:{spec.n}" if spec.kind == "power-vector" else "")
    if spec.kind == "decimal-literal":
        return "decimal:" + ",".join(pl["values"])
    if spec.kind == "sqrt-combination":
        return "sqrt:" + ",".join(map(str, pl["radicands"]))
    return "cf:" + ",".join(pl["rules"])

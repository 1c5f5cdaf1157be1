"""Certified real enclosures with rational endpoints.

Transcendental values (pi, logs, fractional powers) are evaluated in
mpmath's interval context, whose endpoints are dyadic and therefore convert
to :class:`~fractions.Fraction` exactly.  Everything downstream compares
rationals.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from mpmath import iv
from mpmath.libmp import to_rational

DEFAULT_PREC = 128


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def as_strings(self, digits=30):
        return (decimal_str(self.lo, digits, "down"), decimal_str(self.hi, digits, "up"))


def _iv_endpoints(x):
    # to_rational may hand back gmpy integers; Fraction wants plain ints
    (a, b), (c, d) = to_rational(x._mpi_[0]), to_rational(x._mpi_[1])
    return Fraction(int(a), int(b)), Fraction(int(c), int(d))


def to_iv(q):
    q = Fraction(q)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def from_iv(x):
    return Interval(*_iv_endpoints(x))


def evaluate(fn, prec=DEFAULT_PREC):
    """Run ``fn`` under the interval context at ``prec`` bits and return an Interval."""
    old = iv.prec
    iv.prec = prec
    try:
        return from_iv(fn(iv))
    finally:
        iv.prec = old


def log_interval(q, prec=DEFAULT_PREC):
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of a nonpositive number")
    return evaluate(lambda ctx: ctx.log(to_iv(q)), prec)


def sqrt_bounds(q, bits=64):
    """Rationals ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 2**-bits * (1 + sqrt(q))``."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt of a negative number")
    if q == 0:
        return Fraction(0), Fraction(0)
    scale = 1 << bits
    # floor(sqrt(q) * scale) from the integer square root of floor(q * scale^2)
    s = isqrt(q.numerator * scale * scale // q.denominator)
    lo = Fraction(s, scale)
    hi = Fraction(s + 1, scale)
    return lo, hi


def log_ratio(num, den, prec=DEFAULT_PREC):
    """Enclosure of ``log(num) / log(den)``; ``den`` must exceed 1."""
    num, den = Fraction(num), Fraction(den)
    if den <= 1:
        raise ValueError("log base must exceed 1")
    return evaluate(lambda ctx: ctx.log(to_iv(num)) / ctx.log(to_iv(den)), prec)


def decimal_str(q, digits=15, rounding="nearest"):
    """Decimal rendering of a rational with ``digits`` significant digits.

    ``rounding`` is ``"down"``, ``"up"`` or ``"nearest"``; directed modes round
    toward -inf / +inf so printed bounds stay valid.
    """
    q = Fraction(q)
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    a = abs(q)
    exp10 = len(str(a.numerator)) - len(str(a.denominator))
    if Fraction(10) ** exp10 > a:
        exp10 -= 1
    shift = digits - 1 - exp10
    scaled = a * Fraction(10) ** shift
    fl = scaled.numerator // scaled.denominator
    exact = fl == scaled
    if rounding == "nearest":
        m = int(scaled + Fraction(1, 2))
    elif (rounding == "up") != (sign == "-"):
        m = fl if exact else fl + 1
    else:
        m = fl
    if len(str(m)) > digits:
        m //= 10
        shift -= 1
    s = str(m).rjust(digits, "0")
    point = len(s) - shift
    if shift <= 0:
        body = s + "0" * (-shift)
    elif point <= 0:
        body = "0." + "0" * (-point) + s
    else:
        body = s[:point] + "." + s[point:]
    if "." in body:
        body = body.rstrip("0").rstrip(".")
    return sign + body

"""Rational linear subvarieties of P^n(R) and their distance to a real point."""

from dataclasses import dataclass, field
from fractions import Fraction

from . import lattice
from .grassmann import Multivector, norm_sq, primitive_part, wedge, wedge_all
from .intervals import sqrt_bounds
from .linalg import content, integer_kernel


class SubspaceError(ValueError):
    pass


@dataclass(frozen=True)
class RationalSubspace:
    ambient_n: int
    dim_d: int
    basis: tuple
    plucker: Multivector = field(compare=False, repr=False)

    def serialize(self):
        rows = ";".join(",".join(str(v) for v in row) for row in self.basis)
        return f"n={self.ambient_n} d={self.dim_d} rows={rows}"

    def plucker_pairs(self):
        return [(list(k), v) for k, v in self.plucker.items()]


@dataclass(frozen=True)
class PointProxy:
    """Rational stand-in for a real point with a certified error radius.

    ``coords`` are homogeneous with ``coords[0] == 1``; ``radius`` bounds the
    Euclidean distance in R^n between the proxy and the true point.
    """

    ambient_n: int
    coords: tuple
    radius: Fraction = Fraction(0)
    label: str = ""
    independence: str = "unknown"

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "radius", Fraction(self.radius))
        if len(coords) != self.ambient_n + 1:
            raise ValueError("proxy needs n+1 homogeneous coordinates")
        if coords[0] != 1:
            raise ValueError("first homogeneous coordinate must be 1")
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    @classmethod
    def from_affine(cls, theta, radius=0, **kw):
        return cls(len(theta), (1, *theta), radius, **kw)

    @property
    def theta(self):
        return self.coords[1:]

    @property
    def vector(self):
        return Multivector.vector(self.coords)


def _subspace_from_basis(n, basis):
    X = primitive_part(wedge_all(basis))
    return RationalSubspace(n, len(basis) - 1, tuple(tuple(r) for r in basis), X)


def from_generators(gens):
    gens = [tuple(int(v) for v in g) for g in gens]
    if not gens:
        raise SubspaceError("no generators")
    N = len(gens[0])
    try:
        basis = lattice.saturate(gens)
    except lattice.LatticeError as exc:
        raise SubspaceError("generators span the zero subspace") from exc
    if len(basis) == N:
        raise SubspaceError("generators span the whole space")
    return _subspace_from_basis(N - 1, basis)


def point(x):
    return from_generators([x])


def hyperplane(normal):
    """The hyperplane ``normal . X = 0``."""
    normal = tuple(int(v) for v in normal)
    if not any(normal):
        raise SubspaceError("zero normal vector")
    return from_generators(integer_kernel([normal], len(normal)))


def orthogonal_complement(L):
    """The rational subspace ``V^perp``; it has the same height as ``L``."""
    N = L.ambient_n + 1
    return from_generators(integer_kernel([list(r) for r in L.basis], N))


def height_sq(L):
    """Squared height; the Plucker norm and the Gram determinant must agree."""
    via_plucker = norm_sq(L.plucker)
    via_gram = lattice.det_sq(lattice.gram(L.basis))
    if via_plucker != via_gram:
        raise AssertionError(f"height mismatch: {via_plucker} != {via_gram}")
    return via_plucker


def contains(L, x):
    x = tuple(x)
    if not any(x):
        raise SubspaceError("zero vector")
    return wedge(Multivector.vector(x), L.plucker).is_zero()


def join(L, x):
    if contains(L, x):
        raise SubspaceError("vector already lies in the subspace")
    return from_generators([*L.basis, tuple(x)])


def point_distance_sq(P, Q):
    """Squared projective distance between two points given by homogeneous vectors."""
    x = P.vector if isinstance(P, PointProxy) else Multivector.vector(tuple(P))
    y = Q.vector if isinstance(Q, PointProxy) else Multivector.vector(tuple(Q))
    return norm_sq(wedge(x, y)) / (norm_sq(x) * norm_sq(y))


def wedge_with_point(P, X):
    return norm_sq(wedge(P.vector, X))


def _tiny_bits(q):
    """Roughly log2(1/q) for 0 < q, and 0 for q >= 1."""
    return max(0, q.denominator.bit_length() - q.numerator.bit_length())


def distance_bounds_sq(P, X, wedge_sq=None, bits=None):
    """Rational bounds ``(lo, hi)`` on the squared distance from the true point.

    With ``y`` the proxy, ``y*`` the true point and ``r`` the radius,
    ``| |y* ^ X| - |y ^ X| | <= r |X|`` and ``|y*|`` lies within ``r`` of ``|y|``.
    """
    if wedge_sq is None:
        wedge_sq = wedge_with_point(P, X)
    xsq = norm_sq(X)
    ysq = norm_sq(P.vector)
    value = wedge_sq / (ysq * xsq)
    r = P.radius
    if r == 0:
        return value, value
    if bits is None:
        # square roots must be sharper than both the radius and the wedge itself
        bits = 96 + _tiny_bits(r) + _tiny_bits(Fraction(wedge_sq)) // 2
    a_lo, a_hi = sqrt_bounds(wedge_sq, bits)
    b_lo, b_hi = sqrt_bounds(xsq, bits)
    c_lo, c_hi = sqrt_bounds(ysq, bits)
    num_hi = a_hi + r * b_hi
    den_lo = (c_lo - r) * b_lo
    hi = min(Fraction(1), (num_hi / den_lo) ** 2) if den_lo > 0 else Fraction(1)
    num_lo = a_lo - r * b_hi
    lo = (num_lo / ((c_hi + r) * b_hi)) ** 2 if num_lo > 0 else Fraction(0)
    return min(lo, value), max(hi, value)


def distance_sq(P, L):
    """``(value, halo)``: exact squared distance at the proxy and its error bound."""
    X = L.plucker if isinstance(L, RationalSubspace) else L
    wsq = wedge_with_point(P, X)
    value = wsq / (norm_sq(P.vector) * norm_sq(X))
    lo, hi = distance_bounds_sq(P, X, wsq)
    return value, max(hi - value, value - lo)


def parse_rows(text):
    """``"1,0,1;0,1,1"`` -> ((1, 0, 1), (0, 1, 1))."""
    rows = [r for r in text.replace(" ", "").split(";") if r]
    return tuple(tuple(int(v) for v in r.split(",")) for r in rows)


def is_primitive(x):
    return content(x) == 1

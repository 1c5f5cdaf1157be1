"""Exact exterior algebra on Q^(n+1).

A :class:`Multivector` of grade k stores its coordinates on the orthonormal
basis ``e_{i1} ^ ... ^ e_{ik}`` (``i1 < ... < ik``), keyed by the sorted
index tuple.  Coordinates are ``int`` when integral and ``Fraction``
otherwise; zero coordinates are never stored.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

from .linalg import hnf, integer_kernel, rational_rows_to_integer


class DimensionError(ValueError):
    """Operands live in different ambient spaces or have incompatible grades."""


def _normalize(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class Multivector:
    __slots__ = ("ambient_dim", "grade", "coords")

    def __init__(self, ambient_dim, grade, coords=None):
        if not 0 <= grade <= ambient_dim:
            raise DimensionError(f"grade {grade} outside 0..{ambient_dim}")
        clean = {}
        for key, value in (coords or {}).items():
            key = tuple(key)
            if len(key) != grade or any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"bad index tuple {key} for grade {grade}")
            if key and not 0 <= key[0] <= key[-1] < ambient_dim:
                raise ValueError(f"index tuple {key} out of range")
            if value:
                clean[key] = _normalize(value)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "coords", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    def __reduce__(self):
        return Multivector, (self.ambient_dim, self.grade, self.coords)

    @classmethod
    def vector(cls, coords):
        return cls(len(coords), 1, {(i,): c for i, c in enumerate(coords)})

    @classmethod
    def basis(cls, ambient_dim, *indices):
        """``e_{i1} ^ ... ^ e_{ik}`` for the given (not necessarily sorted) indices."""
        out = cls(ambient_dim, 0, {(): 1})
        for i in indices:
            out = wedge(out, cls(ambient_dim, 1, {(i,): 1}))
        return out

    @classmethod
    def zero(cls, ambient_dim, grade):
        return cls(ambient_dim, grade)

    def is_zero(self):
        return not self.coords

    def is_integral(self):
        return all(isinstance(v, int) for v in self.coords.values())

    def items(self):
        """Coordinates as ``(key, value)`` pairs in lexicographic key order."""
        return sorted(self.coords.items())

    def scale(self, c):
        return Multivector(self.ambient_dim, self.grade,
                           {k: v * c for k, v in self.coords.items()})

    def __add__(self, other):
        _check_same(self, other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
        return Multivector(self.ambient_dim, self.grade, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.grade == other.grade
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.ambient_dim, self.grade, tuple(self.items())))

    def __xor__(self, other):
        return wedge(self, other)

    def __repr__(self):
        return f"Multivector({self.ambient_dim}, {self.grade}, {dict(self.items())})"


def _check_same(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(
            f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    if a.grade != b.grade:
        raise DimensionError(f"grade mismatch: {a.grade} vs {b.grade}")


def as_multivector(x):
    return x if isinstance(x, Multivector) else Multivector.vector(tuple(x))


def _merge_sign(I, J):
    """Sign of the permutation sorting the concatenation I + J (disjoint)."""
    inversions = 0
    j = 0
    for i in I:
        while j < len(J) and J[j] < i:
            j += 1
        inversions += j
    return -1 if inversions & 1 else 1


def wedge(a, b):
    a, b = as_multivector(a), as_multivector(b)
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(
            f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    grade = a.grade + b.grade
    if grade > a.ambient_dim:
        # beyond the top degree everything vanishes; keep the top grade as the carrier
        return Multivector(a.ambient_dim, a.ambient_dim)
    out = {}
    for I, x in a.coords.items():
        sI = set(I)
        for J, y in b.coords.items():
            if sI.intersection(J):
                continue
            K = tuple(sorted(I + J))
            out[K] = out.get(K, 0) + _merge_sign(I, J) * x * y
    return Multivector(a.ambient_dim, grade, out)


def wedge_all(vectors):
    vectors = [as_multivector(v) for v in vectors]
    out = Multivector(vectors[0].ambient_dim, 0, {(): 1})
    for v in vectors:
        out = wedge(out, v)
    return out


def dot(a, b):
    a, b = as_multivector(a), as_multivector(b)
    _check_same(a, b)
    small, big = (a, b) if len(a.coords) <= len(b.coords) else (b, a)
    total = sum(v * big.coords[k] for k, v in small.coords.items() if k in big.coords)
    return Fraction(total)


def norm_sq(a):
    a = as_multivector(a)
    return Fraction(sum(v * v for v in a.coords.values()))


def primitive_part(a):
    """Divide integer coordinates by their gcd; first nonzero coordinate positive."""
    if a.is_zero():
        raise ValueError("primitive part of the zero multivector")
    if not a.is_integral():
        raise ValueError("primitive_part needs integer coordinates")
    g = 0
    for v in a.coords.values():
        g = gcd(g, v)
    first = a.items()[0][1]
    if first < 0:
        g = -g
    return Multivector(a.ambient_dim, a.grade, {k: v // g for k, v in a.coords.items()})


def wedge_matrix(a):
    """Matrix (one column per e_i) of the linear map ``v -> v ^ a``."""
    N = a.ambient_dim
    keys = list(combinations(range(N), a.grade + 1))
    cols = []
    for i in range(N):
        w = wedge(Multivector(N, 1, {(i,): 1}), a)
        cols.append([w.coords.get(k, 0) for k in keys])
    return [list(r) for r in zip(*cols)]


def annihilator(a):
    """Saturated integer basis of ``{v : v ^ a == 0}``, in Hermite normal form."""
    rows = [r for r in rational_rows_to_integer(wedge_matrix(a)) if any(r)]
    kernel = integer_kernel(rows, a.ambient_dim)
    return hnf(list(kernel)) if kernel else ()


def is_decomposable(a):
    """Return ``(flag, basis)``.

    ``flag`` is true exactly when the annihilator of ``a`` has dimension equal
    to its grade; ``basis`` is then a saturated integer basis of that space.
    """
    if a.is_zero():
        raise ValueError("zero multivector has no annihilator to test")
    if not 1 <= a.grade <= a.ambient_dim - 1:
        raise DimensionError("decomposability is tested for grades 1..n")
    basis = annihilator(a)
    if len(basis) == a.grade:
        return True, basis
    return False, None

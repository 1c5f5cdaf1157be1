from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from diophantine_transfer.grassmann import (
    DimensionError,
    Multivector,
    dot,
    is_decomposable,
    norm_sq,
    primitive_part,
    wedge,
    wedge_all,
)
from diophantine_transfer.linalg import rank

from oracles import minors

E = Multivector.basis


def vec(*c):
    return Multivector.vector(c)


def ints(lo=-20, hi=20):
    return st.integers(lo, hi)


@st.composite
def vectors(draw, N=None, lo=-20, hi=20, count=1):
    N = N or draw(st.integers(2, 6))
    return [tuple(draw(st.lists(ints(lo, hi), min_size=N, max_size=N))) for _ in range(count)]


# --- frozen examples ---------------------------------------------------------


def test_wedge_basis_case():
    assert wedge(E(3, 0), E(3, 1)).coords == {(0, 1): 1}


def test_wedge_minor_expansion():
    X = wedge(vec(1, 0, 1), vec(0, 1, 1))
    assert X.coords == {(0, 1): 1, (0, 2): 1, (1, 2): -1}
    assert norm_sq(X) == 3


def test_wedge_self_is_zero():
    assert wedge(vec(3, -1, 4), vec(3, -1, 4)).is_zero()


def test_dot_examples():
    assert dot(E(3, 0, 1), E(3, 0, 1)) == 1
    assert dot(E(3, 0, 1), E(3, 0, 2)) == 0
    assert dot(vec(1, 0, 1), vec(0, 1, 1)) == 1


def test_norm_examples():
    assert norm_sq(Multivector.zero(3, 2)) == 0
    assert norm_sq(E(4, 0, 1, 2, 3)) == 1


def test_basis_sign_from_order():
    assert E(3, 1, 0).coords == {(0, 1): -1}
    assert E(4, 2, 0, 1).coords == {(0, 1, 2): 1}


def test_decomposable_examples():
    flag, basis = is_decomposable(E(4, 0, 1))
    assert flag
    assert basis == ((1, 0, 0, 0), (0, 1, 0, 0))
    flag, basis = is_decomposable(E(4, 0, 1) + E(4, 2, 3))
    assert not flag and basis is None


def test_primitive_part_examples():
    X = Multivector(3, 2, {(0, 1): 2, (0, 2): -4})
    assert primitive_part(X).coords == {(0, 1): 1, (0, 2): -2}
    # gcd 3 is divided out along with the sign
    assert primitive_part(Multivector(3, 2, {(0, 1): -3})).coords == {(0, 1): 1}
    Y = Multivector(3, 2, {(0, 1): 1, (1, 2): -5})
    assert primitive_part(Y) == Y


def test_primitive_part_rejects_zero_and_fractions():
    with pytest.raises(ValueError):
        primitive_part(Multivector.zero(3, 1))
    with pytest.raises(ValueError):
        primitive_part(Multivector(3, 1, {(0,): Fraction(1, 2)}))


def test_bad_keys_rejected():
    with pytest.raises(ValueError):
        Multivector(3, 2, {(1, 0): 1})
    with pytest.raises(ValueError):
        Multivector(3, 1, {(3,): 1})
    with pytest.raises(DimensionError):
        Multivector(3, 4)


def test_immutable():
    v = vec(1, 2)
    with pytest.raises(AttributeError):
        v.grade = 2


def test_grade_overflow_gives_zero():
    top = E(3, 0, 1, 2)
    assert wedge(top, vec(1, 1, 1)).is_zero()


def test_mismatched_ambient_dimension():
    with pytest.raises(DimensionError):
        wedge(vec(1, 0), vec(1, 0, 0))


# --- properties --------------------------------------------------------------


@given(st.data())
def test_wedge_matches_minors(data):
    N = data.draw(st.integers(2, 6))
    k = data.draw(st.integers(1, N))
    rows = data.draw(vectors(N=N, count=k))
    assert wedge_all(rows).coords == minors(rows)


@given(st.data())
def test_lagrange_identity(data):
    x, y = data.draw(vectors(lo=-(2 ** 64), hi=2 ** 64, count=2))
    X, Y = Multivector.vector(x), Multivector.vector(y)
    assert norm_sq(wedge(X, Y)) + dot(X, Y) ** 2 == norm_sq(X) * norm_sq(Y)


@given(st.data())
def test_hadamard_bound(data):
    N = data.draw(st.integers(3, 6))
    k = data.draw(st.integers(1, N - 1))
    rows = data.draw(vectors(N=N, count=k + 1))
    X = wedge_all(rows[:k])
    x = Multivector.vector(rows[k])
    assert norm_sq(wedge(x, X)) <= norm_sq(x) * norm_sq(X)


@given(st.data())
def test_antisymmetry_and_bilinearity(data):
    x, y, z = (Multivector.vector(v) for v in data.draw(vectors(count=3)))
    c = data.draw(ints())
    assert wedge(x, y) == wedge(y, x).scale(-1)
    assert wedge(x.scale(c) + z, y) == wedge(x, y).scale(c) + wedge(z, y)


@given(st.data())
def test_associativity(data):
    x, y, z = (Multivector.vector(v) for v in data.draw(vectors(count=3)))
    a = wedge(x, y)
    assert wedge(a, z) == wedge(x, wedge(y, z))


@given(st.data())
def test_decomposable_recovers_span(data):
    N = data.draw(st.integers(3, 6))
    k = data.draw(st.integers(1, N - 1))
    rows = data.draw(vectors(N=N, count=k, lo=-6, hi=6))
    assume(rank(rows) == k)
    X = wedge_all(rows)
    flag, basis = is_decomposable(X)
    assert flag and len(basis) == k
    # mutual containment of the two spans
    assert rank(list(basis) + rows) == k
    assert primitive_part(wedge_all(basis)) == primitive_part(X)

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from diophantine_transfer import lattice, linalg
from diophantine_transfer.grassmann import is_decomposable, norm_sq, primitive_part, wedge_all
from diophantine_transfer.intervals import sqrt_bounds
from diophantine_transfer.subspace import (
    PointProxy,
    SubspaceError,
    contains,
    distance_bounds_sq,
    distance_sq,
    from_generators,
    height_sq,
    hyperplane,
    join,
    orthogonal_complement,
    parse_rows,
    point,
    point_distance_sq,
)

from oracles import projection_distance_sq


def proxy(*y, radius=0):
    """Proxy from homogeneous coordinates with y0 != 0."""
    y = [Fraction(v) / Fraction(y[0]) for v in y]
    return PointProxy(len(y) - 1, tuple(y), radius)


@st.composite
def subspaces(draw, N=None, lo=-7, hi=7):
    N = N or draw(st.integers(2, 7))
    k = draw(st.integers(1, N - 1))
    rows = [draw(st.lists(st.integers(lo, hi), min_size=N, max_size=N)) for _ in range(k)]
    assume(0 < linalg.rank(rows) < N)
    return from_generators(rows)


@st.composite
def proxies(draw, N, lo=-30, hi=30):
    theta = [Fraction(draw(st.integers(lo, hi)), draw(st.integers(1, 12))) for _ in range(N - 1)]
    return PointProxy.from_affine(theta)


# --- frozen examples ---------------------------------------------------------


def test_from_generators_examples():
    L = from_generators([(1, 0, 1), (0, 1, 1)])
    assert L.plucker.coords == {(0, 1): 1, (0, 2): 1, (1, 2): -1}
    assert L.dim_d == 1 and L.ambient_n == 2
    assert point((2, 4, 6)).basis == ((1, 2, 3),)
    with pytest.raises(SubspaceError):
        from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(SubspaceError):
        from_generators([(0, 0, 0)])


def test_height_examples():
    assert height_sq(point((1, 2, 2))) == 9
    assert height_sq(from_generators([(1, 0, 1), (0, 1, 1)])) == 3
    assert height_sq(from_generators([(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])) == 1


def test_distance_examples():
    L = from_generators([(0, 1, 0), (0, 0, 1)])
    assert distance_sq(proxy(1, 0, 0), L) == (1, 0)
    assert distance_sq(proxy(1, 1, 1), L) == (Fraction(1, 3), 0)
    # y = (0, 1, 0) is not an affine proxy, so test membership through the wedge
    assert point_distance_sq((0, 1, 0), (0, 1, 0)) == 0


def test_point_distance_examples():
    assert point_distance_sq((1, 2, 3), (1, 2, 3)) == 0
    assert point_distance_sq((1, 0, 0), (0, 1, 0)) == 1
    assert point_distance_sq((1, 0, 1), (0, 1, 1)) == Fraction(3, 4)


def test_join_examples():
    line = join(point((1, 0, 0)), (0, 1, 0))
    assert line == from_generators([(1, 0, 0), (0, 1, 0)])
    J = join(point((1, 2, 2)), (0, 0, 1))
    assert height_sq(J) == lattice.det_sq(lattice.gram(J.basis))
    with pytest.raises(SubspaceError):
        join(line, (1, 1, 0))


def test_contains_examples():
    L = from_generators([(1, 0, 1), (0, 1, 1)])
    assert contains(L, (1, 0, 1))
    assert not contains(L, (1, 0, 0))
    assert all(contains(L, row) for row in L.basis)
    with pytest.raises(SubspaceError):
        contains(L, (0, 0, 0))


def test_hyperplane_and_complement():
    H = hyperplane((1, 1, 1))
    assert H.dim_d == 1
    assert all(sum(r) == 0 for r in H.basis)
    assert height_sq(H) == 3
    assert orthogonal_complement(H) == point((1, 1, 1))


def test_serialization_round_trip():
    L = from_generators([(3, 1, 4, 1), (5, 9, 2, 6)])
    text = L.serialize()
    rows = text.split("rows=")[1]
    assert from_generators(parse_rows(rows)) == L
    assert L.serialize() == from_generators(list(reversed(L.basis))).serialize()


def test_proxy_validation():
    with pytest.raises(ValueError):
        PointProxy(2, (2, 1, 1))
    with pytest.raises(ValueError):
        PointProxy(2, (1, 1))
    with pytest.raises(ValueError):
        PointProxy(1, (1, 1), -1)


# --- properties --------------------------------------------------------------


@given(subspaces())
def test_subspace_invariants(L):
    assert lattice.saturate(L.basis) == L.basis
    assert L.plucker == primitive_part(wedge_all(L.basis))
    flag, basis = is_decomposable(L.plucker)
    assert flag and from_generators(basis) == L


@given(subspaces())
def test_lemma2_triple_identity(L):
    h = height_sq(L)
    assert h == norm_sq(L.plucker) == lattice.det_sq(lattice.gram(L.basis))
    assert height_sq(orthogonal_complement(L)) == h


@given(st.data())
def test_distance_matches_projection_oracle(data):
    L = data.draw(subspaces())
    P = data.draw(proxies(L.ambient_n + 1))
    value, halo = distance_sq(P, L)
    assert halo == 0
    assert value == projection_distance_sq(P.coords, L.basis)


@given(st.data())
def test_distance_range_and_membership(data):
    L = data.draw(subspaces())
    P = data.draw(proxies(L.ambient_n + 1))
    value, _ = distance_sq(P, L)
    assert 0 <= value <= 1
    den = math.lcm(*(c.denominator for c in P.coords))
    y = tuple(int(c * den) for c in P.coords)
    assert (value == 0) == contains(L, y)


@given(st.data())
def test_distance_in_subspace_is_zero(data):
    L = data.draw(subspaces())
    coef = data.draw(st.lists(st.integers(-4, 4), min_size=L.dim_d + 1, max_size=L.dim_d + 1))
    y = [sum(c * row[j] for c, row in zip(coef, L.basis)) for j in range(L.ambient_n + 1)]
    assume(y[0] != 0)
    assert distance_sq(proxy(*y), L)[0] == 0


@given(st.data())
def test_unimodular_invariance(data):
    L = data.draw(subspaces())
    P = data.draw(proxies(L.ambient_n + 1))
    rows = [list(r) for r in L.basis]
    c = data.draw(st.integers(-5, 5))
    if len(rows) > 1:
        rows[0] = [a + c * b for a, b in zip(rows[0], rows[1])]
        rows.reverse()
    rows[-1] = [-v for v in rows[-1]]
    M = from_generators(rows)
    assert M == L
    assert height_sq(M) == height_sq(L)
    assert distance_sq(P, M) == distance_sq(P, L)


@given(st.data())
def test_join_contains_both(data):
    L = data.draw(subspaces())
    assume(L.dim_d + 1 < L.ambient_n)
    N = L.ambient_n + 1
    x = data.draw(st.lists(st.integers(-5, 5), min_size=N, max_size=N))
    assume(any(x) and not contains(L, x))
    J = join(L, x)
    assert J.dim_d == L.dim_d + 1
    assert contains(J, x) and all(contains(J, r) for r in L.basis)


@given(st.data())
def test_triangle_inequality(data):
    N = data.draw(st.integers(2, 5))
    vec = st.lists(st.integers(-9, 9), min_size=N, max_size=N).filter(any)
    p, q, r = data.draw(vec), data.draw(vec), data.draw(vec)
    pr = sqrt_bounds(point_distance_sq(p, r), 64)
    pq = sqrt_bounds(point_distance_sq(p, q), 64)
    qr = sqrt_bounds(point_distance_sq(q, r), 64)
    assert pr[0] <= pq[1] + qr[1]


@given(st.data())
def test_halo_is_sound(data):
    # true point is rational; the proxy is displaced by at most the radius
    L = data.draw(subspaces())
    N = L.ambient_n + 1
    true = data.draw(proxies(N))
    shift = [Fraction(data.draw(st.integers(-100, 100)), 10 ** 6) for _ in range(N - 1)]
    radius = sum(abs(s) for s in shift) or Fraction(1, 10 ** 9)
    P = PointProxy.from_affine([t + s for t, s in zip(true.theta, shift)], radius)
    exact, _ = distance_sq(true, L)
    lo, hi = distance_bounds_sq(P, L.plucker)
    assert lo <= exact <= hi
    value, halo = distance_sq(P, L)
    assert value - halo <= exact <= value + halo

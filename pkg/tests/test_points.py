from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diophantine_transfer.points import (
    PointSpecError,
    algebraic,
    catalog,
    catalog_entry,
    cf_stream,
    decimal,
    format_spec,
    independence_check,
    parse_spec,
    refine,
    sqrt_combination,
)


def poly(coeffs, x):
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


# --- refine ----------------------------------------------------------------------


def test_refine_sqrt2_by_bisection():
    P = refine(algebraic((1, 0, -2), 1, 2), 20)
    assert P.radius <= Fraction(1, 2 ** 20)
    (t,) = P.theta
    assert abs(t - Fraction(1414213562, 10 ** 9)) <= P.radius + Fraction(1, 10 ** 9)


def test_refine_decimal_is_exact():
    P = refine(decimal(["0.5"]), 64)
    assert P.theta == (Fraction(1, 2),) and P.radius == 0
    assert P.independence == "violated"


def test_refine_plastic_residual():
    bits = 64
    P = refine(algebraic((1, 0, -1, -1), 1, 2), bits)
    (rho,) = P.theta
    assert abs(rho - Fraction(13247, 10 ** 4)) < Fraction(1, 10 ** 4)
    # |p(m)| <= max|p'| * radius on [1, 2], with max|p'| = 11
    assert abs(poly((1, 0, -1, -1), rho)) <= 11 * P.radius < Fraction(11, 2 ** bits)


def test_refine_power_vector_radius():
    P = refine(algebraic((1, 0, -1, -1), 1, 2, n=2), 40)
    assert P.radius <= Fraction(1, 2 ** 40)
    rho, rho2 = P.theta
    assert abs(rho * rho - rho2) <= 3 * P.radius


def test_refine_sqrt_combination():
    P = refine(sqrt_combination((2, 3)), 50)
    for m, t in zip((2, 3), P.theta):
        assert abs(t * t - m) < Fraction(8, 2 ** 50)
    assert P.radius <= Fraction(1, 2 ** 50)
    Q = refine(sqrt_combination((4, 9)), 50)
    assert Q.theta == (2, 3) and Q.radius == 0


def test_refine_validation():
    with pytest.raises(ValueError):
        refine(sqrt_combination((2, 3)), 4)
    with pytest.raises(PointSpecError):
        refine(algebraic((1, 0, -2), 2, 3), 32)  # no sign change
    with pytest.raises(PointSpecError):
        refine(algebraic((1, 0, -1), -2, 2), 32)  # two roots
    with pytest.raises(PointSpecError):
        refine(algebraic((1, -2, 1), 0, 2), 32)  # not squarefree


@pytest.mark.parametrize("spec", [s for s in catalog()], ids=lambda s: s.name)
def test_radius_shrinks_and_proxies_agree(spec):
    coarse, fine = refine(spec, 40), refine(spec, 80)
    assert coarse.radius <= Fraction(1, 2 ** 40)
    assert fine.radius <= Fraction(1, 2 ** 80)
    gap = sum((a - b) ** 2 for a, b in zip(coarse.theta, fine.theta))
    assert gap <= (coarse.radius + fine.radius) ** 2


@given(st.integers(8, 300))
@settings(max_examples=25)
def test_cf_radius_bound(bits):
    P = refine(cf_stream(("random:7",)), bits)
    assert 0 < P.radius <= Fraction(1, 2 ** bits)


def test_liouville_quotients_grow():
    P = refine(cf_stream(("liouville:15",)), 200)
    # a small convergent is already far better than 1/q^2
    q = P.theta[0].denominator
    assert q < 2 ** 17
    assert P.radius <= Fraction(1, 2 ** 200) < Fraction(1, q ** 10)


# --- independence --------------------------------------------------------------------


def test_golden_trap_violated_with_relation():
    status, rel = independence_check(catalog_entry("golden-trap"))
    assert status == "violated"
    assert rel == (1, 1, -1)


def test_plastic_certified():
    assert independence_check(catalog_entry("plastic")) == ("certified", None)


def test_rational_point_violated():
    status, rel = independence_check(decimal(["0.25"]))
    assert status == "violated"
    assert rel[0] + rel[1] * Fraction(1, 4) == 0


def test_sqrt_relations():
    assert independence_check(sqrt_combination((2, 3, 5)))[0] == "certified"
    status, rel = independence_check(sqrt_combination((2, 8)))
    assert status == "violated"
    assert rel == (0, 2, -1)
    status, rel = independence_check(sqrt_combination((2, 9)))
    assert status == "violated" and rel == (3, 0, -1)


def test_degree_le_n_is_violated():
    # cube root of 2 with three powers: 2 = xi^3
    status, rel = independence_check(algebraic((1, 0, 0, -2), 1, 2, n=3))
    assert status == "violated" and rel == (2, 0, 0, -1)


def test_reducible_polynomial_picks_the_right_factor():
    # (x^2 - 2)(x - 3) has sqrt2 as the root in [1, 2]
    spec = algebraic((1, -3, -2, 6), 1, 2, n=2)
    assert independence_check(spec)[0] == "violated"
    assert independence_check(algebraic((1, -3, -2, 6), 1, 2, n=1))[0] == "certified"


def test_random_streams_probable():
    assert independence_check(catalog_entry("random2"))[0] == "probable"


# --- catalog and spec text --------------------------------------------------------------


def test_catalog_contents():
    names = {s.name for s in catalog()}
    assert {"sqrt2-sqrt3", "plastic", "cbrt2", "liouville", "random2", "random3"} <= names
    for spec in catalog():
        status = independence_check(spec)[0]
        if spec.negative:
            assert status == "violated" and spec.note
        else:
            assert status != "violated", spec.name


def test_catalog_entry_unknown():
    with pytest.raises(PointSpecError):
        catalog_entry("nope")


@pytest.mark.parametrize("spec", catalog(), ids=lambda s: s.name)
def test_spec_text_round_trip(spec):
    again = parse_spec(format_spec(spec))
    assert again.kind == spec.kind and again.n == spec.n
    assert again.payload == spec.payload


def test_parse_spec_forms():
    s = parse_spec("poly:1,0,-1,-1;interval:1,2;powers:2")
    assert s.kind == "power-vector" and s.n == 2
    assert parse_spec("poly:1,0,-2;interval:1,2").kind == "algebraic-root"
    assert parse_spec("decimal:0.5,0.25").n == 2
    assert parse_spec("sqrt:2,3").payload["radicands"] == (2, 3)
    assert parse_spec("cf:random:1").n == 1
    assert parse_spec("catalog:plastic").name == "plastic"
    for bad in ("foo:1", "poly:1,0;lo:1", "poly:x;interval:1,2"):
        with pytest.raises(PointSpecError):
            parse_spec(bad)

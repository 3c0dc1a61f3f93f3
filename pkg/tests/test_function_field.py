import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaglrc.field import FieldError, gf
from gaglrc.function_field import (
    Divisor,
    Place,
    Polynomial,
    enumerate_places,
    is_irreducible,
    parse_polynomial,
    render_polynomial,
    render_polynomial_compact,
    residue_at_place,
    riemann_roch_basis,
)
from oracles import has_root

F3 = gf(3)


def P(text, field=F3):
    return Place.finite(parse_polynomial(field, text))


def test_degree2_places_over_gf3():
    got = [p.poly.coeffs for p in enumerate_places(F3, 2)]
    assert sorted(got) == sorted([(1, 0, 1), (2, 1, 1), (2, 2, 1)])
    assert len(got) == 3


def test_rational_places_over_gf3():
    places = enumerate_places(F3, 1)
    assert [str(p) for p in places] == ["x", "1 + x", "2 + x", "P_inf"]
    assert places[-1].is_infinite and places[-1].degree == 1


def test_degree2_places_over_gf4_brute_force():
    F4 = gf(4)
    rootless = [
        (c0, c1, 1) for c1 in range(4) for c0 in range(4) if not has_root(F4, [c0, c1, 1])
    ]
    got = [p.poly.coeffs for p in enumerate_places(F4, 2)]
    assert sorted(got) == sorted(rootless)
    assert len(got) == 6 == (16 - 4) // 2


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_degree2_place_count(q):
    assert len(enumerate_places(gf(q), 2)) == (q * q - q) // 2


@pytest.mark.parametrize("q", [2, 3, 4])
def test_degree3_irreducibility_matches_root_test(q):
    F = gf(q)
    for low in itertools.product(range(q), repeat=3):
        f = Polynomial(F, list(low) + [1])
        assert is_irreducible(f) == (not has_root(F, list(low) + [1]))


def test_degree4_place_count_gf2():
    # x^4+x+1, x^4+x^3+1, x^4+x^3+x^2+x+1
    assert len(enumerate_places(gf(2), 4)) == 3


def test_riemann_roch_basis():
    assert [f.coeffs for f in riemann_roch_basis(F3, 4)] == [
        (1,), (0, 1), (0, 0, 1), (0, 0, 0, 1), (0, 0, 0, 0, 1)
    ]
    assert [f.coeffs for f in riemann_roch_basis(F3, 0)] == [(1,)]
    assert len(riemann_roch_basis(gf(5), 22)) == 23
    with pytest.raises(ValueError):
        riemann_roch_basis(F3, -1)


def test_residue_examples():
    assert residue_at_place(Polynomial.monomial(F3, 2), P("x^2+2x+2")) == (1, 1)
    assert residue_at_place(Polynomial.monomial(F3, 4), P("x^2+1")) == (1, 0)
    for place in enumerate_places(F3, 2):
        assert residue_at_place(place.poly, place) == (0, 0)


def test_residue_at_infinity_rejected():
    with pytest.raises(ValueError):
        residue_at_place(Polynomial(F3, [1]), Place.infinity())


def test_place_validation():
    with pytest.raises(FieldError):
        P("x^2+2")  # (x+1)(x+2)
    with pytest.raises(FieldError):
        Place.finite(Polynomial(F3, [1, 0, 2]))  # not monic
    assert P("x^2+1") == P("1,0,1")


def test_divisor():
    D = Divisor(4)
    assert D.degree == 4 and D.support == (Place.infinity(),)
    assert Divisor(0).support == ()
    with pytest.raises(ValueError):
        Divisor(-1)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.integers(0, 2), max_size=8),
    st.lists(st.integers(0, 2), max_size=8),
    st.integers(0, 2),
    st.integers(0, 2),
)
def test_residue_is_linear(fc, gc, a, which):
    place = enumerate_places(F3, 2)[which]
    f, g = Polynomial(F3, fc), Polynomial(F3, gc)
    lhs = residue_at_place(f.scale(a) + g, place)
    rf = np.array(residue_at_place(f, place))
    rg = np.array(residue_at_place(g, place))
    assert lhs == tuple(int(v) for v in F3.add(F3.mul(rf, a), rg))


def test_vanishing_places_bounded_by_degree():
    places = enumerate_places(F3, 2)
    for m in range(7):
        for coeffs in itertools.product(range(3), repeat=m + 1):
            f = Polynomial(F3, coeffs)
            if f.is_zero():
                continue
            zeros = sum(1 for pl in places if not any(residue_at_place(f, pl)))
            assert zeros <= m // 2


def test_polynomial_arithmetic():
    f = parse_polynomial(F3, "x^2+2x+2")
    g = parse_polynomial(F3, "x+1")
    q, r = divmod(f * g + Polynomial(F3, [1]), f)
    assert q == g and r == Polynomial(F3, [1])
    assert f(0) == 2 and f(1) == 2
    assert (f - f).is_zero()


def test_text_forms():
    f = parse_polynomial(F3, "x^2 + 2*x + 2")
    assert render_polynomial(f) == "2 + 2*x + x^2"
    assert render_polynomial_compact(f) == "2,2,1"
    assert parse_polynomial(F3, "2 + 2*x + x^2") == f
    assert parse_polynomial(F3, "x^2-x-1") == f
    F9 = gf(9)
    g = parse_polynomial(F9, "1,1;0,1;1,0")
    assert g.coeffs == (4, 3, 1)
    assert render_polynomial_compact(g) == "1,1;0,1;1,0"
    with pytest.raises(FieldError):
        parse_polynomial(F3, "x^^2")

import pytest
from hypothesis import given, settings, strategies as st

from charp.polycore import (
    MonomialOrder,
    PolyRing,
    PolySyntaxError,
    StructuralError,
    frobenius_power,
    monomials_of_degree,
    parse_order,
    parse_poly,
)

from oracles import parse_simple, pmul


def _ring(p=3, names=("x", "y", "z"), order="grevlex"):
    return PolyRing(p, names, order)


@st.composite
def polys(draw, ring, max_terms=5, max_exp=3):
    n = draw(st.integers(0, max_terms))
    d = {}
    for _ in range(n):
        m = tuple(draw(st.integers(0, max_exp)) for _ in range(ring.nvars))
        d[m] = draw(st.integers(0, ring.p - 1))
    return ring.from_dict(d)


R3 = _ring()


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101])
def test_constants_reduce_mod_p(p):
    R = _ring(p)
    assert R.const(p) == R.zero()
    assert R.const(-1) == R.const(p - 1)


@pytest.mark.parametrize("bad", [0, 1, 4, 9, -3])
def test_rejects_non_prime(bad):
    with pytest.raises(ValueError):
        PolyRing(bad, ["x"])


def test_duplicate_variables():
    with pytest.raises(StructuralError):
        PolyRing(3, ["x", "x"])


@pytest.mark.parametrize("text,expected", [
    ("x^2 - x^2", "0"),
    ("(x + y)^3", "x^3 + y^3"),          # p = 3
    ("2*x*y + x*y", "0"),
    ("x**2*y", "x^2*y"),
    ("-(x - 1)", "2*x + 1"),
    ("4", "1"),
])
def test_parse_and_print(text, expected):
    assert str(parse_poly(text, R3)) == expected


@pytest.mark.parametrize("text,pos", [
    ("x + $", 4),
    ("x + w", 4),
    ("x^", 2),
    ("(x + y", 6),
    ("x y", 2),
])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly(text, R3)
    assert exc.value.pos == pos


def test_grevlex_and_lex_leading_terms():
    f = "x*z^2 + y^3 + x^2"
    assert parse_poly(f, _ring(order="grevlex")).LM == (0, 3, 0)
    assert parse_poly(f, _ring(order="lex")).LM == (2, 0, 0)


def test_elimination_order_puts_block_first():
    R = _ring(order="elim(1)")
    f = parse_poly("y^5 + x*z", R)
    assert f.LM == (1, 0, 1)


@pytest.mark.parametrize("text,kind,k", [("grevlex", "grevlex", None), ("lex", "lex", None), ("elim(2)", "elim", 2)])
def test_parse_order(text, kind, k):
    o = parse_order(text)
    assert o.kind == kind
    if k is not None:
        assert o == MonomialOrder("elim", k)


def test_unknown_order():
    with pytest.raises(ValueError):
        parse_order("deglex")


@pytest.mark.parametrize("n,d", [(2, 3), (3, 2), (4, 4), (1, 5)])
def test_monomials_of_degree_count(n, d):
    from math import comb

    ms = list(monomials_of_degree(n, d))
    assert len(ms) == len(set(ms)) == comb(n + d - 1, d)
    assert all(sum(m) == d for m in ms)


def test_exact_division():
    f = parse_poly("(x + y)*(x*z - 1)", R3)
    assert f.exact_div(parse_poly("x + y", R3)) == parse_poly("x*z - 1", R3)
    with pytest.raises(ArithmeticError):
        f.exact_div(parse_poly("z", R3))


def test_multiplication_matches_dict_oracle():
    names = ("x", "y", "z")
    a, b = "2*x^2*y + z - 1", "x*y*z + 2*y^2"
    got = parse_poly(a, R3) * parse_poly(b, R3)
    want = pmul(parse_simple(a, names, 3), parse_simple(b, names, 3), 3)
    assert got.dict == want


@settings(max_examples=60, deadline=None)
@given(polys(R3), polys(R3), polys(R3))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R3.zero()


@settings(max_examples=40, deadline=None)
@given(polys(R3, max_terms=4, max_exp=2), polys(R3, max_terms=4, max_exp=2))
def test_frobenius_is_additive(f, g):
    # (f + g)^p = f^p + g^p in characteristic p
    assert (f + g) ** 3 == f ** 3 + g ** 3
    assert frobenius_power(f + g, 1) == f.frobenius() + g.frobenius()


@pytest.mark.parametrize("p", [2, 5])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_frobenius_matches_power(p, data):
    R = _ring(p, ("x", "y"))
    f = data.draw(polys(R, max_terms=3, max_exp=2))
    assert f.frobenius(1) == f ** p


def test_substitution_and_map():
    R = _ring(3, ("x", "y"))
    T = _ring(3, ("u", "v", "w"))
    f = parse_poly("x^2 + x*y", R)
    g = f.subs([parse_poly("u + v", T), parse_poly("w", T)], T)
    assert g == parse_poly("(u + v)^2 + (u + v)*w", T)
    assert f.map_to(T, [2, 0]) == parse_poly("w^2 + w*u", T)


def test_mixed_rings_rejected():
    with pytest.raises(StructuralError):
        _ring(3, ("x",)).gen(0) + _ring(5, ("x",)).gen(0)

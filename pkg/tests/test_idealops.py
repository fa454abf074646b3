import random

import pytest
from hypothesis import given, settings, strategies as st

from charp.idealops import (
    Ideal,
    bracket_power,
    eliminate,
    height,
    ideal_intersect,
    ideal_power,
    ideal_quotient,
    is_proper_at_origin,
    local_containment,
    local_equal,
    primary_component_at_origin,
    primary_exponent,
    quotient_by_element,
    saturation,
)
from charp.polycore import PolyRing


def I_(R, *texts):
    return Ideal.parse(R, texts)


R2 = PolyRing(3, ["x", "y"])
R3 = PolyRing(2, ["x", "y", "z"])


@pytest.mark.parametrize("gens,g,expected", [
    (("x^2", "x*y"), "x", ("x", "y")),
    (("x^2*y", "y^3"), "y", ("x^2", "y^2")),
    (("x*y",), "x", ("y",)),
    (("x^3", "y^3"), "x*y", ("x^2", "y^2")),
])
def test_colon_examples(gens, g, expected):
    assert ideal_quotient(I_(R2, *gens), I_(R2, g)) == I_(R2, *expected)


@pytest.mark.parametrize("method", ["iterate", "rabinowitsch"])
def test_saturation_of_embedded_component(method):
    # y^3 lies in the ideal, so saturating by y gives the unit ideal
    sat, k = saturation(I_(R2, "x^2*y", "y^3"), R2.parse("y"), method=method)
    assert sat.is_unit()
    assert k == 3
    sat, _ = saturation(I_(R2, "x^2*y", "x*y^2"), R2.parse("y"), method=method)
    assert sat == I_(R2, "x")


def test_intersection_and_elimination():
    I = ideal_intersect(I_(R3, "x", "y"), I_(R3, "z"))
    assert I == I_(R3, "x*z", "y*z")
    E = eliminate(I_(R3, "x - y^2", "z - y^3"), ["x", "z"])
    assert E == I_(R3, "x^3 - z^2")


@pytest.mark.parametrize("gens,h", [(("x",), 1), (("x", "y"), 2), (("x*y", "x*z"), 1), (("x", "y", "z"), 3)])
def test_height(gens, h):
    assert height(I_(R3, *gens)) == h


def test_bracket_power_is_generator_independent():
    I = I_(R3, "x + y", "y")
    J = I_(R3, "x", "y")
    assert bracket_power(I, 1) == bracket_power(J, 1) == I_(R3, "x^2", "y^2")


def test_primary_exponent():
    assert primary_exponent(I_(R2, "x^3", "y^2", "x*y")) == 3
    assert primary_exponent(I_(R2, "x")) is None
    assert primary_exponent(I_(R2, "x - 1", "y")) is None


def test_primary_component_at_origin():
    # the origin plus the point (1, 0)
    I = ideal_intersect(I_(R2, "x^2", "y"), I_(R2, "x - 1", "y"))
    comp, _ = primary_component_at_origin(I)
    assert comp == I_(R2, "x^2", "y")
    assert primary_component_at_origin(I_(R2, "x - 1", "y"))[0].is_unit()


def test_local_equality_ignores_other_components():
    A = I_(R2, "x^2", "y")
    B = ideal_intersect(A, I_(R2, "x - 1", "y - 1"))
    assert A != B
    assert local_equal(A, B)
    assert not local_equal(A, I_(R2, "x", "y"))
    assert local_containment(A, I_(R2, "x", "y"))
    assert is_proper_at_origin(B)
    assert not is_proper_at_origin(I_(R2, "x + 1"))


@pytest.mark.parametrize("method", ["linear", "intersect"])
def test_linear_colon_requires_zero_dimensional(method):
    I = I_(R2, "x^2")
    if method == "linear":
        with pytest.raises(ValueError):
            quotient_by_element(I, R2.parse("x"), method=method)
    else:
        assert quotient_by_element(I, R2.parse("x"), method=method) == I_(R2, "x")


def _random_zero_dim(rng, R, extra=3):
    gens = [R.gen(i) ** rng.randint(2, 4) for i in range(R.nvars)]
    for _ in range(extra):
        m = [rng.randint(0, 2) for _ in range(R.nvars)]
        d = {tuple(m): rng.randrange(1, R.p)}
        m2 = [rng.randint(0, 2) for _ in range(R.nvars)]
        d[tuple(m2)] = (d.get(tuple(m2), 0) + rng.randrange(1, R.p)) % R.p
        gens.append(R.from_dict(d))
    return Ideal(R, gens)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_colon_routes_agree(seed):
    # kernel of multiplication on S/I against (I ∩ (g)) / g
    rng = random.Random(seed)
    R = PolyRing(rng.choice([2, 3, 5]), ["x", "y", "z"])
    I = _random_zero_dim(rng, R)
    g = R.from_dict({tuple(rng.randint(0, 2) for _ in range(3)): 1,
                     tuple(rng.randint(0, 2) for _ in range(3)): rng.randrange(1, R.p)})
    if not g:
        return
    a = quotient_by_element(I, g, method="linear")
    b = quotient_by_element(I, g, method="intersect")
    assert a == b


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_colon_laws(seed):
    rng = random.Random(seed)
    R = PolyRing(3, ["x", "y"])
    I = _random_zero_dim(rng, R, extra=2)
    g = R.gen(rng.randrange(2)) ** rng.randint(1, 2)
    C = ideal_quotient(I, Ideal(R, [g]))
    # I ⊆ (I : g) and g (I : g) ⊆ I
    assert I.issubset(C)
    assert all(I.contains(g * h) for h in C.gens)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_intersection_is_contained_in_both(seed):
    rng = random.Random(seed)
    R = PolyRing(2, ["x", "y", "z"])
    I = _random_zero_dim(rng, R, extra=1)
    J = Ideal(R, [R.gen(rng.randrange(3)) + R.gen(rng.randrange(3)) ** 2])
    K = ideal_intersect(I, J)
    assert K.issubset(I) and K.issubset(J)
    assert ideal_power(I, 1) == I
    assert (I * J).issubset(K)

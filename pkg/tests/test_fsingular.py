import pytest

from charp.divisorial import DivisorialIdeal, PreconditionError, RingPresentation
from charp.fsingular import (
    SocleError,
    colon_chain_check,
    deformation_data,
    epsilon_shortcut_check,
    fedder_colon,
    fedder_is_fpure,
    frobenius_maximal,
    in_frobenius_maximal,
    splitting_ideal,
    splitting_ideal_at,
    splitting_ideal_reduced,
    verify_fedder_witness,
)
from charp.idealops import Ideal, bracket_power

from conftest import entry
from oracles import fedder_hypersurface, parse_simple

HYPERSURFACES = [
    ("x*y", ("x", "y")),
    ("x^2 - y^3", ("x", "y")),
    ("x^3 + y^3 + z^3", ("x", "y", "z")),
    ("x^2 + y^2 + z^2", ("x", "y", "z")),
    ("x*y*z", ("x", "y", "z")),
    ("x^2*y - z^2", ("x", "y", "z")),
]


@pytest.mark.parametrize("f,names", HYPERSURFACES)
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_fedder_matches_multinomial_oracle(f, names, p):
    R = RingPresentation.from_strings(p, names, [f])
    assert fedder_is_fpure(R).is_fpure == fedder_hypersurface(parse_simple(f, names, p), len(names), p)


@pytest.mark.parametrize("p,expected", [(5, False), (7, True), (13, True), (11, False)])
def test_fermat_cubic_depends_on_p_mod_3(p, expected):
    R = RingPresentation.from_strings(p, ["x", "y", "z"], ["x^3 + y^3 + z^3"])
    assert fedder_is_fpure(R).is_fpure is expected


def test_witness_is_verified():
    R = RingPresentation.from_strings(3, ["x", "y"], ["x*y"])
    v = fedder_is_fpure(R)
    assert v.is_fpure and verify_fedder_witness(R, v.witness)
    # a wrong candidate is discarded, not trusted
    bogus = R.ring.parse("x^3")
    v2 = fedder_is_fpure(R, [bogus])
    assert v2.is_fpure and v2.witness != bogus


def test_frobenius_maximal_membership():
    ring = RingPresentation.from_strings(3, ["x", "y"]).ring
    assert in_frobenius_maximal(ring.parse("x^3*y + y^4"), 3)
    assert not in_frobenius_maximal(ring.parse("x^2*y^2 + y^3"), 3)
    assert frobenius_maximal(ring, 9) == Ideal.parse(ring, ["x^9", "y^9"])


def test_fedder_colon_contains_bracket_power():
    R = entry("v3_p2").R
    C = fedder_colon(R)
    assert bracket_power(R.Q, 1).issubset(C)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("e", [1, 2])
def test_regular_ring_splitting_ideal(p, n, e):
    R = RingPresentation.from_strings(p, ["x", "y", "z"][:n])
    data = splitting_ideal(R, e=e)
    assert data.Ie == frobenius_maximal(R.ring, p ** e)


@pytest.mark.parametrize("name", ["node_p3", "cusp_p5", "v3_p2", "a1cone_p3", "fermat_cover_p5", "nodez_p3"])
def test_splitting_ideal_agrees_with_fedder(name):
    R = entry(name).R
    assert (not splitting_ideal(R, e=1).Ie.is_unit()) == fedder_is_fpure(R).is_fpure


@pytest.mark.parametrize("name", ["node_p3", "v3_p2"])
def test_splitting_ideal_is_stable_and_contains_bracket_maximal(name):
    R = entry(name).R
    data = splitting_ideal(R, e=1)
    t = data.t_used
    assert splitting_ideal_at(data, t + 1) == data.Ie
    assert splitting_ideal_at(data, t + 2) == data.Ie
    assert R.ideal(frobenius_maximal(R.ring, R.p)).issubset(data.Ie)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_splitting_ideal_independent_of_parameters(seed):
    R = entry("v3_p2").R
    assert splitting_ideal(R, seed=seed).Ie == splitting_ideal(R, seed=0).Ie


def test_t_free_formula_on_v3():
    e = entry("v3z_p2")
    data = splitting_ideal(e.R, e=1)
    assert splitting_ideal_reduced(e.R, data) == data.Ie


def test_non_canonical_ideal_fails_socle_check():
    R = entry("v3_p2").R
    bad = DivisorialIdeal(R, R.ideal([R.ring.parse("c"), R.ring.parse("d")]) ** 2)
    with pytest.raises(SocleError, match="not Gorenstein artinian"):
        splitting_ideal(R, bad)


@pytest.mark.parametrize("name,seed", [("v3z_p2", 0), ("v3z_p2", 1), ("nodez_p3", 0)])
def test_colon_chain(name, seed):
    rep = colon_chain_check(entry(name).R, seed=seed)
    assert rep.ok, rep.failures


def test_corrupted_certificate_is_rejected():
    R = entry("v3z_p2").R
    data = splitting_ideal(R)
    a = data.J.a
    bad = data.J.with_certificate(a, R.ring.parse("z"))
    data.J = bad
    data.params[1] = R.ring.parse("z")
    with pytest.raises(PreconditionError):
        colon_chain_check(R, data=data)


@pytest.fixture(scope="module")
def quadric():
    e = entry("quadric_w_p3")
    return e, deformation_data(e.R, e.f, 1, seed=0)


def test_shortcut_trivial_perturbations(quadric):
    e, data = quadric
    assert epsilon_shortcut_check(e.R, data, e.R.ring.zero()).equal
    x = e.R.ring.parse("x")
    assert epsilon_shortcut_check(e.R, data, e.f * x).equal


def test_shortcut_hypothesis_not_met(quadric):
    e, data = quadric
    # a linear form outside (J, x2^2, f) + Q
    for v in e.R.ring.gens():
        res = epsilon_shortcut_check(e.R, data, v)
        if res.outcome == "hypothesis not met":
            return
    pytest.fail("every variable satisfied the membership hypothesis")


def test_three_lines_over_f2():
    # every linear form is a zero-divisor here, so x1 has to be a quadric
    R = RingPresentation.from_strings(2, ["x", "y"], ["x^2*y + x*y^2"])
    data = splitting_ideal(R)
    assert data.params[0].degree() >= 2
    assert (not data.Ie.is_unit()) == fedder_is_fpure(R).is_fpure


@pytest.mark.parametrize("name,eps", [
    ("v3z_p2", "z^2"), ("v3z_p2", "c*z"), ("quadric_zw_p2", "x*z"), ("quadric_zw_p2", "z^2 + w^2"),
    ("v3z_p3", "c"),
])
def test_shortcut_routes_agree(name, eps):
    # colength comparison against the explicit colon and Groebner basis comparison
    e = entry(name)
    data = deformation_data(e.R, e.f, 1, seed=0)
    eps = e.R.ring.parse(eps)
    a = epsilon_shortcut_check(e.R, data, eps, method="colength")
    b = epsilon_shortcut_check(e.R, data, eps, method="colon")
    assert a.outcome == b.outcome

import pytest

from charp.cycliccover import (
    CoverError,
    base_embedding_check,
    build_cover,
    cover_index_check,
    fpure_transfer_check,
    graded_piece_check,
    minimal_generators,
    simplify_presentation,
)
from charp.divisorial import RingPresentation, canonical_ideal, find_certificate
from charp.fsingular import fedder_is_fpure

from conftest import entry


@pytest.fixture(scope="module")
def v3_cover():
    R = entry("v3_p2").R
    D = find_certificate(canonical_ideal(R, seed=0), seed=0)
    return build_cover(R, D, 3)


def test_cover_is_gorenstein(v3_cover):
    chk = cover_index_check(v3_cover, 1)
    assert chk.matches and chk.status == "match"


def test_cover_simplifies_to_polynomial_ring(v3_cover):
    S = v3_cover.simplified
    assert S.Q.is_zero() or all(not g for g in S.Q.gens)
    assert len(S.vars) == 2


def test_cover_checks(v3_cover):
    assert base_embedding_check(v3_cover)
    assert graded_piece_check(v3_cover)
    assert fpure_transfer_check(v3_cover)
    assert fedder_is_fpure(v3_cover.simplified).is_fpure


def test_unit_variable_is_the_degree_n_generator(v3_cover):
    g, i = v3_cover.degree_map[v3_cover.unit_var]
    assert i == 3 and g == v3_cover.u


def test_wrong_index_is_reported():
    R = entry("v3_p2").R
    D = find_certificate(canonical_ideal(R, seed=0), seed=0)
    with pytest.raises(CoverError):
        build_cover(R, D, 2)


def test_index_one_cover_is_identity():
    R = entry("node_p3").R
    D = find_certificate(canonical_ideal(R, seed=0), seed=0)
    C = build_cover(R, D, 1)
    assert C.simplified is R
    assert base_embedding_check(C) and graded_piece_check(C)


def test_simplify_removes_solved_variables():
    R = RingPresentation.from_strings(3, ["x", "y", "z"], ["z - x*y", "x^2 - y^3"])
    S, gone = simplify_presentation(R)
    assert gone == ["z"]
    assert S.vars == ("x", "y")


def test_minimal_generators_drop_redundancy():
    R = entry("v3_p2").R
    I = R.ideal([R.ring.parse(t) for t in ("c", "d", "c + d", "c*d")])
    assert len(minimal_generators(I, R)) == 2

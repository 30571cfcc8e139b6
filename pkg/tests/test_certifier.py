"""Certifying criteria: three points condition, certificates, witness chains."""

import json
from fractions import Fraction

import pytest

from freecert import (
    CertificateRefused,
    FreeGroupModel,
    FreeProductModel,
    ModelError,
    analyze_pair,
    build_witness_chain,
    chain_base_points,
    nielsen_certify,
    prop6_certify,
    prop7_certify,
    prop8_certify,
    theorem9_certify,
    theorem14_mode,
    three_points_check,
    tree_constants,
    validate_certificate,
)


@pytest.fixture(scope="module")
def f2():
    return FreeGroupModel(2, cap=4096)


@pytest.fixture(scope="module")
def zz2():
    return FreeProductModel(cap=512)


A, B = (1,), (2,)


# -- three points condition ----------------------------------------------------


def test_three_points_collinear_holds(f2):
    points = [(1,) * (10 * k) for k in range(4)]
    rep = three_points_check(f2, points, Fraction(5), 0)
    assert rep.holds and rep.first_violation is None
    assert rep.bound3_lhs >= rep.bound3_rhs


def test_three_points_backtrack_fails(f2):
    rep = three_points_check(f2, [(), (1,), ()], Fraction(1), 0)
    assert not rep.holds and rep.first_violation == 0


def test_three_points_lambda_formula(f2):
    points = [(1,) * (200 * k) for k in range(4)]
    rep = three_points_check(f2, points, Fraction(100), 0)
    assert rep.holds
    assert rep.lam == 200
    assert rep.bound3_rhs == 600
    assert rep.bound3_lhs == 200 * 600


def test_three_points_epsilon_precondition(f2):
    with pytest.raises(ModelError):
        three_points_check(f2, [(), (1,)], Fraction(0), 0)


# -- nielsen ---------------------------------------------------------------------


def test_nielsen_generators(f2):
    cert = nielsen_certify(f2, A, B, tree_constants())
    assert cert.exponents == {"n_min": 100, "m_min": 100}
    assert cert.constants["D"][0] == 0
    assert cert.details["predicted_embedding_L"] == "1"
    validate_certificate(cert.to_doc())


def test_nielsen_shared_axis_refused(f2):
    with pytest.raises(CertificateRefused, match="dependent"):
        nielsen_certify(f2, A, (1, 1), tree_constants())


def test_nielsen_sharp_mode_small_exponents(f2):
    cert = nielsen_certify(
        f2, A, B, tree_constants(), epsilon_mode="sharp-experimental", epsilon=Fraction(1), exponents=(1, 1)
    )
    assert cert.exponents == {"n_min": 1, "m_min": 1}
    assert cert.details["oracle_confirmed_depth"] == 8


def test_nielsen_sharp_mode_requires_epsilon(f2):
    with pytest.raises(CertificateRefused):
        nielsen_certify(f2, A, B, tree_constants(), epsilon_mode="sharp-experimental")


def test_nielsen_torsion_partner_refused(zz2):
    with pytest.raises(CertificateRefused, match="hyperbolic"):
        nielsen_certify(zz2, (1,), (2,), tree_constants())


# -- prop6 -------------------------------------------------------------------------


def test_prop6_generators_q3(f2):
    cert = prop6_certify(f2, A, B, tree_constants(), q=Fraction(3))
    assert cert.constants["N6"][0] == 204
    assert cert.exponents == {"n_min": 204, "m_min": 612}


def test_prop6_ratio_precondition(f2):
    with pytest.raises(CertificateRefused, match="swap"):
        prop6_certify(f2, A, (2, 1), tree_constants(), q=Fraction(3))


def test_prop6_q_window(f2):
    # tr(b) = 1 < tr(a)/q = 3/2 violates the lower ratio bound.
    with pytest.raises(CertificateRefused, match="ratio"):
        prop6_certify(f2, (1, 2, 1), B, tree_constants(), q=Fraction(2))


# -- prop7 / prop8 ------------------------------------------------------------------


def test_prop7_generators(f2):
    cert = prop7_certify(f2, A, B, tree_constants())
    assert cert.constants["E"][0] == 110
    assert cert.constants["N7"][0] == 110000


def test_prop7_overlapping_pair(f2):
    # f = ab (tr 2), g = a (tr 1): axes share the edge [e, a], so D = 1.
    cert = prop7_certify(f2, (1, 2), (1,), tree_constants())
    assert cert.constants["D"][0] == 1
    assert cert.constants["E"][0] == 121
    assert cert.constants["N7"][0] == 60500


def test_prop7_condition1(f2):
    with pytest.raises(CertificateRefused, match="condition 1"):
        prop7_certify(f2, A, (2, 1), tree_constants())


def test_prop8_generators(f2):
    cert = prop8_certify(f2, A, B, tree_constants())
    assert cert.constants["N"][0] == 110000
    assert cert.details["composite_threshold_N"] == 110000


def test_prop8_large_g(f2):
    cert = prop8_certify(f2, A, f2.power(B, 10), tree_constants())
    assert cert.constants["N"][0] == 110000  # max(110000, 1000)


# -- theorem9_certify / theorem14_mode -----------------------------------------------------------


def test_theorem9_constants_and_branch(f2):
    cert = theorem9_certify(f2, A, B, tree_constants())
    assert cert.constants["N6"][0] == 204
    assert cert.constants["N7"][0] == 112000
    assert cert.constants["M"][0] == 116040
    assert cert.exponents == {"n_min": 116040, "m_min": 116040}
    assert cert.details["branch"] == "step1-prop6"
    assert cert.constants["D"][0] == 0


def test_theorem9_dependent_pair_refused(f2):
    with pytest.raises(CertificateRefused, match="dependent"):
        theorem9_certify(f2, A, (1, 1), tree_constants())


def test_theorem14_matches_theorem9_at_delta_zero(f2):
    c9 = theorem9_certify(f2, A, B, tree_constants())
    c14 = theorem14_mode(f2, A, B, tree_constants())
    assert c14.exponents == c9.exponents
    assert c14.criterion == "theorem14-mode"
    assert c14.details["overlap_radius_c"] == c9.details["overlap_radius_c"] == 0
    assert {k: v for k, v in c14.constants.items()} == {k: v for k, v in c9.constants.items()}


# -- certificates as documents ---------------------------------------------------------


def test_certificate_document_round_trip(f2):
    cert = nielsen_certify(f2, A, B, tree_constants())
    doc = json.loads(cert.to_json())
    validate_certificate(doc)
    assert doc["schema_version"] == 1
    assert doc["elements"] == {"a": [1], "b": [2]}


def test_certificate_documents_are_deterministic(f2):
    c1 = nielsen_certify(f2, A, B, tree_constants())
    c2 = nielsen_certify(f2, A, B, tree_constants())
    assert c1.to_json() == c2.to_json()


def test_validate_certificate_rejects_missing_fields():
    with pytest.raises(ModelError, match="missing"):
        validate_certificate({"schema_version": 1})


# -- witness chains ----------------------------------------------------------------------


@pytest.fixture(scope="module")
def chain_setup(f2):
    a = f2.power(A, 204)
    analysis = analyze_pair(f2, a, B, 0, window=3)
    x, y = chain_base_points(f2, analysis.axis_a, analysis.axis_b, analysis.overlap)
    return a, x, y


E8 = Fraction(204, 1000)
Q8 = 3


def test_chain_word_ab(f2, chain_setup):
    a, x, y = chain_setup
    chain = build_witness_chain(f2, (1, 2), a, B, x, y, E8, Q8, 0)
    assert chain.case == "I"
    assert chain.failures == []
    assert all(chain.conditions[c]["holds"] for c in ("c1", "c2", "c3", "c4", "c5"))
    assert chain.conditions["c1"]["measured"] == 0  # exact at delta = 0
    assert chain.three_points.holds
    assert chain.embedding_L == 1200
    assert chain.embedding_ok


def test_chain_single_a_degenerates(f2, chain_setup):
    a, x, y = chain_setup
    chain = build_witness_chain(f2, (1,), a, B, x, y, E8, Q8, 0)
    assert chain.case == "I"
    assert len(chain.u) == 2
    assert chain.u[0] == x and chain.u[-1] == f2.apply(a, y)
    assert chain.three_points.holds  # vacuous for two points


def test_chain_gap_bands(f2, chain_setup):
    a, x, y = chain_setup
    long_word = (1, 2, 2, 2, 2, 1, 1, 2)
    chain = build_witness_chain(f2, long_word, a, B, x, y, E8, Q8, 0)
    assert chain.gap_bands_ok
    assert {band for _, band in chain.gaps} <= {"i", "ii"}


def test_chain_dependent_pair_fails_clause5(f2, chain_setup):
    a, x, y = chain_setup
    chain = build_witness_chain(f2, (1, -2, 1), a, a, x, y, E8, Q8, 0)
    assert not chain.conditions["c5"]["holds"]
    assert any("c5" in f for f in chain.failures)


def test_chain_case_two(f2, chain_setup):
    a, x, y = chain_setup
    chain = build_witness_chain(f2, (2, 2, 2, 1, 2), a, B, x, y, E8, Q8, 0)
    assert chain.case == "II"
    assert chain.failures == []
    assert chain.u[0] == y


def test_chain_case_o(f2, chain_setup):
    a, x, y = chain_setup
    chain = build_witness_chain(f2, (2, 2, 2, 2), a, B, x, y, E8, Q8, 0)
    assert chain.case == "O"
    assert chain.u[0] == y and chain.u[-1] == f2.apply(f2.power(B, 4), y)

"""Brute-force word oracle: triviality, freeness to depth, embeddings, sweeps."""

from fractions import Fraction

import pytest

from freecert import (
    FreeGroupModel,
    FreeProductModel,
    ModelError,
    embedding_fit,
    exceptional_sweep,
    freeness_to_depth,
    is_trivial,
)


@pytest.fixture(scope="module")
def f2():
    return FreeGroupModel(2, cap=2048)


@pytest.fixture(scope="module")
def zz2():
    return FreeProductModel(cap=512)


A, B = (1,), (2,)


def test_commutator_nontrivial(f2):
    assert not is_trivial(f2, (1, 2, -1, -2), A, B)


def test_trivial_when_b_equals_a(f2):
    assert is_trivial(f2, (1, -2), A, A)


def test_torsion_relation_trivial(zz2):
    g, h = zz2.canon((1, 1, 2)), (1, 1)  # f^2 s and f^2
    assert is_trivial(zz2, (-2, 1, -2, 1), g, h)


def test_freeness_classical_ping_pong(f2):
    report = freeness_to_depth(f2, f2.power(A, 2), f2.power(B, 2), 6)
    assert report.verdict == "free-to-depth"
    assert report.relation is None


def test_freeness_finds_torsion_relation(zz2):
    g, h = zz2.canon((1, 1, 2)), (1, 1)
    report = freeness_to_depth(zz2, g, h, 4)
    assert report.verdict == "relation-found"
    assert len(report.relation) == 4
    assert is_trivial(zz2, report.relation, g, h)


def test_freeness_equal_elements(f2):
    report = freeness_to_depth(f2, A, A, 2)
    assert report.verdict == "relation-found"
    assert report.relation == (1, -2)


def test_embedding_fit_powers(f2):
    report, ok = embedding_fit(f2, f2.power(A, 100), f2.power(B, 100), (), 3, Fraction(1))
    assert ok
    assert report.min_displacement_ratio == 100


def test_embedding_fit_generators_tight(f2):
    report, ok = embedding_fit(f2, A, B, (), 5, Fraction(1))
    assert ok
    assert report.min_displacement_ratio == 1


def test_embedding_fit_rejects_identity(f2):
    with pytest.raises(ModelError):
        embedding_fit(f2, A, (), (), 3, Fraction(1))


def test_sweep_free_pair_no_exceptions(f2):
    table = exceptional_sweep(f2, A, B, range(1, 6), range(1, 6), 4)
    assert table.exceptional_pairs == []
    assert all(v == "free-to-depth" for v in table.cells.values())


def test_sweep_torsion_pair(zz2):
    table = exceptional_sweep(zz2, zz2.canon((1, 2)), (1,), range(1, 4), range(1, 4), 4)
    assert (1, 1) in table.exceptional_pairs
    assert table.cells[(1, 1)] == "relation-found"
    assert is_trivial(zz2, table.witnesses[(1, 1)], zz2.canon((1, 2)), (1,))


def test_sweep_dependent_pair_all_relations(f2):
    table = exceptional_sweep(f2, A, f2.power(A, 2), range(1, 3), range(1, 3), 4)
    assert all(v == "relation-found" for v in table.cells.values())


def test_sweep_certified_cell_with_relation_is_fatal(zz2):
    with pytest.raises(AssertionError):
        exceptional_sweep(
            zz2, zz2.canon((1, 2)), (1,), range(1, 2), range(1, 2), 4, certified=lambda n, m: True
        )


def test_sweep_rows_sorted_by_total_exponent(f2):
    table = exceptional_sweep(f2, A, B, range(1, 4), range(1, 4), 2)
    totals = [row["n"] + row["m"] for row in table.rows()]
    assert totals == sorted(totals)

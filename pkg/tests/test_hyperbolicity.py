"""Thin-triangle constant and slimness checks."""

import pytest

from freecert import (
    CycleModel,
    ExplicitGraphModel,
    FreeGroupModel,
    all_geodesics,
    check_slim,
    compute_delta,
)


def test_tree_unique_geodesic():
    m = FreeGroupModel(2, cap=64)
    paths, truncated = all_geodesics(m, (), (1, 2, 1))
    assert len(paths) == 1 and not truncated


def test_c4_antipodal_two_geodesics():
    paths, truncated = all_geodesics(CycleModel(4), 0, 2)
    assert len(paths) == 2 and not truncated
    assert sorted(paths) == [[0, 1, 2], [0, 3, 2]]


def test_c6_antipodal_two_geodesics_length_three():
    paths, _ = all_geodesics(CycleModel(6), 0, 3)
    assert len(paths) == 2
    assert all(len(p) == 4 for p in paths)


def test_geodesic_cap_truncates_with_flag():
    # The 4-cycle as an explicit graph gives multiple geodesics; cap at 1.
    m = CycleModel(4)
    paths, truncated = all_geodesics(m, 0, 2, cap=1)
    assert len(paths) == 1 and truncated


def test_tree_delta_zero():
    m = FreeGroupModel(2, cap=64)
    report = compute_delta(m, radius=3)
    assert report.delta == 0
    assert report.exhaustive


def test_c4_delta_one():
    report = compute_delta(CycleModel(4), radius=4)
    assert report.delta == 1
    assert report.exhaustive


def test_single_point_region_delta_zero():
    m = FreeGroupModel(2, cap=64)
    report = compute_delta(m, points=[()])
    assert report.delta == 0 and report.triple_count == 0


def test_delta_monotone_in_region():
    # A larger region can only require a larger (or equal) constant.
    m = CycleModel(8)
    small = compute_delta(m, points=[0, 1, 2])
    full = compute_delta(m, radius=8)
    assert small.delta <= full.delta


def test_check_slim_tree_triangle():
    m = FreeGroupModel(2, cap=64)
    tri = (m.geodesic((), (1, 1)), m.geodesic((1, 1), (2,)), m.geodesic((), (2,)))
    ok, _ = check_slim(m, tri, 0)
    assert ok


def test_check_slim_c4_witness():
    m = CycleModel(4)
    # Sides (v0,v1), (v1,v2) and the far arc v0-v3-v2: v3 is 1 away.
    tri = ([0, 1], [1, 2], [0, 3, 2])
    ok, witness = check_slim(m, tri, 0)
    assert not ok and witness == 3
    ok1, _ = check_slim(m, tri, 1)
    assert ok1


def test_check_slim_degenerate():
    m = FreeGroupModel(2, cap=64)
    ok, _ = check_slim(m, ([()], [()], [()]), 0)
    assert ok


def test_sampled_mode_flags_non_exhaustive():
    m = FreeGroupModel(2, cap=64)
    report = compute_delta(m, radius=4, triple_budget=50, seed=3)
    assert not report.exhaustive
    assert report.triple_count == 50
    assert report.delta == 0

from __future__ import annotations

import pytest

import oracles
from propcoh.budget import Budget, BudgetExceeded
from propcoh.cohomology import (
    UNAVAILABLE,
    GroupTable,
    bar_cochain_complex,
    cohomology_dims_finite,
    h2_dim,
    inflation_image_dim,
    presentation_h1_h2_bounds,
    tower_colimit_estimate,
)
from propcoh.fp_linalg import complex_cohomology
from propcoh.presentations import GroupPresentation, builtin_example, free_presentation
from propcoh.pquotient import compute_tower, cyclic_pc, direct_product, elementary_abelian
from propcoh.raag import build_raag_presentation, complete_graph, path_graph

Z2 = GroupPresentation.from_strings(["a", "b"], ["a^-1 b^-1 a b"])


@pytest.mark.parametrize("m,p", [(2, 2), (3, 3), (4, 2), (9, 3), (5, 5)])
def test_cyclic_group_cohomology(m, p):
    cx = bar_cochain_complex(GroupTable.cyclic(m), p, 3)
    assert cx.d_squared_violations() == []
    assert complex_cohomology(cx, range(3)).as_list() == [oracles.cyclic_cohomology(n) for n in range(3)]


def test_cyclic_of_coprime_order_has_no_cohomology():
    cx = bar_cochain_complex(GroupTable.cyclic(3), 2, 3)
    assert complex_cohomology(cx, range(3)).as_list() == [1, 0, 0]


@pytest.mark.parametrize("p,r", [(2, 2), (2, 3), (3, 2)])
def test_elementary_abelian_matches_poincare_series(p, r):
    maxdeg = 3 if p ** r <= 8 else 2
    got = cohomology_dims_finite(elementary_abelian(p, r), maxdeg).as_list()
    assert got == [oracles.elementary_abelian_cohomology(r, n) for n in range(maxdeg + 1)]


def test_kunneth_for_a_product():
    pc = direct_product(cyclic_pc(2, 2), cyclic_pc(2, 1))
    got = cohomology_dims_finite(pc, 3).as_list()
    ones = [1, 1, 1, 1]
    assert got == [oracles.kunneth(ones, ones, n) for n in range(4)]


def test_group_table_from_pc_is_a_group():
    t = compute_tower(builtin_example("heisenberg").presentation, 2, 2)
    GroupTable.from_pc(t.level(2)).check()


@pytest.mark.parametrize(
    "pres,p,c",
    [(Z2, 2, 2), (Z2, 3, 2), (free_presentation("ab"), 2, 2),
     (builtin_example("heisenberg").presentation, 2, 1), (builtin_example("section1_swap").presentation, 3, 2)],
)
def test_multiplicator_matches_bar_resolution(pres, p, c):
    t = compute_tower(pres, p, c)
    for lv in t.levels:
        if lv.order <= 32:
            assert h2_dim(lv) == cohomology_dims_finite(lv, 2)[2]


@pytest.mark.parametrize("pres,p", [(Z2, 2), (Z2, 3), (free_presentation("ab"), 2)])
def test_inflation_routes_agree(pres, p):
    t = compute_tower(pres, p, 2)
    for n in (1, 2):
        assert inflation_image_dim(t, 1, 2, n, "multiplicator") == inflation_image_dim(t, 1, 2, n, "bar")


def test_inflation_direction_is_checked():
    t = compute_tower(Z2, 2, 2)
    with pytest.raises(ValueError):
        inflation_image_dim(t, 2, 1, 2)


@pytest.mark.parametrize("p", [2, 3])
def test_colimit_estimate_for_free_abelian(p):
    tc = tower_colimit_estimate(compute_tower(Z2, p, 4), 2)
    assert tc.stable and tc.estimate == 1


def test_colimit_estimate_for_free_group_vanishes():
    tc = tower_colimit_estimate(compute_tower(free_presentation("ab"), 2, 4), 2)
    assert tc.stable and tc.estimate == 0


def test_colimit_estimate_for_triangle_raag():
    t = compute_tower(build_raag_presentation(complete_graph(3)), 3, 4)
    tc = tower_colimit_estimate(t, 2)
    assert tc.stable and tc.estimate == 3


def test_short_tower_is_unstable():
    tc = tower_colimit_estimate(compute_tower(build_raag_presentation(path_graph(3)), 2, 2), 2)
    assert not tc.stable


def test_degree_three_over_budget_raises():
    t = compute_tower(Z2, 2, 3)
    with pytest.raises(BudgetExceeded):
        tower_colimit_estimate(t, 3, budget=Budget(max_matrix_entries=10))


def test_presentation_bounds():
    assert presentation_h1_h2_bounds(Z2, 5) == (2, 1)
    h1, h2 = presentation_h1_h2_bounds(GroupPresentation.from_strings(["a"], ["a^2"]), 3)
    assert h1 == 0 and h2 is UNAVAILABLE

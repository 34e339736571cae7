from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from propcoh.budget import Budget
from propcoh.presentations import GroupPresentation, builtin_example, free_presentation
from propcoh.pquotient import (
    PcPresentation,
    TrivialWordError,
    collect,
    compute_tower,
    consistency_failures,
    cyclic_pc,
    direct_product,
    elementary_abelian,
    embedding_probe,
    image_in_level,
    residual_p_witness,
    subgroup_closure,
)
from propcoh.raag import build_raag_presentation, edgeless_graph, path_graph

Z = GroupPresentation.from_strings(["a"], [])
Z2 = GroupPresentation.from_strings(["a", "b"], ["a^-1 b^-1 a b"])
F2 = free_presentation("ab")


def _exponent(p, order):
    k = 0
    while order > 1:
        assert order % p == 0
        order //= p
        k += 1
    return k


@pytest.mark.parametrize("p", [2, 3])
def test_cyclic_and_abelian_towers_match_brute_force(p):
    assert compute_tower(Z, p, 3).orders() == [
        _exponent(p, o) for o in oracles.lambda_series_orders(oracles.cyclic_group(p**3), p, 3)
    ]
    assert compute_tower(Z2, p, 3).orders() == [
        _exponent(p, o) for o in oracles.lambda_series_orders(oracles.abelian_group([p**3] * 2), p, 3)
    ]


@pytest.mark.parametrize("p", [2, 3])
def test_heisenberg_tower_matches_unitriangular_model(p):
    pres = builtin_example("heisenberg").presentation
    got = compute_tower(pres, p, 3).orders()
    want = [_exponent(p, o) for o in oracles.lambda_series_orders(oracles.heisenberg_model(p**3), p, 3)]
    assert got == want


@pytest.mark.parametrize("p", [2, 3])
def test_free_group_tower(p):
    t = compute_tower(F2, p, 4)
    class2 = oracles.lambda_series_orders(oracles.unitriangular_group(p**2), p, 2)
    assert t.orders()[:2] == [_exponent(p, o) for o in class2]
    assert t.orders() == oracles.free_group_lambda_exponents(2, 4)


def test_layers_are_elementary_abelian_and_central():
    t = compute_tower(F2, 3, 3)
    for c, lv in enumerate(t.levels, start=1):
        assert max(lv.weights) == c
        assert consistency_failures(lv) == []
        col = lv.collector
        top = [k for k, w in enumerate(lv.weights) if w == c]
        for k in top:
            gk = tuple(1 if i == k else 0 for i in range(lv.n))
            assert col.power(gk, 3) == lv.identity()
            for j in range(lv.n):
                gj = tuple(1 if i == j else 0 for i in range(lv.n))
                assert col.comm(gk, gj) == lv.identity()


def _random_vec(rng, pc):
    return tuple(rng.randrange(pc.p) for _ in range(pc.n))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["F2", "heisenberg", "Z2"]), st.sampled_from([2, 3]), st.integers(0, 10**9))
def test_collection_is_associative_with_inverses(which, p, seed):
    pres = {"F2": F2, "Z2": Z2, "heisenberg": builtin_example("heisenberg").presentation}[which]
    lv = compute_tower(pres, p, 3).level(3)
    col = lv.collector
    rng = random.Random(seed)
    u, v, w = (_random_vec(rng, lv) for _ in range(3))
    assert col.mul(col.mul(u, v), w) == col.mul(u, col.mul(v, w))
    assert col.mul(u, col.inv(u)) == lv.identity()
    assert col.power(u, p ** lv.nclass) == lv.identity()


def test_small_pc_constructors():
    c = cyclic_pc(5, 2)
    assert c.order == 25 and consistency_failures(c) == []
    e = elementary_abelian(2, 3)
    d = direct_product(c, cyclic_pc(5, 1))
    assert d.order == 125 and consistency_failures(d) == []
    assert e.order_exponent == 3
    assert collect(c, [(0, 1)] * 5) == (0, 1)


def test_invalid_pc_presentation_is_rejected():
    with pytest.raises(ValueError):
        PcPresentation(2, (1,), (((0, 1),),), ((),), (("image", 0),))


def test_broken_relation_is_caught_by_consistency_check():
    # g0^2 = g1 commutes with g0, so [g1, g0] = g2 cannot hold
    pc = PcPresentation(
        2, (1, 2, 2),
        (((1, 1),), (), ()),
        ((), (((2, 1),),), ((), ())),
        (("image", 0), ("pow", 0), ("image", 1)),
    )
    assert consistency_failures(pc)


def test_tower_serialisation_is_deterministic():
    a = compute_tower(F2, 2, 3).dumps()
    from propcoh.pquotient import clear_tower_cache

    clear_tower_cache()
    b = compute_tower(F2, 2, 3).dumps()
    assert a == b
    d = json.loads(a)
    assert d["format"] == 1 and [lv["class"] for lv in d["levels"]] == [1, 2, 3]
    assert PcPresentation.from_dict(d["levels"][2]) == compute_tower(F2, 2, 3).level(3)


def test_budget_truncates_instead_of_failing():
    t = compute_tower(F2, 2, 6, Budget(max_generators=12))
    assert t.truncated and t.orders() == [2, 5, 10]
    assert "12" in t.reason or "generators" in t.reason


def test_images_are_compatible_with_projection():
    g = path_graph(3)
    t = compute_tower(build_raag_presentation(g), 3, 3)
    rng = random.Random(4)
    for _ in range(10):
        w = tuple((rng.randrange(3), rng.choice((1, -1))) for _ in range(6))
        top = image_in_level(t, 3, w)
        for c in (1, 2):
            assert t.project(top, c) == image_in_level(t, c, w)


def test_witness_for_commutator():
    g = path_graph(3)
    w = ((0, -1), (2, -1), (0, 1), (2, 1))
    wit = residual_p_witness(g, w, 2, 3)
    assert wit is not None and wit.level == 2


def test_witness_rejects_trivial_words():
    g = path_graph(3)
    with pytest.raises(TrivialWordError):
        residual_p_witness(g, ((0, 1), (1, 1), (0, -1), (1, -1)), 2, 3)


def test_subgroup_closure_orders():
    lv = compute_tower(builtin_example("heisenberg").presentation, 3, 2).level(2)
    t = compute_tower(builtin_example("heisenberg").presentation, 3, 2)
    x = image_in_level(t, 2, ((0, 1),))
    y = image_in_level(t, 2, ((1, 1),))
    assert subgroup_closure(lv, [x]).order == 3
    assert subgroup_closure(lv, [lv.identity()]).order == 1
    whole = subgroup_closure(lv, [image_in_level(t, 2, ((k, 1),)) for k in range(3)])
    assert whole.order == lv.order
    assert subgroup_closure(lv, [y]).contains(lv.collector.power(y, 2))


def test_embedding_probe_on_special_subgroup():
    g = path_graph(3)
    t_g = compute_tower(build_raag_presentation(g), 2, 3)
    t_h = compute_tower(build_raag_presentation(edgeless_graph(2)), 2, 2)
    verdicts = embedding_probe(t_g, [((0, 1),), ((2, 1),)], t_h)
    assert [v.verified for v in verdicts] == [True, True]
    assert all(v.g_class <= 3 for v in verdicts)

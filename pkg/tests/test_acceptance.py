"""The ten acceptance criteria, each at its stated tolerance and time limit.

Every test records one PASS / FAIL / SKIP line which is printed in the
terminal summary (see conftest.py).
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager

import pytest

import oracles
from conftest import CRITERIA_LINES, SUITE_SECONDS
from propcoh.cohomology import GroupTable, bar_cochain_complex
from propcoh.exact import ExactLedger, ledger_check, mutate_ledger, mv_h2_lower_bound, torus_action_modules, wang_dims, wang_e11_part
from propcoh.fp_linalg import complex_cohomology
from propcoh.presentations import GroupPresentation, builtin_example, free_presentation
from propcoh.pquotient import clear_tower_cache, compute_tower, consistency_failures, residual_p_witness
from propcoh.raag import (
    clique_count,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    is_trivial,
    path_graph,
    salvetti_cochain_complex,
)
from propcoh.scenarios import INCONCLUSIVE, INCONSISTENT, Scenario, default_suite, run_scenario


@contextmanager
def criterion(k: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except pytest.skip.Exception as exc:
        CRITERIA_LINES[k] = f"criterion {k:2d} SKIP  {title}: {exc}"
        raise
    except BaseException as exc:
        CRITERIA_LINES[k] = f"criterion {k:2d} FAIL  {title}: {type(exc).__name__}: {str(exc)[:200]}"
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        CRITERIA_LINES[k] = f"criterion {k:2d} FAIL  {title}: took {elapsed:.1f} s, limit {limit:.0f} s"
        pytest.fail(f"took {elapsed:.1f} s, limit {limit} s")
    CRITERIA_LINES[k] = f"criterion {k:2d} PASS  {title} ({elapsed:.1f} s)"
    print(CRITERIA_LINES[k])


GRAPHS = {
    "edgeless-2": edgeless_graph(2),
    "edge": path_graph(2),
    "path-3": path_graph(3),
    "K3": complete_graph(3),
    "C4": cycle_graph(4),
    "K4": complete_graph(4),
}


def _exponent(p: int, order: int) -> int:
    k = 0
    while order > 1:
        assert order % p == 0
        order //= p
        k += 1
    return k


def test_criterion_01_raag_discrete_cohomology():
    with criterion(1, "Salvetti dims equal clique counts", limit=10):
        for name, g in GRAPHS.items():
            for p in (2, 3, 5):
                cx = salvetti_cochain_complex(g, p, 5)
                dims = complex_cohomology(cx, range(5))
                for n in range(5):
                    assert dims[n] == clique_count(g, n), (name, p, n)


def test_criterion_02_pquotient_soundness():
    with criterion(2, "tower orders match brute-force oracles", limit=60):
        clear_tower_cache()
        cases = {
            "Z": (GroupPresentation.from_strings(["a"], []), lambda p: oracles.cyclic_group(p**3)),
            "Z2": (GroupPresentation.from_strings(["a", "b"], ["a^-1 b^-1 a b"]),
                   lambda p: oracles.abelian_group([p**3, p**3])),
            "heisenberg": (builtin_example("heisenberg").presentation, lambda p: oracles.heisenberg_model(p**3)),
        }
        for p in (2, 3):
            for name, (pres, model) in cases.items():
                got = compute_tower(pres, p, 3).orders()
                want = [_exponent(p, o) for o in oracles.lambda_series_orders(model(p), p, 3)]
                assert got == want, (name, p, got, want)
            f2 = compute_tower(free_presentation("ab"), p, 3).orders()
            ut = oracles.lambda_series_orders(oracles.unitriangular_group(p**2), p, 2)
            assert f2[:2] == [_exponent(p, o) for o in ut], (p, f2)
            assert f2 == oracles.free_group_lambda_exponents(2, 3), (p, f2)


def test_criterion_03_consistency(suite_reports):
    with criterion(3, "pc presentations consistent, d o d = 0"):
        for name, rep in suite_reports.items():
            for p, sec in rep.primes.items():
                assert sec["checks"]["pc_consistent"], (name, p)
        # re-check every emitted level directly, plus the complexes
        for s in default_suite():
            if s.kind == "raag_classC":
                for p in s.primes:
                    for lv in compute_tower(_pres_of(s), p, s.maxclass, s.budget).levels:
                        assert consistency_failures(lv) == []
        for g in GRAPHS.values():
            for p in (2, 3, 5):
                assert salvetti_cochain_complex(g, p, 5).d_squared_violations() == []
        for pres, p in [(free_presentation("ab"), 2), (builtin_example("heisenberg").presentation, 2)]:
            for lv in compute_tower(pres, p, 2).levels:
                if lv.order <= 32:
                    cx = bar_cochain_complex(GroupTable.from_pc(lv), p, 2 if lv.order > 8 else 3)
                    assert cx.d_squared_violations() == []


def _pres_of(s: Scenario):
    from propcoh.raag import build_raag_presentation

    return build_raag_presentation(s.graph)


def test_criterion_04_h1_agreement(suite_reports):
    with criterion(4, "tower H^1 = presentation h1 = discrete H^1"):
        for name, rep in suite_reports.items():
            for p, sec in rep.primes.items():
                h1 = sec["presentation_bounds"]["h1"]
                assert sec["tower"]["layer_ranks"][0] == h1, (name, p)
                d1 = sec["degrees"]["1"]
                assert d1["discrete"]["value"] == h1, (name, p)
                assert d1["tower"]["estimate"] == h1, (name, p)
                assert sec["checks"]["h1_agreement"], (name, p)


def test_criterion_05_raag_h2_colimit():
    with criterion(5, "RAAG H^2 colimit estimate equals edge count", limit=15 * 60):
        clear_tower_cache()
        inconclusive = []
        for name in ("edge", "path-3", "K3"):
            g = GRAPHS[name]
            s = Scenario(f"c5_{name}", "raag_classC", (2, 3), maxclass=4, graph=g)
            rep = run_scenario(s)
            for p, sec in rep.primes.items():
                tc = sec["degrees"]["2"]["tower"]
                if tc is None or not tc["stable"]:
                    assert rep.verdict == INCONCLUSIVE
                    inconclusive.append(f"{name} p={p}")
                    continue
                assert tc["estimate"] == len(g.edges), (name, p, tc)
        if inconclusive:
            pytest.skip("not stable within the class-4 budget: " + ", ".join(inconclusive))


def _random_words(g, count: int, seed: int):
    """Nontrivial words of length <= 6; every other one has zero exponent sums."""
    rng = random.Random(seed)
    words = []
    while len(words) < count:
        if len(words) % 2:
            half = [(rng.randrange(g.n), rng.choice((1, -1))) for _ in range(rng.randint(1, 3))]
            w = half + [(v, -e) for v, e in half]
            rng.shuffle(w)
            w = tuple(w)
        else:
            w = tuple((rng.randrange(g.n), rng.choice((1, -1))) for _ in range(rng.randint(1, 6)))
        if not is_trivial(g, w):
            words.append(w)
    return words


def test_criterion_06_residual_witnesses():
    with criterion(6, "20 random words per graph witnessed at level <= 4"):
        missing = []
        for name in ("edgeless-2", "path-3"):
            g = GRAPHS[name]
            words = _random_words(g, 20, seed=311)
            for p in (2, 3):
                for w in words:
                    wit = residual_p_witness(g, w, p, 4)
                    if wit is None or wit.level > 4:
                        missing.append((name, p, w))
        assert not missing, missing


def test_criterion_07_example311(suite_reports):
    with criterion(7, "glued torus bundles: discrete H^2 != 0, tower free-like", limit=10 * 60):
        rep = suite_reports["example311_G"]
        assert sorted(rep.primes) == [2, 3, 5]
        s = next(s for s in default_suite() if s.name == "example311_G")
        assert s.maxclass == 5
        for p, sec in rep.primes.items():
            ex = sec["example311"]
            assert ex["N_images_trivial"], p                      # (a)
            assert ex["orders_match_f2"], p                       # (b)
            assert sec["tower"]["order_exponents"] == oracles.free_group_lambda_exponents(2, 5), p
            for half in ("example311_G1", "example311_G2"):        # (c)
                mods = torus_action_modules(builtin_example(half).wang.action, p)
                assert wang_dims(mods, 2)[2] == 2, (half, p)
                assert wang_e11_part(mods) == 1, (half, p)
            assert sec["degrees"]["2"]["discrete"]["lower"] >= 1, p
        assert mv_h2_lower_bound([2, 2], 1) == 3                   # (d)
        assert rep.verdict == INCONSISTENT
        assert rep.exit_code == 1
        assert SUITE_SECONDS["example311_G"] < 10 * 60, SUITE_SECONDS["example311_G"]


def test_criterion_08_swap_extension(suite_reports):
    with criterion(8, "swap extension: abelian levels, xy^-1 dies, orders 3^(2c)"):
        rep = suite_reports["section1_swap"]
        sec = rep.primes[3]
        info = sec["section1"]
        assert info["levels_abelian"]
        assert info["xy_inverse_trivial"]
        assert info["order_exponents"] == [2 * c for c in range(1, 5)]
        assert sec["wang"]["dims"] == [1, 2, 1, 0]
        assert any("not asserted" in f for f in rep.flags)


def test_criterion_09_ledgers(suite_reports):
    with criterion(9, "auto ledgers satisfiable, mutations violated"):
        count = mutated = 0
        for name, rep in suite_reports.items():
            for p, sec in rep.primes.items():
                for entry in sec["ledgers"]:
                    assert entry["verdict"] == "Satisfiable", (name, p, entry["kind"])
                    led = ExactLedger.from_dict(entry["ledger"])
                    assert ledger_check(led).satisfiable
                    count += 1
                    for k, d in enumerate(led.dims):
                        if d is None:
                            continue
                        for delta in (1, -1):
                            if d + delta < 0:
                                continue
                            v = ledger_check(mutate_ledger(led, k, delta))
                            assert not v.satisfiable, (name, p, led.nodes[k], delta)
                            mutated += 1
        assert count >= 10 and mutated >= 100, (count, mutated)


def test_criterion_10_determinism(suite_reports):
    with criterion(10, "two suite runs give byte-identical reports"):
        first = {name: rep.dumps() for name, rep in suite_reports.items()}
        clear_tower_cache()
        second = {s.name: run_scenario(s).dumps() for s in default_suite()}
        assert first.keys() == second.keys()
        for name in first:
            assert first[name] == second[name], name

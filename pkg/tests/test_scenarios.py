from __future__ import annotations

import glob
import json
import os

import pytest

from propcoh.budget import Budget
from propcoh.presentations import builtin_example
from propcoh.raag import complete_graph, path_graph
from propcoh.scenarios import (
    CONSISTENT,
    INCONCLUSIVE,
    Scenario,
    ScenarioError,
    _compare,
    default_suite,
    load_scenario,
    run_scenario,
    scenario_to_dict,
)

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def test_compare_rules():
    exact = {"value": 2, "lower": 2, "upper": 2, "provenance": "x"}
    bound = {"value": None, "lower": 1, "upper": None, "provenance": "x"}
    stable = {"estimate": 2, "stable": True}
    assert _compare(exact, stable) == "agree"
    assert _compare(exact, {"estimate": 3, "stable": True}) == "disagree"
    assert _compare(exact, {"estimate": 3, "stable": False}) == "undetermined"
    assert _compare(bound, stable) == "compatible"
    assert _compare(bound, {"estimate": 0, "stable": True}) == "disagree"
    assert _compare(exact, None) == "undetermined"


def test_scenario_validation():
    with pytest.raises(ScenarioError):
        Scenario("x", "raag_classC", (2,))
    with pytest.raises(ScenarioError):
        Scenario("x", "raag_classC", (4,), graph=path_graph(2))
    with pytest.raises(ScenarioError):
        Scenario("x", "nonsense", (2,), graph=path_graph(2))
    with pytest.raises(ScenarioError):
        Scenario("x", "amalgam_classC", (2,), builtin="heisenberg")
    with pytest.raises(ScenarioError):
        Scenario.from_dict({"format": 2, "kind": "raag_classC"})


def test_bundled_scenario_files_match_the_suite():
    files = sorted(glob.glob(os.path.join(ROOT, "scenarios", "*.json")))
    loaded = {load_scenario(f).name: load_scenario(f) for f in files}
    for s in default_suite():
        assert scenario_to_dict(loaded[s.name]) == scenario_to_dict(s)


def test_raag_scenario_report():
    rep = run_scenario(Scenario("k3", "raag_classC", (2, 3), maxclass=4, maxdeg=3, graph=complete_graph(3)))
    assert rep.verdict == CONSISTENT and rep.exit_code == 0
    for p in (2, 3):
        degs = rep.primes[p]["degrees"]
        assert [degs[str(n)]["discrete"]["value"] for n in range(4)] == [1, 3, 3, 1]
        assert degs["2"]["tower"]["estimate"] == 3
        assert degs["3"]["comparison"] == "not computed"
    d = json.loads(rep.dumps())
    assert d["format"] == 1 and d["scenario"] == "k3"


def test_presentation_tower_scenario():
    pres = builtin_example("heisenberg").presentation
    rep = run_scenario(Scenario("h", "presentation_tower", (2,), maxclass=3, presentation=pres))
    tower = rep.primes[2]["tower"]
    assert tower["order_exponents"] == [2, 5, 8]
    assert tower["layer_ranks"] == [2, 3, 3]
    assert rep.verdict == INCONCLUSIVE  # H^2 of a bare presentation is unknown


def test_budget_exhaustion_is_inconclusive_not_an_error():
    s = Scenario("tiny", "raag_classC", (2,), maxclass=4, graph=path_graph(3), budget=Budget(max_generators=6))
    rep = run_scenario(s)
    assert rep.verdict == INCONCLUSIVE
    assert rep.exit_code == 0
    assert any("truncated" in f for f in rep.flags)


def test_hnn_scenario_runs_britton_checks():
    s = next(s for s in default_suite() if s.name == "hnn_path3_middle")
    rep = run_scenario(s)
    assert rep.verdict == CONSISTENT
    assert rep.primes[2]["britton"]
    assert all(c["tower_images_agree"] for c in rep.primes[2]["britton"])

"""Scenario runs: discrete cohomology against the p-quotient tower.

A scenario names a group (RAAG, presentation, builtin, amalgam or HNN
splitting), a list of primes and budgets.  For every prime the report
records the discrete dims (with where they came from), the tower dims and
inflation images, the colimit estimate, ledger verdicts, witnesses and
embedding probes.  Comparisons are made on dimensions only.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from math import comb
from typing import Any

from .budget import Budget, BudgetExceeded, default_budget
from .cohomology import UNAVAILABLE, presentation_h1_h2_bounds, tower_colimit_estimate
from .exact import (
    ExactLedger,
    amalgam_dims,
    amalgam_ledger,
    hnn_dims,
    hnn_ledger,
    invariant_sum_rank,
    ledger_check,
    mv_h2_lower_bound,
    torus_action_modules,
    wang_dims,
    wang_e11_part,
)
from .fp_linalg import FpMatrix, complex_cohomology, is_prime, nullspace, rank
from .pquotient import (
    PQuotientTower,
    compute_tower,
    consistency_failures,
    embedding_probe,
    image_in_level,
    residual_p_witness,
)
from .presentations import (
    BuiltinExample,
    GroupPresentation,
    HnnSpec,
    build_hnn_presentation,
    builtin_example,
    exponent_sums,
    letter,
    load_presentation,
)
from .raag import (
    RaagSpecialOracle,
    SimpleGraph,
    britton_reduce,
    build_raag_presentation,
    clique_count,
    is_trivial as raag_is_trivial,
    load_graph,
    parse_raag_word,
    salvetti_cochain_complex,
    sequence_from_word,
)

FORMAT = 1
KINDS = ("raag_classC", "presentation_tower", "amalgam_classC", "hnn_classC", "builtin")
CONSISTENT = "consistent-with-classC"
INCONSISTENT = "inconsistent"
INCONCLUSIVE = "inconclusive"


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str
    primes: tuple[int, ...]
    maxclass: int = 3
    maxdeg: int = 2
    graph: SimpleGraph | None = None
    presentation: GroupPresentation | None = None
    builtin: str | None = None
    vertex: str | None = None
    witness_words: tuple[str, ...] = ()
    probe_class: int = 2
    budget: Budget = field(default_factory=default_budget)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ScenarioError(f"unknown scenario kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if not self.primes:
            raise ScenarioError("scenario needs at least one prime")
        for p in self.primes:
            if not is_prime(p):
                raise ScenarioError(f"{p} is not prime")
        if self.maxclass < 1 or self.maxdeg < 0:
            raise ScenarioError("maxclass must be >= 1 and maxdeg >= 0")
        need = {
            "raag_classC": self.graph,
            "hnn_classC": self.graph,
            "presentation_tower": self.presentation,
            "builtin": self.builtin,
            "amalgam_classC": self.builtin,
        }[self.kind]
        if need is None:
            raise ScenarioError(f"{self.kind} scenario is missing its group input")
        if self.kind == "hnn_classC" and self.vertex is None:
            raise ScenarioError("hnn_classC scenario needs the splitting vertex")
        if self.kind == "amalgam_classC" and builtin_example(self.builtin).amalgam_of is None:
            raise ScenarioError(f"builtin {self.builtin!r} is not an amalgam")

    @classmethod
    def from_dict(cls, data: dict, base_dir: str = ".") -> "Scenario":
        if data.get("format", FORMAT) != FORMAT:
            raise ScenarioError(f"unsupported scenario format {data.get('format')}")
        kind = data.get("kind")
        graph = pres = None
        if "graph" in data:
            graph = SimpleGraph.from_dict(data["graph"])
        elif "graph_file" in data:
            graph = load_graph(os.path.join(base_dir, data["graph_file"]))
        if "presentation" in data:
            pres = GroupPresentation.from_dict(data["presentation"])
        elif "presentation_file" in data:
            pres = load_presentation(os.path.join(base_dir, data["presentation_file"]))
        budget = default_budget()
        if "budget" in data:
            from dataclasses import replace

            budget = replace(budget, **data["budget"])
        return cls(
            name=data.get("name", kind or "scenario"),
            kind=kind,
            primes=tuple(data.get("primes", [2])),
            maxclass=data.get("maxclass", 3),
            maxdeg=data.get("maxdeg", 2),
            graph=graph,
            presentation=pres,
            builtin=data.get("builtin"),
            vertex=data.get("vertex"),
            witness_words=tuple(data.get("witness_words", ())),
            probe_class=data.get("probe_class", 2),
            budget=budget,
        )


def load_scenario(path: str) -> Scenario:
    with open(path) as fh:
        data = json.load(fh)
    return Scenario.from_dict(data, os.path.dirname(os.path.abspath(path)))


@dataclass
class ScenarioReport:
    name: str
    kind: str
    primes: dict[int, dict]
    verdict: str
    flags: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "scenario": self.name,
            "kind": self.kind,
            "verdict": self.verdict,
            "flags": self.flags,
            "internal_failures": self.failures,
            "primes": {str(p): self.primes[p] for p in sorted(self.primes)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @property
    def exit_code(self) -> int:
        if self.failures:
            return 3
        return 1 if self.verdict == INCONSISTENT else 0


# discrete-side intervals --------------------------------------------------------

def _exact(value: int, provenance: str) -> dict:
    return {"value": value, "lower": value, "upper": value, "provenance": provenance}


def _bounded(lower: int, upper: int | None, provenance: str) -> dict:
    value = lower if upper == lower else None
    return {"value": value, "lower": lower, "upper": upper, "provenance": provenance}


def _compare(discrete: dict, tower: dict | None) -> str:
    if tower is None or tower.get("estimate") is None:
        return "undetermined"
    if not tower["stable"]:
        return "undetermined"
    est = tower["estimate"]
    lo, hi = discrete["lower"], discrete["upper"]
    if est < lo or (hi is not None and est > hi):
        return "disagree"
    return "agree" if discrete["value"] is not None else "compatible"


def _hom_to_fp(pres: GroupPresentation, p: int) -> FpMatrix:
    """Basis (columns) of Hom(G, F_p) as functionals on the generators."""
    if pres.relators:
        m = FpMatrix(p, pres.exponent_matrix(), rows=len(pres.relators), cols=pres.ngens)
        return nullspace(m)
    return FpMatrix.identity(p, pres.ngens)


def _h1_restriction(pres: GroupPresentation, words, p: int) -> FpMatrix:
    """Matrix of H^1(G) -> H^1(A) in the dual basis of the words generating A."""
    w = FpMatrix(p, [exponent_sums(x, pres.ngens) for x in words], rows=len(words), cols=pres.ngens)
    return w @ _hom_to_fp(pres, p)


def _torus_dims(r: int) -> list[int]:
    return [comb(r, k) for k in range(r + 1)]


def _wang_modules(b: BuiltinExample, p: int):
    return torus_action_modules(b.wang.action, p)


def _wang_ledger(name: str, modules, dims: list[int]) -> ExactLedger:
    """0 -> H^0(G) -> H^0(N) -(t-1)-> H^0(N) -> H^1(G) -> ... -> H^r(N) -> H^(r+1)(G) -> 0."""
    nodes, ds, ranks = [], [], []
    r = len(modules) - 1
    for k in range(r + 1):
        m = modules[k]
        shift = rank(m.action - FpMatrix.identity(m.p, m.dim)) if m.dim else 0
        nodes += [f"H^{k}({name})", f"H^{k}(N)", f"H^{k}(N)'"]
        ds += [dims[k], m.dim, m.dim]
        ranks += [None, shift, None]
    nodes.append(f"H^{r + 1}({name})")
    ds.append(dims[r + 1])
    return ExactLedger(tuple(nodes), tuple(ds), tuple(ranks), bounded=True)


def _discrete_for_builtin(b: BuiltinExample, p: int, maxdeg: int, out: dict) -> dict[int, dict]:
    """Discrete dims of a builtin via Wang or Mayer-Vietoris, plus ledgers."""
    ledgers = out.setdefault("ledgers", [])
    if b.wang is not None:
        mods = _wang_modules(b, p)
        r = len(mods) - 1
        dims = wang_dims(mods, max(maxdeg, r + 1))
        out["wang"] = {"dims": dims.as_list(), "e11_part": wang_e11_part(mods)}
        ledgers.append(("wang", _wang_ledger(b.name, mods, dims.as_list())))
        return {n: _exact(dims[n], "wang") for n in range(maxdeg + 1)}
    if b.amalgam_of is not None:
        lname, rname, sub = b.amalgam_of
        left, right = builtin_example(lname), builtin_example(rname)
        words_l = tuple(left.presentation.word(b.presentation.format(w)) for w in b.subgroups[sub])
        words_r = tuple(right.presentation.word(b.presentation.format(w)) for w in b.subgroups[sub])
        mods_l, mods_r = _wang_modules(left, p), _wang_modules(right, p)
        top = max(maxdeg, len(mods_l), len(mods_r)) + 1
        dl = wang_dims(mods_l, top).as_list()
        dr = wang_dims(mods_r, top).as_list()
        r_edge = len(words_l)
        de = _torus_dims(r_edge)
        res_l = _h1_restriction(left.presentation, words_l, p)
        res_r = _h1_restriction(right.presentation, words_r, p)
        rho: list[int | None] = [1, rank(FpMatrix(p, [a + b for a, b in zip(res_l.tolist(), res_r.tolist())]))
                                 if r_edge else 0]
        edge_is_normal = all(
            tuple(x.presentation.format(w) for w in ws) == x.wang.normal
            for x, ws in ((left, words_l), (right, words_r))
        )
        for n in range(2, top + 1):
            if n >= len(de):
                rho.append(0)
            elif edge_is_normal:
                rho.append(invariant_sum_rank([mods_l, mods_r], n))
            else:
                rho.append(None)
        bound = mv_h2_lower_bound((dl[2], dr[2]), de[2] if len(de) > 2 else 0)
        out["mv"] = {
            "factor_dims": [dl[: maxdeg + 1], dr[: maxdeg + 1]],
            "edge_dims": de,
            "restriction_ranks": rho[: top + 1],
            "h2_lower_bound": bound,
        }
        discrete: dict[int, dict] = {}
        if all(x is not None for x in rho):
            dims = amalgam_dims(dl, dr, de, rho, top)
            out["mv"]["dims"] = dims[: maxdeg + 1]
            for n in range(maxdeg + 1):
                discrete[n] = _exact(dims[n], "mv")
            ledgers.append(("mayer-vietoris", amalgam_ledger(
                (b.name, lname, rname, sub), dims, dl, dr, de, rho, top)))
        else:
            for n in range(maxdeg + 1):
                discrete[n] = _bounded(0, None, "unknown")
            if maxdeg >= 2:
                discrete[2] = _bounded(bound, None, "mv-bound")
        return discrete
    raise ScenarioError(f"builtin {b.name!r} carries no discrete-side data")


# per-prime work -------------------------------------------------------------------

def _tower_section(t: PQuotientTower) -> dict:
    return {
        "orders": [f"{t.p}^{n}" for n in t.orders()],
        "order_exponents": t.orders(),
        "layer_ranks": t.layer_ranks(),
        "truncated": t.truncated,
        "reason": t.reason,
    }


def _degrees(t: PQuotientTower, maxdeg: int, budget: Budget, flags: set) -> dict[int, dict | None]:
    out: dict[int, dict | None] = {}
    for n in range(min(maxdeg, 2) + 1):
        try:
            out[n] = tower_colimit_estimate(t, n, budget=budget).to_dict()
        except BudgetExceeded as exc:
            flags.add(f"tower H^{n}: {exc}")
            out[n] = None
    if maxdeg > 2:
        flags.add("tower cohomology above degree 2 is not compared (bar resolution over budget)")
    return out


def _run_prime(s: Scenario, p: int, flags: set, failures: list[str]) -> dict:
    out: dict[str, Any] = {}
    budget = s.budget
    b = builtin_example(s.builtin) if s.builtin else None

    if s.kind == "raag_classC":
        g = s.graph
        pres = build_raag_presentation(g)
    elif s.kind == "hnn_classC":
        g = s.graph
        v = g.index(s.vertex)
        rest = [k for k in range(g.n) if k != v]
        base_graph = g.induced(rest)
        link = [rest.index(k) for k in sorted(g.neighbours(v))]
        oracle = RaagSpecialOracle(base_graph, link)
        spec = oracle.hnn_spec(stable=s.vertex)
        pres = build_hnn_presentation(spec)
    elif s.kind == "presentation_tower":
        pres = s.presentation
    else:
        pres = b.presentation

    t = compute_tower(pres, p, s.maxclass, budget)
    out["tower"] = _tower_section(t)
    if t.truncated:
        flags.add(f"p={p}: tower truncated ({t.reason})")
    bad = [c + 1 for c, lv in enumerate(t.levels) if consistency_failures(lv)]
    out["checks"] = {"pc_consistent": not bad}
    if bad:
        failures.append(f"p={p}: inconsistent pc presentation at levels {bad}")

    h1, h2_upper = presentation_h1_h2_bounds(pres, p)
    out["presentation_bounds"] = {"h1": h1, "h2_upper": None if h2_upper is UNAVAILABLE else h2_upper}

    # discrete side
    discrete: dict[int, dict]
    if s.kind == "raag_classC":
        cx = salvetti_cochain_complex(s.graph, p, s.maxdeg)
        dims = complex_cohomology(cx, range(s.maxdeg + 1))
        discrete = {n: _exact(dims[n], "salvetti") for n in range(s.maxdeg + 1)}
        clique_ok = all(dims[n] == clique_count(s.graph, n) for n in range(s.maxdeg + 1))
        out["checks"]["salvetti_equals_cliques"] = clique_ok
        if not clique_ok:
            failures.append(f"p={p}: Salvetti dims differ from clique counts")
        top = max(k for k in range(s.graph.n + 1) if clique_count(s.graph, k))
        out["ledgers"] = [("hnn-splitting", _raag_split_ledger(s.graph, p, top + 1))] if s.graph.n else []
        out["witnesses"] = _witnesses(s, s.graph, p)
        out["probes"] = _raag_probes(s, s.graph, p, t)
    elif s.kind == "hnn_classC":
        discrete = _hnn_discrete(s, p, out)
        out["britton"] = _britton_checks(s, p, spec, oracle, pres)
    elif s.kind == "presentation_tower":
        discrete = {0: _exact(1, "h1-formula"), 1: _exact(h1, "h1-formula")}
        for n in range(2, s.maxdeg + 1):
            discrete[n] = _bounded(0, None, "unknown")
    else:
        discrete = _discrete_for_builtin(b, p, s.maxdeg, out)
        _builtin_extras(s, b, p, t, out, flags)

    tower_deg = _degrees(t, s.maxdeg, budget, flags)
    level1 = t.layer_ranks()[0] if t.levels else 0
    h1_ok = level1 == h1 and (1 not in discrete or discrete[1]["value"] in (None, h1))
    out["checks"]["h1_agreement"] = h1_ok
    if not h1_ok:
        failures.append(f"p={p}: H^1 disagreement (tower {level1}, presentation {h1}, discrete {discrete.get(1)})")

    degrees = {}
    for n in range(s.maxdeg + 1):
        tc = tower_deg.get(n)
        degrees[str(n)] = {
            "discrete": discrete[n],
            "tower": tc,
            "comparison": _compare(discrete[n], tc) if n in tower_deg else "not computed",
        }
    out["degrees"] = degrees

    verdicts = []
    for label, led in out.pop("ledgers", []):
        v = ledger_check(led)
        verdicts.append({"kind": label, "ledger": led.to_dict(), **v.to_dict()})
        if not v.satisfiable:
            failures.append(f"p={p}: {label} ledger violated at {v.failing_node}")
    out["ledgers"] = verdicts
    return out


def _raag_split_ledger(g: SimpleGraph, p: int, maxdeg: int) -> ExactLedger:
    """MV ledger for splitting the RAAG as an HNN extension at its last vertex."""
    v = g.n - 1
    rest = list(range(v))
    base = g.induced(rest)
    link = g.induced(sorted(g.neighbours(v)))

    def dims(graph):
        if graph.n == 0:
            return [1]
        cx = salvetti_cochain_complex(graph, p, maxdeg)
        return complex_cohomology(cx, range(maxdeg + 1)).as_list()

    whole = complex_cohomology(salvetti_cochain_complex(g, p, maxdeg), range(maxdeg + 1)).as_list()
    return hnn_ledger(
        (f"A({','.join(g.vertices)})", "base", "link"), whole, dims(base), dims(link), [0] * (maxdeg + 1), maxdeg
    )


def _hnn_discrete(s: Scenario, p: int, out: dict) -> dict[int, dict]:
    g = s.graph
    v = g.index(s.vertex)
    rest = [k for k in range(g.n) if k != v]
    base = g.induced(rest)
    link = g.induced(sorted(g.neighbours(v)))
    top = max(s.maxdeg, g.n) + 1

    def dims(graph):
        if graph.n == 0:
            return [1]
        return complex_cohomology(salvetti_cochain_complex(graph, p, top), range(top + 1)).as_list()

    db, dl = dims(base), dims(link)
    mv = hnn_dims(db, dl, [0] * (top + 1), top)
    direct = dims(g)
    out["mv"] = {"base_dims": db, "assoc_dims": dl, "dims": mv[: s.maxdeg + 1], "salvetti_dims": direct[: s.maxdeg + 1]}
    out.setdefault("ledgers", []).append(
        ("mayer-vietoris", hnn_ledger((f"G_phi", "base", "link"), direct, db, dl, [0] * (top + 1), top))
    )
    return {n: _exact(mv[n], "mv") for n in range(s.maxdeg + 1)}


def _britton_checks(s: Scenario, p: int, spec: HnnSpec, oracle, pres: GroupPresentation) -> list[dict]:
    """Reduce a few canonical HNN words and check the reduction in a tower level."""
    t_idx = spec.stable_index
    base = spec.base
    words = []
    outside = [k for k in range(base.ngens) if k not in oracle.H]
    inside = list(oracle.H)
    if inside:
        h = inside[0]
        words.append(((t_idx, -1), (h, 1), (t_idx, 1), (h, -1)))
    if outside:
        g = outside[0]
        words.append(((t_idx, 1), (g, 1), (t_idx, -1), (g, -1)))
    tower = compute_tower(pres, p, min(3, s.maxclass), s.budget)
    results = []
    for w in words:
        red = britton_reduce(spec, sequence_from_word(w, t_idx), oracle)
        rw = red.word(t_idx)
        same = all(image_in_level(tower, c, w) == image_in_level(tower, c, rw) for c in range(1, tower.nlevels + 1))
        trivial = red.length == 0 and oracle.is_trivial(red.pieces[0])
        results.append({
            "word": pres.format(w),
            "reduced": pres.format(rw),
            "stable_letters": red.length,
            "trivial": trivial,
            "tower_images_agree": same,
        })
    return results


def _witnesses(s: Scenario, g: SimpleGraph, p: int) -> list[dict]:
    texts = list(s.witness_words)
    if not texts:
        for a in range(g.n):
            for c in range(a + 1, g.n):
                if not g.adjacent(a, c) and len(texts) < 3:
                    x, y = g.vertices[a], g.vertices[c]
                    texts.append(f"{x}^-1 {y}^-1 {x} {y}")
        if g.n and not texts:
            texts.append(g.vertices[0])
    out = []
    for text in texts:
        w = parse_raag_word(g, text)
        if raag_is_trivial(g, w):
            out.append({"word": text, "trivial": True, "level": None})
            continue
        wit = residual_p_witness(g, w, p, s.maxclass, s.budget)
        out.append({"word": text, "trivial": False, "level": wit.level if wit else None})
    return out


def _raag_probes(s: Scenario, g: SimpleGraph, p: int, t: PQuotientTower) -> list[dict]:
    """Probe the special subgroup on the first two vertices (or the first one)."""
    if g.n == 0:
        return []
    subset = list(range(min(2, g.n)))
    sub = g.induced(subset)
    t_h = compute_tower(build_raag_presentation(sub), p, s.probe_class, s.budget)
    t_g = t.truncate(s.probe_class + 1)
    words = [letter(k) for k in subset]
    return [
        {"subgroup": [g.vertices[k] for k in subset], **v.to_dict()}
        for v in embedding_probe(t_g, words, t_h)
    ]


def _free_abelian(names) -> GroupPresentation:
    rels = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            rels.append(f"{names[i]}^-1 {names[j]}^-1 {names[i]} {names[j]}")
    return GroupPresentation.from_strings(list(names), rels)


def _builtin_extras(s: Scenario, b: BuiltinExample, p: int, t: PQuotientTower, out: dict, flags: set) -> None:
    pres = b.presentation
    if b.name == "example311_G":
        n_images = {
            pres.format(w): [list(image_in_level(t, c, w)) for c in range(1, t.nlevels + 1)]
            for w in b.subgroups["N"]
        }
        n_dead = all(not any(v) for vs in n_images.values() for v in vs)
        f2 = compute_tower(GroupPresentation.from_strings(["t1", "t2"], []), p, s.maxclass, s.budget)
        out["example311"] = {
            "N_images_trivial": n_dead,
            "f2_order_exponents": f2.orders(),
            "orders_match_f2": f2.orders() == t.orders(),
        }
        flags.add("example311_G: discrete H^2 > 0 while the tower looks free (discrete != pro-p evidence)")
    if b.name == "section1_swap":
        abelian = all(not any(row) for lv in t.levels for row in lv.comms)
        xy = pres.word("x y^-1")
        out["section1"] = {
            "levels_abelian": abelian,
            "xy_inverse_trivial": all(not any(image_in_level(t, c, xy)) for c in range(1, t.nlevels + 1)),
            "order_exponents": t.orders(),
        }
        flags.add(
            "section1_swap: the claimed H^2 non-isomorphism is not asserted; "
            "only dimensions are compared (open question)"
        )
    probes = []
    for sub, words in sorted(b.subgroups.items()):
        if b.name == "heisenberg" and sub != "center":
            continue
        if b.wang is not None and b.name != "heisenberg":
            continue
        names = [f"a{k + 1}" for k in range(len(words))]
        t_h = compute_tower(_free_abelian(names), p, s.probe_class, s.budget)
        t_g = t.truncate(s.probe_class + 1)
        probes += [{"subgroup": sub, **v.to_dict()} for v in embedding_probe(t_g, words, t_h)]
    out["probes"] = probes


def run_scenario(s: Scenario) -> ScenarioReport:
    flags: set[str] = {"comparisons are dimension-level only"}
    failures: list[str] = []
    per_prime = {p: _run_prime(s, p, flags, failures) for p in sorted(set(s.primes))}
    comps = [
        d["comparison"]
        for rep in per_prime.values()
        for d in rep["degrees"].values()
        if d["comparison"] != "not computed"
    ]
    if "disagree" in comps:
        verdict = INCONSISTENT
    elif comps and all(c == "agree" for c in comps):
        verdict = CONSISTENT
    else:
        verdict = INCONCLUSIVE
    return ScenarioReport(s.name, s.kind, per_prime, verdict, sorted(flags), failures)


def default_suite() -> list[Scenario]:
    """The scenarios shipped with the package (also available as JSON files)."""
    from .raag import complete_graph, cycle_graph, edgeless_graph, path_graph

    out = [
        Scenario("raag_edgeless2", "raag_classC", (2, 3), maxclass=4, graph=edgeless_graph(2)),
        Scenario("raag_edge", "raag_classC", (2, 3), maxclass=4, graph=path_graph(2)),
        Scenario("raag_path3", "raag_classC", (2, 3), maxclass=4, graph=path_graph(3)),
        Scenario("raag_K3", "raag_classC", (2, 3), maxclass=4, maxdeg=3, graph=complete_graph(3)),
        Scenario("raag_C4", "raag_classC", (2,), maxclass=3, graph=cycle_graph(4)),
        Scenario("hnn_path3_middle", "hnn_classC", (2, 3), maxclass=3, graph=path_graph(3), vertex="b"),
        Scenario("heisenberg", "builtin", (2, 3), maxclass=4, builtin="heisenberg"),
        Scenario("section1_swap", "builtin", (3,), maxclass=4, builtin="section1_swap"),
        Scenario("example311_G", "builtin", (2, 3, 5), maxclass=5, builtin="example311_G"),
        Scenario("heisenberg_central_amalgam", "amalgam_classC", (2, 3), maxclass=4,
                 builtin="heisenberg_central_amalgam", budget=Budget(max_generators=128, max_order_exponent=128)),
        Scenario("heisenberg_cyclic_amalgam", "amalgam_classC", (2, 3), maxclass=4,
                 builtin="heisenberg_cyclic_amalgam"),
    ]
    return out


def scenario_to_dict(s: Scenario) -> dict:
    d: dict[str, Any] = {
        "format": FORMAT,
        "name": s.name,
        "kind": s.kind,
        "primes": list(s.primes),
        "maxclass": s.maxclass,
        "maxdeg": s.maxdeg,
        "probe_class": s.probe_class,
    }
    if s.graph is not None:
        d["graph"] = s.graph.to_dict()
    if s.presentation is not None:
        d["presentation"] = s.presentation.to_dict()
    if s.builtin is not None:
        d["builtin"] = s.builtin
    if s.vertex is not None:
        d["vertex"] = s.vertex
    if s.witness_words:
        d["witness_words"] = list(s.witness_words)
    if s.budget != Budget():
        d["budget"] = {
            "max_matrix_entries": s.budget.max_matrix_entries,
            "max_generators": s.budget.max_generators,
            "max_order_exponent": s.budget.max_order_exponent,
        }
    return d
